"""
Hamiltonian Service
Kitaev, refined 4-local and 6-local massive Hamiltonians, and their spectra.
"""

import logging
from functools import reduce
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.sparse.csgraph import connected_components
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from ..core.config import settings
from ..core.exceptions import ArgumentError, CapacityError, ConfigError, NumericError
from ..models.couplings import CouplingConfig
from ..models.hamiltonian import (
    HamiltonianKind,
    HamiltonianSpec,
    KitaevForm,
    SpectrumLevel,
    SpectrumMode,
    SpectrumReport,
)
from ..models.operator import HilbertSpace, SparseOperator
from .anyon_service import enumerate_anyons, flux_order
from .operator_service import OperatorService
from .sector_service import anyon_to_sectors

logger = logging.getLogger(__name__)

BLOCK_CHUNK_ENTRIES = 2**22
DEFAULT_LOWK = 6


class HamiltonianService:
    """Assembles Hamiltonians on the whole torus or on a single site."""

    def __init__(self, operators: OperatorService):
        self.operators = operators
        self.group = operators.group
        self.lattice = operators.lattice
        self.table = operators.table

    def _region(self, site: Optional[int]) -> Tuple[HilbertSpace, List[int], List[int]]:
        if site is None:
            n = self.lattice.num_vertices
            return self.operators.full_space(), list(range(n)), list(range(n))
        if not 0 <= site < self.lattice.num_vertices:
            raise ArgumentError(f"Site {site} out of range")
        s = self.lattice.site(site)
        return self.operators.site_space(s), [s.vertex], [s.plaquette]

    # Terms

    def kitaev_terms(self, form: KitaevForm = KitaevForm.STABILIZER, site: Optional[int] = None) -> List[SparseOperator]:
        space, vertices, plaquettes = self._region(site)
        ops = self.operators
        identity = SparseOperator.identity(space)
        vacuum_flux = self.group.classes[0]
        terms = []
        for v in vertices:
            if form == KitaevForm.UNNORMALIZED:
                charge = ops.vacuum_charge_operator(v, space)
            else:
                charge = ops.charge_projector(v, 0, space)
            terms.append(-(2 * charge - identity) if form == KitaevForm.STABILIZER else -charge)
        for p in plaquettes:
            flux = ops.flux_projector(p, vacuum_flux, space)
            terms.append(-(2 * flux - identity) if form == KitaevForm.STABILIZER else -flux)
        return terms

    def refined_terms(self, couplings: CouplingConfig, site: Optional[int] = None) -> List[SparseOperator]:
        """alpha_Gamma A_Gamma^v for every vertex and irrep, beta_C B_C^p for every plaquette and class."""
        alpha = couplings.alpha_vector(self.table)
        beta = couplings.beta_vector(self.table)
        space, vertices, plaquettes = self._region(site)
        terms = []
        for v in vertices:
            for i, a in enumerate(alpha):
                if a != 0:
                    terms.append(float(a) * self.operators.charge_projector(v, i, space))
        for p in plaquettes:
            for cls, b in zip(self.group.classes, beta):
                if b != 0:
                    terms.append(float(b) * self.operators.flux_projector(p, cls, space))
        return terms

    def massive6_terms(self, masses: Dict[str, float], site: Optional[int] = None) -> List[SparseOperator]:
        """Sum over sites and anyons of mass * P_anyon; site projectors are embedded into the torus space."""
        anyons = enumerate_anyons(self.group)
        names = {a.name for a in anyons}
        if set(masses) != names:
            raise ConfigError(f"Anyon masses must cover exactly {sorted(names)}, got {sorted(masses)}")
        space, vertices, _ = self._region(site)
        terms = []
        for v in vertices:
            s = self.lattice.site(v)
            local_space = self.operators.site_space(s)
            for anyon in anyons:
                m = masses[anyon.name]
                if m == 0:
                    continue
                projector = self.operators.anyon_projector_6body(s, anyon, local_space)
                if local_space != space:
                    projector = projector.embed(space)
                terms.append(float(m) * projector)
        return terms

    def terms(self, spec: HamiltonianSpec) -> List[SparseOperator]:
        if spec.kind == HamiltonianKind.KITAEV:
            return self.kitaev_terms(spec.kitaev_form, spec.site)
        if spec.kind == HamiltonianKind.REFINED:
            if spec.couplings is None:
                raise ConfigError("The refined Hamiltonian needs couplings")
            return self.refined_terms(spec.couplings, spec.site)
        if spec.masses is None:
            raise ConfigError("The 6-local Hamiltonian needs anyon masses")
        return self.massive6_terms(spec.masses, spec.site)

    def _sum(self, terms: List[SparseOperator], site: Optional[int]) -> SparseOperator:
        if not terms:
            space, _, _ = self._region(site)
            return SparseOperator.zero(space)
        return reduce(lambda a, b: a + b, terms)

    # Hamiltonians

    def build(self, spec: HamiltonianSpec) -> SparseOperator:
        return self._sum(self.terms(spec), spec.site)

    def build_kitaev(self, form: KitaevForm = KitaevForm.STABILIZER, site: Optional[int] = None) -> SparseOperator:
        return self._sum(self.kitaev_terms(form, site), site)

    def build_refined(self, couplings: CouplingConfig, site: Optional[int] = None) -> SparseOperator:
        return self._sum(self.refined_terms(couplings, site), site)

    def build_massive6(self, masses: Dict[str, float], site: Optional[int] = None) -> SparseOperator:
        return self._sum(self.massive6_terms(masses, site), site)

    def masses_from_couplings(self, couplings: CouplingConfig) -> Dict[str, float]:
        """
        Anyon masses reproducing the refined site Hamiltonian. Only defined
        when every flavor of an anyon has the same sector energy.
        """
        alpha = dict(zip(self.table.labels, couplings.alpha_vector(self.table)))
        beta = couplings.beta
        masses = {}
        for anyon in enumerate_anyons(self.group):
            energies = {alpha[sector.charge] + beta[sector.flux_class.label] for sector, _ in anyon_to_sectors(anyon)}
            if len(energies) != 1:
                raise ConfigError(
                    f"Anyon {anyon.name} has flavors at different energies {sorted(energies)}; no single mass"
                )
            masses[anyon.name] = energies.pop()
        return masses

    def sector_projectors(self, site: int = 0) -> Dict[str, SparseOperator]:
        """A_Gamma B_C for every (class, irrep) on one site, keyed 'C/Gamma'."""
        s = self.lattice.site(site)
        space = self.operators.site_space(s)
        return {
            f"{cls.label}/{label}": self.operators.sector_projector(s, cls, label, space)
            for cls in flux_order(self.group)
            for label in self.table.labels
        }


def commuting_terms_check(terms: List[SparseOperator]) -> float:
    """Largest max-entry norm of [h_i, h_j] over all pairs of summands."""
    worst = 0.0
    for i in range(len(terms)):
        for j in range(i + 1, len(terms)):
            worst = max(worst, terms[i].commutator(terms[j]).max_abs())
    return worst


def _check_hermitian(hamiltonian: SparseOperator) -> None:
    residue = hamiltonian.hermiticity_residue()
    if residue > settings.NUMERIC_TOLERANCE:
        raise ArgumentError(f"Operator is not Hermitian (residue {residue:.2e})")


def _clusters(eigenvalues: np.ndarray, tol: float) -> List[Tuple[int, int]]:
    """(start, stop) runs of sorted eigenvalues closer than tol to their neighbour."""
    if len(eigenvalues) == 0:
        return []
    breaks = np.nonzero(np.diff(eigenvalues) > tol)[0] + 1
    edges = np.concatenate([[0], breaks, [len(eigenvalues)]])
    return list(zip(edges[:-1].tolist(), edges[1:].tolist()))


def _clean(value: float) -> float:
    return float(np.round(value, 12)) + 0.0


def _full_eigh(hamiltonian: SparseOperator) -> Tuple[np.ndarray, np.ndarray]:
    if hamiltonian.dim > settings.FULL_DIAG_MAX_DIM:
        raise CapacityError(
            f"Full diagonalization is limited to dimension {settings.FULL_DIAG_MAX_DIM}, got {hamiltonian.dim}"
        )
    return np.linalg.eigh(hamiltonian.toarray())


def _block_eigvalsh(hamiltonian: SparseOperator) -> np.ndarray:
    """Exact spectrum from the connected components of the sparsity graph."""
    matrix = hamiltonian.matrix
    n = hamiltonian.dim
    count, labels = connected_components(matrix, directed=False, return_labels=True)
    sizes = np.bincount(labels, minlength=count)
    if sizes.max() > settings.FULL_DIAG_MAX_DIM:
        raise CapacityError(
            f"Largest block has dimension {sizes.max()} > {settings.FULL_DIAG_MAX_DIM}"
        )
    logger.info("Block diagonalization: %d blocks, largest %d", count, sizes.max())
    order = np.argsort(labels, kind="stable")
    starts = np.concatenate([[0], np.cumsum(sizes)[:-1]])
    position = np.empty(n, dtype=np.int64)
    position[order] = np.arange(n) - starts[labels[order]]

    coo = matrix.tocoo()
    row_labels = labels[coo.row]
    values = []
    for size in np.unique(sizes):
        comps = np.nonzero(sizes == size)[0]
        chunk = max(1, BLOCK_CHUNK_ENTRIES // int(size * size))
        for lo in range(0, len(comps), chunk):
            part = comps[lo:lo + chunk]
            slot = np.full(count, -1, dtype=np.int64)
            slot[part] = np.arange(len(part))
            blocks = np.zeros((len(part), size, size), dtype=complex)
            mask = slot[row_labels] >= 0
            blocks[slot[row_labels[mask]], position[coo.row[mask]], position[coo.col[mask]]] = coo.data[mask]
            values.append(np.linalg.eigvalsh(blocks).ravel())
    return np.sort(np.concatenate(values))


def _lowk_eigsh(hamiltonian: SparseOperator, k: int) -> Tuple[np.ndarray, np.ndarray]:
    if hamiltonian.dim > settings.LOWK_MAX_DIM:
        raise CapacityError(f"Iterative diagonalization is limited to dimension {settings.LOWK_MAX_DIM}")
    if k >= hamiltonian.dim - 1:
        values, vectors = _full_eigh(hamiltonian)
        return values[:k], vectors[:, :k]
    maxiter = 10 * hamiltonian.dim
    try:
        values, vectors = eigsh(hamiltonian.matrix, k=k, which="SA", maxiter=maxiter)
    except ArpackNoConvergence as exc:
        raise NumericError("Lanczos iteration did not converge", iterations=maxiter) from exc
    order = np.argsort(values)
    return values[order], vectors[:, order]


def _tag_level(vectors: np.ndarray, projectors: Dict[str, SparseOperator], threshold: float) -> Tuple[str, ...]:
    """
    Rotate a degenerate level onto the sector projectors, then name every
    sector that holds one of the rotated vectors with overlap >= threshold.
    """
    mixer = sum((k + 1) * p.matrix for k, p in enumerate(projectors.values()))
    compressed = vectors.conj().T @ (mixer @ vectors)
    _, rotation = np.linalg.eigh((compressed + compressed.conj().T) / 2)
    rotated = vectors @ rotation
    tags = []
    for name, projector in projectors.items():
        overlaps = np.einsum("ij,ij->j", rotated.conj(), projector.matrix @ rotated).real
        if np.any(overlaps >= threshold):
            tags.append(name)
    return tuple(tags)


def spectrum(
    hamiltonian: SparseOperator,
    mode: SpectrumMode = SpectrumMode.AUTO,
    k: Optional[int] = None,
    sector_projectors: Optional[Dict[str, SparseOperator]] = None,
) -> SpectrumReport:
    """
    Sorted eigenvalues clustered into levels.

    full: dense diagonalization; block: exact, per connected component;
    lowk: the k lowest eigenvalues by Lanczos. Sector tags need eigenvectors
    and are attached in full and lowk modes.
    """
    _check_hermitian(hamiltonian)
    dim = hamiltonian.dim
    if k is not None and not 1 <= k <= settings.LOWK_MAX_K:
        raise ArgumentError(f"k must be between 1 and {settings.LOWK_MAX_K}, got {k}")

    if mode == SpectrumMode.AUTO:
        if dim <= settings.FULL_DIAG_MAX_DIM:
            mode = SpectrumMode.FULL
        else:
            try:
                return spectrum(hamiltonian, SpectrumMode.BLOCK)
            except CapacityError:
                logger.info("Blocks too large for exact diagonalization, falling back to lowk")
                mode = SpectrumMode.LOWK

    vectors = None
    if mode == SpectrumMode.FULL:
        values, vectors = _full_eigh(hamiltonian)
    elif mode == SpectrumMode.BLOCK:
        values = _block_eigvalsh(hamiltonian)
    else:
        values, vectors = _lowk_eigsh(hamiltonian, k or DEFAULT_LOWK)

    levels = []
    for start, stop in _clusters(values, settings.DEGENERACY_TOLERANCE):
        tags: Tuple[str, ...] = ()
        if sector_projectors and vectors is not None:
            tags = _tag_level(vectors[:, start:stop], sector_projectors, settings.SECTOR_OVERLAP_THRESHOLD)
        levels.append(SpectrumLevel(energy=_clean(values[start:stop].mean()), multiplicity=stop - start, sectors=tags))
    return SpectrumReport(dimension=dim, mode=mode, levels=levels, complete=mode != SpectrumMode.LOWK)


def groundspace_projector(hamiltonian: SparseOperator) -> np.ndarray:
    """Dense projector onto the lowest energy level."""
    _check_hermitian(hamiltonian)
    values, vectors = _full_eigh(hamiltonian)
    start, stop = _clusters(values, settings.DEGENERACY_TOLERANCE)[0]
    ground = vectors[:, start:stop]
    return ground @ ground.conj().T

"""
Operator Service
Edge operators L/T, vertex operators A_g, plaquette operators B_h, flux and
charge projectors and the six-body anyon projectors of a site.

Every builder takes an optional HilbertSpace. By default operators live on
the smallest space containing their edges: the 4-edge star for vertex
operators, the 4-edge loop for plaquette operators and the 6-edge site space
for anyon projectors. Any larger space containing those edges works too.
"""

import logging
from functools import lru_cache
from typing import Dict, Iterable, Optional, Union

import numpy as np
import scipy.sparse as sp

from ..core.config import settings
from ..core.exceptions import ArgumentError, CapacityError, InvariantViolationError
from ..models.anyon import AnyonLabel
from ..models.group import ConjugacyClass, FiniteGroup
from ..models.lattice import Site, TorusLattice
from ..models.operator import HilbertSpace, Sign, SparseOperator
from .character_service import character_table
from .lattice_service import build_torus

logger = logging.getLogger(__name__)

ClassRef = Union[ConjugacyClass, str, int]
IrrepRef = Union[str, int]
SiteRef = Union[Site, int]


class OperatorService:
    """Operators of the quantum double model of one group on one torus."""

    def __init__(self, group: FiniteGroup, lattice: Optional[TorusLattice] = None):
        self.group = group
        self.lattice = lattice or build_torus(2, 2)
        self.table = character_table(group)
        self._vertex_cache = lru_cache(maxsize=settings.OPERATOR_CACHE_SIZE)(self._build_vertex_operator)
        self._flux_cache = lru_cache(maxsize=settings.OPERATOR_CACHE_SIZE)(self._build_flux_values)

    # Spaces

    def qudit_space(self, edge: int = 0) -> HilbertSpace:
        return HilbertSpace(self.group.order, (edge,))

    def star_space(self, v: int) -> HilbertSpace:
        return HilbertSpace(self.group.order, self.lattice.star_edges(v))

    def loop_space(self, p: int) -> HilbertSpace:
        return HilbertSpace(self.group.order, self.lattice.loop_edges(p))

    def site_space(self, site: SiteRef = 0) -> HilbertSpace:
        return HilbertSpace(self.group.order, self._site(site).edges)

    def union_space(self, *edge_groups: Iterable[int]) -> HilbertSpace:
        edges = sorted({e for group in edge_groups for e in group})
        return HilbertSpace(self.group.order, edges)

    def full_space(self) -> HilbertSpace:
        space = HilbertSpace(self.group.order, range(self.lattice.num_edges))
        self._guard(space)
        return space

    def _guard(self, space: HilbertSpace) -> None:
        if space.total_dim > settings.MAX_HILBERT_DIM:
            raise CapacityError(
                f"Operator space of dimension {space.total_dim} exceeds {settings.MAX_HILBERT_DIM}"
            )

    def _require(self, space: HilbertSpace, edges: Iterable[int]) -> None:
        edges = tuple(edges)
        if space.qudit_dim != self.group.order or not space.contains(edges):
            raise ArgumentError(f"{space} does not contain edges {edges}")
        self._guard(space)

    def _site(self, site: SiteRef) -> Site:
        if isinstance(site, Site):
            return site
        if not 0 <= int(site) < self.lattice.num_vertices:
            raise ArgumentError(f"Site {site} out of range")
        return self.lattice.site(int(site))

    def _element(self, g: Union[int, str]) -> int:
        if isinstance(g, str):
            return self.group.index_of(g)
        if not 0 <= int(g) < self.group.order:
            raise ArgumentError(f"Element index {g} out of range for {self.group.name}")
        return int(g)

    def resolve_class(self, cls: ClassRef) -> ConjugacyClass:
        if isinstance(cls, ConjugacyClass):
            return cls
        if isinstance(cls, str):
            return self.group.class_by_label(cls)
        if not 0 <= int(cls) < len(self.group.classes):
            raise ArgumentError(f"Class index {cls} out of range")
        return self.group.classes[int(cls)]

    # Single-qudit operators

    def left_mult(self, g: Union[int, str], sign: Sign = Sign.PLUS, edge: int = 0) -> SparseOperator:
        """L+_g |z> = |g z>,  L-_g |z> = |z g^-1>."""
        g = self._element(g)
        c = self.group.cayley
        targets = c[g, :] if sign == Sign.PLUS else c[:, self.group.inverse[g]]
        return SparseOperator.permutation(self.qudit_space(edge), targets)

    def diag_flux(self, h: Union[int, str], sign: Sign = Sign.PLUS, edge: int = 0) -> SparseOperator:
        """T+_h projects on |h>, T-_h on |h^-1>."""
        h = self._element(h)
        target = h if sign == Sign.PLUS else int(self.group.inverse[h])
        values = np.zeros(self.group.order)
        values[target] = 1
        return SparseOperator.diagonal(self.qudit_space(edge), values)

    # Vertex operators

    def vertex_operator(self, v: int, g: Union[int, str], space: Optional[HilbertSpace] = None) -> SparseOperator:
        """A_g^v: L+_g on outgoing star edges, L-_g on incoming ones."""
        return self._vertex_cache(v, self._element(g), space or self.star_space(v))

    def _build_vertex_operator(self, v: int, g: int, space: HilbertSpace) -> SparseOperator:
        self._require(space, self.lattice.star_edges(v))
        c, inv = self.group.cayley, self.group.inverse
        digits = space.digits
        targets = np.arange(space.total_dim, dtype=np.int64)
        for star in self.lattice.vertex_stars[v]:
            k = space.position(star.edge)
            z = digits[:, k]
            moved = c[g, z] if star.outgoing else c[z, inv[g]]
            targets += (moved - z) * space.powers[k]
        return SparseOperator.permutation(space, targets)

    def vacuum_charge_operator(self, v: int, space: Optional[HilbertSpace] = None) -> SparseOperator:
        """Unnormalized sum_g A_g^v, equal to |G| times the trivial charge projector."""
        space = space or self.star_space(v)
        total = SparseOperator.zero(space)
        for g in range(self.group.order):
            total = total + self.vertex_operator(v, g, space)
        return total

    def charge_projector(self, v: int, irrep: IrrepRef, space: Optional[HilbertSpace] = None) -> SparseOperator:
        """A_Gamma = (d/|G|) sum_g chi_Gamma(g) A_g."""
        space = space or self.star_space(v)
        index = self.table.index_of(irrep)
        chi = self.table.on_elements(index)
        scale = self.table.dims[index] / self.group.order
        matrix = sp.csr_matrix((space.total_dim, space.total_dim), dtype=complex)
        for g in range(self.group.order):
            if abs(chi[g]) > settings.DROP_TOLERANCE:
                matrix = matrix + (scale * chi[g]) * self.vertex_operator(v, g, space).matrix
        return SparseOperator(space, matrix)

    # Plaquette operators

    def flux_values(self, p: int, space: Optional[HilbertSpace] = None) -> np.ndarray:
        """Ordered holonomy around plaquette p for every basis state of the space."""
        return self._flux_cache(p, space or self.loop_space(p))

    def _build_flux_values(self, p: int, space: HilbertSpace) -> np.ndarray:
        self._require(space, self.lattice.loop_edges(p))
        c, inv = self.group.cayley, self.group.inverse
        flux = np.zeros(space.total_dim, dtype=np.int64)
        for loop in self.lattice.plaquette_loops[p]:
            z = space.digits[:, space.position(loop.edge)]
            flux = c[flux, z if loop.along else inv[z]]
        flux.setflags(write=False)
        return flux

    def plaquette_operator(self, p: int, h: Union[int, str], space: Optional[HilbertSpace] = None) -> SparseOperator:
        h = self._element(h)
        space = space or self.loop_space(p)
        return SparseOperator.diagonal(space, (self.flux_values(p, space) == h).astype(float))

    def flux_projector(self, p: int, cls: ClassRef, space: Optional[HilbertSpace] = None) -> SparseOperator:
        """B_C = sum of B_h over h in C."""
        cls = self.resolve_class(cls)
        space = space or self.loop_space(p)
        mask = np.isin(self.flux_values(p, space), cls.members)
        return SparseOperator.diagonal(space, mask.astype(float))

    # Site projectors

    def transported_characters(self, anyon: AnyonLabel) -> Dict[int, Dict[int, complex]]:
        """
        Charge character carried to the normalizer of every class member:
        for g = k r k^-1, chi_g(n) = chi_r(k^-1 n k). Every valid k must agree.
        """
        group = self.group
        r = anyon.representative
        local = character_table(anyon.normalizer.group).on_elements(anyon.charge_index)
        tol = settings.NUMERIC_TOLERANCE
        result: Dict[int, Dict[int, complex]] = {}
        for g in anyon.flux_class.members:
            centralizer = group.normalizer(g).elements
            choices = []
            for k in range(group.order):
                if group.conjugate(k, r) != g:
                    continue
                k_inv = group.invert(k)
                choices.append(
                    np.array([local[anyon.normalizer.local_index(group.conjugate(k_inv, n))] for n in centralizer])
                )
            spread = max(float(np.abs(c - choices[0]).max()) for c in choices)
            if spread > tol:
                raise InvariantViolationError(
                    f"Transported character of {anyon.name} at {group.labels[g]} depends on the conjugator ({spread:.2e})"
                )
            result[g] = dict(zip(centralizer, choices[0]))
        return result

    def anyon_projector_6body(self, site: SiteRef, anyon: AnyonLabel, space: Optional[HilbertSpace] = None) -> SparseOperator:
        """P_(C,Gamma) = sum_{g in C} sum_{n in N_g} (d/|N_g|) chi_g(n) A_n B_g on a site."""
        site = self._site(site)
        space = space or self.site_space(site)
        flux = self.flux_values(site.plaquette, space)
        scale = anyon.charge_dim / anyon.normalizer.order
        total = sp.csr_matrix((space.total_dim, space.total_dim), dtype=complex)
        for g, characters in self.transported_characters(anyon).items():
            charge = sp.csr_matrix((space.total_dim, space.total_dim), dtype=complex)
            for n, chi in characters.items():
                if abs(chi) > settings.DROP_TOLERANCE:
                    charge = charge + (scale * chi) * self.vertex_operator(site.vertex, n, space).matrix
            total = total + sp.diags((flux == g).astype(float)) @ charge
        return SparseOperator(space, total)

    def anyon_projectors(self, site: SiteRef, anyons: Iterable[AnyonLabel], space: Optional[HilbertSpace] = None) -> Dict[str, SparseOperator]:
        site = self._site(site)
        space = space or self.site_space(site)
        logger.info("Building anyon projectors on %s", space)
        return {a.name: self.anyon_projector_6body(site, a, space) for a in anyons}

    def sector_projector(self, site: SiteRef, cls: ClassRef, irrep: IrrepRef, space: Optional[HilbertSpace] = None) -> SparseOperator:
        """A_Gamma B_C on one site."""
        site = self._site(site)
        space = space or self.site_space(site)
        return self.charge_projector(site.vertex, irrep, space) @ self.flux_projector(site.plaquette, cls, space)

    # Identities

    def verify_flux_permutation(self, plaquette: int, vertex: int, space: Optional[HilbertSpace] = None) -> float:
        """
        Same site: max over (g, h) of |B_g - A_{h^-1} B_{h g h^-1} A_h|.
        Different sites: max over (g, h) of |B_g - A_{h^-1} B_g A_h|.
        """
        same_site = self.lattice.plaquette_starts[plaquette] == vertex
        if space is None:
            space = self.union_space(self.lattice.star_edges(vertex), self.lattice.loop_edges(plaquette))
        group = self.group
        worst = 0.0
        for h in range(group.order):
            a_h = self.vertex_operator(vertex, h, space)
            a_inv = self.vertex_operator(vertex, group.invert(h), space)
            for g in range(group.order):
                target = group.conjugate(h, g) if same_site else g
                rhs = a_inv @ self.plaquette_operator(plaquette, target, space) @ a_h
                worst = max(worst, self.plaquette_operator(plaquette, g, space).distance(rhs))
        logger.debug("Flux permutation deviation at (p=%d, v=%d): %.2e", plaquette, vertex, worst)
        return worst

"""
Verification Service
Named numeric checks of the model's algebraic identities, run on one group.
"""

import logging
from functools import cached_property
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import settings
from ..core.exceptions import ArgumentError, CapacityError, InvariantViolationError
from ..models.anyon import FluxPairState
from ..models.couplings import CouplingConfig
from ..models.group import FiniteGroup
from ..models.hamiltonian import KitaevForm
from ..models.operator import SparseOperator
from ..models.verification import CheckResult, VerificationReport
from . import anyon_service, character_service, lattice_service, sector_service
from .hamiltonian_service import HamiltonianService, commuting_terms_check, groundspace_projector
from .operator_service import OperatorService

logger = logging.getLogger(__name__)

TRACE_TOLERANCE = 1e-8
FULL_SUBGROUP_SEARCH_MAX_ORDER = 64

CheckOutcome = Tuple[float, Dict]


class VerificationContext:
    """Lazily built operators shared between checks."""

    def __init__(self, group: FiniteGroup):
        self.group = group
        self.table = character_service.character_table(group)
        self.site = 0

    @cached_property
    def operators(self) -> OperatorService:
        n = self.group.order
        if n**6 > settings.MAX_HILBERT_DIM:
            raise CapacityError(f"Site space of dimension {n}^6 exceeds {settings.MAX_HILBERT_DIM}")
        return OperatorService(self.group)

    @cached_property
    def anyons(self):
        return anyon_service.enumerate_anyons(self.group)

    @cached_property
    def site_space(self):
        return self.operators.site_space(self.site)

    @cached_property
    def projectors(self) -> Dict[str, SparseOperator]:
        return self.operators.anyon_projectors(self.site, self.anyons, self.site_space)

    @cached_property
    def random_couplings(self) -> CouplingConfig:
        rng = np.random.default_rng(settings.RANDOM_SEED)
        classes = self.group.classes
        return CouplingConfig.from_values(
            self.table,
            rng.integers(-5, 6, self.table.irrep_count).tolist(),
            rng.integers(-5, 6, len(classes)).tolist(),
        )


class SkipCheck(Exception):
    """Raised by a check that does not apply to the group."""


def _character_table(ctx: VerificationContext) -> CheckOutcome:
    table = ctx.table
    degrees = float(np.abs(table.chi[:, 0] - np.array(table.dims)).max())
    return max(character_service.table_orthogonality_deviation(table), degrees), {
        "irreps": list(table.labels),
        "dims": list(table.dims),
    }


def _explicit_irreps(ctx: VerificationContext) -> CheckOutcome:
    if not character_service.has_explicit_irreps(ctx.group):
        raise SkipCheck(f"no explicit irrep matrices for {ctx.group.name}")
    worst = 0.0
    for irrep in character_service.explicit_irreps(ctx.group):
        identity = float(np.abs(irrep(0) - np.eye(irrep.dim)).max())
        traces = float(np.abs(irrep.character() - ctx.table.on_elements(irrep.label)).max())
        worst = max(worst, character_service.homomorphism_deviation(irrep), identity, traces)
    return worst, {}


def _got_swap(ctx: VerificationContext) -> CheckOutcome:
    if not character_service.has_explicit_irreps(ctx.group):
        raise SkipCheck(f"no explicit irrep matrices for {ctx.group.name}")
    irreps = character_service.explicit_irreps(ctx.group)
    details = {}
    for gamma in irreps:
        for lam in irreps:
            details[f"{gamma.label},{lam.label}"] = character_service.verify_got_swap(gamma, lam)
    return max(details.values()), {"pairs": details}


def _frobenius(ctx: VerificationContext) -> CheckOutcome:
    group = ctx.group
    if group.order <= FULL_SUBGROUP_SEARCH_MAX_ORDER:
        subgroups = character_service.small_subgroups(group)
    else:
        subgroups = [group.normalizer(c.representative) for c in group.classes]
    worst = max(character_service.frobenius_deviation(group, h) for h in subgroups)
    return worst, {"subgroups": len(subgroups)}


def _quantum_dimension(ctx: VerificationContext) -> CheckOutcome:
    try:
        total = anyon_service.total_quantum_dimension_sq(ctx.group)
    except InvariantViolationError as exc:
        logger.error("%s", exc)
        total = sum(a.quantum_dimension**2 for a in ctx.anyons)
    return float(abs(total - ctx.group.order**2)), {"D2": total, "anyons": len(ctx.anyons)}


def _orbit_stabilizer(ctx: VerificationContext) -> CheckOutcome:
    group = ctx.group
    mismatches = 0
    for g in range(group.order):
        if group.normalizer(g).order * group.class_of(g).size != group.order:
            mismatches += 1
        for k in range(group.order):
            conjugated = group.normalizer(group.conjugate(k, g)).elements
            if tuple(sorted(group.conjugate(k, n) for n in group.normalizer(g).elements)) != conjugated:
                mismatches += 1
    return float(mismatches), {}


def _braiding(ctx: VerificationContext) -> CheckOutcome:
    group = ctx.group
    braid = anyon_service.braid_operator(group)
    doubled = (braid @ braid).tocsr()
    mismatches = 0
    for a in range(group.order):
        for b in range(group.order):
            state = FluxPairState.basis(group, a, b)
            image = anyon_service.monodromy(state).support()
            expected = anyon_service.monodromy_image(group, a, b)
            if image != [expected]:
                mismatches += 1
            a2, b2 = expected
            if group.class_index[a2] != group.class_index[a] or group.class_index[b2] != group.class_index[b]:
                mismatches += 1
            column = doubled[:, FluxPairState.index(group, a, b)].nonzero()[0].tolist()
            if column != [FluxPairState.index(group, *expected)]:
                mismatches += 1
    return float(mismatches), {}


def _lattice(ctx: VerificationContext) -> CheckOutcome:
    lattice = ctx.operators.lattice
    counts = lattice_service.incidence_counts(lattice)
    expected = {"stars": 2, "loops": 2, "sites": 3}
    mismatches = sum(
        1 for kind, n in expected.items() for e in range(lattice.num_edges) if counts[kind][e] != n
    )
    for s in lattice.sites:
        if len(set(s.edges)) != 6 or len(set(lattice.star_edges(s.vertex)) & set(lattice.loop_edges(s.plaquette))) != 2:
            mismatches += 1
    return float(mismatches), {"share": lattice_service.site_hilbert_share(lattice, ctx.group.order)}


def _vertex_representation(ctx: VerificationContext) -> CheckOutcome:
    ops, group = ctx.operators, ctx.group
    v = ops.lattice.site(ctx.site).vertex
    worst = 0.0
    for g in range(group.order):
        a_g = ops.vertex_operator(v, g)
        expected_trace = group.order**4 if g == 0 else 0
        worst = max(worst, abs(a_g.trace() - expected_trace))
        for h in range(group.order):
            worst = max(worst, (a_g @ ops.vertex_operator(v, h)).distance(ops.vertex_operator(v, group.multiply(g, h))))
    return worst, {}


def _projector_family(projectors: Sequence[SparseOperator]) -> float:
    space = projectors[0].space
    worst = 0.0
    total = SparseOperator.zero(space)
    for i, p in enumerate(projectors):
        worst = max(worst, p.hermiticity_residue(), (p @ p).distance(p))
        for q in projectors[i + 1:]:
            worst = max(worst, (p @ q).max_abs())
        total = total + p
    return max(worst, total.distance(SparseOperator.identity(space)))


def _charge_projectors(ctx: VerificationContext) -> CheckOutcome:
    ops = ctx.operators
    v = ops.lattice.site(ctx.site).vertex
    family = [ops.charge_projector(v, i) for i in range(ctx.table.irrep_count)]
    unnormalized = ops.vacuum_charge_operator(v).distance(ctx.group.order * family[0])
    return max(_projector_family(family), unnormalized), {}


def _flux_projectors(ctx: VerificationContext) -> CheckOutcome:
    ops = ctx.operators
    p = ops.lattice.site(ctx.site).plaquette
    family = [ops.flux_projector(p, c) for c in ctx.group.classes]
    vacuum = family[0].distance(ops.plaquette_operator(p, 0))
    return max(_projector_family(family), vacuum), {}


def _traces(ctx: VerificationContext) -> CheckOutcome:
    ops, group = ctx.operators, ctx.group
    s = ops.lattice.site(ctx.site)
    n3 = group.order**3
    details = {}
    for i, label in enumerate(ctx.table.labels):
        details[f"A_{label}"] = abs(ops.charge_projector(s.vertex, i).trace() - n3 * ctx.table.dims[i] ** 2)
    for c in group.classes:
        details[f"B_{c.label}"] = abs(ops.flux_projector(s.plaquette, c).trace() - c.size * n3)
    for g in range(group.order):
        details[f"B_{group.labels[g]}"] = abs(ops.plaquette_operator(s.plaquette, g).trace() - n3)
    return max(details.values()), {}


def _adjacent_vertex(ctx: VerificationContext) -> int:
    """The vertex at the lower right corner of the site plaquette."""
    lattice = ctx.operators.lattice
    r, c = lattice.coordinates(lattice.site(ctx.site).vertex)
    return lattice.vertex_index(r, c + 1)


def _commutation(ctx: VerificationContext) -> CheckOutcome:
    ops = ctx.operators
    s = ops.lattice.site(ctx.site)
    neighbour = _adjacent_vertex(ctx)
    worst = {"same_site": 0.0, "adjacent": 0.0}
    for label, vertex, space in (
        ("same_site", s.vertex, ctx.site_space),
        ("adjacent", neighbour, ops.union_space(ops.lattice.star_edges(neighbour), ops.lattice.loop_edges(s.plaquette))),
    ):
        for i in range(ctx.table.irrep_count):
            a = ops.charge_projector(vertex, i, space)
            for c in ctx.group.classes:
                b = ops.flux_projector(s.plaquette, c, space)
                worst[label] = max(worst[label], a.commutator(b).max_abs())
    return max(worst.values()), worst


def _flux_permutation(ctx: VerificationContext) -> CheckOutcome:
    ops = ctx.operators
    s = ops.lattice.site(ctx.site)
    details = {"same_site": ops.verify_flux_permutation(s.plaquette, s.vertex, ctx.site_space)}
    for corner in ops.lattice.plaquette_corners(s.plaquette)[1:]:
        details[f"corner_{corner}"] = ops.verify_flux_permutation(s.plaquette, corner)
    return max(details.values()), details


def _anyon_projectors(ctx: VerificationContext) -> CheckOutcome:
    ops = ctx.operators
    s = ops.lattice.site(ctx.site)
    family = list(ctx.projectors.values())
    details = {"family": _projector_family(family), "gauge": 0.0, "site_terms": 0.0}
    for p in family:
        for g in range(ctx.group.order):
            details["gauge"] = max(details["gauge"], p.commutator(ops.vertex_operator(s.vertex, g, ctx.site_space)).max_abs())
        for i in range(ctx.table.irrep_count):
            a = ops.charge_projector(s.vertex, i, ctx.site_space)
            details["site_terms"] = max(details["site_terms"], p.commutator(a).max_abs())
        for c in ctx.group.classes:
            b = ops.flux_projector(s.plaquette, c, ctx.site_space)
            details["site_terms"] = max(details["site_terms"], p.commutator(b).max_abs())
    return max(details.values()), details


def _sector_identities(ctx: VerificationContext) -> CheckOutcome:
    report = sector_service.verify_sector_operator_identities(ctx.operators, ctx.site, ctx.projectors)
    return max(report.values()), report


def _reciprocity(ctx: VerificationContext) -> CheckOutcome:
    group = ctx.group
    mismatches = sector_service.reciprocity_deviation(group)
    sectors = sector_service.energy_sectors(group)
    area = abs(sum(s.dimension for s in sectors) - group.order**2)
    weighted = sum(abs(sum(e.area for e in s.anyons) - s.dimension) for s in sectors)
    per_anyon = sector_service.diagram_export(group).anyon_areas()
    squares = sum(abs(per_anyon[a.name] - a.quantum_dimension**2) for a in ctx.anyons)
    return float(mismatches + area + weighted + squares), {}


def _mass_additivity(ctx: VerificationContext) -> CheckOutcome:
    return sector_service.mass_additivity_deviation(ctx.group, ctx.random_couplings), {}


def _hamiltonian_terms(ctx: VerificationContext) -> CheckOutcome:
    service = HamiltonianService(ctx.operators)
    refined = commuting_terms_check(service.refined_terms(ctx.random_couplings, site=ctx.site))
    kitaev = commuting_terms_check(service.kitaev_terms(KitaevForm.PROJECTOR, site=ctx.site))
    return max(refined, kitaev), {"refined": refined, "kitaev": kitaev}


def _kitaev_equivalence(ctx: VerificationContext) -> CheckOutcome:
    n = ctx.group.order
    lattice = ctx.operators.lattice
    if n ** lattice.num_edges <= settings.FULL_DIAG_MAX_DIM:
        site, region = None, "torus"
    elif n**6 <= settings.FULL_DIAG_MAX_DIM:
        site, region = ctx.site, "site"
    else:
        raise SkipCheck("groundspace too large for dense diagonalization")
    service = HamiltonianService(ctx.operators)
    couplings = CouplingConfig.kitaev(ctx.table, charge_weight=-float(n))
    kitaev = groundspace_projector(service.build_kitaev(KitaevForm.UNNORMALIZED, site))
    refined = groundspace_projector(service.build_refined(couplings, site))
    return float(np.abs(kitaev - refined).max()), {"region": region}


CHECKS: Dict[str, Tuple[Callable[[VerificationContext], CheckOutcome], float]] = {
    "character-table": (_character_table, 0.0),
    "explicit-irreps": (_explicit_irreps, 0.0),
    "got-swap": (_got_swap, 0.0),
    "frobenius": (_frobenius, 0.0),
    "orbit-stabilizer": (_orbit_stabilizer, 0.0),
    "quantum-dimension": (_quantum_dimension, 0.0),
    "braiding": (_braiding, 0.0),
    "lattice": (_lattice, 0.0),
    "vertex-representation": (_vertex_representation, TRACE_TOLERANCE),
    "charge-projectors": (_charge_projectors, 0.0),
    "flux-projectors": (_flux_projectors, 0.0),
    "traces": (_traces, TRACE_TOLERANCE),
    "commutation": (_commutation, 0.0),
    "flux-permutation": (_flux_permutation, 0.0),
    "anyon-projectors": (_anyon_projectors, 0.0),
    "sector-identities": (_sector_identities, TRACE_TOLERANCE),
    "reciprocity": (_reciprocity, 0.0),
    "mass-additivity": (_mass_additivity, 0.0),
    "hamiltonian-terms": (_hamiltonian_terms, 0.0),
    "kitaev-equivalence": (_kitaev_equivalence, 0.0),
}

OPERATOR_CHECKS = {
    "lattice", "vertex-representation", "charge-projectors", "flux-projectors", "traces",
    "commutation", "flux-permutation", "anyon-projectors", "sector-identities",
    "hamiltonian-terms", "kitaev-equivalence",
}


def run_checks(
    group: FiniteGroup,
    checks: Optional[List[str]] = None,
    tolerance: Optional[float] = None,
) -> VerificationReport:
    """
    Run the named checks (all by default). Each check passes when its
    deviation is within max(tolerance, the check's own floor).
    """
    names = checks or list(CHECKS)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise ArgumentError(f"Unknown checks {unknown}; available: {sorted(CHECKS)}")
    tol = tolerance or settings.TOLERANCE
    ctx = VerificationContext(group)
    if OPERATOR_CHECKS.intersection(names):
        ctx.operators  # capacity guard before any work
    report = VerificationReport(group=group.name, tolerance=tol)
    for name in names:
        check, floor = CHECKS[name]
        limit = max(tol, floor)
        try:
            deviation, details = check(ctx)
            result = CheckResult(name=name, deviation=float(deviation), tolerance=limit, details=details)
        except SkipCheck as exc:
            result = CheckResult(name=name, deviation=0.0, tolerance=limit, skipped=True, reason=str(exc))
        logger.info("Check %s on %s: %s (%.2e)", name, group.name, "pass" if result.passed else "FAIL", result.deviation)
        report.checks.append(result)
    return report

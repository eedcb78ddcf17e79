"""
Sector Service
Energy sectors (conjugacy class x irrep of G), their anyon content, charge
flavors, the splitting diagram and the sector-level operator identities.
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from ..core.exceptions import InvariantViolationError
from ..models.anyon import AnyonLabel, AnyonType
from ..models.couplings import CouplingConfig
from ..models.group import ConjugacyClass, FiniteGroup
from ..models.operator import SparseOperator
from ..models.sector import EnergySector, SectorAnyon, SplittingDiagram
from .anyon_service import enumerate_anyons, flux_order
from .character_service import character_table, decompose, induce_character, restrict_character
from .operator_service import OperatorService

logger = logging.getLogger(__name__)

SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")
DIRECT_SUM = "⊕"


def _subscript(k: int) -> str:
    return str(k).translate(SUBSCRIPTS)


def sector_to_anyons(group: FiniteGroup, cls: ConjugacyClass, irrep: int) -> List[Tuple[AnyonLabel, int]]:
    """Restrict the irrep to the normalizer of the class representative and decompose."""
    table = character_table(group)
    normalizer = group.normalizer(cls.representative)
    local = character_table(normalizer.group)
    parts = decompose(restrict_character(table.character(irrep), normalizer), local)
    by_charge = {a.charge: a for a in enumerate_anyons(group) if a.flux_class.index == cls.index}
    return [(by_charge[label], m) for label, m in parts.items()]


def _content_area(cls: ConjugacyClass, irrep_dim: int, anyon: AnyonLabel, multiplicity: int) -> int:
    return cls.size * irrep_dim * multiplicity * anyon.charge_dim


def _flavors(group: FiniteGroup, sectors: List[EnergySector]) -> Dict[Tuple[str, int], str]:
    """Flavor label per (anyon name, sector position)."""
    appearances: Dict[str, List[int]] = {}
    for pos, sector in enumerate(sectors):
        for entry in sector.anyons:
            appearances.setdefault(entry.anyon.name, []).append(pos)
    labels: Dict[Tuple[str, int], str] = {}
    for name, positions in appearances.items():
        ordered = sorted(positions, key=lambda p: (sectors[p].charge_dim, sectors[p].charge_index))
        for ordinal, pos in enumerate(ordered, start=1):
            labels[(name, pos)] = name if len(ordered) == 1 else f"{name}{_subscript(ordinal)}"
    return labels


def energy_sectors(group: FiniteGroup, couplings: Optional[CouplingConfig] = None) -> List[EnergySector]:
    """
    One sector per (class, irrep of G), classes in anyon order. Energy is
    alpha_Gamma + beta_C when couplings are given.
    """
    table = character_table(group)
    alpha = beta = None
    if couplings is not None:
        alpha = couplings.alpha_vector(table)
        beta = couplings.beta_vector(table)
    sectors: List[EnergySector] = []
    for cls in flux_order(group):
        for i, (label, dim) in enumerate(zip(table.labels, table.dims)):
            energy = None if alpha is None else float(alpha[i] + beta[cls.index])
            sector = EnergySector(flux_class=cls, charge=label, charge_index=i, charge_dim=dim, energy=energy)
            for anyon, m in sector_to_anyons(group, cls, i):
                sector.anyons.append(
                    SectorAnyon(anyon=anyon, multiplicity=m, flavor="", area=_content_area(cls, dim, anyon, m))
                )
            sectors.append(sector)

    flavors = _flavors(group, sectors)
    for pos, sector in enumerate(sectors):
        sector.anyons = [
            SectorAnyon(e.anyon, e.multiplicity, flavors[(e.anyon.name, pos)], e.area) for e in sector.anyons
        ]
        only = sector.anyons[0].anyon if len(sector.anyons) == 1 else None
        if only is not None and only.anyon_type == AnyonType.CHARGEON and sector.charge_dim > 1:
            copies = DIRECT_SUM.join(f"{only.name}{_subscript(k)}" for k in range(1, sector.charge_dim + 1))
            sector.anyons = [SectorAnyon(only, sector.anyons[0].multiplicity, copies, sector.anyons[0].area)]
            sector.label = copies
        else:
            sector.label = DIRECT_SUM.join(e.flavor for e in sector.anyons)
    return sectors


def anyon_to_sectors(anyon: AnyonLabel) -> List[Tuple[EnergySector, int]]:
    """Induce the anyon's charge to G and decompose: one sector per irreducible component."""
    group = anyon.normalizer.parent
    table = character_table(group)
    local = character_table(anyon.normalizer.group)
    induced = induce_character(local.character(anyon.charge_index), anyon.normalizer)
    parts = decompose(induced, table)
    sectors = {(s.flux_class.index, s.charge): s for s in energy_sectors(group)}
    return [(sectors[(anyon.flux_class.index, label)], m) for label, m in parts.items()]


def flavor_labels(anyon: AnyonLabel) -> List[str]:
    """Flavor labels of an anyon in ascending sector-irrep dimension."""
    group = anyon.normalizer.parent
    labels = []
    for sector in energy_sectors(group):
        for entry in sector.anyons:
            if entry.anyon.name == anyon.name:
                labels.append((sector.charge_dim, sector.charge_index, entry.flavor))
    return [label for _, _, label in sorted(labels)]


def reciprocity_deviation(group: FiniteGroup) -> int:
    """Number of (anyon, sector) pairs where restriction and induction disagree."""
    mismatches = 0
    restricted = {}
    for sector in energy_sectors(group):
        for entry in sector.anyons:
            restricted[(entry.anyon.name, sector.key)] = entry.multiplicity
    induced = {}
    for anyon in enumerate_anyons(group):
        for sector, m in anyon_to_sectors(anyon):
            induced[(anyon.name, sector.key)] = m
    for key in set(restricted) | set(induced):
        if restricted.get(key) != induced.get(key):
            mismatches += 1
    return mismatches


def incidence_components(group: FiniteGroup, cls: ConjugacyClass) -> List[Tuple[List[AnyonLabel], List[str]]]:
    """
    Connected components of the bipartite graph linking the anyons of one
    class to the irreps of G whose sectors contain them.
    """
    table = character_table(group)
    anyons = [a for a in enumerate_anyons(group) if a.flux_class.index == cls.index]
    na, ni = len(anyons), table.irrep_count
    rows, cols = [], []
    position = {a.name: k for k, a in enumerate(anyons)}
    for i in range(ni):
        for anyon, _ in sector_to_anyons(group, cls, i):
            rows.append(position[anyon.name])
            cols.append(na + i)
    graph = sp.csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(na + ni, na + ni))
    count, labels = connected_components(graph, directed=False)
    components = []
    for c in range(count):
        members = np.nonzero(labels == c)[0]
        components.append((
            [anyons[k] for k in members if k < na],
            [table.labels[k - na] for k in members if k >= na],
        ))
    return components


def mass_additivity_deviation(group: FiniteGroup, couplings: CouplingConfig) -> float:
    """
    With M = J - J_vacuum, the largest |M(C, Gamma) - M(C, 1) - M(e, Gamma)|
    over all sectors.
    """
    table = character_table(group)
    alpha = couplings.alpha_vector(table)
    beta = couplings.beta_vector(table)
    energy = beta[:, None] + alpha[None, :]
    mass = energy - energy[0, 0]
    return float(np.abs(mass - mass[:, :1] - mass[:1, :]).max())


def verify_sector_operator_identities(
    operators: OperatorService,
    site: int = 0,
    projectors: Optional[Dict[str, SparseOperator]] = None,
) -> Dict[str, float]:
    """
    Sector identities on one site space, as max-entry deviations:
    component sums of anyon projectors against sums of A_Gamma B_C,
    containment of each sector in its anyon content, and the trace
    formulas for sectors and flavors.
    """
    group = operators.group
    table = operators.table
    s = operators.lattice.site(site)
    space = operators.site_space(s)
    anyons = enumerate_anyons(group)
    if projectors is None:
        projectors = operators.anyon_projectors(s, anyons, space)
    g4 = group.order**4

    charge = {i: operators.charge_projector(s.vertex, i, space) for i in range(table.irrep_count)}
    component_dev = containment_dev = sector_trace_dev = flavor_trace_dev = anyon_trace_dev = 0.0
    for cls in flux_order(group):
        flux = operators.flux_projector(s.plaquette, cls, space)
        blocks = {i: charge[i] @ flux for i in range(table.irrep_count)}

        for members, irreps in incidence_components(group, cls):
            lhs = sum_operators([projectors[a.name] for a in members], space)
            rhs = sum_operators([blocks[table.index_of(label)] for label in irreps], space)
            component_dev = max(component_dev, lhs.distance(rhs))

        class_anyons = [a for a in anyons if a.flux_class.index == cls.index]
        for i, dim in enumerate(table.dims):
            block = blocks[i]
            content = dict((a.name, m) for a, m in sector_to_anyons(group, cls, i))
            inside = sum_operators([projectors[name] for name in content], space)
            containment_dev = max(containment_dev, (inside @ block).distance(block))
            for a in class_anyons:
                overlap = projectors[a.name] @ block
                if a.name not in content:
                    containment_dev = max(containment_dev, overlap.max_abs())
                    continue
                expected = g4 * cls.size * dim * content[a.name] * a.charge_dim
                flavor_trace_dev = max(flavor_trace_dev, abs(overlap.trace() - expected))
            sector_trace_dev = max(sector_trace_dev, abs(block.trace() - g4 * cls.size * dim * dim))

    for a in anyons:
        anyon_trace_dev = max(anyon_trace_dev, abs(projectors[a.name].trace() - g4 * a.quantum_dimension**2))

    report = {
        "component_sums": component_dev,
        "containment": containment_dev,
        "sector_traces": sector_trace_dev,
        "flavor_traces": flavor_trace_dev,
        "anyon_traces": anyon_trace_dev,
    }
    logger.info("Sector identities on %s: %s", space, report)
    return report


def sum_operators(ops: List[SparseOperator], space) -> SparseOperator:
    total = SparseOperator.zero(space)
    for op in ops:
        total = total + op
    return total


def diagram_export(group: FiniteGroup, couplings: Optional[CouplingConfig] = None) -> SplittingDiagram:
    """Rows are classes (width |C|), columns irreps of G (width d^2)."""
    table = character_table(group)
    sectors = energy_sectors(group, couplings)
    areas: Dict[str, int] = {}
    for sector in sectors:
        for entry in sector.anyons:
            areas[entry.anyon.name] = areas.get(entry.anyon.name, 0) + entry.area
    expected = {a.name: a.quantum_dimension**2 for a in enumerate_anyons(group)}
    if areas != expected or sum(s.dimension for s in sectors) != group.order**2:
        raise InvariantViolationError(
            f"Diagram areas {areas} of {group.name} do not match squared quantum dimensions {expected}"
        )
    return SplittingDiagram(
        group=group.name,
        rows=[{"class": c.label, "width": c.size} for c in flux_order(group)],
        cols=[{"irrep": label, "width": d * d} for label, d in zip(table.labels, table.dims)],
        cells=sectors,
    )


def render_text(diagram: SplittingDiagram) -> str:
    header = ["class \\ irrep"] + [f"{c['irrep']} ({c['width']})" for c in diagram.cols]
    grid = [header]
    ncols = len(diagram.cols)
    for r, row in enumerate(diagram.rows):
        cells = diagram.cells[r * ncols:(r + 1) * ncols]
        line = [f"{row['class']} ({row['width']})"]
        for cell in cells:
            energy = "" if cell.energy is None else f" J={cell.energy:g}"
            line.append(f"{cell.label} [{cell.dimension}]{energy}")
        grid.append(line)
    widths = [max(len(line[k]) for line in grid) for k in range(len(header))]
    rendered = [" | ".join(text.ljust(w) for text, w in zip(line, widths)) for line in grid]
    rendered.insert(1, "-+-".join("-" * w for w in widths))
    return "\n".join(rendered) + "\n"


def render_dot(diagram: SplittingDiagram) -> str:
    lines = [f'digraph "{diagram.group}" {{', "  node [shape=box];"]
    for k, cell in enumerate(diagram.cells):
        energy = "" if cell.energy is None else f"\\nJ={cell.energy:g}"
        lines.append(
            f'  s{k} [label="({cell.flux_class.label}, {cell.charge})\\n{cell.label}\\ndim {cell.dimension}{energy}"];'
        )
        for entry in cell.anyons:
            lines.append(f'  "{entry.anyon.name}" -> s{k} [label="{entry.flavor}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"

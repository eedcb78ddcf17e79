"""
Character Service
Character tables by class-sum diagonalization, explicit irreps of the
built-in groups, restriction, induction and decomposition of class functions.
"""

import logging
import weakref
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import settings
from ..core.exceptions import (
    ArgumentError,
    CapacityError,
    InvariantViolationError,
    NotACharacterError,
    NumericDegeneracyError,
)
from ..models.characters import CharacterTable, ClassFunction, ExplicitIrrep
from ..models.group import FiniteGroup, Subgroup
from .group_service import S3_LABELS, dihedral_cayley, s3_group

logger = logging.getLogger(__name__)

BURNSIDE_ATTEMPTS = 5
DECOMPOSE_RESIDUAL = 1e-6
OMEGA = np.exp(2j * np.pi / 3)

_tables: "weakref.WeakKeyDictionary[FiniteGroup, CharacterTable]" = weakref.WeakKeyDictionary()


def class_multiplication_coefficients(group: FiniteGroup) -> np.ndarray:
    """c[r, s, t] = #{ x in C_r : x^-1 z_t in C_s } for class representatives z_t."""
    k = len(group.classes)
    reps = np.array([c.representative for c in group.classes])
    elements = np.arange(group.order)
    partner = group.class_index[group.cayley[group.inverse[elements][:, None], reps[None, :]]]
    coeffs = np.zeros((k, k, k), dtype=np.int64)
    r_idx = np.broadcast_to(group.class_index[elements][:, None], partner.shape)
    t_idx = np.broadcast_to(np.arange(k)[None, :], partner.shape)
    np.add.at(coeffs, (r_idx, partner, t_idx), 1)
    return coeffs


def _snap(values: np.ndarray, tol: float) -> np.ndarray:
    re = np.where(np.abs(values.real) < tol, 0.0, values.real)
    im = np.where(np.abs(values.imag) < tol, 0.0, values.imag)
    nearest_re, nearest_im = np.round(re), np.round(im)
    re = np.where(np.abs(re - nearest_re) < tol, nearest_re, re)
    im = np.where(np.abs(im - nearest_im) < tol, nearest_im, im)
    return re + 1j * im


def _burnside_characters(group: FiniteGroup, tol: float) -> np.ndarray:
    coeffs = class_multiplication_coefficients(group).astype(float)
    k = coeffs.shape[0]
    sizes = np.array([c.size for c in group.classes], dtype=float)
    rng = np.random.default_rng(settings.RANDOM_SEED)
    best_gap = 0.0
    for attempt in range(BURNSIDE_ATTEMPTS):
        weights = rng.standard_normal(k)
        combined = np.tensordot(weights, coeffs, axes=1)
        eigenvalues, vectors = np.linalg.eig(combined)
        gaps = np.abs(eigenvalues[:, None] - eigenvalues[None, :]) + np.eye(k) * np.inf
        gap = float(gaps.min()) if k > 1 else np.inf
        scale = max(1.0, float(np.abs(eigenvalues).max()))
        best_gap = max(best_gap, gap)
        if gap <= tol * scale * 1e3 or np.any(np.abs(vectors[0]) < tol):
            logger.info("Class-sum eigenvalues of %s not separated (gap %.2e), retrying", group.name, gap)
            continue
        w = vectors / vectors[0]
        norms = (np.abs(w) ** 2 / sizes[:, None]).sum(axis=0)
        dims = np.sqrt(group.order / norms)
        if np.any(np.abs(dims - np.round(dims)) > 1e-6):
            logger.info("Non-integral irrep dimensions %s for %s, retrying", dims, group.name)
            continue
        return (np.round(dims)[:, None] * w.T) / sizes[None, :]
    raise NumericDegeneracyError(
        f"Could not separate the class-sum eigenvalues of {group.name} in {BURNSIDE_ATTEMPTS} attempts",
        suggested_tolerance=max(best_gap / 10, np.finfo(float).eps),
    )


def _root_of_unity_label(value: complex, order: int) -> str:
    turn = Fraction(float(np.angle(value) / (2 * np.pi)) % 1.0).limit_denominator(max(order, 2))
    m, k = turn.denominator, turn.numerator
    if m == 3:
        return "omega" if k == 1 else "omegabar"
    return f"zeta{m}^{k}"


def _dedupe(label: str, used: Dict[str, int]) -> str:
    count = used.get(label, 0) + 1
    used[label] = count
    return label if count == 1 else f"{label}_{count}"


def _label_irreps(group: FiniteGroup, chi: np.ndarray, dims: Sequence[int], tol: float) -> Tuple[str, ...]:
    labels: List[str] = []
    used: Dict[str, int] = {}
    for row, d in zip(chi, dims):
        if d == 1 and np.all(np.abs(row - 1) < tol):
            base = "1"
        elif d == 1 and np.all(np.abs(row.imag) < tol):
            base = "-1"
        elif d == 1:
            first = row[np.nonzero(np.abs(row.imag) >= tol)[0][0]]
            base = _root_of_unity_label(first, group.order)
        else:
            base = str(d)
        labels.append(_dedupe(base, used))
    return tuple(labels)


def _order_key(row: np.ndarray, d: int) -> tuple:
    # ascending dimension, then descending (re, im) over the class order
    flat = []
    for value in row:
        flat.extend([-round(value.real, 9), -round(value.imag, 9)])
    return (d, tuple(flat))


def character_table(group: FiniteGroup, tolerance: Optional[float] = None) -> CharacterTable:
    """
    Complete character table of a finite group.

    Rows are ordered by dimension, then by descending character values, so
    the trivial irrep comes first. Tables are cached per group.
    """
    if group in _tables:
        return _tables[group]
    if group.order > settings.MAX_GROUP_ORDER:
        raise CapacityError(f"Group order {group.order} exceeds {settings.MAX_GROUP_ORDER}")
    tol = tolerance or settings.NUMERIC_TOLERANCE

    if len(group.classes) == 1:
        chi = np.ones((1, 1), dtype=complex)
    else:
        chi = _snap(_burnside_characters(group, tol), tol)
    dims = [int(round(row[0].real)) for row in chi]
    order = sorted(range(len(chi)), key=lambda i: _order_key(chi[i], dims[i]))
    chi = chi[order]
    dims = [dims[i] for i in order]
    chi.setflags(write=False)

    table = CharacterTable(group=group, labels=_label_irreps(group, chi, dims, tol), dims=tuple(dims), chi=chi)
    deviation = table_orthogonality_deviation(table)
    if deviation > tol * group.order:
        raise NumericDegeneracyError(
            f"Character table of {group.name} fails orthogonality by {deviation:.2e}",
            suggested_tolerance=deviation,
        )
    logger.debug("Character table of %s: irreps %s", group.name, table.labels)
    _tables[group] = table
    return table


def class_sizes(group: FiniteGroup) -> np.ndarray:
    return np.array([c.size for c in group.classes], dtype=float)


def table_orthogonality_deviation(table: CharacterTable) -> float:
    """Largest deviation in row and column orthogonality and in sum(d^2) = |G|."""
    group = table.group
    sizes = class_sizes(group)
    rows = (table.chi * sizes) @ table.chi.conj().T
    row_dev = np.abs(rows - group.order * np.eye(table.irrep_count)).max()
    cols = table.chi.conj().T @ table.chi
    col_dev = np.abs(cols - np.diag(group.order / sizes)).max()
    dim_dev = abs(sum(d * d for d in table.dims) - group.order)
    return float(max(row_dev, col_dev, dim_dev))


def inner_product(chi: ClassFunction, psi: ClassFunction) -> complex:
    if chi.group is not psi.group:
        raise ArgumentError("Class functions live on different groups")
    sizes = class_sizes(chi.group)
    return complex((sizes * chi.values * psi.values.conj()).sum() / chi.group.order)


def restrict_character(chi: ClassFunction, subgroup: Subgroup) -> ClassFunction:
    """Restriction to a subgroup, as a class function on subgroup.group."""
    if not subgroup.is_subgroup_of(chi.group):
        raise ArgumentError(f"{subgroup.name} is not a subgroup of {chi.group.name}")
    local = subgroup.group
    values = [chi.at(subgroup.elements[c.representative]) for c in local.classes]
    return ClassFunction(local, values)


def induce_character(chi: ClassFunction, subgroup: Subgroup, group: Optional[FiniteGroup] = None) -> ClassFunction:
    """Induced class function: (1/|H|) sum over t in G with t^-1 g t in H of chi(t^-1 g t)."""
    parent = subgroup.parent
    if group is not None and group is not parent:
        raise ArgumentError(f"{subgroup.name} is not a subgroup of {group.name}")
    if chi.group is not subgroup.group:
        raise ArgumentError("Character does not live on the given subgroup")
    lookup = np.full(parent.order, -1, dtype=np.int64)
    lookup[list(subgroup.elements)] = np.arange(subgroup.order)
    on_local = chi.on_elements()
    t = np.arange(parent.order)
    values = []
    for c in parent.classes:
        conjugates = parent.cayley[parent.cayley[parent.inverse[t], c.representative], t]
        local = lookup[conjugates]
        inside = local >= 0
        values.append(on_local[local[inside]].sum() / subgroup.order)
    return ClassFunction(parent, values)


def decompose(chi: ClassFunction, table: CharacterTable) -> Dict[str, int]:
    """Irrep multiplicities, in table order, omitting zeros."""
    if chi.group is not table.group:
        raise ArgumentError("Class function and character table belong to different groups")
    sizes = class_sizes(table.group)
    raw = table.chi.conj() @ (sizes * chi.values) / table.group.order
    rounded = np.round(raw.real)
    residual = float(np.abs(raw - rounded).max())
    if residual > DECOMPOSE_RESIDUAL or np.any(rounded < 0):
        raise NotACharacterError(
            f"Class function on {table.group.name} has multiplicities {np.round(raw, 6).tolist()}"
        )
    return {label: int(m) for label, m in zip(table.labels, rounded) if m > 0}


def regular_character(group: FiniteGroup) -> ClassFunction:
    values = np.zeros(len(group.classes))
    values[0] = group.order
    return ClassFunction(group, values)


def trivial_character(group: FiniteGroup) -> ClassFunction:
    return ClassFunction(group, np.ones(len(group.classes)))


def _is_standard_cyclic(group: FiniteGroup) -> bool:
    a = np.arange(group.order)
    return bool(np.array_equal(group.cayley, (a[:, None] + a[None, :]) % group.order))


def _is_standard_s3(group: FiniteGroup) -> bool:
    return group.labels == S3_LABELS and np.array_equal(group.cayley, s3_group().cayley)


def _s3_matrices() -> Dict[str, np.ndarray]:
    w, wb = OMEGA, OMEGA.conjugate()
    two = np.array([
        [[1, 0], [0, 1]],
        [[wb, 0], [0, w]],
        [[w, 0], [0, wb]],
        [[0, 1], [1, 0]],
        [[0, w], [wb, 0]],
        [[0, wb], [w, 0]],
    ], dtype=complex)
    return {
        "trivial": np.ones((6, 1, 1), dtype=complex),
        "sign": np.array([1, 1, 1, -1, -1, -1], dtype=complex).reshape(6, 1, 1),
        "two": two,
    }


def _is_standard_dihedral(group: FiniteGroup) -> bool:
    if group.order % 2:
        return False
    return bool(np.array_equal(group.cayley, dihedral_cayley(group.order // 2)))


def _dihedral_matrices(n: int) -> List[np.ndarray]:
    """One-dimensional irreps, then the real 2x2 irreps r^k -> R(2 pi j k / n), s -> diag(1, -1)."""
    power = np.arange(2 * n) % n
    reflection = np.where(np.arange(2 * n) < n, 1.0, -1.0)
    raw = [np.ones(2 * n), reflection]
    if n % 2 == 0:
        alternating = (-1.0) ** power
        raw += [alternating, alternating * reflection]
    raw = [values.astype(complex).reshape(2 * n, 1, 1) for values in raw]
    flip = np.diag([1.0, -1.0])
    for j in range(1, (n - 1) // 2 + 1):
        theta = 2 * np.pi * j * power / n
        c, s = np.cos(theta), np.sin(theta)
        rotations = np.stack([np.stack([c, -s], axis=-1), np.stack([s, c], axis=-1)], axis=1)
        matrices = np.where(reflection[:, None, None] < 0, flip @ rotations, rotations)
        raw.append(matrices.astype(complex))
    return raw


def has_explicit_irreps(group: FiniteGroup) -> bool:
    return _is_standard_cyclic(group) or _is_standard_s3(group) or _is_standard_dihedral(group)


def explicit_irreps(group: FiniteGroup) -> List[ExplicitIrrep]:
    """
    Unitary irrep matrices for cyclic groups, dihedral groups and the
    six-element S3, labelled and ordered like the character table.
    """
    if _is_standard_cyclic(group):
        n = group.order
        a = np.arange(n)
        raw = [np.exp(2j * np.pi * k * a / n).reshape(n, 1, 1) for k in range(n)]
    elif _is_standard_s3(group):
        raw = list(_s3_matrices().values())
    elif _is_standard_dihedral(group):
        raw = _dihedral_matrices(group.order // 2)
    else:
        raise ArgumentError(f"No explicit irrep matrices are bundled for {group.name}")

    table = character_table(group)
    by_row: Dict[int, ExplicitIrrep] = {}
    for matrices in raw:
        traces = np.trace(matrices, axis1=1, axis2=2)
        distances = np.abs(table.chi[:, group.class_index] - traces[None, :]).max(axis=1)
        row = int(distances.argmin())
        by_row[row] = ExplicitIrrep(group=group, label=table.labels[row], matrices=matrices)
    if len(by_row) != table.irrep_count:
        raise InvariantViolationError(f"Explicit irreps of {group.name} do not match its character table")
    return [by_row[i] for i in range(table.irrep_count)]


def homomorphism_deviation(irrep: ExplicitIrrep) -> float:
    group = irrep.group
    m = irrep.matrices
    products = np.einsum("aij,bjk->abik", m, m)
    expected = m[group.cayley]
    return float(np.abs(products - expected).max())


def verify_got_swap(gamma: ExplicitIrrep, lam: ExplicitIrrep) -> float:
    """
    Max-entry deviation of sum_g Gamma(g) (x) Lambda(g^-1) from
    (|G|/d) delta Swap, where Swap |i>|j> = |j>|i>.
    """
    if gamma.group is not lam.group:
        raise ArgumentError("Irreps belong to different groups")
    group = gamma.group
    da, db = gamma.dim, lam.dim
    total = np.einsum("gab,gcd->acbd", gamma.matrices, lam.matrices[group.inverse]).reshape(da * db, da * db)
    expected = np.zeros((da * db, da * db), dtype=complex)
    if gamma.label == lam.label:
        for i in range(da):
            for j in range(da):
                expected[j * da + i, i * da + j] = group.order / da
    return float(np.abs(total - expected).max())


def frobenius_deviation(group: FiniteGroup, subgroup: Subgroup) -> float:
    """Largest |<Ind chi, psi>_G - <chi, Res psi>_H| over irreps chi of H and psi of G."""
    table = character_table(group)
    local = character_table(subgroup.group)
    worst = 0.0
    for i in range(local.irrep_count):
        induced = induce_character(local.character(i), subgroup)
        for j in range(table.irrep_count):
            psi = table.character(j)
            lhs = inner_product(induced, psi)
            rhs = inner_product(local.character(i), restrict_character(psi, subgroup))
            worst = max(worst, abs(lhs - rhs))
    return worst


def small_subgroups(group: FiniteGroup) -> List[Subgroup]:
    """Subgroups generated by at most two elements, deduplicated."""
    found: Dict[Tuple[int, ...], Subgroup] = {}
    for a in range(group.order):
        for b in range(a, group.order):
            members = {0}
            frontier = [0]
            while frontier:
                x = frontier.pop()
                for g in (a, b):
                    y = int(group.cayley[x, g])
                    if y not in members:
                        members.add(y)
                        frontier.append(y)
            key = tuple(sorted(members))
            if key not in found:
                found[key] = Subgroup(group, key)
    return list(found.values())


def table_to_dict(table: CharacterTable) -> Dict:
    group = table.group
    return {
        "group": group.name,
        "classes": [
            {"label": c.label, "representative": c.representative, "size": c.size} for c in group.classes
        ],
        "irreps": [
            {
                "label": label,
                "display": table.display_label(i),
                "dim": d,
                "characters": [[float(v.real), float(v.imag)] for v in table.chi[i]],
            }
            for i, (label, d) in enumerate(zip(table.labels, table.dims))
        ],
    }

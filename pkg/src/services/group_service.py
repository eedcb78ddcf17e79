"""
Group Service
Built-in groups, closure of permutation generators and group input files.
"""

import json
import logging
import re
from collections import deque
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ValidationError, model_validator

from ..core.config import settings
from ..core.exceptions import ArgumentError, CapacityError, ConfigError
from ..models.group import FiniteGroup

logger = logging.getLogger(__name__)

S3_LABELS = ("e", "y", "y^2", "x", "xy", "xy^2")
Q8_LABELS = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")
MAX_SYMMETRIC_DEGREE = 7


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], name="trivial", labels=["e"])


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ArgumentError(f"Cyclic group order must be positive, got {n}")
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, name=f"z{n}")


def dihedral_cayley(n: int) -> np.ndarray:
    """Cayley table of the dihedral group of order 2n: r^k at index k, s r^k at n + k."""
    if n < 1:
        raise ArgumentError(f"Dihedral group needs n >= 1, got {n}")
    index = np.arange(2 * n)
    flip, power = index // n, index % n
    f1, f2 = flip[:, None], flip[None, :]
    a, b = power[:, None], power[None, :]
    # r^a s = s r^-a
    exponent = np.where(f1 == 0, np.where(f2 == 0, a + b, b - a), np.where(f2 == 0, a + b, b - a)) % n
    return ((f1 ^ f2) * n) + exponent


def dihedral_group(n: int, labels: Optional[Sequence[str]] = None, name: Optional[str] = None) -> FiniteGroup:
    """
    Dihedral group of order 2n: rotations r^k at index k, reflections s r^k at n + k.
    """
    cayley = dihedral_cayley(n)
    if labels is None:
        rot = ["e", "r"] + [f"r^{k}" for k in range(2, n)]
        labels = rot[:n] + ["s"] + [f"s{r}" for r in rot[1:n]]
    return FiniteGroup(cayley, name=name or f"d{n}", labels=labels)


def s3_group() -> FiniteGroup:
    """S3 with y = (0 1 2), x a transposition and xy = y^2 x, ordered e, y, y^2, x, xy, xy^2."""
    return dihedral_group(3, labels=S3_LABELS, name="s3")


def quaternion_group() -> FiniteGroup:
    one = np.eye(2, dtype=complex)
    i = np.array([[1j, 0], [0, -1j]])
    j = np.array([[0, 1], [-1, 0]], dtype=complex)
    k = i @ j
    units = []
    for m in (one, i, j, k):
        units.extend([m, -m])
    return _group_from_matrices(units, name="q8", labels=Q8_LABELS)


def symmetric_group(n: int) -> FiniteGroup:
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise ArgumentError(f"Symmetric groups are built for 1 <= n <= {MAX_SYMMETRIC_DEGREE}, got {n}")
    if n == 1:
        return group_from_generators([[0]], name="s1")
    swap = [1, 0] + list(range(2, n))
    cycle = list(range(1, n)) + [0]
    return group_from_generators([swap, cycle], name=f"s{n}")


def _group_from_matrices(matrices: List[np.ndarray], name: str, labels: Sequence[str]) -> FiniteGroup:
    stack = np.array(matrices)
    n = len(stack)
    products = np.einsum("aij,bjk->abik", stack, stack)
    distance = np.abs(products[:, :, None] - stack[None, None]).max(axis=(3, 4))
    return FiniteGroup(distance.argmin(axis=2), name=name, labels=labels)


def cycle_notation(perm: Sequence[int]) -> str:
    seen = set()
    cycles = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cycle = [start]
        seen.add(start)
        nxt = perm[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = perm[nxt]
        cycles.append("(" + " ".join(str(p) for p in cycle) + ")")
    return "".join(cycles) or "e"


def group_from_generators(
    perms: Sequence[Sequence[int]],
    name: str = "G",
    labels: Optional[Sequence[str]] = None,
) -> FiniteGroup:
    """
    Close a set of permutations of 0..m-1 under composition.

    Elements are numbered in breadth-first discovery order starting from the
    identity; (g h)(i) = g(h(i)). Default labels are cycle notation.
    """
    gens = [tuple(int(x) for x in p) for p in perms]
    degree = len(gens[0]) if gens else 1
    for p in gens:
        if len(p) != degree or sorted(p) != list(range(degree)):
            raise ArgumentError(f"Generator {list(p)} is not a permutation of 0..{degree - 1}")

    identity = tuple(range(degree))
    elements: List[Tuple[int, ...]] = [identity]
    position: Dict[Tuple[int, ...], int] = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for s in gens:
            y = tuple(x[i] for i in s)
            if y not in position:
                if len(elements) >= settings.MAX_GROUP_ORDER:
                    raise CapacityError(f"Group closure exceeds {settings.MAX_GROUP_ORDER} elements")
                position[y] = len(elements)
                elements.append(y)
                queue.append(y)

    table = np.array(elements, dtype=np.int64)
    n = len(elements)
    logger.debug("Closed %d generators on %d points to a group of order %d", len(gens), degree, n)
    cayley = np.empty((n, n), dtype=np.int64)
    if degree <= 15:
        powers = degree ** np.arange(degree, dtype=np.int64)
        codes = table @ powers
        order = np.argsort(codes)
        for g in range(n):
            product_codes = table[g][table] @ powers
            cayley[g] = order[np.searchsorted(codes, product_codes, sorter=order)]
    else:
        for g in range(n):
            cayley[g] = [position[tuple(row)] for row in table[g][table]]

    if labels is None:
        labels = [cycle_notation(p) for p in elements]
    return FiniteGroup(cayley, name=name, labels=labels)


def from_cayley(cayley: Sequence[Sequence[int]], name: str = "G", labels: Optional[Sequence[str]] = None) -> FiniteGroup:
    if len(cayley) > settings.MAX_GROUP_ORDER:
        raise CapacityError(f"Group order {len(cayley)} exceeds {settings.MAX_GROUP_ORDER}")
    return FiniteGroup(cayley, name=name, labels=labels)


class GroupFile(BaseModel):
    """Group input file: exactly one of "cayley" or "generators"."""

    cayley: Optional[List[List[int]]] = None
    generators: Optional[List[List[int]]] = None
    labels: Optional[List[str]] = None
    name: Optional[str] = None

    @model_validator(mode="after")
    def check_single_source(self) -> "GroupFile":
        if (self.cayley is None) == (self.generators is None):
            raise ValueError('exactly one of "cayley" or "generators" is required')
        return self


def load_group_file(path: Union[str, Path]) -> FiniteGroup:
    path = Path(path)
    try:
        spec = GroupFile.model_validate(json.loads(path.read_text()))
    except (OSError, json.JSONDecodeError, ValidationError) as exc:
        raise ConfigError(f"Cannot read group file {path}: {exc}") from exc
    name = spec.name or path.stem
    try:
        if spec.cayley is not None:
            return from_cayley(spec.cayley, name=name, labels=spec.labels)
        return group_from_generators(spec.generators, name=name, labels=spec.labels)
    except ArgumentError as exc:
        raise ConfigError(f"Invalid group in {path}: {exc}") from exc


_BUILTIN_PATTERN = re.compile(r"^(z|d|s)(\d+)$")


def resolve_builtin(name: str) -> FiniteGroup:
    """Built-in names: trivial, s3, q8, z<n>, d<n>, s<n>."""
    key = name.strip().lower()
    if key == "trivial":
        return trivial_group()
    if key == "s3":
        return s3_group()
    if key == "q8":
        return quaternion_group()
    match = _BUILTIN_PATTERN.match(key)
    if match:
        family, n = match.group(1), int(match.group(2))
        try:
            if family == "z":
                if n > settings.MAX_GROUP_ORDER:
                    raise CapacityError(f"Group order {n} exceeds {settings.MAX_GROUP_ORDER}")
                return cyclic_group(n)
            if family == "d":
                if 2 * n > settings.MAX_GROUP_ORDER:
                    raise CapacityError(f"Group order {2 * n} exceeds {settings.MAX_GROUP_ORDER}")
                return dihedral_group(n)
            return symmetric_group(n)
        except ArgumentError as exc:
            raise ConfigError(str(exc)) from exc
    raise ConfigError(f"Unknown built-in group {name!r}; expected trivial, s3, q8, z<n>, d<n> or s<n>")


def group_report(group: FiniteGroup) -> Dict:
    """Order, classes and normalizer orders."""
    return {
        "name": group.name,
        "order": group.order,
        "elements": list(group.labels),
        "abelian": group.is_abelian,
        "classes": [
            {
                "label": c.label,
                "representative": c.representative,
                "members": [group.labels[g] for g in c.members],
                "size": c.size,
                "normalizer_order": group.normalizer(c.representative).order,
            }
            for c in group.classes
        ],
    }

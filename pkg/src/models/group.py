"""
Finite group models.
Elements are dense integer indices 0..n-1, the identity is index 0.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.config import settings
from ..core.exceptions import ArgumentError


@dataclass(frozen=True)
class ConjugacyClass:
    """A conjugacy class C_a = { g a g^-1 | g in G }."""

    index: int
    representative: int
    members: Tuple[int, ...]
    label: str

    @property
    def size(self) -> int:
        return len(self.members)

    def __contains__(self, g: int) -> bool:
        return g in self.members


class FiniteGroup:
    """
    Finite group given by its Cayley table.

    Invariants (identity at index 0, inverses, Latin-square rows and columns,
    associativity) are checked on construction. Associativity is checked on
    every triple up to FULL_ASSOCIATIVITY_MAX_ORDER and on 10*|G| random
    triples above.
    """

    def __init__(
        self,
        cayley: Sequence[Sequence[int]],
        name: str = "G",
        labels: Optional[Sequence[str]] = None,
    ):
        table = np.asarray(cayley, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ArgumentError("Cayley table must be a non-empty square table")
        n = table.shape[0]
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ArgumentError(f"Expected {n} element labels, got {len(labels)}")

        self.name = name
        self.order = n
        self.identity = 0
        self.labels: Tuple[str, ...] = tuple(str(label) for label in labels)
        self.cayley = table
        self.cayley.setflags(write=False)
        self._check_latin_square()
        self.inverse = self._compute_inverses()
        self.inverse.setflags(write=False)
        self._check_associativity()
        self._normalizers: Dict[int, "Subgroup"] = {}

    def _check_latin_square(self) -> None:
        n = self.order
        if self.cayley.min() < 0 or self.cayley.max() >= n:
            raise ArgumentError("Cayley table entries must be element indices")
        expected = np.arange(n)
        if not (np.array_equal(self.cayley[0], expected) and np.array_equal(self.cayley[:, 0], expected)):
            raise ArgumentError("Element 0 must be the identity")
        rows_ok = np.all(np.sort(self.cayley, axis=1) == expected)
        cols_ok = np.all(np.sort(self.cayley, axis=0) == expected[:, None])
        if not (rows_ok and cols_ok):
            raise ArgumentError("Every row and column of the Cayley table must be a permutation")

    def _compute_inverses(self) -> np.ndarray:
        # Latin-square rows contain 0 exactly once
        return np.argmax(self.cayley == self.identity, axis=1).astype(np.int64)

    def _check_associativity(self) -> None:
        n = self.order
        c = self.cayley
        if n <= settings.FULL_ASSOCIATIVITY_MAX_ORDER:
            # row a: (ab)c indexed [b, c] against a(bc)
            ok = all(np.array_equal(c[c[a]], c[a][c]) for a in range(n))
        else:
            rng = np.random.default_rng(settings.RANDOM_SEED)
            a, b, d = rng.integers(0, n, size=(3, 10 * n))
            ok = np.array_equal(c[c[a, b], d], c[a, c[b, d]])
        if not ok:
            raise ArgumentError(f"Cayley table of {self.name} is not associative")

    def _check(self, *elements: int) -> None:
        for g in elements:
            if not 0 <= int(g) < self.order:
                raise ArgumentError(f"Element index {g} out of range for {self.name} of order {self.order}")

    def multiply(self, g: int, h: int) -> int:
        self._check(g, h)
        return int(self.cayley[g, h])

    def invert(self, g: int) -> int:
        self._check(g)
        return int(self.inverse[g])

    def conjugate(self, g: int, a: int) -> int:
        """Return g a g^-1."""
        self._check(g, a)
        return int(self.cayley[self.cayley[g, a], self.inverse[g]])

    def product(self, elements: Sequence[int]) -> int:
        result = self.identity
        for g in elements:
            result = self.multiply(result, g)
        return result

    def element_order(self, g: int) -> int:
        self._check(g)
        k, x = 1, int(g)
        while x != self.identity:
            x = int(self.cayley[x, g])
            k += 1
        return k

    def label(self, g: int) -> str:
        self._check(g)
        return self.labels[g]

    def index_of(self, label: str) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise ArgumentError(f"Unknown element label {label!r} in {self.name}") from None

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.cayley, self.cayley.T))

    @cached_property
    def classes(self) -> Tuple[ConjugacyClass, ...]:
        """Conjugacy classes, identity class first, then by smallest member."""
        seen = np.zeros(self.order, dtype=bool)
        result: List[ConjugacyClass] = []
        for a in range(self.order):
            if seen[a]:
                continue
            orbit = np.unique(self.cayley[self.cayley[:, a], self.inverse])
            seen[orbit] = True
            result.append(
                ConjugacyClass(
                    index=len(result),
                    representative=a,
                    members=tuple(int(g) for g in orbit),
                    label=self.labels[a],
                )
            )
        return tuple(result)

    @cached_property
    def class_index(self) -> np.ndarray:
        """Map element index -> conjugacy class index."""
        index = np.empty(self.order, dtype=np.int64)
        for cls in self.classes:
            index[list(cls.members)] = cls.index
        index.setflags(write=False)
        return index

    def conjugacy_classes(self) -> List[ConjugacyClass]:
        return list(self.classes)

    def class_of(self, g: int) -> ConjugacyClass:
        self._check(g)
        return self.classes[int(self.class_index[g])]

    def class_by_label(self, label: str) -> ConjugacyClass:
        for cls in self.classes:
            if cls.label == label:
                return cls
        raise ArgumentError(f"Unknown conjugacy class {label!r} in {self.name}")

    def normalizer(self, a: int) -> "Subgroup":
        """
        Centralizer { b | ab = ba } of a single element.

        The quantum double literature calls this set the normalizer N_a; for a
        single element the two notions coincide, so the name is kept.
        """
        self._check(a)
        if a not in self._normalizers:
            members = np.nonzero(self.cayley[a, :] == self.cayley[:, a])[0]
            self._normalizers[a] = Subgroup(self, members)
        return self._normalizers[a]

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name} order={self.order}>"


class Subgroup:
    """A subgroup given by its elements inside a parent group."""

    def __init__(self, parent: FiniteGroup, elements: Sequence[int], name: Optional[str] = None):
        members = sorted({int(g) for g in elements})
        if not members or members[0] != parent.identity:
            raise ArgumentError("Subgroup must contain the identity")
        member_set = set(members)
        block = parent.cayley[np.ix_(members, members)]
        if not set(np.unique(block).tolist()) <= member_set:
            raise ArgumentError("Elements are not closed under multiplication")
        if not {int(parent.inverse[g]) for g in members} <= member_set:
            raise ArgumentError("Elements are not closed under inversion")
        self.parent = parent
        self.elements: Tuple[int, ...] = tuple(members)
        self.name = name or f"<{', '.join(parent.labels[g] for g in members)}>"
        self._position = {g: i for i, g in enumerate(self.elements)}

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def embedding(self) -> Tuple[int, ...]:
        """Subgroup index -> parent index."""
        return self.elements

    def __contains__(self, g: int) -> bool:
        return int(g) in self._position

    def local_index(self, g: int) -> int:
        try:
            return self._position[int(g)]
        except KeyError:
            raise ArgumentError(f"Element {g} is not in subgroup {self.name}") from None

    @cached_property
    def group(self) -> FiniteGroup:
        """The subgroup as a standalone FiniteGroup in local indices."""
        lookup = np.full(self.parent.order, -1, dtype=np.int64)
        lookup[list(self.elements)] = np.arange(self.order)
        table = lookup[self.parent.cayley[np.ix_(self.elements, self.elements)]]
        labels = [self.parent.labels[g] for g in self.elements]
        return FiniteGroup(table, name=self.name, labels=labels)

    def conjugated_by(self, k: int) -> "Subgroup":
        """Return k H k^-1."""
        return Subgroup(self.parent, [self.parent.conjugate(k, n) for n in self.elements])

    def is_subgroup_of(self, group: FiniteGroup) -> bool:
        return self.parent is group

    def __repr__(self) -> str:
        return f"<Subgroup {self.name} of {self.parent.name}>"

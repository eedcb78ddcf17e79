"""
Representation theory models.
Characters are stored per conjugacy class as complex doubles.
"""

from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from ..core.exceptions import ArgumentError
from .group import FiniteGroup


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """A function constant on conjugacy classes, one value per class."""

    group: FiniteGroup
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (len(self.group.classes),):
            raise ArgumentError(
                f"Class function on {self.group.name} needs {len(self.group.classes)} values, got {values.shape}"
            )
        object.__setattr__(self, "values", values)

    def at(self, g: int) -> complex:
        return complex(self.values[self.group.class_index[g]])

    def on_elements(self) -> np.ndarray:
        return self.values[self.group.class_index]

    @property
    def degree(self) -> complex:
        return complex(self.values[0])

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        if other.group is not self.group:
            raise ArgumentError("Class functions live on different groups")
        return ClassFunction(self.group, self.values + other.values)

    def __mul__(self, scalar: complex) -> "ClassFunction":
        return ClassFunction(self.group, self.values * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """
    Character table of a finite group.

    Rows are irreps (ascending dimension, trivial first), columns follow
    group.classes.
    """

    group: FiniteGroup
    labels: Tuple[str, ...]
    dims: Tuple[int, ...]
    chi: np.ndarray

    @property
    def irrep_count(self) -> int:
        return len(self.labels)

    def index_of(self, irrep: Union[int, str]) -> int:
        if isinstance(irrep, (int, np.integer)):
            if not 0 <= irrep < self.irrep_count:
                raise ArgumentError(f"Irrep index {irrep} out of range for {self.group.name}")
            return int(irrep)
        try:
            return self.labels.index(irrep)
        except ValueError:
            raise ArgumentError(f"Unknown irrep {irrep!r} of {self.group.name}") from None

    def character(self, irrep: Union[int, str]) -> ClassFunction:
        return ClassFunction(self.group, self.chi[self.index_of(irrep)])

    def dim(self, irrep: Union[int, str]) -> int:
        return self.dims[self.index_of(irrep)]

    def on_elements(self, irrep: Union[int, str]) -> np.ndarray:
        """Character values per group element."""
        return self.chi[self.index_of(irrep)][self.group.class_index]

    def display_label(self, irrep: Union[int, str]) -> str:
        return f"Gamma_{self.labels[self.index_of(irrep)]}"


@dataclass(frozen=True, eq=False)
class ExplicitIrrep:
    """Irrep given by one d x d unitary matrix per group element."""

    group: FiniteGroup
    label: str
    matrices: np.ndarray

    def __post_init__(self):
        matrices = np.asarray(self.matrices, dtype=complex)
        if matrices.ndim != 3 or matrices.shape[0] != self.group.order or matrices.shape[1] != matrices.shape[2]:
            raise ArgumentError(f"Irrep {self.label} needs one square matrix per element of {self.group.name}")
        object.__setattr__(self, "matrices", matrices)

    @property
    def dim(self) -> int:
        return self.matrices.shape[1]

    def __call__(self, g: int) -> np.ndarray:
        return self.matrices[g]

    def character(self) -> np.ndarray:
        """Traces per group element."""
        return np.trace(self.matrices, axis1=1, axis2=2)

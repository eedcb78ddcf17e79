"""
Anyon models for the Drinfeld double D(G).
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..core.exceptions import ArgumentError
from .group import ConjugacyClass, FiniteGroup, Subgroup


class AnyonType(str, Enum):
    """Classification used in anyon tables."""
    VACUUM = "vacuum"
    CHARGEON = "chargeon"
    FLUXON = "fluxon"
    DYON = "dyon"


@dataclass(frozen=True, eq=False)
class AnyonLabel:
    """
    An anyon (C, Gamma): a conjugacy class and an irrep of the normalizer of
    the class representative.
    """

    name: str
    flux_class: ConjugacyClass
    normalizer: Subgroup
    charge: str
    charge_index: int
    charge_dim: int
    anyon_type: AnyonType

    @property
    def quantum_dimension(self) -> int:
        return self.flux_class.size * self.charge_dim

    @property
    def representative(self) -> int:
        return self.flux_class.representative

    def __repr__(self) -> str:
        return f"<Anyon {self.name} ({self.flux_class.label}, {self.charge})>"


@dataclass(frozen=True, eq=False)
class FluxPairState:
    """Two fluxons side by side: amplitudes over ordered pairs |a, b>."""

    group: FiniteGroup
    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=complex)
        n = self.group.order
        if amplitudes.shape != (n * n,):
            raise ArgumentError(f"Flux pair state needs {n * n} amplitudes")
        if abs(np.linalg.norm(amplitudes) - 1) > 1e-10:
            raise ArgumentError("Flux pair state must be normalized")
        object.__setattr__(self, "amplitudes", amplitudes)

    @staticmethod
    def index(group: FiniteGroup, a: int, b: int) -> int:
        return a * group.order + b

    @classmethod
    def basis(cls, group: FiniteGroup, a: int, b: int) -> "FluxPairState":
        amplitudes = np.zeros(group.order**2, dtype=complex)
        amplitudes[cls.index(group, a, b)] = 1
        return cls(group, amplitudes)

    def support(self, tol: float = 1e-12):
        """Basis pairs (a, b) carrying non-zero amplitude."""
        n = self.group.order
        return [(int(i) // n, int(i) % n) for i in np.nonzero(np.abs(self.amplitudes) > tol)[0]]

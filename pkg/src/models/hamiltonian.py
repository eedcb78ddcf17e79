"""
Hamiltonian and spectrum models.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .couplings import CouplingConfig
from .group import FiniteGroup
from .lattice import TorusLattice


class HamiltonianKind(str, Enum):
    KITAEV = "kitaev"
    REFINED = "refined"
    MASSIVE6 = "massive6"


class KitaevForm(str, Enum):
    """Normalization of the Kitaev Hamiltonian terms."""
    PROJECTOR = "projector"  # -A_1 - B_e, normalized projectors
    STABILIZER = "stabilizer"  # -(2A_1 - 1) - (2B_e - 1); XXXX/ZZZZ for Z2
    UNNORMALIZED = "unnormalized"  # -sum_g A_g - B_e


class SpectrumMode(str, Enum):
    FULL = "full"
    BLOCK = "block"
    LOWK = "lowk"
    AUTO = "auto"


@dataclass
class HamiltonianSpec:
    kind: HamiltonianKind
    lattice: TorusLattice
    group: FiniteGroup
    couplings: Optional[CouplingConfig] = None
    masses: Optional[Dict[str, float]] = None  # anyon name -> mass
    kitaev_form: KitaevForm = KitaevForm.STABILIZER
    site: Optional[int] = None  # restrict to one site's 6-edge space


@dataclass(frozen=True)
class SpectrumLevel:
    energy: float
    multiplicity: int
    sectors: Tuple[str, ...] = ()


@dataclass
class SpectrumReport:
    """Sorted energy levels with multiplicities."""

    dimension: int
    mode: SpectrumMode
    levels: List[SpectrumLevel] = field(default_factory=list)
    complete: bool = True  # False for low-k spectra

    @property
    def ground_energy(self) -> float:
        return self.levels[0].energy

    @property
    def ground_degeneracy(self) -> int:
        return self.levels[0].multiplicity

    @property
    def energies(self) -> List[float]:
        return [level.energy for level in self.levels]

    def multiplicity_of(self, energy: float, tol: float = 1e-8) -> int:
        return sum(level.multiplicity for level in self.levels if abs(level.energy - energy) <= tol)

    def to_dict(self) -> Dict:
        return {
            "dimension": self.dimension,
            "mode": self.mode.value,
            "complete": self.complete,
            "ground_energy": self.ground_energy,
            "ground_degeneracy": self.ground_degeneracy,
            "levels": [
                {"energy": level.energy, "multiplicity": level.multiplicity, "sectors": list(level.sectors)}
                for level in self.levels
            ],
        }

"""
Energy sector models.
A sector is the common image of one charge projector A_Gamma and one flux
projector B_C on a site.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .anyon import AnyonLabel
from .group import ConjugacyClass


@dataclass(frozen=True, eq=False)
class SectorAnyon:
    """An anyon inside a sector, with its restriction multiplicity and flavor label."""

    anyon: AnyonLabel
    multiplicity: int
    flavor: str
    area: int  # share of the |G|^2 diagram


@dataclass(eq=False)
class EnergySector:
    flux_class: ConjugacyClass
    charge: str
    charge_index: int
    charge_dim: int
    energy: Optional[float] = None
    anyons: List[SectorAnyon] = field(default_factory=list)
    label: str = ""

    @property
    def dimension(self) -> int:
        return self.flux_class.size * self.charge_dim**2

    @property
    def key(self) -> tuple:
        return (self.flux_class.index, self.charge_index)

    def to_dict(self) -> Dict:
        return {
            "class": self.flux_class.label,
            "irrep": self.charge,
            "dim": self.dimension,
            "energy": self.energy,
            "label": self.label,
            "anyons": [
                {"label": a.anyon.name, "flavor": a.flavor, "mult": a.multiplicity, "area": a.area}
                for a in self.anyons
            ],
        }


@dataclass
class SplittingDiagram:
    """Rows: conjugacy classes (width |C|). Columns: irreps of G (width d^2)."""

    group: str
    rows: List[Dict] = field(default_factory=list)
    cols: List[Dict] = field(default_factory=list)
    cells: List[EnergySector] = field(default_factory=list)

    @property
    def total_area(self) -> int:
        return sum(cell.dimension for cell in self.cells)

    def anyon_areas(self) -> Dict[str, int]:
        areas: Dict[str, int] = {}
        for cell in self.cells:
            for entry in cell.anyons:
                areas[entry.anyon.name] = areas.get(entry.anyon.name, 0) + entry.area
        return areas

    def to_dict(self) -> Dict:
        return {
            "group": self.group,
            "rows": self.rows,
            "cols": self.cols,
            "cells": [cell.to_dict() for cell in self.cells],
        }

"""
Coupling configuration for the refined Hamiltonian.
File format: {"alpha": {"<irrep label>": value}, "beta": {"<class label>": value}}
"""

import json
from pathlib import Path
from typing import Dict, List, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from ..core.exceptions import ConfigError
from .characters import CharacterTable


class CouplingConfig(BaseModel):
    """alpha per irrep of G (charge terms), beta per conjugacy class (flux terms)."""

    alpha: Dict[str, float] = Field(default_factory=dict)
    beta: Dict[str, float] = Field(default_factory=dict)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "CouplingConfig":
        try:
            data = json.loads(Path(path).read_text())
            return cls.model_validate(data)
        except (OSError, json.JSONDecodeError, ValidationError) as exc:
            raise ConfigError(f"Cannot read couplings from {path}: {exc}") from exc

    @classmethod
    def uniform(cls, table: CharacterTable, alpha: float = 0.0, beta: float = 0.0) -> "CouplingConfig":
        return cls(
            alpha={label: alpha for label in table.labels},
            beta={c.label: beta for c in table.group.classes},
        )

    @classmethod
    def from_values(cls, table: CharacterTable, alpha: List[float], beta: List[float]) -> "CouplingConfig":
        """Positional couplings: alpha in irrep order, beta in class order."""
        classes = table.group.classes
        if len(alpha) != table.irrep_count or len(beta) != len(classes):
            raise ConfigError(
                f"Expected {table.irrep_count} alpha and {len(classes)} beta values, got {len(alpha)} and {len(beta)}"
            )
        return cls(
            alpha=dict(zip(table.labels, map(float, alpha))),
            beta={c.label: float(b) for c, b in zip(classes, beta)},
        )

    @classmethod
    def kitaev(cls, table: CharacterTable, charge_weight: float = -1.0) -> "CouplingConfig":
        """Couplings selecting only the trivial charge and the trivial flux."""
        config = cls.uniform(table)
        config.alpha[table.labels[0]] = charge_weight
        config.beta[table.group.classes[0].label] = -1.0
        return config

    def validate_for(self, table: CharacterTable) -> None:
        """Keys must cover exactly the irreps and classes of the group."""
        irreps = set(table.labels)
        classes = {c.label for c in table.group.classes}
        problems = []
        if set(self.alpha) != irreps:
            problems.append(
                f"alpha keys {sorted(self.alpha)} must be exactly the irreps {sorted(irreps)}"
            )
        if set(self.beta) != classes:
            problems.append(
                f"beta keys {sorted(self.beta)} must be exactly the classes {sorted(classes)}"
            )
        if problems:
            raise ConfigError("Incomplete couplings: " + "; ".join(problems))

    def alpha_vector(self, table: CharacterTable) -> np.ndarray:
        self.validate_for(table)
        return np.array([self.alpha[label] for label in table.labels])

    def beta_vector(self, table: CharacterTable) -> np.ndarray:
        self.validate_for(table)
        return np.array([self.beta[c.label] for c in table.group.classes])

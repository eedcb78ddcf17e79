"""
Anyon Service
Anyons of the quantum double D(G), quantum dimensions and flux-pair braiding.
"""

import logging
import string
from typing import Dict, List

import numpy as np
import scipy.sparse as sp

from ..core.exceptions import ArgumentError, InvariantViolationError
from ..models.anyon import AnyonLabel, AnyonType, FluxPairState
from ..models.group import FiniteGroup
from .character_service import character_table

logger = logging.getLogger(__name__)

TORIC_CODE_NAMES = ("1", "e", "m", "eps")


def _letter_name(k: int) -> str:
    letters = string.ascii_uppercase
    name = ""
    k += 1
    while k:
        k, rem = divmod(k - 1, 26)
        name = letters[rem] + name
    return name


def flux_order(group: FiniteGroup):
    """Classes sorted by the order of their representative, then by class index."""
    return sorted(group.classes, key=lambda c: (group.element_order(c.representative), c.index))


def enumerate_anyons(group: FiniteGroup) -> List[AnyonLabel]:
    """
    One anyon per (conjugacy class, irrep of the normalizer of its
    representative). Names run A, B, C, ... in that order; groups of order
    two get the toric-code names 1, e, m, eps.
    """
    anyons: List[AnyonLabel] = []
    for cls in flux_order(group):
        normalizer = group.normalizer(cls.representative)
        table = character_table(normalizer.group)
        for i, (label, dim) in enumerate(zip(table.labels, table.dims)):
            if cls.index == 0:
                kind = AnyonType.VACUUM if i == 0 else AnyonType.CHARGEON
            else:
                kind = AnyonType.FLUXON if i == 0 else AnyonType.DYON
            k = len(anyons)
            name = TORIC_CODE_NAMES[k] if group.order == 2 else _letter_name(k)
            anyons.append(
                AnyonLabel(
                    name=name,
                    flux_class=cls,
                    normalizer=normalizer,
                    charge=label,
                    charge_index=i,
                    charge_dim=dim,
                    anyon_type=kind,
                )
            )
    return anyons


def anyon_by_name(group: FiniteGroup, name: str) -> AnyonLabel:
    for anyon in enumerate_anyons(group):
        if anyon.name == name:
            return anyon
    raise ArgumentError(f"Unknown anyon {name!r} of D({group.name})")


def total_quantum_dimension_sq(group: FiniteGroup) -> int:
    total = sum(a.quantum_dimension**2 for a in enumerate_anyons(group))
    if total != group.order**2:
        raise InvariantViolationError(
            f"Sum of squared quantum dimensions of D({group.name}) is {total}, expected {group.order**2}"
        )
    return total


def _braid_targets(group: FiniteGroup) -> np.ndarray:
    n = group.order
    pairs = np.arange(n * n)
    a, b = pairs // n, pairs % n
    return group.cayley[group.cayley[a, b], group.inverse[a]] * n + a


def braid_operator(group: FiniteGroup) -> sp.csr_matrix:
    """Permutation matrix of |a, b> -> |a b a^-1, a> on the |G|^2 pair basis."""
    n2 = group.order**2
    targets = _braid_targets(group)
    return sp.csr_matrix((np.ones(n2), (targets, np.arange(n2))), shape=(n2, n2))


def braid(state: FluxPairState) -> FluxPairState:
    targets = _braid_targets(state.group)
    amplitudes = np.zeros_like(state.amplitudes)
    amplitudes[targets] = state.amplitudes
    return FluxPairState(state.group, amplitudes)


def monodromy(state: FluxPairState) -> FluxPairState:
    """Full exchange: braid applied twice."""
    return braid(braid(state))


def monodromy_image(group: FiniteGroup, a: int, b: int):
    """|a, b> -> |(ab) a (ab)^-1, (ab) b (ab)^-1>."""
    ab = group.multiply(a, b)
    return group.conjugate(ab, a), group.conjugate(ab, b)


def anyon_table(group: FiniteGroup) -> List[Dict]:
    return [
        {
            "label": a.name,
            "class": a.flux_class.label,
            "representative": a.representative,
            "normalizer_order": a.normalizer.order,
            "irrep": a.charge,
            "quantum_dimension": a.quantum_dimension,
            "type": a.anyon_type.value,
        }
        for a in enumerate_anyons(group)
    ]

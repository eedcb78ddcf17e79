"""
Operator models.
Sparse complex operators on tensor products of |G|-dimensional edge qudits.
Basis ordering: local edge 0 is the fastest-varying digit.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence, Tuple

import numpy as np
import scipy.sparse as sp

from ..core.config import settings
from ..core.exceptions import ArgumentError, CapacityError


class Sign(str, Enum):
    """L+/T+ act from the left (along the edge), L-/T- from the right."""
    PLUS = "+"
    MINUS = "-"


class HilbertSpace:
    """Tensor product of one |G|-dimensional qudit per listed lattice edge."""

    def __init__(self, qudit_dim: int, edges: Sequence[int]):
        edges = tuple(int(e) for e in edges)
        if len(set(edges)) != len(edges):
            raise ArgumentError(f"Duplicate edges in Hilbert space {edges}")
        total = qudit_dim ** len(edges)
        if total > settings.ADDRESSING_LIMIT:
            raise CapacityError(
                f"Hilbert space of {len(edges)} edges with qudit dimension {qudit_dim} "
                f"has dimension {total} > {settings.ADDRESSING_LIMIT}"
            )
        self.qudit_dim = qudit_dim
        self.edges: Tuple[int, ...] = edges
        self.total_dim = total
        self._positions = {e: k for k, e in enumerate(edges)}

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def position(self, edge: int) -> int:
        try:
            return self._positions[edge]
        except KeyError:
            raise ArgumentError(f"Edge {edge} is not part of this Hilbert space {self.edges}") from None

    def contains(self, edges: Iterable[int]) -> bool:
        return all(e in self._positions for e in edges)

    @cached_property
    def powers(self) -> np.ndarray:
        return self.qudit_dim ** np.arange(self.num_edges, dtype=np.int64)

    @cached_property
    def digits(self) -> np.ndarray:
        """Edge values of every basis state, shape (total_dim, num_edges)."""
        index = np.arange(self.total_dim, dtype=np.int64)
        digits = np.empty((self.total_dim, self.num_edges), dtype=np.int32)
        for k, power in enumerate(self.powers):
            digits[:, k] = (index // power) % self.qudit_dim
        digits.setflags(write=False)
        return digits

    def index_of(self, digits: np.ndarray) -> np.ndarray:
        return np.asarray(digits, dtype=np.int64) @ self.powers

    def basis_state(self, values: Sequence[int]) -> int:
        """Index of the basis state with the given edge values (in local order)."""
        return int(np.dot(np.asarray(values, dtype=np.int64), self.powers))

    def __eq__(self, other) -> bool:
        return isinstance(other, HilbertSpace) and other.qudit_dim == self.qudit_dim and other.edges == self.edges

    def __hash__(self) -> int:
        return hash((self.qudit_dim, self.edges))

    def __repr__(self) -> str:
        return f"<HilbertSpace |G|={self.qudit_dim} edges={self.edges} dim={self.total_dim}>"


@dataclass(frozen=True, eq=False)
class SparseOperator:
    """Complex CSR matrix acting on a HilbertSpace."""

    space: HilbertSpace
    matrix: sp.csr_matrix

    def __post_init__(self):
        matrix = sp.csr_matrix(self.matrix, dtype=complex)
        n = self.space.total_dim
        if matrix.shape != (n, n):
            raise ArgumentError(f"Operator shape {matrix.shape} does not match space dimension {n}")
        small = np.abs(matrix.data) <= settings.DROP_TOLERANCE
        if small.any():
            matrix.data[small] = 0
        matrix.eliminate_zeros()
        matrix.sort_indices()
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def identity(cls, space: HilbertSpace) -> "SparseOperator":
        return cls(space, sp.identity(space.total_dim, dtype=complex, format="csr"))

    @classmethod
    def zero(cls, space: HilbertSpace) -> "SparseOperator":
        return cls(space, sp.csr_matrix((space.total_dim, space.total_dim), dtype=complex))

    @classmethod
    def permutation(cls, space: HilbertSpace, targets: np.ndarray) -> "SparseOperator":
        """Operator sending basis state i to basis state targets[i]."""
        n = space.total_dim
        matrix = sp.csr_matrix((np.ones(n, dtype=complex), (targets, np.arange(n))), shape=(n, n))
        return cls(space, matrix)

    @classmethod
    def diagonal(cls, space: HilbertSpace, values: np.ndarray) -> "SparseOperator":
        return cls(space, sp.diags(np.asarray(values, dtype=complex), format="csr"))

    def _same_space(self, other: "SparseOperator") -> None:
        if other.space != self.space:
            raise ArgumentError(f"Operators act on different spaces: {self.space} vs {other.space}")

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._same_space(other)
        return SparseOperator(self.space, self.matrix + other.matrix)

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        self._same_space(other)
        return SparseOperator(self.space, self.matrix - other.matrix)

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        self._same_space(other)
        return SparseOperator(self.space, self.matrix @ other.matrix)

    def __mul__(self, scalar: complex) -> "SparseOperator":
        return SparseOperator(self.space, self.matrix * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> "SparseOperator":
        return self * -1

    @property
    def dim(self) -> int:
        return self.space.total_dim

    @property
    def nnz(self) -> int:
        return self.matrix.nnz

    def adjoint(self) -> "SparseOperator":
        return SparseOperator(self.space, self.matrix.conj().T)

    def trace(self) -> complex:
        return complex(self.matrix.diagonal().sum())

    def max_abs(self) -> float:
        return float(np.abs(self.matrix.data).max()) if self.matrix.nnz else 0.0

    def distance(self, other: "SparseOperator") -> float:
        """Max-entry norm of the difference."""
        self._same_space(other)
        diff = (self.matrix - other.matrix).tocsr()
        return float(np.abs(diff.data).max()) if diff.nnz else 0.0

    def commutator(self, other: "SparseOperator") -> "SparseOperator":
        return self @ other - other @ self

    def hermiticity_residue(self) -> float:
        return self.distance(self.adjoint())

    def apply(self, vector: np.ndarray) -> np.ndarray:
        return self.matrix @ vector

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def embed(self, target: HilbertSpace) -> "SparseOperator":
        """Extend to a larger space by acting as the identity on the extra edges."""
        if target.qudit_dim != self.space.qudit_dim or not target.contains(self.space.edges):
            raise ArgumentError(f"Cannot embed an operator on {self.space} into {target}")
        if target.total_dim > settings.MAX_HILBERT_DIM:
            raise CapacityError(f"Target space dimension {target.total_dim} exceeds {settings.MAX_HILBERT_DIM}")
        positions = [target.position(e) for e in self.space.edges]
        place = target.powers[positions]
        digits = target.digits[:, positions]
        local = digits @ self.space.powers
        base = np.arange(target.total_dim, dtype=np.int64) - digits @ place
        offsets = self.space.digits @ place  # local basis state -> target offset

        csc = self.matrix.tocsc()
        counts = np.diff(csc.indptr)[local]
        cols = np.repeat(np.arange(target.total_dim, dtype=np.int64), counts)
        starts = np.repeat(csc.indptr[local] - (np.cumsum(counts) - counts), counts)
        picks = starts + np.arange(counts.sum(), dtype=np.int64)
        rows = base[cols] + offsets[csc.indices[picks]]
        n = target.total_dim
        return SparseOperator(target, sp.csr_matrix((csc.data[picks], (rows, cols)), shape=(n, n)))

    def to_coo_text(self) -> str:
        """Coordinate-list dump: header 'dim nnz', then 'row col re im' lines."""
        coo = self.matrix.tocoo()
        lines = [f"{self.dim} {coo.nnz}"]
        lines.extend(
            f"{r} {c} {v.real:.17g} {v.imag:.17g}" for r, c, v in zip(coo.row, coo.col, coo.data)
        )
        return "\n".join(lines) + "\n"

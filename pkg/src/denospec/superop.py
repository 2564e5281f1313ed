"""Dense superoperators acting on row-stacked density matrices.

Vectorization convention: vec(rho) row-stacks, so the map rho -> X rho Y
has matrix X (x) Y^T and a Kraus-style term rho -> J rho J^dag becomes
J (x) J^*.  The trace functional is the flat vector vec(identity).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Superoperator:
    """An N^2 x N^2 complex matrix on vectorized density matrices.

    ``label`` records the role of the map: one of ``lindbladian``,
    ``noise-channel``, ``folded-unitary``, ``noisy-circuit``, ``denoiser``,
    ``bch-denoiser`` or ``generic``.
    """

    n_hilbert: int
    matrix: np.ndarray
    label: str = "generic"

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __matmul__(self, other: "Superoperator") -> "Superoperator":
        if self.n_hilbert != other.n_hilbert:
            raise ValueError("superoperator dimensions do not match")
        return Superoperator(self.n_hilbert, self.matrix @ other.matrix)

    def relabel(self, label: str) -> "Superoperator":
        return Superoperator(self.n_hilbert, self.matrix, label)


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Row-stack a density matrix into a length-N^2 vector."""
    return np.asarray(rho).reshape(-1)


def unvectorize(vec: np.ndarray, dim: int) -> np.ndarray:
    return np.asarray(vec).reshape(dim, dim)


def flat_trace_vector(dim: int) -> np.ndarray:
    """vec(identity): the left fixed point of every trace-preserving map."""
    return np.eye(dim).reshape(-1)


def identity_superoperator(dim: int) -> Superoperator:
    return Superoperator(dim, np.eye(dim * dim, dtype=complex))


def trace_preservation_defect(s: Superoperator) -> float:
    """max |v^T S - v^T| for the flat trace vector v; 0 for CPTP maps."""
    v = flat_trace_vector(s.n_hilbert)
    return float(np.abs(s.matrix.T @ v - v).max())

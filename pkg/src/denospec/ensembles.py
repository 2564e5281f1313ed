"""Seeded random-matrix ensembles.

Ginibre matrices, Wishart-type Kossakowski coupling matrices for global
noise, rotated-diagonal Kossakowski matrices for local noise, and Haar
unitaries via phase-corrected QR.  All samplers are pure functions of
(parameters, seed).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensionError
from .rng import RngSeed, as_seed

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
PSD_TOL = -1e-10


@dataclass(frozen=True)
class KossakowskiMatrix:
    """Hermitian PSD coupling matrix with a fixed trace normalization.

    ``matrix`` has shape (d, d) where d is the number of dissipation
    channels; ``normalization`` is the enforced value of Tr K.
    """

    matrix: np.ndarray
    normalization: float

    @property
    def order(self) -> int:
        return self.matrix.shape[0]

    def hermiticity_defect(self) -> float:
        return float(np.abs(self.matrix - self.matrix.conj().T).max())

    def trace_defect(self) -> float:
        return float(abs(np.trace(self.matrix).real - self.normalization))

    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix).min())

    def validate(self, full: bool = False) -> None:
        """Check the type invariants; ``full=True`` adds the PSD eigencheck."""
        if self.hermiticity_defect() > HERMITICITY_TOL:
            raise ValueError("Kossakowski matrix is not Hermitian")
        if self.trace_defect() > TRACE_TOL:
            raise ValueError(
                f"Tr K = {np.trace(self.matrix).real} deviates from "
                f"{self.normalization}"
            )
        if full and self.min_eigenvalue() < PSD_TOL:
            raise ValueError("Kossakowski matrix has a negative eigenvalue")


def sample_ginibre(order: int, seed: RngSeed | int) -> np.ndarray:
    """Square complex Ginibre matrix.

    Entries are i.i.d. complex Gaussian with mean 0; real and imaginary
    parts each have variance 1/2, so E|G_ij|^2 = 1.
    """
    if order < 1:
        raise InvalidDimensionError(f"order must be >= 1, got {order}")
    rng = as_seed(seed).generator()
    return (
        rng.standard_normal((order, order)) + 1j * rng.standard_normal((order, order))
    ) / np.sqrt(2.0)


def sample_global_kossakowski(dim: int, seed: RngSeed | int) -> KossakowskiMatrix:
    """Wishart-type coupling matrix of order dim^2 - 1 with Tr K = dim.

    K = dim * G^dag G / Tr(G^dag G) for a square Ginibre G; positive
    semidefinite by construction, trace enforced exactly.
    """
    if dim < 2:
        raise InvalidDimensionError(f"dimension must be >= 2, got {dim}")
    g = sample_ginibre(dim * dim - 1, seed)
    w = g.conj().T @ g
    w = 0.5 * (w + w.conj().T)  # kill roundoff asymmetry
    k = dim * w / np.trace(w).real
    k.setflags(write=False)
    out = KossakowskiMatrix(matrix=k, normalization=float(dim))
    out.validate()
    return out


def sample_local_kossakowski(
    n_channels: int, normalization: float, seed: RngSeed | int
) -> KossakowskiMatrix:
    """Rotated-diagonal coupling matrix: K = Q^dag diag(p) Q, Tr K fixed.

    The diagonal entries p are i.i.d. uniform on (0, 1] (any strictly
    positive law gives a PSD K; uniform is the simplest), Q is Haar on
    U(n_channels), and the result is rescaled so that Tr K equals
    ``normalization``.  Draw order is p first, then Q.
    """
    if n_channels < 1:
        raise InvalidDimensionError(f"channel count must be >= 1, got {n_channels}")
    rng = as_seed(seed).generator()
    p = 1.0 - rng.random(n_channels)  # (0, 1]
    q = _haar_from_generator(n_channels, rng)
    k = (q.conj().T * p) @ q
    k = 0.5 * (k + k.conj().T)
    k *= normalization / np.trace(k).real
    k.setflags(write=False)
    out = KossakowskiMatrix(matrix=k, normalization=float(normalization))
    out.validate()
    return out


def _haar_from_generator(dim: int, rng: np.random.Generator) -> np.ndarray:
    """QR of a Ginibre matrix with the diagonal-phase correction.

    Raw QR is not Haar-distributed; scaling column j by the phase of R_jj
    fixes the phase convention and recovers the Haar factor exactly.
    """
    h = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(h)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def sample_haar_unitary(dim: int, seed: RngSeed | int) -> np.ndarray:
    """Haar-random unitary on U(dim)."""
    if dim < 1:
        raise InvalidDimensionError(f"dimension must be >= 1, got {dim}")
    return _haar_from_generator(dim, as_seed(seed).generator())

"""The denoiser: the (unphysical) map undoing the noise of a circuit.

The denoiser D is defined by D Lambda = U, i.e. D = U Lambda^{-1}.  Its
linear-order approximation combines the per-layer generators after rotating
each one past the unitary layers that follow it:

    Lambda = [ exp(t Lt_m) ... exp(t Lt_1) ] U,     Lt_i = W_i L_i W_i^dag,

with W_i the folded product U_m ... U_{i+1} (W_m = identity).  Combining
the exponentials and keeping only the term linear in t gives
D_lin = exp(-t sum_i Lt_i).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.linalg import lapack

from .channels import NoisyCircuit, matrix_exponential
from .errors import NonInvertibleChannelError
from .superop import Superoperator

RCOND_MIN = 1e-12


@dataclass(frozen=True)
class DenoiserResult:
    denoiser: Superoperator
    condition_estimate: float
    rotated_generators: tuple[Superoperator, ...] | None = None
    linear_denoiser: Superoperator | None = None


def _solve_right(lu_piv, rhs: np.ndarray) -> np.ndarray:
    # Solve X A = rhs given the LU factors of A, via A^T X^T = rhs^T.
    return sla.lu_solve(lu_piv, rhs.T, trans=1).T


def compute_denoiser(circuit: NoisyCircuit, linear: bool = False) -> DenoiserResult:
    """Exact denoiser D = U Lambda^{-1} with a condition estimate.

    Inverts Lambda by LU factorization with partial pivoting plus one step
    of iterative refinement.  Raises :class:`NonInvertibleChannelError` when
    the 1-norm reciprocal condition estimate falls below 1e-12 (the channel
    spectrum has effectively reached the puncture at 0).  With
    ``linear=True`` the rotated generators and the linear-order denoiser
    are computed as well.
    """
    lam = circuit.channel.matrix
    target = circuit.target.matrix
    anorm = np.linalg.norm(lam, 1)
    lu_piv = sla.lu_factor(lam)
    rcond, info = lapack.zgecon(lu_piv[0], anorm, norm="1")
    if info != 0 or not np.isfinite(rcond) or rcond < RCOND_MIN:
        raise NonInvertibleChannelError(
            f"channel is numerically singular (rcond = {rcond:.3e})",
            condition_estimate=float(1.0 / rcond) if rcond > 0 else np.inf,
        )
    d = _solve_right(lu_piv, target)
    d += _solve_right(lu_piv, target - d @ lam)  # one refinement step
    result = Superoperator(circuit.n_hilbert, d, label="denoiser")
    rotated = None
    lin = None
    if linear:
        rotated = tuple(rotated_lindbladians(circuit))
        lin = bch_linear_denoiser(rotated, circuit.spec.t)
    return DenoiserResult(
        denoiser=result,
        condition_estimate=float(1.0 / rcond),
        rotated_generators=rotated,
        linear_denoiser=lin,
    )


def rotated_lindbladians(circuit: NoisyCircuit) -> list[Superoperator]:
    """Per-layer generators conjugated past the later unitary layers.

    Returns [Lt_1, ..., Lt_m] with Lt_i = W_i L_i W_i^dag and
    W_i = U_m ... U_{i+1}, so that
    Lambda = exp(t Lt_m) ... exp(t Lt_1) U holds exactly.
    """
    dim2 = circuit.channel.dim
    w = np.eye(dim2, dtype=complex)
    out: list[Superoperator] = []
    for layer in reversed(circuit.layers):
        mat = w @ layer.generator.matrix @ w.conj().T
        out.append(Superoperator(circuit.n_hilbert, mat, label="lindbladian"))
        w = w @ layer.folded.matrix
    out.reverse()
    return out


def bch_linear_denoiser(
    rotated: tuple[Superoperator, ...] | list[Superoperator], t: float
) -> Superoperator:
    """exp(-t sum_i Lt_i): the denoiser to linear order in t."""
    total = rotated[0].matrix.copy()
    for s in rotated[1:]:
        total += s.matrix
    gen = Superoperator(rotated[0].n_hilbert, total, label="lindbladian")
    return matrix_exponential(gen, -t).relabel("bch-denoiser")


def bch_commutator_correction(
    rotated: tuple[Superoperator, ...] | list[Superoperator], t: float
) -> np.ndarray:
    """Second-order term (t^2/2) sum_{j<k} [Lt_j, Lt_k]; diagnostic only."""
    dim2 = rotated[0].dim
    acc = np.zeros((dim2, dim2), dtype=complex)
    for j in range(len(rotated)):
        for k in range(j + 1, len(rotated)):
            a, b = rotated[j].matrix, rotated[k].matrix
            acc += a @ b - b @ a
    return 0.5 * t * t * acc


def defining_relation_defect(circuit: NoisyCircuit, denoiser: Superoperator) -> float:
    """max|D Lambda - U| / max|D|."""
    residual = denoiser.matrix @ circuit.channel.matrix - circuit.target.matrix
    return float(np.abs(residual).max() / np.abs(denoiser.matrix).max())

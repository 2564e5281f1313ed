"""Dense Lindblad generators from a coupling matrix and an operator basis.

The generator is the standard dissipator sum over basis operators F with
coupling matrix K,

    L = sum_{l,k} K_{k,l} [ F_l (x) F_k^* - 1/2 (F_k^dag F_l (x) 1
                                                 + 1 (x) F_l^T F_k^*) ],

written here in the row-stacking convention of :mod:`denospec.superop`.
The default build path diagonalizes K = Q^dag D Q and accumulates the d
rank-one jump terms; the raw double-sum contraction is retained as a
cross-check for small dimensions.  Both yield Tr L = -N Tr K = -N^2.
"""

from __future__ import annotations

import numpy as np

from .basis import OperatorBasis
from .ensembles import KossakowskiMatrix
from .errors import ShapeMismatchError
from .superop import Superoperator


def _check_shapes(k: KossakowskiMatrix, basis: OperatorBasis) -> None:
    if k.order != len(basis):
        raise ShapeMismatchError(
            f"coupling matrix order {k.order} != basis size {len(basis)}"
        )


def _assemble(first_term_flat: np.ndarray, anticomm: np.ndarray, dim: int) -> np.ndarray:
    # first_term_flat carries indices [(ab), (cd)]; the superoperator wants
    # [(ac), (bd)] to represent sums of A (x) B with A[a,b], B[c,d].
    s1 = (
        first_term_flat.reshape(dim, dim, dim, dim)
        .transpose(0, 2, 1, 3)
        .reshape(dim * dim, dim * dim)
    )
    eye = np.eye(dim)
    return s1 - 0.5 * (np.kron(anticomm, eye) + np.kron(eye, anticomm.T))


def build_lindbladian_diagonalized(
    k: KossakowskiMatrix, basis: OperatorBasis
) -> Superoperator:
    """Generator built from the eigendecomposition of the coupling matrix.

    Diagonalizing K yields d rank-one dissipator terms with jump operators
    J_mu = sum_l conj(V_{l,mu}) F_l instead of d^2 basis products, which is
    the efficient path for large bases.
    """
    _check_shapes(k, basis)
    dim = basis.dim
    w, v = np.linalg.eigh(k.matrix)
    # J[mu] = sum_l conj(V[l, mu]) F_l
    flat = basis.elements.reshape(len(basis), dim * dim)
    jumps = v.conj().T @ flat  # (d, N^2)
    s1 = (jumps.T * w) @ jumps.conj()
    j3 = jumps.reshape(len(basis), dim, dim)
    anticomm = np.einsum("mab,mac->bc", j3.conj(), j3 * w[:, None, None])
    return Superoperator(dim, _assemble(s1, anticomm, dim), label="lindbladian")


def build_lindbladian(k: KossakowskiMatrix, basis: OperatorBasis) -> Superoperator:
    """Generator evaluated as the raw double sum over basis pairs.

    Contracts the coupling matrix directly against the basis without
    diagonalization; agrees with the diagonalized path to ~1e-10 and is the
    cross-validation route at small N.
    """
    _check_shapes(k, basis)
    dim = basis.dim
    flat = basis.elements.reshape(len(basis), dim * dim)
    # B_l = sum_k K[k, l] conj(F_k)
    b = k.matrix.T @ flat.conj()
    s1 = flat.T @ b
    b3 = b.reshape(len(basis), dim, dim)
    # A = sum_{k,l} K[k,l] F_k^dag F_l = sum_l B_l^T F_l
    anticomm = np.einsum("lba,lbc->ac", b3, basis.elements)
    return Superoperator(dim, _assemble(s1, anticomm, dim), label="lindbladian")


def build_local_lindbladian(k: KossakowskiMatrix, basis: OperatorBasis) -> Superoperator:
    """Generator over a Pauli-string basis with bounded weight."""
    if basis.kind != "pauli-local":
        raise ShapeMismatchError(
            f"local generator requires a pauli-local basis, got {basis.kind!r}"
        )
    return build_lindbladian_diagonalized(k, basis)


def trace_identity_defect(lindbladian: Superoperator) -> float:
    """Relative defect of Tr L = -N^2."""
    n2 = float(lindbladian.n_hilbert**2)
    return float(abs(np.trace(lindbladian.matrix) + n2) / n2)

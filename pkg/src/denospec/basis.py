"""Traceless orthonormal operator bases.

Two constructions are provided: a generalized Gell-Mann basis spanning the
full traceless operator space of an N-dimensional Hilbert space, and Pauli
string bases restricted to a maximal Pauli weight for qubit systems.  All
elements F satisfy Tr F = 0 and Tr(F_l F_k^dag) = delta_{l,k}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import InvalidDimensionError, InvalidLocalityError

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

GRAM_TOL = 1e-12


@dataclass(frozen=True)
class OperatorBasis:
    """An ordered, immutable set of traceless orthonormal N x N matrices.

    Attributes
    ----------
    dim:
        Hilbert-space dimension N.
    elements:
        Array of shape (n, N, N); element order is deterministic.
    kind:
        Either ``"full"`` or ``"pauli-local"``.
    weights:
        Pauli weight of each element (``pauli-local`` only, else None).
    labels:
        Letter strings such as ``"XIZ"`` (``pauli-local`` only, else None).
    """

    dim: int
    elements: np.ndarray
    kind: str
    weights: np.ndarray | None = None
    labels: tuple[str, ...] | None = None

    def __len__(self) -> int:
        return self.elements.shape[0]

    def gram_matrix(self) -> np.ndarray:
        """Overlap matrix Tr(F_l F_k^dag); identity for a valid basis."""
        flat = self.elements.reshape(len(self), -1)
        return flat @ flat.conj().T

    def max_gram_defect(self) -> float:
        g = self.gram_matrix()
        return float(np.abs(g - np.eye(len(self))).max())

    def max_trace_defect(self) -> float:
        return float(np.abs(np.trace(self.elements, axis1=1, axis2=2)).max())


def build_full_basis(dim: int) -> OperatorBasis:
    """Generalized Gell-Mann basis of the traceless operators on C^dim.

    Ordering is symmetric pairs (i<j, lexicographic), then antisymmetric
    pairs, then the diagonal family, giving dim^2 - 1 elements.

    Parameters
    ----------
    dim:
        Hilbert-space dimension, any integer >= 2.  (Qubit systems have
        dim = 2^L, but the construction itself needs no qubit structure.)
    """
    if not isinstance(dim, (int, np.integer)) or dim < 2:
        raise InvalidDimensionError(f"dimension must be an integer >= 2, got {dim!r}")
    n = int(dim)
    mats = np.zeros((n * n - 1, n, n), dtype=complex)
    idx = 0
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            mats[idx, i, j] = inv_sqrt2
            mats[idx, j, i] = inv_sqrt2
            idx += 1
    for i in range(n):
        for j in range(i + 1, n):
            mats[idx, i, j] = -1.0j * inv_sqrt2
            mats[idx, j, i] = 1.0j * inv_sqrt2
            idx += 1
    for l in range(1, n):
        norm = 1.0 / np.sqrt(l * (l + 1))
        mats[idx, :l, :l] = np.eye(l) * norm
        mats[idx, l, l] = -l * norm
        idx += 1
    mats.setflags(write=False)
    return OperatorBasis(dim=n, elements=mats, kind="full")


def pauli_string_matrix(letters: str) -> np.ndarray:
    """Dense matrix of a Pauli string, normalized by 1/sqrt(2^L)."""
    mat = np.array([[1.0 + 0.0j]])
    for c in letters:
        mat = np.kron(mat, PAULI_MATRICES[c])
    return mat / np.sqrt(2.0 ** len(letters))


def pauli_weight(letters) -> int:
    """Number of non-identity factors in a Pauli string descriptor.

    Accepts a string such as ``"XIZ"`` or any iterable of single letters;
    ``"I"`` and ``"1"`` both denote the identity factor.
    """
    weight = 0
    for c in letters:
        if c not in ("I", "1", "X", "Y", "Z"):
            raise ValueError(f"invalid Pauli letter {c!r}")
        if c not in ("I", "1"):
            weight += 1
    return weight


def build_pauli_basis(n_qubits: int, k_max: int) -> OperatorBasis:
    """All Pauli strings of weight 1..k_max on n_qubits qubits.

    The identity string is excluded (tracelessness); each string carries the
    1/sqrt(N) normalization.  Element order is weight-major, then
    lexicographic over qubit-position subsets and letters (X < Y < Z), so
    seeded runs are bit-reproducible.
    """
    if n_qubits < 1:
        raise InvalidDimensionError(f"qubit count must be >= 1, got {n_qubits}")
    if not 1 <= k_max <= n_qubits:
        raise InvalidLocalityError(
            f"k_max must satisfy 1 <= k_max <= {n_qubits}, got {k_max}"
        )
    dim = 2**n_qubits
    labels = []
    for k in range(1, k_max + 1):
        for positions in itertools.combinations(range(n_qubits), k):
            for choice in itertools.product("XYZ", repeat=k):
                string = ["I"] * n_qubits
                for pos, letter in zip(positions, choice):
                    string[pos] = letter
                labels.append("".join(string))
    mats = np.array([pauli_string_matrix(s) for s in labels])
    weights = np.array([pauli_weight(s) for s in labels], dtype=int)
    mats.setflags(write=False)
    weights.setflags(write=False)
    return OperatorBasis(
        dim=dim,
        elements=mats,
        kind="pauli-local",
        weights=weights,
        labels=tuple(labels),
    )


def pauli_sector_size(n_qubits: int, k_max: int) -> int:
    """Number of Pauli strings with weight 1..k_max (the basis size)."""
    from math import comb

    return sum(comb(n_qubits, k) * 3**k for k in range(1, k_max + 1))

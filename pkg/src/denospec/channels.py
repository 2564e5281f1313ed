"""Noisy-circuit assembly: folded unitaries, noise channels, full circuits.

A circuit of depth m alternates Haar-random unitary layers with noise
channels exp(t L_i) generated by independent random Lindbladians,

    Lambda = N_m U_m ... N_2 U_2 N_1 U_1,

and the noiseless target is U = U_m ... U_1.  Everything is dense; layer
sampling uses per-layer substreams of the circuit seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .basis import OperatorBasis, build_full_basis, build_pauli_basis
from .ensembles import (
    sample_global_kossakowski,
    sample_haar_unitary,
    sample_local_kossakowski,
)
from .errors import InvalidDimensionError, NonUnitaryError, ScalingFailureError
from .lindblad import build_lindbladian_diagonalized
from .rng import RngSeed, as_seed
from .superop import Superoperator

UNITARITY_TOL = 1e-10


@dataclass(frozen=True)
class CircuitSpec:
    """Parameters fully determining one noisy circuit.

    ``noise`` is ``"global"`` (full operator basis) or ``"local"`` (Pauli
    strings up to weight ``k_max``; requires a qubit system, i.e. a
    power-of-two dimension).  ``fold_convention`` selects how unitaries are
    folded, see :func:`fold_unitary`.
    """

    n_hilbert: int
    m: int
    t: float
    noise: str = "global"
    k_max: int | None = None
    seed: RngSeed = field(default_factory=lambda: RngSeed(0))
    fold_convention: str = "conjugate"

    def __post_init__(self):
        if self.n_hilbert < 2:
            raise InvalidDimensionError(f"dimension must be >= 2, got {self.n_hilbert}")
        if self.m < 1:
            raise ValueError(f"layer count must be >= 1, got {self.m}")
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"noise time must lie in [0, 1], got {self.t}")
        if self.noise not in ("global", "local"):
            raise ValueError(f"unknown noise kind {self.noise!r}")
        if self.noise == "local":
            if self.n_qubits is None:
                raise InvalidDimensionError(
                    "local noise requires a power-of-two dimension"
                )
            if self.k_max is None:
                raise ValueError("local noise requires k_max")
        object.__setattr__(self, "seed", as_seed(self.seed))

    @property
    def n_qubits(self) -> int | None:
        l = self.n_hilbert.bit_length() - 1
        return l if 2**l == self.n_hilbert else None

    @classmethod
    def from_qubits(cls, n_qubits: int, m: int, t: float, **kwargs) -> "CircuitSpec":
        return cls(n_hilbert=2**n_qubits, m=m, t=t, **kwargs)


@dataclass(frozen=True)
class CircuitLayer:
    unitary: np.ndarray
    folded: Superoperator
    generator: Superoperator
    channel: Superoperator


@dataclass(frozen=True)
class NoisyCircuit:
    """Assembled circuit with per-layer data retained for later analysis."""

    spec: CircuitSpec
    layers: tuple[CircuitLayer, ...]
    channel: Superoperator  # the noisy circuit Lambda
    target: Superoperator  # the noiseless folded product U

    @property
    def n_hilbert(self) -> int:
        return self.spec.n_hilbert


def fold_unitary(
    u: np.ndarray, convention: str = "conjugate", label: str = "folded-unitary"
) -> Superoperator:
    """Superoperator of rho -> U rho U^dag.

    Under row-stacking this is U (x) U^*, the default.  The ``"transpose"``
    convention instead forms U (x) U^T; it reproduces the folded form
    sometimes quoted with the transpose and is statistically equivalent for
    Haar-distributed U, but it is not trace preserving for a general fixed
    U, so it is exposed only as an opt-in reproduction mode.
    """
    u = np.asarray(u, dtype=complex)
    dim = u.shape[0]
    defect = np.abs(u.conj().T @ u - np.eye(dim)).max()
    if defect > UNITARITY_TOL:
        raise NonUnitaryError(f"input is not unitary: max|U^dag U - 1| = {defect:.3e}")
    if convention == "conjugate":
        mat = np.kron(u, u.conj())
    elif convention == "transpose":
        mat = np.kron(u, u.T)
    else:
        raise ValueError(f"unknown fold convention {convention!r}")
    return Superoperator(dim, mat, label=label)


def matrix_exponential(a: Superoperator, t: float = 1.0) -> Superoperator:
    """exp(t A) by scaling-and-squaring with Pade approximants.

    A Lindblad generator input yields a noise channel label.  Raises
    :class:`ScalingFailureError` when the result overflows.
    """
    mat = sla.expm(t * a.matrix)
    if not np.isfinite(mat).all():
        raise ScalingFailureError(
            f"matrix exponential overflowed at ||tA||_1 = {t * np.linalg.norm(a.matrix, 1):.3e}"
        )
    label = "noise-channel" if a.label == "lindbladian" else "generic"
    return Superoperator(a.n_hilbert, mat, label=label)


def matrix_exponential_eig(a: Superoperator, t: float = 1.0) -> Superoperator:
    """exp(t A) through the eigendecomposition of A.

    Independent cross-check path; valid for diagonalizable A only.
    """
    w, v = np.linalg.eig(a.matrix)
    mat = v @ (np.exp(t * w)[:, None] * np.linalg.solve(v, np.eye(v.shape[0], dtype=complex)))
    return Superoperator(a.n_hilbert, mat, label="generic")


def noise_basis(spec: CircuitSpec) -> OperatorBasis:
    """The operator basis used by a circuit's noise generators."""
    if spec.noise == "local":
        return build_pauli_basis(spec.n_qubits, spec.k_max)
    return build_full_basis(spec.n_hilbert)


def sample_layer(spec: CircuitSpec, index: int, basis: OperatorBasis) -> CircuitLayer:
    """Sample layer ``index`` (0-based) from its own substreams."""
    dim = spec.n_hilbert
    u = sample_haar_unitary(dim, spec.seed.child(index, 0))
    if spec.noise == "local":
        k = sample_local_kossakowski(len(basis), dim, spec.seed.child(index, 1))
    else:
        k = sample_global_kossakowski(dim, spec.seed.child(index, 1))
    generator = build_lindbladian_diagonalized(k, basis)
    return CircuitLayer(
        unitary=u,
        folded=fold_unitary(u, spec.fold_convention),
        generator=generator,
        channel=matrix_exponential(generator, spec.t),
    )


def assemble_noisy_circuit(spec: CircuitSpec, basis: OperatorBasis | None = None) -> NoisyCircuit:
    """Sample all layers and form Lambda = N_m U_m ... N_1 U_1 and the target."""
    if basis is None:
        basis = noise_basis(spec)
    dim = spec.n_hilbert
    layers = tuple(sample_layer(spec, i, basis) for i in range(spec.m))
    product = np.eye(dim * dim, dtype=complex)
    target = np.eye(dim * dim, dtype=complex)
    for layer in layers:
        product = layer.channel.matrix @ (layer.folded.matrix @ product)
        target = layer.folded.matrix @ target
    return NoisyCircuit(
        spec=spec,
        layers=layers,
        channel=Superoperator(dim, product, label="noisy-circuit"),
        target=Superoperator(dim, target, label="folded-unitary"),
    )

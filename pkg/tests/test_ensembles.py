import numpy as np
import pytest

from denospec import (
    RngSeed,
    sample_ginibre,
    sample_global_kossakowski,
    sample_haar_unitary,
    sample_local_kossakowski,
)


def quarter_circle_cdf(s):
    """CDF of the quarter-circle law rho(s) = sqrt(4 - s^2)/pi on [0, 2]."""
    s = np.clip(s, 0.0, 2.0)
    return (s * np.sqrt(4.0 - s * s) / 2.0 + 2.0 * np.arcsin(s / 2.0)) / np.pi


def marchenko_pastur_bin_masses(edges):
    """Bin masses of the unit-ratio Marchenko-Pastur law on [0, 4].

    Independent oracle: under x = s^2 the density
    rho(x) = sqrt((4 - x)/x) / (2 pi) becomes the quarter-circle law,
    whose CDF is analytic; this sidesteps the 1/sqrt(x) singularity.
    """
    edges = np.sqrt(np.asarray(edges, dtype=float))
    return quarter_circle_cdf(edges[1:]) - quarter_circle_cdf(edges[:-1])


def quarter_circle_bin_masses(edges):
    edges = np.asarray(edges, dtype=float)
    return quarter_circle_cdf(edges[1:]) - quarter_circle_cdf(edges[:-1])


def test_samplers_are_deterministic():
    for sampler, args in [
        (sample_ginibre, (17,)),
        (sample_haar_unitary, (9,)),
    ]:
        a = sampler(*args, RngSeed(42))
        b = sampler(*args, RngSeed(42))
        assert np.array_equal(a, b)
    a = sample_global_kossakowski(4, RngSeed(3))
    b = sample_global_kossakowski(4, RngSeed(3))
    assert np.array_equal(a.matrix, b.matrix)
    a = sample_local_kossakowski(7, 8.0, RngSeed(3))
    b = sample_local_kossakowski(7, 8.0, RngSeed(3))
    assert np.array_equal(a.matrix, b.matrix)


def test_substreams_are_distinct():
    root = RngSeed(5)
    a = sample_ginibre(8, root.child(0))
    b = sample_ginibre(8, root.child(1))
    assert not np.allclose(a, b)


def test_ginibre_moments():
    g = sample_ginibre(1000, RngSeed(11))
    assert abs(g.mean()) < 0.01
    assert abs(np.mean(np.abs(g) ** 2) - 1.0) < 0.05


def test_ginibre_singular_values_quarter_circle():
    d = 1000
    g = sample_ginibre(d, RngSeed(12))
    s = np.linalg.svd(g, compute_uv=False) / np.sqrt(d)
    assert s.max() <= 2.0 * 1.05
    edges = np.linspace(0.0, 2.0, 9)
    observed = np.histogram(s, bins=edges)[0] / d
    expected = quarter_circle_bin_masses(edges)
    assert np.abs(observed - expected).max() < 0.04


def test_global_kossakowski_invariants():
    k = sample_global_kossakowski(8, RngSeed(0))
    assert k.order == 63
    assert abs(np.trace(k.matrix).real - 8.0) <= 1e-12
    assert abs(np.trace(k.matrix).imag) <= 1e-12
    assert k.hermiticity_defect() <= 1e-12
    assert k.min_eigenvalue() >= -1e-10
    k.validate(full=True)


def test_global_kossakowski_marchenko_pastur():
    dim = 32
    d = dim * dim - 1
    k = sample_global_kossakowski(dim, RngSeed(21))
    eig = np.linalg.eigvalsh(k.matrix) * (d / dim)  # unit-mean rescaling
    edges = np.linspace(0.0, 4.0, 9)
    observed = np.histogram(eig, bins=edges)[0] / d
    expected = marchenko_pastur_bin_masses(edges)
    assert np.abs(observed - expected).max() < 0.04
    assert eig.max() < 4.0 * 1.1


def test_local_kossakowski_invariants():
    k = sample_local_kossakowski(12, 16.0, RngSeed(4))
    assert k.hermiticity_defect() <= 1e-12
    assert abs(np.trace(k.matrix).real - 16.0) <= 1e-10
    assert k.min_eigenvalue() >= -1e-10
    k.validate(full=True)


def test_local_kossakowski_scalar_case():
    k = sample_local_kossakowski(1, 8.0, RngSeed(2))
    assert k.matrix.shape == (1, 1)
    assert abs(k.matrix[0, 0] - 8.0) <= 1e-12


def test_local_kossakowski_eigenvalues_are_rescaled_diagonal():
    seed = RngSeed(33)
    n_channels, norm = 9, 4.0
    k = sample_local_kossakowski(n_channels, norm, seed)
    # regenerate the diagonal from the documented draw order: p first
    rng = seed.generator()
    p = 1.0 - rng.random(n_channels)
    expected = np.sort(p * (norm / p.sum()))
    assert np.allclose(np.sort(np.linalg.eigvalsh(k.matrix)), expected, atol=1e-10)


def test_haar_unitarity_and_determinant():
    for seed in range(5):
        q = sample_haar_unitary(16, RngSeed(seed))
        assert np.abs(q.conj().T @ q - np.eye(16)).max() <= 1e-12
        assert abs(abs(np.linalg.det(q)) - 1.0) <= 1e-10


def test_haar_eigenphase_uniformity():
    # eigenphases of Haar unitaries are uniform on [-pi, pi); check a large
    # sample against 3-sigma multinomial bands per bin
    n_samples, dim, n_bins = 100_000, 2, 20
    root = RngSeed(6)
    mats = np.empty((n_samples, dim, dim), dtype=complex)
    for i in range(n_samples):
        mats[i] = sample_haar_unitary(dim, root.child(i))
    phases = np.angle(np.linalg.eigvals(mats)).ravel()
    counts = np.histogram(phases, bins=np.linspace(-np.pi, np.pi, n_bins + 1))[0]
    n_total = phases.size
    p = 1.0 / n_bins
    sigma = np.sqrt(n_total * p * (1 - p))
    assert np.abs(counts - n_total * p).max() <= 3 * sigma


@pytest.mark.parametrize("sampler,args", [
    (sample_ginibre, (0,)),
    (sample_haar_unitary, (0,)),
    (sample_global_kossakowski, (1,)),
    (sample_local_kossakowski, (0, 4.0)),
])
def test_invalid_orders_rejected(sampler, args):
    from denospec.errors import InvalidDimensionError

    with pytest.raises(InvalidDimensionError):
        sampler(*args, RngSeed(0))

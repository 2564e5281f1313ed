import numpy as np
import pytest

from denospec import (
    RngSeed,
    SpectrumSample,
    conjugation_closure_defect,
    decay_band_clusters,
    eigenvalues,
    empirical_lindblad_contour,
    fold_unitary,
    identity_superoperator,
    kossakowski_sum_bounds,
    min_distance_profile,
    points_in_contour,
    predict_denoiser_contour,
    sample_haar_unitary,
    symmetric_min_distance,
)
from denospec.errors import BinningError, DegenerateInputError


def sample_from(values, source="denoiser", n_hilbert=4, **params):
    return SpectrumSample(
        eigenvalues=np.asarray(values, dtype=complex),
        source=source,
        params={"n_hilbert": n_hilbert, **params},
    )


def test_eigenvalues_identity_and_folded_unitary():
    ident = eigenvalues(identity_superoperator(4))
    assert np.abs(ident.eigenvalues - 1.0).max() <= 1e-12
    assert ident.stationary.all()
    folded = eigenvalues(fold_unitary(sample_haar_unitary(8, RngSeed(1))))
    assert np.abs(np.abs(folded.eigenvalues) - 1.0).max() <= 1e-10
    assert len(folded) == 64
    assert folded.source == "folded-unitary"


def test_eigenvalues_residual_check_path():
    s = fold_unitary(sample_haar_unitary(4, RngSeed(2)))
    spectrum = eigenvalues(s, check_residual=True)
    assert len(spectrum) == 16


def test_min_distance_profile_basics():
    assert np.array_equal(min_distance_profile([1.0], [1.0]), [0.0])
    profile = min_distance_profile([1.0 + 0j], [1.0 + 1e-9])
    assert np.allclose(profile, [1e-9])
    a = [0.0, 1.0, 2.0]
    profile = min_distance_profile(a, [0.0, 1.1])
    assert np.allclose(profile, [0.9, 0.1, 0.0])  # sorted descending
    assert symmetric_min_distance(a, [0.0, 1.1]) == pytest.approx(0.9)


def test_conjugation_closure_defect():
    assert conjugation_closure_defect([1 + 1j, 1 - 1j, 0.5]) == 0.0
    assert conjugation_closure_defect([1 + 1j, 1 - 1j + 1e-5j]) == pytest.approx(
        1e-5, rel=1e-6
    )


def test_contour_recovers_circle():
    # a pure circle cloud (plus the stationary zero) maps to itself
    theta = np.linspace(-np.pi, np.pi, 4097)[:-1]
    radius = 0.05
    cloud = -1.0 + radius * np.exp(1j * theta)
    sample = sample_from(np.concatenate([[0.0], cloud]), source="lindbladian")
    contour = empirical_lindblad_contour([sample], n_angles=32, rescale=False)
    assert np.abs(np.abs(contour) - radius).max() <= 1e-6
    # with rescaling the circle's radius is pinned to the half-width 2/N
    n_hilbert = 4
    contour = empirical_lindblad_contour([sample], n_angles=32, rescale=True)
    assert np.abs(np.abs(contour) - 2.0 / n_hilbert).max() <= 1e-6


def test_contour_binning_error():
    # ten points cannot fill 64 angular bins
    cloud = -1.0 + 0.01 * np.exp(1j * np.linspace(0, np.pi, 10))
    sample = sample_from(cloud, source="lindbladian")
    with pytest.raises(BinningError):
        empirical_lindblad_contour([sample], n_angles=64)
    with pytest.raises(DegenerateInputError):
        empirical_lindblad_contour(
            [sample_from([-1.0 + 0.01j] * 10, source="lindbladian")], n_angles=64
        )


def test_predicted_contour_map():
    # g(0) = exp(t m): direct evaluation
    pred = predict_denoiser_contour(np.array([0.0 + 0.0j]), t=0.1, m=2)
    assert pred.mapped[0] == pytest.approx(1.2214027581601699)
    assert pred.predicted_center == pytest.approx(1.2214027581601699)
    # t = 0 maps everything to 1
    base = np.array([0.1 + 0.2j, -0.3j, 0.05])
    assert np.array_equal(
        predict_denoiser_contour(base, t=0.0, m=3).mapped, np.ones(3, dtype=complex)
    )
    # stored mapping is bit-for-bit reproducible
    pred = predict_denoiser_contour(base, t=0.5, m=10)
    again = np.exp(-0.5 * (np.sqrt(10) * base - 10))
    assert np.array_equal(pred.mapped, again)
    assert pred.predicted_center == pytest.approx(np.exp(5.0))


def test_contour_dilation_about_centroid():
    corners = np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j])
    pred = predict_denoiser_contour(corners + 5.0, t=0.0, m=1)
    # t=0 maps everything to 1, so feed the square in directly instead
    pred = type(pred)(base=corners, mapped=corners + 5.0, t=0.0, m=1)
    assert np.allclose(pred.dilated(1.5), 5.0 + 1.5 * corners)


def test_points_in_contour_square():
    square = np.array([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j])
    pts = np.array([0.0, 0.5 + 0.5j, 2.0, -1.5j, 0.99 + 0.0j])
    assert list(points_in_contour(pts, square)) == [True, True, False, False, True]


def test_kossakowski_sum_bounds_values():
    assert kossakowski_sum_bounds(1) == (pytest.approx(0.0), pytest.approx(4.0))
    assert kossakowski_sum_bounds(4) == (pytest.approx(1.0), pytest.approx(9.0))
    lo, hi = kossakowski_sum_bounds(2)
    assert lo == pytest.approx(3.0 - 2.0 * np.sqrt(2.0))
    assert hi == pytest.approx(3.0 + 2.0 * np.sqrt(2.0))
    with pytest.raises(ValueError):
        kossakowski_sum_bounds(0)


def test_kossakowski_sum_bounds_contain_samples():
    from denospec import sample_global_kossakowski

    dim, m = 16, 2
    d = dim * dim - 1
    total = sum(
        sample_global_kossakowski(dim, RngSeed(s)).matrix * (d / dim)
        for s in range(m)
    )
    ev = np.linalg.eigvalsh(total)
    lo, hi = kossakowski_sum_bounds(m)
    assert ev.min() >= lo - 0.3 and ev.max() <= hi + 0.3
    assert abs(ev.mean() - m) / m <= 0.02


def test_decay_bands_synthetic_clusters():
    t, m = 0.1, 2
    rng = np.random.default_rng(0)
    slow = 0.4 + 0.005 * rng.standard_normal(40)
    fast = 1.0 + 0.005 * rng.standard_normal(200)
    values = np.concatenate([[0.0], slow, fast])  # 0 is the stationary point
    sample = sample_from(np.exp(t * m * values), source="denoiser")
    bands = decay_band_clusters(sample, t, m)
    assert bands.n_bands == 3
    assert bands.stationary_band == 0
    assert bands.n_bands_nonstationary == 2
    assert list(bands.populations) == [1, 40, 200]
    assert bands.centers[1] == pytest.approx(slow.mean(), abs=1e-6)


def test_decay_bands_lindbladian_uses_real_parts():
    rates = np.concatenate([[0.0], -0.3 + 0.002 * np.linspace(-1, 1, 30), -1.0 + 0.002 * np.linspace(-1, 1, 100)])
    sample = sample_from(rates + 0.05j, source="lindbladian")
    bands = decay_band_clusters(sample, t=0.1, m=1)
    assert bands.n_bands == 3
    assert bands.stationary_band == 2  # bands ordered by increasing value
    assert bands.n_bands_nonstationary == 2


def test_decay_bands_single_bulk():
    # compactly supported bulk (the shape real spectral clouds project to):
    # sampling noise inside it must not split the band
    rng = np.random.default_rng(1)
    values = 1.0 + 0.02 * (rng.random(500) - 0.5)
    sample = sample_from(np.exp(0.2 * values), source="denoiser")
    bands = decay_band_clusters(sample, t=0.1, m=2)
    assert bands.n_bands == 1
    assert bands.stationary_band is None


def test_decay_bands_degenerate_input():
    with pytest.raises(DegenerateInputError):
        decay_band_clusters(sample_from([1.0]), t=0.1, m=2)

"""Eigenvalue extraction and spectral post-processing.

Covers the full-spectrum solve, nearest-eigenvalue distance profiles,
empirical spectral contours and their mapping onto denoiser contours,
support bounds for sums of coupling matrices, and decay-band clustering
for local-noise spectra.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .errors import BinningError, DegenerateInputError, EigensolverError
from .superop import Superoperator

STATIONARY_TOL = 1e-6
EIG_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class SpectrumSample:
    """All eigenvalues of one superoperator plus provenance metadata."""

    eigenvalues: np.ndarray
    source: str
    params: dict = field(default_factory=dict)

    @property
    def stationary(self) -> np.ndarray:
        """Per-eigenvalue flag: within 1e-6 of the trace fixed point 1."""
        return np.abs(self.eigenvalues - 1.0) <= STATIONARY_TOL

    @property
    def nonstationary_eigenvalues(self) -> np.ndarray:
        return self.eigenvalues[~self.stationary]

    def __len__(self) -> int:
        return self.eigenvalues.shape[0]


def eigenvalues(
    s: Superoperator, params: dict | None = None, check_residual: bool = False
) -> SpectrumSample:
    """Full spectrum of a dense superoperator.

    With ``check_residual=True`` eigenvectors are computed as well and the
    worst relative residual ||S v - lambda v|| / ||S|| must stay below 1e-8.
    """
    meta = {"n_hilbert": s.n_hilbert}
    if params:
        meta.update(params)
    try:
        if check_residual:
            import scipy.linalg as sla

            w, v = sla.eig(s.matrix)
            scale = np.linalg.norm(s.matrix, np.inf)
            residual = np.linalg.norm(s.matrix @ v - v * w, axis=0) / scale
            if residual.max() > EIG_RESIDUAL_TOL:
                raise EigensolverError(
                    f"eigenpair residual {residual.max():.3e} exceeds tolerance",
                    condition_estimate=float(np.linalg.cond(v)),
                )
        else:
            w = np.linalg.eigvals(s.matrix)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(
            f"eigensolver did not converge: {exc}",
            condition_estimate=float(np.linalg.cond(s.matrix)),
        ) from exc
    return SpectrumSample(eigenvalues=w, source=s.label, params=meta)


def _values(spectrum) -> np.ndarray:
    if isinstance(spectrum, SpectrumSample):
        return spectrum.eigenvalues
    return np.asarray(spectrum)


def min_distance_profile(a, b) -> np.ndarray:
    """Distance from each eigenvalue of ``a`` to its nearest neighbour in ``b``.

    Returned sorted in descending order, so the first entry is the worst
    mismatch.
    """
    va, vb = _values(a), _values(b)
    if va.size == 0 or vb.size == 0:
        raise DegenerateInputError("spectra must be non-empty")
    tree = cKDTree(np.column_stack([vb.real, vb.imag]))
    dist, _ = tree.query(np.column_stack([va.real, va.imag]))
    return np.sort(dist)[::-1]


def symmetric_min_distance(a, b) -> float:
    """max over both directions of the worst nearest-neighbour distance."""
    return float(max(min_distance_profile(a, b)[0], min_distance_profile(b, a)[0]))


def conjugation_closure_defect(spectrum) -> float:
    """How far the spectrum is from being closed under conjugation."""
    v = _values(spectrum)
    return float(min_distance_profile(v.conj(), v)[0])


def empirical_lindblad_contour(
    samples, n_angles: int = 64, rescale: bool = True
) -> np.ndarray:
    """Outer contour of pooled Lindblad spectra, centered at 0.

    Drops the stationary eigenvalue at 0, shifts the bulk by +1, optionally
    rescales so the real-axis reach is exactly 2/N, then takes the maximal
    modulus in each of ``n_angles`` angular bins.  Returns contour points as
    complex numbers ordered by angle.
    """
    if n_angles < 16:
        raise ValueError(f"n_angles must be >= 16, got {n_angles}")
    if isinstance(samples, SpectrumSample):
        samples = [samples]
    pooled = []
    dims = set()
    for s in samples:
        v = _values(s)
        pooled.append(v[np.abs(v) > STATIONARY_TOL] + 1.0)
        if isinstance(s, SpectrumSample) and "n_hilbert" in s.params:
            dims.add(s.params["n_hilbert"])
    cloud = np.concatenate(pooled)
    if rescale:
        if len(dims) != 1:
            raise ValueError("rescaling requires samples with one common dimension")
        dim = dims.pop()
        half_width = 0.5 * (cloud.real.max() - cloud.real.min())
        if half_width <= 0.0:
            raise DegenerateInputError("cloud has no real-axis extent to rescale")
        cloud = cloud * ((2.0 / dim) / half_width)
    angles = np.angle(cloud)
    edges = np.linspace(-np.pi, np.pi, n_angles + 1)
    bins = np.clip(np.digitize(angles, edges) - 1, 0, n_angles - 1)
    radii = np.zeros(n_angles)
    counts = np.bincount(bins, minlength=n_angles)
    if (counts == 0).any():
        raise BinningError(
            f"{int((counts == 0).sum())} of {n_angles} angular bins are empty; "
            "pool more spectra or lower n_angles"
        )
    np.maximum.at(radii, bins, np.abs(cloud))
    centers = 0.5 * (edges[:-1] + edges[1:])
    return radii * np.exp(1j * centers)


@dataclass(frozen=True)
class ContourPrediction:
    """A base contour and its image under the denoiser contour map."""

    base: np.ndarray
    mapped: np.ndarray
    t: float
    m: int

    @property
    def predicted_center(self) -> float:
        return float(np.exp(self.t * self.m))

    def dilated(self, scale: float = 1.1) -> np.ndarray:
        """Mapped contour scaled about its centroid."""
        c = self.mapped.mean()
        return c + scale * (self.mapped - c)


def predict_denoiser_contour(base, t: float, m: int) -> ContourPrediction:
    """Map base contour points f through g(f) = exp(-t (sqrt(m) f - m))."""
    base = np.asarray(base, dtype=complex)
    mapped = np.exp(-t * (np.sqrt(m) * base - m))
    return ContourPrediction(base=base, mapped=mapped, t=float(t), m=int(m))


def points_in_contour(points, contour) -> np.ndarray:
    """Ray-casting point-in-polygon test against a closed contour."""
    pts = np.asarray(points, dtype=complex)
    poly = np.asarray(contour, dtype=complex)
    x, y = pts.real, pts.imag
    px, py = poly.real, poly.imag
    inside = np.zeros(pts.shape, dtype=bool)
    n = len(poly)
    for i in range(n):
        x1, y1 = px[i], py[i]
        x2, y2 = px[(i + 1) % n], py[(i + 1) % n]
        crosses = (y1 > y) != (y2 > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            x_cross = x1 + (y - y1) * (x2 - x1) / (y2 - y1)
        inside ^= crosses & (x < x_cross)
    return inside


def kossakowski_sum_bounds(m: int) -> tuple[float, float]:
    """Support endpoints m + 1 -+ 2 sqrt(m) for a sum of m unit-mean
    Marchenko-Pastur spectra (free convolution)."""
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    root = 2.0 * np.sqrt(m)
    return float(m + 1 - root), float(m + 1 + root)


@dataclass(frozen=True)
class DecayBands:
    """Gap-split clustering of 1-D decay values.

    ``edges[i]`` is the (lo, hi) value range of band i; bands are ordered
    by increasing value.  ``stationary_band`` is the index of the band
    containing the trace fixed point, or None.
    """

    centers: np.ndarray
    populations: np.ndarray
    edges: np.ndarray
    stationary_band: int | None

    @property
    def n_bands(self) -> int:
        return len(self.centers)

    @property
    def n_bands_nonstationary(self) -> int:
        if self.stationary_band is None:
            return self.n_bands
        return self.n_bands - 1

    def to_dict(self) -> dict:
        return {
            "centers": self.centers.tolist(),
            "populations": self.populations.tolist(),
            "edges": self.edges.tolist(),
            "stationary_band": self.stationary_band,
        }


def decay_band_clusters(
    sample: SpectrumSample,
    t: float,
    m: int,
    factor: float = 3.0,
    min_gap_fraction: float = 0.02,
) -> DecayBands:
    """Cluster decay scales of a spectrum by 1-D gap splitting.

    The clustered values are log|lambda| / (t m) for channel or denoiser
    spectra and Re(lambda) for Lindblad generators.  A new band opens where
    a consecutive sorted gap exceeds both ``factor`` times the median
    positive gap and ``min_gap_fraction`` of the full value range; the
    second guard is what keeps sampling noise inside a broad bulk from
    splitting it (the median of raw spacings alone is far too small a
    scale for clouds of ~N^2 projected eigenvalues).
    """
    if len(sample) < 2:
        raise DegenerateInputError("need at least two eigenvalues to cluster")
    ev = sample.eigenvalues
    if sample.source == "lindbladian":
        values = ev.real
        stationary_value = 0.0
    else:
        values = np.log(np.abs(ev)) / (t * m)
        stationary_value = 0.0
    order = np.argsort(values)
    v = values[order]
    span = v[-1] - v[0]
    gaps = np.diff(v)
    resolution = 1e-12 * max(1.0, span)
    positive = gaps[gaps > resolution]
    median_gap = float(np.median(positive)) if positive.size else 0.0
    threshold = max(factor * median_gap, min_gap_fraction * span)
    boundaries = np.nonzero(gaps > threshold)[0] if span > 0 else np.array([], dtype=int)
    starts = np.concatenate([[0], boundaries + 1])
    stops = np.concatenate([boundaries + 1, [len(v)]])
    centers, pops, edges = [], [], []
    stationary_band = None
    stat_set = sample.stationary[order]
    for i, (a, b) in enumerate(zip(starts, stops)):
        centers.append(v[a:b].mean())
        pops.append(b - a)
        edges.append((v[a], v[b - 1]))
        if stat_set[a:b].any() or (
            sample.source == "lindbladian" and v[a] <= stationary_value <= v[b - 1]
        ):
            stationary_band = i
    return DecayBands(
        centers=np.array(centers),
        populations=np.array(pops, dtype=int),
        edges=np.array(edges),
        stationary_band=stationary_band,
    )


def log_modulus_mean(spectrum, exclude_stationary: bool = False) -> float:
    """Mean of log|lambda|; equals t*m for an exact denoiser spectrum."""
    if isinstance(spectrum, SpectrumSample) and exclude_stationary:
        v = spectrum.nonstationary_eigenvalues
    else:
        v = _values(spectrum)
    return float(np.mean(np.log(np.abs(v))))

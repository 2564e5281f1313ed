"""Experiment catalog and execution engine behind the CLI.

Each catalog entry reproduces one figure-level dataset with its original
parameter defaults.  Running an experiment emits a spectra table (one row
per eigenvalue) and a summary JSON; identical configs produce byte-identical
files.  Ensemble members are independent jobs keyed by substream seeds, so
a worker pool cannot change the output.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .channels import CircuitSpec, assemble_noisy_circuit
from .denoiser import compute_denoiser
from .ensembles import sample_global_kossakowski
from .errors import (
    BinningError,
    EigensolverError,
    NonInvertibleChannelError,
    ScalingFailureError,
)
from .rng import RngSeed
from .spectra import (
    SpectrumSample,
    conjugation_closure_defect,
    decay_band_clusters,
    eigenvalues,
    empirical_lindblad_contour,
    min_distance_profile,
    predict_denoiser_contour,
)

log = logging.getLogger("denospec")

SCHEMA_VERSION = 1
LARGE_SUPEROP_DIM = 4096  # N^2 at and beyond which --allow-large is required
CONTOUR_POOL_SIZE = 8
CONJUGATION_TOL = 1e-8


class ExperimentError(RuntimeError):
    """Numerical failure while running an experiment (CLI exit code 1)."""


class ConfigError(ValueError):
    """Invalid experiment configuration (CLI exit code 2)."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully determines one experiment run, outputs included."""

    experiment: str
    n_values: tuple[int, ...]
    m_values: tuple[int, ...]
    t_values: tuple[float, ...]
    k_values: tuple[int, ...] = ()
    noise: str = "global"
    ensemble: int = 1
    seed: int = 0
    out_dir: str = "out"
    fmt: str = "csv"
    threads: int = 0  # 0 -> hardware parallelism
    allow_large: bool = False

    def validate(self) -> None:
        if self.ensemble < 1:
            raise ConfigError("ensemble size must be >= 1")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"unknown output format {self.fmt!r}")
        if self.threads < 0:
            raise ConfigError("threads must be >= 0")
        for n in self.n_values:
            if n < 2:
                raise ConfigError(f"dimension {n} < 2")
            if n * n >= LARGE_SUPEROP_DIM and not self.allow_large:
                raise ConfigError(
                    f"dimension N={n} gives an N^2={n * n} superoperator; "
                    "pass --allow-large to run beyond desk scale"
                )
        for m in self.m_values:
            if m < 1:
                raise ConfigError(f"layer count {m} < 1")
        for t in self.t_values:
            if not 0.0 <= t <= 1.0:
                raise ConfigError(f"noise time {t} outside [0, 1]")
        if self.noise == "local":
            for n in self.n_values:
                l = n.bit_length() - 1
                if 2**l != n:
                    raise ConfigError(f"local noise requires a qubit system, N={n}")
                for k in self.k_values:
                    if not 1 <= k <= l:
                        raise ConfigError(f"k_max={k} outside [1, {l}]")


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    defaults: ExperimentConfig


CATALOG: dict[str, CatalogEntry] = {}


def _register(name, description, **kwargs):
    CATALOG[name] = CatalogEntry(
        name=name, description=description, defaults=ExperimentConfig(experiment=name, **kwargs)
    )


_register(
    "fig2",
    "channel and denoiser spectra for a sweep of noise times",
    n_values=(32,),
    m_values=(2,),
    t_values=(0.1, 0.2, 0.3, 0.4, 0.5),
)
_register(
    "fig3",
    "denoiser spectra and contour predictions for several dimensions",
    n_values=(8, 16, 24, 32),
    m_values=(2,),
    t_values=(0.1,),
)
_register(
    "fig4",
    "denoiser spectra and contour predictions for several layer counts",
    n_values=(32,),
    m_values=(2, 3, 4, 5),
    t_values=(0.1,),
)
_register(
    "fig5-hist",
    "nearest-eigenvalue distances between exact and linear denoiser, global noise",
    n_values=(32,),
    m_values=(2, 5),
    t_values=(0.1, 0.5),
)
_register(
    "fig6",
    "denoiser spectrum against the predicted contour at strong noise and depth",
    n_values=(32,),
    m_values=(10,),
    t_values=(0.5,),
)
_register(
    "fig7",
    "local-noise denoiser spectrum with its decay bands (large run)",
    n_values=(64,),
    m_values=(2,),
    t_values=(0.1,),
    k_values=(2,),
    noise="local",
)
_register(
    "fig8-hist",
    "nearest-eigenvalue distances between exact and linear denoiser, local noise",
    n_values=(32,),
    m_values=(2, 5),
    t_values=(0.1, 0.5),
    k_values=(2,),
    noise="local",
)
_register(
    "lindblad-spectra",
    "random Lindblad generator spectra and their empirical contour",
    n_values=(8, 16, 24, 32),
    m_values=(1,),
    t_values=(0.0,),
    ensemble=5,
)
_register(
    "local-kmax-sweep",
    "local-noise denoiser spectra across Pauli-weight cutoffs (large by default)",
    n_values=(64,),
    m_values=(2,),
    t_values=(0.1,),
    k_values=(1, 2, 3, 4, 5, 6),
    noise="local",
)
_register(
    "kossakowski-sum",
    "eigenvalues of sums of rescaled coupling matrices against the analytic bounds",
    n_values=(32,),
    m_values=(1, 2, 4),
    t_values=(0.0,),
    ensemble=10,
)


def catalog_as_dict() -> list[dict]:
    out = []
    for entry in CATALOG.values():
        d = entry.defaults
        out.append(
            {
                "name": entry.name,
                "description": entry.description,
                "defaults": {
                    "N": list(d.n_values),
                    "m": list(d.m_values),
                    "t": list(d.t_values),
                    "k_max": list(d.k_values),
                    "noise": d.noise,
                    "ensemble": d.ensemble,
                    "seed": d.seed,
                },
            }
        )
    return out


# ----------------------------------------------------------------------
# Jobs: one eigenproblem-scale unit of work, picklable for the pool.
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Job:
    run_id: str
    kind: str  # "denoiser" | "denoiser-bch" | "lindblad" | "kossakowski-sum"
    n: int
    m: int
    t: float
    seed: RngSeed
    noise: str = "global"
    k_max: int | None = None
    emit: bool = True  # False: spectrum only feeds post-processing
    with_channel: bool = False  # also emit the noisy-circuit spectrum
    bands: bool = False  # cluster decay bands of the denoiser spectrum


@dataclass
class JobResult:
    run_id: str
    emit: bool
    spectra: list[SpectrumSample] = field(default_factory=list)
    mean_log_modulus: float | None = None
    min_distances: list[float] | None = None
    band_clusters: dict | None = None


def _circuit_spec(job: Job) -> CircuitSpec:
    return CircuitSpec(
        n_hilbert=job.n,
        m=job.m,
        t=job.t,
        noise=job.noise,
        k_max=job.k_max,
        seed=job.seed,
    )


def execute_job(job: Job) -> JobResult:
    params = {"t": job.t, "m": job.m, "run_id": job.run_id}
    result = JobResult(run_id=job.run_id, emit=job.emit)
    if job.kind == "kossakowski-sum":
        d = job.n * job.n - 1
        total = np.zeros((d, d), dtype=complex)
        for i in range(job.m):
            k = sample_global_kossakowski(job.n, job.seed.child(i))
            total += k.matrix * (d / job.n)  # unit-mean rescaling
        w = np.linalg.eigvalsh(total)
        result.spectra.append(
            SpectrumSample(
                eigenvalues=w.astype(complex),
                source="kossakowski-sum",
                params={"n_hilbert": job.n, **params},
            )
        )
        return result
    if job.kind == "lindblad":
        from .channels import noise_basis
        from .ensembles import sample_local_kossakowski
        from .lindblad import build_lindbladian_diagonalized

        spec = _circuit_spec(job)
        basis = noise_basis(spec)
        if spec.noise == "local":
            k = sample_local_kossakowski(len(basis), job.n, job.seed.child(0, 1))
        else:
            k = sample_global_kossakowski(job.n, job.seed.child(0, 1))
        generator = build_lindbladian_diagonalized(k, basis)
        result.spectra.append(eigenvalues(generator, params))
        return result
    circuit = assemble_noisy_circuit(_circuit_spec(job))
    denoised = compute_denoiser(circuit, linear=(job.kind == "denoiser-bch"))
    spectrum = eigenvalues(denoised.denoiser, params)
    result.spectra.append(spectrum)
    result.mean_log_modulus = float(np.mean(np.log(np.abs(spectrum.eigenvalues))))
    if job.with_channel:
        result.spectra.append(eigenvalues(circuit.channel, params))
    if job.kind == "denoiser-bch":
        lin = eigenvalues(denoised.linear_denoiser, params)
        result.spectra.append(lin)
        result.min_distances = min_distance_profile(spectrum, lin).tolist()
    if job.bands:
        result.band_clusters = decay_band_clusters(spectrum, job.t, job.m).to_dict()
    return result


# ----------------------------------------------------------------------
# Experiment assembly: jobs + post-processing into summary fields.
# ----------------------------------------------------------------------


def _build_jobs(cfg: ExperimentConfig) -> tuple[list[Job], dict]:
    """Enumerate jobs for a config; returns (jobs, static summary info)."""
    root = RngSeed(cfg.seed)
    jobs: list[Job] = []
    info: dict = {}
    name = cfg.experiment

    def members(token, sweep_index, **kw):
        for i in range(cfg.ensemble):
            jobs.append(
                Job(run_id=f"{token}-s{i}", seed=root.child(sweep_index, i), **kw)
            )

    if name == "fig2":
        n, m = cfg.n_values[0], cfg.m_values[0]
        for j, t in enumerate(cfg.t_values):
            members(f"t{t:g}", j, kind="denoiser", n=n, m=m, t=t, with_channel=True)
    elif name in ("fig3", "fig4", "fig6"):
        n_list = cfg.n_values if name == "fig3" else (cfg.n_values[0],)
        m_list = cfg.m_values if name == "fig4" else (cfg.m_values[0],)
        t = cfg.t_values[0]
        j = 0
        for n in n_list:
            for m in m_list:
                token = {"fig3": f"N{n}", "fig4": f"m{m}", "fig6": "run"}[name]
                members(token, j, kind="denoiser", n=n, m=m, t=t)
                j += 1
        # contour pools, one per dimension
        for jn, n in enumerate(n_list):
            for i in range(CONTOUR_POOL_SIZE):
                jobs.append(
                    Job(
                        run_id=f"contour-N{n}-s{i}",
                        kind="lindblad",
                        n=n,
                        m=1,
                        t=0.0,
                        seed=root.child(10_000 + jn, i),
                        emit=False,
                    )
                )
    elif name in ("fig5-hist", "fig8-hist"):
        n = cfg.n_values[0]
        combos = [(t, m) for t in cfg.t_values for m in cfg.m_values]
        kw = {}
        if name == "fig8-hist":
            kw = {"noise": "local", "k_max": cfg.k_values[0]}
        for j, (t, m) in enumerate(combos):
            members(
                f"t{t:g}-m{m}", j, kind="denoiser-bch", n=n, m=m, t=t, **kw
            )
        info["combos"] = [f"t{t:g}-m{m}" for t, m in combos]
    elif name == "fig7":
        n, m, t = cfg.n_values[0], cfg.m_values[0], cfg.t_values[0]
        members(
            "run", 0, kind="denoiser", n=n, m=m, t=t,
            noise="local", k_max=cfg.k_values[0], bands=True,
        )
    elif name == "lindblad-spectra":
        for j, n in enumerate(cfg.n_values):
            members(f"N{n}", j, kind="lindblad", n=n, m=1, t=0.0)
    elif name == "local-kmax-sweep":
        n, m, t = cfg.n_values[0], cfg.m_values[0], cfg.t_values[0]
        for j, k in enumerate(cfg.k_values):
            members(
                f"k{k}", j, kind="denoiser", n=n, m=m, t=t,
                noise="local", k_max=k, bands=True,
            )
    elif name == "kossakowski-sum":
        n = cfg.n_values[0]
        for j, m in enumerate(cfg.m_values):
            members(f"m{m}", j, kind="kossakowski-sum", n=n, m=m, t=0.0)
    else:
        raise ConfigError(f"unknown experiment {name!r}")
    return jobs, info


def _postprocess(cfg: ExperimentConfig, results: list[JobResult], info: dict) -> dict:
    """Build the summary dict from job results."""
    name = cfg.experiment
    summary: dict = {
        "schema_version": SCHEMA_VERSION,
        "experiment": name,
        "parameters": {
            "N": list(cfg.n_values),
            "m": list(cfg.m_values),
            "t": list(cfg.t_values),
            "k_max": list(cfg.k_values),
            "noise": cfg.noise,
            "ensemble": cfg.ensemble,
            "seed": cfg.seed,
        },
        "predicted_centers": None,
        "contours": None,
        "min_distance_profiles": None,
        "band_clusters": None,
        "determinant_checks": None,
    }
    by_id = {r.run_id: r for r in results}

    det = {}
    for r in results:
        if r.mean_log_modulus is None or not r.emit:
            continue
        spectrum = r.spectra[0]
        t, m = spectrum.params["t"], spectrum.params["m"]
        expected = t * m
        det[r.run_id] = {
            "mean_log_modulus": r.mean_log_modulus,
            "expected": expected,
            "relative_error": (
                abs(r.mean_log_modulus - expected) / expected if expected else None
            ),
        }
    if det:
        summary["determinant_checks"] = det

    if name == "fig2":
        summary["predicted_centers"] = {
            f"t{t:g}": float(np.exp(cfg.m_values[0] * t)) for t in cfg.t_values
        }
    if name in ("fig3", "fig4", "fig6"):
        contours = {}
        centers = {}
        n_list = cfg.n_values if name == "fig3" else (cfg.n_values[0],)
        m_list = cfg.m_values if name == "fig4" else (cfg.m_values[0],)
        t = cfg.t_values[0]
        for n in n_list:
            pool = [
                by_id[f"contour-N{n}-s{i}"].spectra[0]
                for i in range(CONTOUR_POOL_SIZE)
            ]
            base = _contour_or_none(pool)
            for m in m_list:
                token = {"fig3": f"N{n}", "fig4": f"m{m}", "fig6": "run"}[name]
                centers[token] = float(np.exp(t * m))
                if base is None:
                    contours[token] = None
                    continue
                pred = predict_denoiser_contour(base, t, m)
                contours[token] = {
                    "base": _complex_list(pred.base),
                    "mapped": _complex_list(pred.mapped),
                }
        summary["contours"] = contours
        summary["predicted_centers"] = centers
    if name in ("fig5-hist", "fig8-hist"):
        summary["min_distance_profiles"] = {
            r.run_id: r.min_distances for r in results if r.min_distances is not None
        }
    if name in ("fig7", "local-kmax-sweep"):
        summary["band_clusters"] = {
            r.run_id: r.band_clusters for r in results if r.band_clusters is not None
        }
    if name == "lindblad-spectra":
        contours = {}
        widths = {}
        for n in cfg.n_values:
            pool = [
                by_id[f"N{n}-s{i}"].spectra[0] for i in range(cfg.ensemble)
            ]
            base = _contour_or_none(pool)
            contours[f"N{n}"] = None if base is None else {"base": _complex_list(base)}
            cloud = np.concatenate(
                [s.eigenvalues[np.abs(s.eigenvalues) > 1e-6] + 1.0 for s in pool]
            )
            widths[f"N{n}"] = {
                "real_axis_half_width": float(
                    0.5 * (cloud.real.max() - cloud.real.min())
                ),
                "reference": 2.0 / n,
            }
        summary["contours"] = contours
        summary["extent"] = widths
    if name == "kossakowski-sum":
        from .spectra import kossakowski_sum_bounds

        bounds = {}
        for m in cfg.m_values:
            lo, hi = kossakowski_sum_bounds(m)
            vals = np.concatenate(
                [
                    by_id[f"m{m}-s{i}"].spectra[0].eigenvalues.real
                    for i in range(cfg.ensemble)
                ]
            )
            bounds[f"m{m}"] = {
                "lower": lo,
                "upper": hi,
                "empirical_min": float(vals.min()),
                "empirical_max": float(vals.max()),
                "empirical_mean": float(vals.mean()),
            }
        summary["sum_bounds"] = bounds
    return summary


def _complex_list(values: np.ndarray) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in values]


def _contour_or_none(pool) -> np.ndarray | None:
    """Empirical contour at the finest angular resolution the pool supports."""
    for n_angles in (64, 32, 16):
        try:
            return empirical_lindblad_contour(pool, n_angles=n_angles)
        except BinningError:
            continue
    return None


# ----------------------------------------------------------------------
# Output writing
# ----------------------------------------------------------------------


def _validate_spectrum(sample: SpectrumSample) -> None:
    n = sample.params.get("n_hilbert")
    if sample.source == "kossakowski-sum":
        expected = n * n - 1
    else:
        expected = n * n
    if len(sample) != expected:
        raise ExperimentError(
            f"spectrum {sample.params.get('run_id')}/{sample.source} has "
            f"{len(sample)} eigenvalues, expected {expected}"
        )
    defect = conjugation_closure_defect(sample)
    if defect > CONJUGATION_TOL:
        raise ExperimentError(
            f"spectrum {sample.params.get('run_id')}/{sample.source} violates "
            f"conjugation closure (defect {defect:.3e})"
        )


def _spectra_rows(results: list[JobResult]):
    for r in results:
        if not r.emit:
            continue
        for sample in r.spectra:
            _validate_spectrum(sample)
            stationary = sample.stationary
            for k, z in enumerate(sample.eigenvalues):
                yield (
                    r.run_id,
                    sample.source,
                    format(z.real, ".17g"),
                    format(z.imag, ".17g"),
                    int(stationary[k]),
                )


def write_outputs(cfg: ExperimentConfig, results: list[JobResult], summary: dict) -> dict:
    out_dir = Path(cfg.out_dir) / cfg.experiment
    out_dir.mkdir(parents=True, exist_ok=True)
    rows = list(_spectra_rows(results))
    header = ("run_id", "source", "re", "im", "is_stationary")
    if cfg.fmt == "csv":
        spectra_path = out_dir / "spectra.csv"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        spectra_path.write_text(buf.getvalue(), encoding="utf-8")
    else:
        spectra_path = out_dir / "spectra.json"
        payload = [dict(zip(header, row)) for row in rows]
        spectra_path.write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    summary_path = out_dir / "summary.json"
    summary_path.write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return {"spectra": str(spectra_path), "summary": str(summary_path)}


# ----------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Run one catalog experiment; returns the summary plus output paths."""
    import time

    cfg.validate()
    jobs, info = _build_jobs(cfg)
    start = time.monotonic()
    threads = cfg.threads or os.cpu_count() or 1
    try:
        if threads > 1 and len(jobs) > 1:
            results = _run_pool(jobs, threads)
        else:
            results = [execute_job(job) for job in jobs]
        summary = _postprocess(cfg, results, info)
        paths = write_outputs(cfg, results, summary)
    except (
        EigensolverError,
        NonInvertibleChannelError,
        ScalingFailureError,
        BinningError,
        np.linalg.LinAlgError,
    ) as exc:
        _flag_failed_run(cfg, exc)
        raise ExperimentError(f"{cfg.experiment}: {exc}") from exc
    elapsed = time.monotonic() - start
    log.info("%s finished in %.1f s -> %s", cfg.experiment, elapsed, paths["spectra"])
    summary["_outputs"] = paths
    return summary


def _flag_failed_run(cfg: ExperimentConfig, exc: Exception) -> None:
    """Leave a marker so partial output directories are recognizable."""
    out_dir = Path(cfg.out_dir) / cfg.experiment
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / "summary.json").write_text(
            json.dumps(
                {
                    "schema_version": SCHEMA_VERSION,
                    "experiment": cfg.experiment,
                    "failed": True,
                    "error": str(exc),
                },
                indent=2,
                sort_keys=True,
            )
            + "\n",
            encoding="utf-8",
        )
    except OSError:
        pass  # the raised ExperimentError is the primary signal


def _run_pool(jobs: list[Job], threads: int) -> list[JobResult]:
    # Workers get single-threaded BLAS so the pool does the parallelism.
    saved = {
        key: os.environ.get(key)
        for key in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")
    }
    for key in saved:
        os.environ[key] = "1"
    try:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(execute_job, jobs))
    finally:
        for key, value in saved.items():
            if value is None:
                del os.environ[key]
            else:
                os.environ[key] = value

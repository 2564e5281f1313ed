"""Log-scale histograms of nearest-eigenvalue distance profiles."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import InputError, PlotJob, read_summary

plt.rcParams["svg.hashsalt"] = "denospec"  # deterministic SVG element ids

SAVE_KW = dict(metadata={"Date": None})


def histogram_data(profile, n_bins: int = 24):
    """Counts over log-spaced bins covering the profile's positive values."""
    values = np.asarray(profile, dtype=float)
    values = values[values > 0]
    if values.size == 0:
        raise InputError("distance profile has no positive entries")
    lo = 10 ** np.floor(np.log10(values.min()))
    hi = 10 ** np.ceil(np.log10(values.max()))
    if lo == hi:
        hi = lo * 10
    edges = np.geomspace(lo, hi, n_bins + 1)
    counts, _ = np.histogram(values, bins=edges)
    return counts, edges


def modal_bin_center(profile) -> float:
    """Geometric center of the most populated log bin."""
    counts, edges = histogram_data(profile)
    i = int(np.argmax(counts))
    return float(np.sqrt(edges[i] * edges[i + 1]))


def plot_histogram(job: PlotJob) -> Path:
    """One log-x histogram per min-distance profile in the summary."""
    summary = read_summary(job.summary)
    profiles = summary.get("min_distance_profiles")
    if not profiles:
        raise InputError(f"{job.summary}: no min_distance_profiles in summary")
    keys = sorted(profiles)
    fig, axes = plt.subplots(
        1, len(keys), figsize=(4.0 * len(keys), 3.4), squeeze=False
    )
    for ax, key in zip(axes.ravel(), keys):
        counts, edges = histogram_data(profiles[key])
        ax.stairs(counts, edges, fill=True, color="#27ad7d")
        ax.set_xscale("log")
        ax.set_title(key)
        ax.set_xlabel("nearest-eigenvalue distance")
        ax.set_ylabel("count")
    fig.tight_layout()
    job.output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(job.output, **SAVE_KW)
    plt.close(fig)
    return job.output


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Histogram the min-distance profiles of a summary JSON."
    )
    parser.add_argument("summary", type=Path, help="summary JSON file")
    parser.add_argument("--out", type=Path, required=True, help="output image (.svg/.png)")
    args = parser.parse_args(argv)
    job = PlotJob(spectra=None, summary=args.summary, kind="histogram", output=args.out)
    try:
        plot_histogram(job)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

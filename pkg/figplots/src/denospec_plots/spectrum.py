"""Complex-plane spectrum scatter plots with optional contour overlay."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .io import InputError, PlotJob, read_spectra, read_summary

plt.rcParams["svg.hashsalt"] = "denospec"  # deterministic SVG element ids

SOURCE_STYLE = {
    "noisy-circuit": dict(color="#346b90", marker="."),
    "denoiser": dict(color="#27ad7d", marker="."),
    "bch-denoiser": dict(color="#89d345", marker="x"),
    "lindbladian": dict(color="#6a3d9a", marker="."),
}
SAVE_KW = dict(metadata={"Date": None})  # keep SVG output byte-stable


def plot_spectrum(job: PlotJob) -> Path:
    """Render one panel per run token; returns the output path.

    Overlays the unit circle, any predicted contours found in the summary
    (drawn in red with gid ``predicted-contour``), and vertical lines at
    the predicted spectral centers.
    """
    rows = read_spectra(job.spectra)
    summary = read_summary(job.summary) if job.summary else {}
    contours = summary.get("contours") or {}
    centers = summary.get("predicted_centers") or {}

    keep = np.ones(len(rows.values), dtype=bool)
    if not job.include_stationary:
        keep = ~rows.stationary
    tokens = rows.tokens
    panels = sorted(set(tokens))
    ncols = min(len(panels), 3)
    nrows = (len(panels) + ncols - 1) // ncols
    fig, axes = plt.subplots(
        nrows, ncols, figsize=(4.2 * ncols, 4.0 * nrows), squeeze=False
    )
    for ax in axes.ravel()[len(panels):]:
        ax.set_visible(False)
    theta = np.linspace(0, 2 * np.pi, 361)
    for ax, token in zip(axes.ravel(), panels):
        mask = (tokens == token) & keep
        for source in sorted(set(rows.source[mask])):
            sel = mask & (rows.source == source)
            style = SOURCE_STYLE.get(source, dict(color="k", marker="."))
            ax.scatter(
                rows.values[sel].real,
                rows.values[sel].imag,
                s=6,
                linewidths=0.5,
                label=source,
                **style,
            )
        ax.plot(np.cos(theta), np.sin(theta), color="0.6", lw=0.8, zorder=0)
        contour = contours.get(token)
        if contour and contour.get("mapped"):
            pts = np.array(contour["mapped"], dtype=float)
            closed = np.vstack([pts, pts[:1]])
            ax.plot(
                closed[:, 0], closed[:, 1], color="red", lw=1.2,
                gid="predicted-contour", label="predicted contour",
            )
        if token in centers:
            ax.axvline(centers[token], color="0.3", lw=0.8, ls="--")
        ax.set_title(token)
        ax.set_xlabel("Re")
        ax.set_ylabel("Im")
        ax.set_aspect("equal", adjustable="datalim")
        ax.legend(fontsize=7, loc="upper right")
    fig.tight_layout()
    job.output.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(job.output, **SAVE_KW)
    plt.close(fig)
    return job.output


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        description="Scatter a spectra CSV in the complex plane."
    )
    parser.add_argument("spectra", type=Path, help="spectra CSV file")
    parser.add_argument("--summary", type=Path, default=None, help="summary JSON")
    parser.add_argument("--out", type=Path, required=True, help="output image (.svg/.png)")
    parser.add_argument(
        "--include-stationary", action="store_true",
        help="keep the stationary eigenvalue at 1 in the scatter",
    )
    args = parser.parse_args(argv)
    job = PlotJob(
        spectra=args.spectra,
        summary=args.summary,
        kind="scatter+contour" if args.summary else "scatter",
        output=args.out,
        include_stationary=args.include_stationary,
    )
    try:
        plot_spectrum(job)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

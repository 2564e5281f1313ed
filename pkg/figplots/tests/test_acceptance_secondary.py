"""Secondary acceptance: plot scripts consume real fig2/fig5/fig6 outputs.

These run the experiments at their catalog defaults (N = 32), so this
module takes a few minutes; the primary acceptance suite does not depend
on it.
"""

import subprocess
import sys

import pytest

from denospec_plots import PlotJob, plot_histogram, plot_spectrum
from denospec_plots.histogram import modal_bin_center
from denospec_plots.io import read_summary


def run_denospec(args, out_dir):
    cmd = [
        sys.executable, "-m", "denospec.cli", *args,
        "--out", str(out_dir), "--threads", "2",
    ]
    subprocess.run(cmd, check=True, capture_output=True, text=True)


@pytest.fixture(scope="session")
def default_outputs(tmp_path_factory):
    out = tmp_path_factory.mktemp("acc-out")
    run_denospec(["fig2", "--seed", "1"], out)
    run_denospec(["fig5-hist", "--seed", "1"], out)
    run_denospec(["fig6", "--seed", "1"], out)
    return out


def test_fig2_image(default_outputs, tmp_path):
    path = plot_spectrum(
        PlotJob(
            spectra=default_outputs / "fig2" / "spectra.csv",
            summary=default_outputs / "fig2" / "summary.json",
            kind="scatter",
            output=tmp_path / "fig2.svg",
        )
    )
    ok = path.exists() and path.stat().st_size > 10_000
    print(f"ACCEPTANCE 11a fig2-image: {'PASS' if ok else 'FAIL'} - {path}")
    assert ok


def test_fig6_image_has_contour(default_outputs, tmp_path):
    path = plot_spectrum(
        PlotJob(
            spectra=default_outputs / "fig6" / "spectra.csv",
            summary=default_outputs / "fig6" / "summary.json",
            kind="scatter+contour",
            output=tmp_path / "fig6.svg",
        )
    )
    ok = 'id="predicted-contour"' in path.read_text()
    print(f"ACCEPTANCE 11b fig6-contour-overlay: {'PASS' if ok else 'FAIL'} - {path}")
    assert ok


def test_fig5_histogram_modal_bin(default_outputs, tmp_path):
    summary_path = default_outputs / "fig5-hist" / "summary.json"
    path = plot_histogram(
        PlotJob(
            spectra=None,
            summary=summary_path,
            kind="histogram",
            output=tmp_path / "fig5.svg",
        )
    )
    profiles = read_summary(summary_path)["min_distance_profiles"]
    mode = modal_bin_center(profiles["t0.1-m2-s0"])
    ok = path.exists() and 1e-7 <= mode <= 1e-5
    print(
        f"ACCEPTANCE 11c fig5-histogram-modal-bin: {'PASS' if ok else 'FAIL'} - "
        f"modal bin center {mode:.2e}"
    )
    assert ok

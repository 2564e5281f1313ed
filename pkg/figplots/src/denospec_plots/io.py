"""Input parsing and validation for the plot scripts."""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

REQUIRED_COLUMNS = ("run_id", "source", "re", "im", "is_stationary")


class InputError(ValueError):
    """Input file missing, empty, or schema mismatch."""


@dataclass(frozen=True)
class PlotJob:
    """One rendering task: input files, figure kind, output image path."""

    spectra: Path | None
    summary: Path | None
    kind: str  # "scatter" | "scatter+contour" | "histogram"
    output: Path
    include_stationary: bool = False


@dataclass(frozen=True)
class SpectrumRows:
    run_id: np.ndarray
    source: np.ndarray
    values: np.ndarray  # complex
    stationary: np.ndarray  # bool

    @property
    def tokens(self) -> np.ndarray:
        """run ids with the ensemble-member suffix stripped."""
        return np.array([r.rsplit("-s", 1)[0] for r in self.run_id])


def read_spectra(path) -> SpectrumRows:
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such spectra file: {path}")
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or not set(REQUIRED_COLUMNS) <= set(reader.fieldnames):
            raise InputError(
                f"{path}: expected columns {REQUIRED_COLUMNS}, got {reader.fieldnames}"
            )
        rows = list(reader)
    if not rows:
        raise InputError(f"{path}: no eigenvalue rows")
    return SpectrumRows(
        run_id=np.array([r["run_id"] for r in rows]),
        source=np.array([r["source"] for r in rows]),
        values=np.array([float(r["re"]) + 1j * float(r["im"]) for r in rows]),
        stationary=np.array([r["is_stationary"] == "1" for r in rows]),
    )


def read_summary(path) -> dict:
    path = Path(path)
    if not path.exists():
        raise InputError(f"no such summary file: {path}")
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from exc

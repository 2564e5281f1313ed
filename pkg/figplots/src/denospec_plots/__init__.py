"""Plot scripts for denospec outputs.

Read-only consumers of the spectra CSV and summary JSON files; deleting
this package affects no computation.
"""

from .io import InputError, PlotJob, read_spectra, read_summary
from .histogram import plot_histogram
from .spectrum import plot_spectrum

__all__ = [
    "InputError",
    "PlotJob",
    "plot_histogram",
    "plot_spectrum",
    "read_spectra",
    "read_summary",
]

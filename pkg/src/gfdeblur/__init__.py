"""Non-blind image deconvolution with guided-filter regularization and
adaptive regularization-parameter selection via the discrepancy
principle."""

from .guided_filter import GfParams, guidfilter, smooth_gradients
from .image_core import as_image, box_mean, box_sum, centered_sq_norm, mean
from .pipeline import GfdConfig, IterationRecord, IterationTrace, run_gfd
from .regparam import (
    DiscrepancySpec,
    LambdaChoice,
    NoiseEstimate,
    choose_lambda,
    compute_rho,
    estimate_sigma,
)
from .spectral import (
    INFINITY,
    Psf,
    circ_convolve,
    derivative_spectra,
    discrepancy,
    psf_spectrum,
    solve_guidance,
    solve_input,
)

__all__ = [
    "GfParams", "guidfilter", "smooth_gradients",
    "as_image", "box_mean", "box_sum", "centered_sq_norm", "mean",
    "GfdConfig", "IterationRecord", "IterationTrace", "run_gfd",
    "DiscrepancySpec", "LambdaChoice", "NoiseEstimate",
    "choose_lambda", "compute_rho", "estimate_sigma",
    "INFINITY", "Psf", "circ_convolve", "derivative_spectra",
    "discrepancy", "psf_spectrum", "solve_guidance", "solve_input",
]

__version__ = "0.1.0"

"""Adaptive regularization-parameter engine.

Noise variance via the Haar-MAD median rule, the discrepancy bound
c = rho * npix * sigma^2, the data-driven rho schedule, and bisection
for the lambda whose data-fit residual meets the bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import BracketFailure, DimensionMismatch, ImageTooSmall
from .image_core import centered_sq_norm
from .spectral import INFINITY, Psf, _Infinity, discrepancy_from_terms, discrepancy_terms

# Gaussian consistency factor for the median absolute deviation.
MAD_FACTOR = 0.6745

# Clamp range for the s statistic; keeps rho strictly positive.
S_FLOOR = 0.05
S_CEIL = 1.0

LAMBDA_BRACKET_CAP = 1e12


@dataclass(frozen=True)
class NoiseEstimate:
    """Noise standard deviation in intensity units."""

    sigma: float

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ValueError(f"sigma must be nonnegative, got {self.sigma!r}")

    @property
    def variance(self) -> float:
        return self.sigma * self.sigma


@dataclass(frozen=True)
class DiscrepancySpec:
    """Discrepancy fraction rho, the bound c, and the branch threshold tau."""

    rho: float
    bound_c: float
    tau: float = 0.6

    def __post_init__(self):
        if not 0 < self.rho <= 1:
            raise ValueError(f"rho must be in (0, 1], got {self.rho!r}")
        if self.bound_c < 0:
            raise ValueError(f"bound_c must be nonnegative, got {self.bound_c!r}")

    @classmethod
    def from_noise(cls, rho: float, npix: int, variance: float, tau: float = 0.6):
        return cls(rho=rho, bound_c=rho * npix * variance, tau=tau)


@dataclass(frozen=True)
class LambdaChoice:
    """Selected regularization weight and the residual it achieves."""

    value: Union[float, _Infinity]
    residual: float
    iterations: int

    @property
    def is_infinite(self) -> bool:
        return self.value is INFINITY


def estimate_sigma(g: np.ndarray) -> NoiseEstimate:
    """Median rule on the diagonal detail of a one-level Haar analysis.

    Odd dimensions are mirror-extended by one row/column so every 2x2
    block is complete.
    """
    h, w = g.shape
    if h < 2 or w < 2:
        raise ImageTooSmall(f"need at least 2x2 for noise estimation, got {h}x{w}")
    if h % 2:
        g = np.vstack([g, g[-1:, :]])
    if w % 2:
        g = np.hstack([g, g[:, -1:]])
    a = g[0::2, 0::2]
    b = g[0::2, 1::2]
    c = g[1::2, 0::2]
    d = g[1::2, 1::2]
    hh = (a - b - c + d) / 2.0
    sigma = float(np.median(np.abs(hh))) / MAD_FACTOR
    return NoiseEstimate(sigma=sigma)


def compute_rho(g: np.ndarray, v: np.ndarray, est: NoiseEstimate, tau: float) -> float:
    """Data-driven discrepancy fraction.

    s compares the centered energy of g against the noise energy; the
    thresh statistic picks between rho = s^2 (noisy / uninformative v)
    and rho = s (v already carries structure).
    """
    if g.shape != v.shape:
        raise DimensionMismatch(f"g {g.shape} and v {v.shape} differ")
    npix = g.size
    noise_energy = npix * est.variance
    g_sq = float(np.dot(g.ravel(), g.ravel()))
    cvar_g = centered_sq_norm(g)
    if g_sq > 0:
        s = 1.0 - (cvar_g - noise_energy) / g_sq
    else:
        s = 1.0
    s = min(max(s, S_FLOOR), S_CEIL)

    cvar_v = centered_sq_norm(v)
    excess = cvar_g - noise_energy
    if cvar_v <= 0.0 or noise_energy <= 0.0:
        thresh = np.inf
    elif excess <= 0.0:
        thresh = 0.0
    else:
        thresh = float(np.sqrt(excess / (noise_energy * cvar_v)))
    return s * s if thresh > tau else s


def choose_lambda(
    g: np.ndarray,
    psf: Psf,
    v: np.ndarray,
    spec: DiscrepancySpec,
    rel_tol: float = 1e-3,
    max_iter: int = 60,
) -> LambdaChoice:
    """Solve the discrepancy equation for lambda by bisection.

    If the pre-estimate v already meets the bound, returns INFINITY
    (downstream then takes u_I = u_p = v).  Otherwise brackets by
    doubling from lambda = 1 and bisects on the monotone residual curve.
    """
    if not 0 < rel_tol <= 0.1:
        raise ValueError(f"rel_tol must be in (0, 0.1], got {rel_tol!r}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be >= 1, got {max_iter!r}")
    a, b, npix = discrepancy_terms(g, psf, v)
    c = spec.bound_c
    # lam -> inf asymptote equals the residual of v itself (Parseval).
    entry = float(b.sum() / npix)
    if entry <= c:
        return LambdaChoice(value=INFINITY, residual=entry, iterations=0)

    hi = 1.0
    while discrepancy_from_terms(a, b, npix, hi) < c:
        hi *= 2.0
        if hi > LAMBDA_BRACKET_CAP:
            raise BracketFailure(
                "discrepancy bound unreachable below lambda = 1e12"
            )
    lo = 0.0
    mid = hi
    res = discrepancy_from_terms(a, b, npix, mid)
    steps = 0
    while steps < max_iter and abs(res - c) > rel_tol * c:
        mid = 0.5 * (lo + hi)
        res = discrepancy_from_terms(a, b, npix, mid)
        steps += 1
        if res < c:
            lo = mid
        else:
            hi = mid
    return LambdaChoice(value=mid, residual=res, iterations=steps)

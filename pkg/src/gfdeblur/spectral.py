"""Frequency-domain machinery: circular convolution, PSF embedding,
forward-difference operator spectra, and the two closed-form
Tikhonov-style deblurring solves.

All boundary handling is periodic (circular wrap), which is what makes
the FFT diagonalization of the blur and derivative operators exact.
The spatial squared norm of an image equals sum(|F(x)|^2) / npix under
numpy's unnormalized forward FFT; the discrepancy evaluation includes
that factor so spectral and spatial values agree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, KernelTooLarge, SingularDenominator


class _Infinity:
    """Distinguished lambda = infinity value (not a float sentinel)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


@dataclass(frozen=True, eq=False)
class Psf:
    """Small centered convolution kernel, normalized to unit sum."""

    taps: np.ndarray = field()

    def __post_init__(self):
        taps = np.asarray(self.taps, dtype=np.float64)
        if taps.ndim != 2:
            raise ValueError("PSF taps must be 2-D")
        kh, kw = taps.shape
        if kh % 2 == 0 or kw % 2 == 0:
            raise ValueError(f"PSF dimensions must be odd, got {kh}x{kw}")
        if not np.all(np.isfinite(taps)):
            raise ValueError("PSF taps must be finite")
        if not np.any(taps):
            raise ValueError("PSF must have at least one nonzero tap")
        if abs(taps.sum() - 1.0) > 1e-12:
            raise ValueError("PSF taps must sum to 1; use Psf.from_taps to normalize")
        object.__setattr__(self, "taps", taps)

    @classmethod
    def from_taps(cls, taps) -> "Psf":
        """Build a PSF from raw weights, normalizing to unit sum."""
        taps = np.asarray(taps, dtype=np.float64)
        s = taps.sum()
        if s == 0.0:
            raise ValueError("PSF taps sum to zero; cannot normalize")
        return cls(taps / s)

    @classmethod
    def delta(cls) -> "Psf":
        return cls(np.ones((1, 1)))

    @property
    def shape(self):
        return self.taps.shape


def psf_spectrum(psf: Psf, height: int, width: int) -> np.ndarray:
    """Spectrum of the PSF embedded in a height x width canvas.

    The center tap lands on the origin pixel and the kernel wraps
    circularly, so pointwise multiplication in the frequency domain
    implements centered circular convolution.
    """
    kh, kw = psf.shape
    if kh > height or kw > width:
        raise KernelTooLarge(
            f"PSF {kh}x{kw} does not fit canvas {height}x{width}"
        )
    canvas = np.zeros((height, width), dtype=np.float64)
    cy, cx = kh // 2, kw // 2
    rows = (np.arange(kh) - cy) % height
    cols = (np.arange(kw) - cx) % width
    canvas[np.ix_(rows, cols)] += psf.taps
    return np.fft.fft2(canvas)


def circ_convolve(img: np.ndarray, psf: Psf) -> np.ndarray:
    """Centered circular convolution of an image with a PSF."""
    spec = psf_spectrum(psf, *img.shape)
    return np.real(np.fft.ifft2(np.fft.fft2(img) * spec))


def derivative_spectra(height: int, width: int):
    """Spectra of the circular forward-difference operators.

    dx: u(i, j+1) - u(i, j);  dy: u(i+1, j) - u(i, j).
    """
    kx = np.arange(width)
    ky = np.arange(height)
    dx_row = np.exp(2j * np.pi * kx / width) - 1.0
    dy_col = np.exp(2j * np.pi * ky / height) - 1.0
    dx = np.tile(dx_row, (height, 1))
    dy = np.tile(dy_col[:, None], (1, width))
    return dx, dy


def diff_x(img: np.ndarray) -> np.ndarray:
    """Forward difference along columns with circular wrap."""
    return np.roll(img, -1, axis=1) - img


def diff_y(img: np.ndarray) -> np.ndarray:
    """Forward difference along rows with circular wrap."""
    return np.roll(img, -1, axis=0) - img


def _check_same_shape(*imgs):
    shapes = {im.shape for im in imgs}
    if len(shapes) > 1:
        raise DimensionMismatch(f"images differ in shape: {sorted(shapes)}")


def solve_guidance(g, psf: Psf, vx, vy, lam, v):
    """Closed-form guidance solve: data fit plus gradient-matching prior.

    Minimizes ||h * u - g||^2 + lam (||dx u - vx||^2 + ||dy u - vy||^2)
    in the Fourier domain.  lam = INFINITY short-circuits to v.
    """
    _check_same_shape(g, vx, vy, v)
    if lam is INFINITY:
        return v.copy()
    if not lam > 0:
        raise ValueError(f"lambda must be positive or INFINITY, got {lam!r}")
    H = psf_spectrum(psf, *g.shape)
    dx, dy = derivative_spectra(*g.shape)
    denom = np.abs(H) ** 2 + lam * (np.abs(dx) ** 2 + np.abs(dy) ** 2)
    if np.min(np.abs(denom)) < 1e-15:
        raise SingularDenominator("guidance solve denominator vanishes")
    num = (
        np.conj(H) * np.fft.fft2(g)
        + lam * (np.conj(dx) * np.fft.fft2(vx) + np.conj(dy) * np.fft.fft2(vy))
    )
    return np.real(np.fft.ifft2(num / denom))


def solve_input(g, psf: Psf, v, lam):
    """Closed-form input solve: data fit plus proximity-to-v prior.

    Minimizes ||h * u - g||^2 + lam ||u - v||^2 in the Fourier domain.
    lam = INFINITY short-circuits to v.
    """
    _check_same_shape(g, v)
    if lam is INFINITY:
        return v.copy()
    if not lam > 0:
        raise ValueError(f"lambda must be positive or INFINITY, got {lam!r}")
    H = psf_spectrum(psf, *g.shape)
    denom = np.abs(H) ** 2 + lam
    num = np.conj(H) * np.fft.fft2(g) + lam * np.fft.fft2(v)
    return np.real(np.fft.ifft2(num / denom))


def discrepancy_terms(g, psf: Psf, v):
    """Precompute the per-frequency pieces of the discrepancy curve.

    Returns (a, b, npix) with a = |F(h)|^2 and b = |F(h) F(v) - F(g)|^2,
    so the data-fit residual of the input solve at lam is
    sum(lam^2 b / (a + lam)^2) / npix.
    """
    _check_same_shape(g, v)
    H = psf_spectrum(psf, *g.shape)
    a = np.abs(H) ** 2
    b = np.abs(H * np.fft.fft2(v) - np.fft.fft2(g)) ** 2
    return a, b, g.size


def discrepancy_from_terms(a, b, npix: int, lam: float) -> float:
    if lam == 0.0:
        return 0.0
    r = lam / (a + lam)
    return float(np.sum(r * r * b) / npix)


def discrepancy(g, psf: Psf, v, lam: float) -> float:
    """Squared data-fit residual ||h * u_p(lam) - g||^2, spectrally.

    Equals the spatial squared norm thanks to the 1/npix Parseval factor.
    """
    if lam < 0:
        raise ValueError(f"lambda must be nonnegative, got {lam!r}")
    a, b, npix = discrepancy_terms(g, psf, v)
    return discrepancy_from_terms(a, b, npix, lam)

"""Shared helpers: seeded random images, brute-force oracles, and a
procedurally generated natural-looking test image so the suite needs no
image assets."""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np
import pytest


def rand_image(seed: int, shape=(16, 16), lo=0.0, hi=255.0) -> np.ndarray:
    gen = np.random.default_rng(seed)
    return gen.uniform(lo, hi, size=shape)


def rand_int_image(seed: int, shape=(16, 16)) -> np.ndarray:
    gen = np.random.default_rng(seed)
    return gen.integers(0, 256, size=shape).astype(np.float64)


def mirror_index(i: int, n: int) -> int:
    """Symmetric (edge-duplicating) extension index, matching np.pad."""
    while i < 0 or i >= n:
        if i < 0:
            i = -i - 1
        else:
            i = 2 * n - 1 - i
    return i


def window_values(img: np.ndarray, cy: int, cx: int, w: int) -> np.ndarray:
    """Gather the w*w mirror-extended window centered at (cy, cx)."""
    r = (w - 1) // 2
    h, wd = img.shape
    out = np.empty((w, w))
    for dy in range(-r, r + 1):
        for dx in range(-r, r + 1):
            out[dy + r, dx + r] = img[mirror_index(cy + dy, h), mirror_index(cx + dx, wd)]
    return out


def box_sum_bruteforce(img: np.ndarray, w: int) -> np.ndarray:
    h, wd = img.shape
    out = np.empty_like(img)
    for y in range(h):
        for x in range(wd):
            out[y, x] = window_values(img, y, x, w).sum()
    return out


def guidfilter_bruteforce(guide: np.ndarray, src: np.ndarray, w: int, eps: float):
    """Direct per-window ridge regression plus coefficient averaging.

    Each window's (a, b) comes from solving the 2x2 normal equations of
    the penalized least squares directly, an independent route from the
    covariance/box-sum formulas in the implementation.
    """
    h, wd = guide.shape
    a = np.empty_like(guide)
    b = np.empty_like(guide)
    for y in range(h):
        for x in range(wd):
            gi = window_values(guide, y, x, w).ravel()
            pi = window_values(src, y, x, w).ravel()
            m = np.array([
                [np.mean(gi * gi) + eps, np.mean(gi)],
                [np.mean(gi), 1.0],
            ])
            rhs = np.array([np.mean(gi * pi), np.mean(pi)])
            ab = np.linalg.solve(m, rhs)
            a[y, x] = ab[0]
            b[y, x] = ab[1]
    out = np.empty_like(guide)
    for y in range(h):
        for x in range(wd):
            out[y, x] = (
                np.mean(window_values(a, y, x, w)) * guide[y, x]
                + np.mean(window_values(b, y, x, w))
            )
    return out


def natural_image(seed: int = 7, size: int = 256) -> np.ndarray:
    """Smooth background plus blocks, disks, and mild texture in [0, 255]."""
    gen = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size].astype(np.float64) / size
    img = 110.0 + 60.0 * np.sin(2 * np.pi * x * 1.3) * np.cos(2 * np.pi * y * 0.8)
    img += 30.0 * np.sin(2 * np.pi * (x + y) * 2.1)
    for _ in range(10):
        cy, cx = gen.integers(0, size, 2)
        hh, ww = gen.integers(size // 16, size // 4, 2)
        img[cy : cy + hh, cx : cx + ww] += gen.uniform(-80, 80)
    for _ in range(8):
        cy, cx = gen.uniform(0, size, 2)
        rad = gen.uniform(size / 32, size / 8)
        yy, xx = np.mgrid[0:size, 0:size]
        img[(yy - cy) ** 2 + (xx - cx) ** 2 < rad**2] += gen.uniform(-60, 60)
    img += gen.normal(0.0, 2.0, size=img.shape)  # mild texture
    return np.clip(img, 0.0, 255.0)


def asset_path(name: str) -> Path | None:
    """Locate a canonical test image (user-supplied, not shipped)."""
    for root in (os.environ.get("GFD_ASSETS"), Path(__file__).parent / "assets"):
        if root is None:
            continue
        p = Path(root) / name
        if p.exists():
            return p
    return None


def require_asset(name: str) -> Path:
    p = asset_path(name)
    if p is None:
        pytest.skip(f"canonical image {name} not supplied (set GFD_ASSETS or tests/assets/)")
    return p

"""Deterministic synthetic images, masks, and corpora for the test suite."""

from __future__ import annotations

import numpy as np

DEFAULT_STRIPE_PALETTE = np.array(
    [[180, 60, 50], [210, 100, 80], [150, 40, 40], [230, 130, 100]], dtype=np.uint8
)


def stripes(height: int, width: int, period: int = 4, palette=None) -> np.ndarray:
    """Vertical stripes: column color cycles through the palette."""
    if palette is None:
        palette = DEFAULT_STRIPE_PALETTE
    palette = np.asarray(palette, dtype=np.uint8)
    cols = palette[(np.arange(width) * len(palette) // period) % len(palette)]
    return np.broadcast_to(cols[None, :, :], (height, width, 3)).copy()


def checkerboard(height: int, width: int, cell: int = 4, dark=(90, 45, 40), light=(200, 140, 110)) -> np.ndarray:
    """Checkerboard of cell x cell squares (pattern period 2 * cell)."""
    yy, xx = np.mgrid[0:height, 0:width]
    parity = ((yy // cell) + (xx // cell)) % 2
    out = np.empty((height, width, 3), dtype=np.uint8)
    out[parity == 0] = np.asarray(dark, dtype=np.uint8)
    out[parity == 1] = np.asarray(light, dtype=np.uint8)
    return out


def smooth_gradient(height: int, width: int, rng: np.random.Generator) -> np.ndarray:
    """Slowly varying two-tone gradient, no fine texture."""
    yy, xx = np.mgrid[0:height, 0:width]
    a = rng.uniform(0.5, 2.0)
    b = rng.uniform(0.5, 2.0)
    ramp = (np.sin(a * np.pi * xx / width) + np.cos(b * np.pi * yy / height) + 2.0) / 4.0
    lo = rng.integers(40, 90, 3)
    hi = rng.integers(150, 220, 3)
    out = lo[None, None, :] + ramp[..., None] * (hi - lo)[None, None, :]
    return np.clip(np.rint(out), 0, 255).astype(np.uint8)


def random_texture(rng: np.random.Generator, height: int, width: int) -> np.ndarray:
    """One of several deterministic texture families, chosen by the rng."""
    family = rng.integers(0, 4)
    if family == 0:
        period = int(rng.choice([2, 4, 8]))
        return stripes(height, width, period=period)
    if family == 1:
        cell = int(rng.choice([2, 4]))
        return checkerboard(height, width, cell=cell)
    if family == 2:
        return smooth_gradient(height, width, rng)
    base = smooth_gradient(height, width, rng).astype(np.int16)
    noise = rng.integers(-25, 26, (height, width, 1))
    return np.clip(base + noise, 0, 255).astype(np.uint8)


def blob_mask(
    rng: np.random.Generator,
    height: int,
    width: int,
    coverage_lo: float,
    coverage_hi: float,
    min_known_side: int = 9,
) -> np.ndarray:
    """Random union of discs with coverage inside [lo, hi].

    Guarantees at least one fully-known min_known_side window so patch
    matching always has a candidate; retries deterministically when a draw
    violates the constraints.
    """
    yy, xx = np.mgrid[0:height, 0:width]
    while True:
        target = rng.uniform(coverage_lo, coverage_hi)
        mask = np.zeros((height, width), dtype=bool)
        for _ in range(10_000):
            if mask.mean() >= target:
                break
            cy = rng.integers(0, height)
            cx = rng.integers(0, width)
            r = rng.integers(2, 6)
            mask |= (yy - cy) ** 2 + (xx - cx) ** 2 <= r * r
        if not coverage_lo <= mask.mean() <= coverage_hi:
            continue
        if mask.sum() == 0:
            continue
        if _has_clear_window(mask, min_known_side):
            return mask


def _has_clear_window(mask: np.ndarray, side: int) -> bool:
    from numpy.lib.stride_tricks import sliding_window_view

    h, w = mask.shape
    if h < side or w < side:
        return False
    return bool((~sliding_window_view(mask, (side, side)).any(axis=(2, 3))).any())


def wce_like(rng: np.random.Generator, size: int = 72) -> tuple[np.ndarray, np.ndarray]:
    """Endoscopy-flavored image plus its ground-truth highlight mask.

    Reddish tissue (R well above B) with smooth illumination and fine
    texture; a few saturated near-white blobs play the specular highlights
    and are exactly the masked region.
    """
    yy, xx = np.mgrid[0:size, 0:size] / float(size)

    cx, cy = rng.uniform(0.3, 0.7, 2)
    illum = 0.72 + 0.38 * np.exp(-((xx - cx) ** 2 + (yy - cy) ** 2) / 0.16)

    fx, fy = rng.uniform(2.0, 5.0, 2)
    phase = rng.uniform(0, 2 * np.pi, 2)
    texture = 0.5 * np.sin(2 * np.pi * fx * xx + phase[0]) * np.sin(2 * np.pi * fy * yy + phase[1])
    folds = 0.5 * np.sin(2 * np.pi * (1.5 * xx + 0.8 * yy) * rng.uniform(1.0, 2.5))

    r = 175 + 22 * texture + 12 * folds + rng.normal(0, 4, (size, size))
    g = 72 + 14 * texture + 8 * folds + rng.normal(0, 3, (size, size))
    b = 58 + 10 * texture + 6 * folds + rng.normal(0, 3, (size, size))
    img = np.stack([r, g, b], axis=2) * illum[..., None]

    mask = np.zeros((size, size), dtype=bool)
    n_blobs = rng.integers(1, 4)
    gy, gx = np.mgrid[0:size, 0:size]
    for _ in range(n_blobs):
        bx = rng.integers(10, size - 10)
        by = rng.integers(10, size - 10)
        radius = rng.integers(3, 7)
        d2 = (gx - bx) ** 2 + (gy - by) ** 2
        blob = d2 <= radius * radius
        glow = np.clip(1.2 - np.sqrt(d2) / radius, 0.0, 1.0)
        white = np.full(3, 248.0)
        img = img * (1 - glow[..., None]) + white[None, None, :] * glow[..., None]
        mask |= blob
    return np.clip(np.rint(img), 0, 255).astype(np.uint8), mask


def wce_corpus(n: int = 20, size: int = 72, seed: int = 2024) -> list[tuple[np.ndarray, np.ndarray]]:
    """Deterministic list of (image, highlight mask) pairs."""
    pairs = []
    for i in range(n):
        rng = np.random.default_rng(seed + i)
        pairs.append(wce_like(rng, size=size))
    return pairs

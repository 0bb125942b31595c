"""Image, mask, and patch primitives plus the local-geometry helpers.

Coordinates are (x, y) with x the column and y the row; pixel buffers are
row-major numpy arrays indexed [y, x]. Windows centered near the border
shrink: out-of-bounds cells are absent, not zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import AllUnknownWindow

# ITU-R 601 luma weights for the RGB -> intensity conversion.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


class Vec2(NamedTuple):
    x: float
    y: float


@dataclass(frozen=True)
class RgbImage:
    """Dense 8-bit RGB raster, shape (height, width, 3), dtype uint8."""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 3 or data.shape[2] != 3:
            raise ValueError(f"expected (h, w, 3) array, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if data.dtype != np.uint8:
            raise ValueError(f"expected uint8 channels, got {data.dtype}")
        object.__setattr__(self, "data", data)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    def copy(self) -> "RgbImage":
        return RgbImage(self.data.copy())


@dataclass(frozen=True)
class GrayImage:
    """Intensity raster, shape (height, width), float64 values in [0, 1]."""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.float64)
        if data.ndim != 2:
            raise ValueError(f"expected (h, w) array, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("image must be at least 1x1")
        if not np.all((data >= 0.0) & (data <= 1.0)):
            raise ValueError("intensities must lie in [0, 1]")
        object.__setattr__(self, "data", data)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]


@dataclass(frozen=True)
class Mask:
    """Boolean raster, True marks unknown (to-fill) pixels."""

    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data)
        if data.ndim != 2:
            raise ValueError(f"expected (h, w) array, got shape {data.shape}")
        if data.shape[0] < 1 or data.shape[1] < 1:
            raise ValueError("mask must be at least 1x1")
        if data.dtype != np.bool_:
            raise ValueError(f"expected bool entries, got {data.dtype}")
        object.__setattr__(self, "data", data)

    @property
    def width(self) -> int:
        return self.data.shape[1]

    @property
    def height(self) -> int:
        return self.data.shape[0]

    @property
    def unknown_count(self) -> int:
        return int(self.data.sum())

    def copy(self) -> "Mask":
        return Mask(self.data.copy())


@dataclass(frozen=True)
class PatchWindow:
    """Square odd-sided window centered on a pixel; may overhang the border."""

    center: tuple[int, int]
    side: int

    def __post_init__(self):
        if self.side < 3 or self.side % 2 == 0:
            raise ValueError(f"window side must be odd and >= 3, got {self.side}")

    @property
    def radius(self) -> int:
        return self.side // 2

    def bounds(self, width: int, height: int) -> tuple[int, int, int, int]:
        """Clipped (x0, x1, y0, y1) with exclusive upper bounds."""
        cx, cy = self.center
        r = self.radius
        return (
            max(0, cx - r),
            min(width, cx + r + 1),
            max(0, cy - r),
            min(height, cy + r + 1),
        )

    def cell_count(self, width: int, height: int) -> int:
        """Number of in-bounds cells (the |window| of proportional sums)."""
        x0, x1, y0, y1 = self.bounds(width, height)
        return max(0, x1 - x0) * max(0, y1 - y0)


FillFront = list[tuple[int, int]]


def to_grayscale(img: RgbImage) -> GrayImage:
    """Convert to intensities in [0, 1] using the ITU-R 601 luma weights."""
    rgb = img.data.astype(np.float64)
    wr, wg, wb = LUMA_WEIGHTS
    gray = (wr * rgb[..., 0] + wg * rgb[..., 1] + wb * rgb[..., 2]) / 255.0
    return GrayImage(np.clip(gray, 0.0, 1.0))


def _sample(field: np.ndarray, mask: np.ndarray, x: int, y: int, center: float) -> float:
    """Field value at (x, y), or the center value if out of bounds or unknown."""
    h, w = field.shape
    if 0 <= x < w and 0 <= y < h and not mask[y, x]:
        return field[y, x]
    return center


def gradient_at(gray: GrayImage, mask: Mask, p: tuple[int, int]) -> Vec2:
    """Central-difference intensity gradient at p.

    Samples that fall out of bounds or on unknown pixels are replaced by the
    value at p itself, degrading to a one-sided estimate at edges.
    """
    x, y = p
    g = gray.data
    m = mask.data
    c = g[y, x]
    gx = (_sample(g, m, x + 1, y, c) - _sample(g, m, x - 1, y, c)) / 2.0
    gy = (_sample(g, m, x, y + 1, c) - _sample(g, m, x, y - 1, c)) / 2.0
    return Vec2(float(gx), float(gy))


def isophote_at(gray: GrayImage, mask: Mask, p: tuple[int, int]) -> Vec2:
    """Iso-intensity direction at p: the gradient rotated +90 degrees."""
    gx, gy = gradient_at(gray, mask, p)
    return Vec2(-gy, gx)


def _mask_sample(m: np.ndarray, x: int, y: int, center: float) -> float:
    """Mask-as-0/1 field value at (x, y) under the gradient_at fallback.

    In-bounds known cells read 0.0; out-of-bounds or unknown samples take
    the center value (1.0 whenever the center is on the fill front).
    """
    h, w = m.shape
    if 0 <= x < w and 0 <= y < h and not m[y, x]:
        return 0.0
    return center


def boundary_normal_at(mask: Mask, p: tuple[int, int]) -> Vec2:
    """Unit normal of the fill front at p, from central differences on the
    mask taken as a 0/1 field (same sample fallback as gradient_at).

    Returns (0, 0) when the raw differences cancel. The sign is arbitrary;
    callers take an absolute value downstream.
    """
    x, y = p
    m = mask.data
    c = 1.0 if m[y, x] else 0.0
    nx = (_mask_sample(m, x + 1, y, c) - _mask_sample(m, x - 1, y, c)) / 2.0
    ny = (_mask_sample(m, x, y + 1, c) - _mask_sample(m, x, y - 1, c)) / 2.0
    norm = np.sqrt(nx * nx + ny * ny)
    if norm == 0.0:
        return Vec2(0.0, 0.0)
    return Vec2(float(nx / norm), float(ny / norm))


def local_variance(gray: GrayImage, mask: Mask, w: PatchWindow) -> float:
    """Population variance of the known, in-bounds intensities inside w."""
    x0, x1, y0, y1 = w.bounds(gray.width, gray.height)
    win = gray.data[y0:y1, x0:x1]
    known = ~mask.data[y0:y1, x0:x1]
    vals = win[known]
    if vals.size == 0:
        raise AllUnknownWindow(f"window at {w.center} side {w.side} has no known pixel")
    mu = vals.mean()
    return float(((vals - mu) ** 2).mean())


def extract_fill_front(mask: Mask) -> FillFront:
    """Unknown pixels with at least one known 4-neighbor, row-major order."""
    m = mask.data
    known = ~m
    has_known = np.zeros_like(m)
    has_known[1:, :] |= known[:-1, :]
    has_known[:-1, :] |= known[1:, :]
    has_known[:, 1:] |= known[:, :-1]
    has_known[:, :-1] |= known[:, 1:]
    ys, xs = np.nonzero(m & has_known)
    return list(zip(xs.tolist(), ys.tolist()))

"""Heuristic highlight detection for images without annotated masks.

Healthy endoscopic tissue is strongly red, so its R channel far exceeds its
B channel; saturated highlights are near-white with the two channels close
together. The detector flags bright pixels whose R and B channels nearly
agree, then dilates the result to catch the highlight fringe. It is a
convenience only; evaluation should use explicit masks.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import Mask, RgbImage, to_grayscale


@dataclass(frozen=True)
class DetectorConfig:
    brightness_min: float = 0.85
    rb_closeness_max: float = 0.15
    dilation_radius: int = 2

    def __post_init__(self):
        if not 0.0 <= self.brightness_min <= 1.0:
            raise ValueError("brightness_min must lie in [0, 1]")
        if self.rb_closeness_max < 0.0:
            raise ValueError("rb_closeness_max must be >= 0")
        if self.dilation_radius < 0:
            raise ValueError("dilation_radius must be >= 0")


def detect_highlights(img: RgbImage, cfg: DetectorConfig) -> Mask:
    """Flag bright pixels with nearly equal R and B channels, then dilate."""
    gray = to_grayscale(img).data
    r = img.data[..., 0].astype(np.float64)
    b = img.data[..., 2].astype(np.float64)
    flagged = (gray >= cfg.brightness_min) & (np.abs(r - b) / 255.0 <= cfg.rb_closeness_max)
    return dilate_mask(Mask(flagged), cfg.dilation_radius)


def dilate_mask(mask: Mask, radius: int) -> Mask:
    """Morphological dilation with a square element of side 2*radius + 1."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    if radius == 0:
        return mask.copy()
    padded = np.pad(mask.data, radius, mode="constant", constant_values=False)
    side = 2 * radius + 1
    return Mask(sliding_window_view(padded, (side, side)).any(axis=(2, 3)))

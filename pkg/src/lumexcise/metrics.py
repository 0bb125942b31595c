"""Region statistics for judging highlight-removal results.

The removed region should blend into its surroundings, so the statistics of
interest are computed on the grayscale result restricted to the pixels of
the original highlight mask: the population standard deviation, the mean
intensity, and their ratio (the coefficient of variation). A lower
coefficient of variation indicates a more uniform, better-blended fill.
Passing an all-true region recovers the plain whole-image statistics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import GrayImage, Mask
from .errors import EmptyRegion


@dataclass(frozen=True)
class RegionStats:
    """Statistics of a masked region of a grayscale image.

    ``cov`` is ``std / mean`` and is ``None`` when the mean is zero, where
    the ratio is undefined; it is never reported as infinity.
    """

    std: float
    mean: float
    cov: Optional[float]
    pixel_count: int


def region_stats(gray: GrayImage, region: Mask) -> RegionStats:
    """Population std, mean, and coefficient of variation over the region.

    Parameters
    ----------
    gray : GrayImage
        Intensities in [0, 1], typically the grayscale of a result image.
    region : Mask
        True entries select the pixels to evaluate, typically the original
        highlight mask.

    Raises
    ------
    EmptyRegion
        If the region selects no pixel.
    ValueError
        If image and region dimensions differ.
    """
    if gray.width != region.width or gray.height != region.height:
        raise ValueError(
            f"image {gray.width}x{gray.height} vs region {region.width}x{region.height}:"
            " dimensions must match"
        )
    values = gray.data[region.data]
    if values.size == 0:
        raise EmptyRegion("region selects no pixel")
    mean = float(values.mean())
    std = float(np.sqrt(((values - mean) ** 2).mean()))
    cov = std / mean if mean > 0.0 else None
    return RegionStats(std=std, mean=mean, cov=cov, pixel_count=int(values.size))

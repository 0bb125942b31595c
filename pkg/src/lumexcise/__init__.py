"""Specular highlight removal for endoscopy-style images.

Exemplar-based inpainting with a channel-ratio confidence term, weighted
additive priorities, variance-adaptive patch windows, and distance-weighted
matching, next to the classic multiplicative baseline. Includes region
statistics for no-reference evaluation, a heuristic highlight detector, and
a CLI (``lumexcise``).
"""

from .core import (
    FillFront,
    GrayImage,
    Mask,
    PatchWindow,
    RgbImage,
    Vec2,
    boundary_normal_at,
    extract_fill_front,
    gradient_at,
    isophote_at,
    local_variance,
    to_grayscale,
)
from .engine import (
    EngineConfig,
    InpaintReport,
    IterationTrace,
    MatchResult,
    MODES,
    PriorityRecord,
    confidence_classic,
    confidence_rb,
    data_term,
    fill_patch,
    find_best_match,
    inpaint,
    mean_front_variance,
    patch_distance,
    patch_ssd,
    patch_window_size,
    priority,
    smooth_seams,
)
from .errors import (
    AllUnknown,
    AllUnknownWindow,
    CandidateInvalid,
    EmptyFront,
    EmptyRegion,
    LumexciseError,
    NoCandidate,
)
from .maskgen import DetectorConfig, detect_highlights, dilate_mask
from .metrics import RegionStats, region_stats
from .pngio import load_image, load_mask, save_image, save_mask

__version__ = "0.1.0"

__all__ = [
    "AllUnknown",
    "AllUnknownWindow",
    "CandidateInvalid",
    "DetectorConfig",
    "EmptyFront",
    "EmptyRegion",
    "EngineConfig",
    "FillFront",
    "GrayImage",
    "InpaintReport",
    "IterationTrace",
    "LumexciseError",
    "Mask",
    "MatchResult",
    "MODES",
    "NoCandidate",
    "PatchWindow",
    "PriorityRecord",
    "RegionStats",
    "RgbImage",
    "Vec2",
    "boundary_normal_at",
    "confidence_classic",
    "confidence_rb",
    "data_term",
    "detect_highlights",
    "dilate_mask",
    "extract_fill_front",
    "fill_patch",
    "find_best_match",
    "gradient_at",
    "inpaint",
    "isophote_at",
    "load_image",
    "load_mask",
    "local_variance",
    "mean_front_variance",
    "patch_distance",
    "patch_ssd",
    "patch_window_size",
    "priority",
    "region_stats",
    "save_image",
    "save_mask",
    "smooth_seams",
    "to_grayscale",
]

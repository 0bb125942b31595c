"""Exemplar-based fill loop with switchable priority and matching strategies.

Four modes are supported:

* ``criminisi``  - multiplicative priority C*D with the propagated confidence
  map, fixed window, candidates scored by color dissimilarity alone.
* ``p1``         - additive priority beta*D + (1-beta)*C' where C' is the
  red/blue channel-ratio confidence; fixed window, classic scoring.
* ``p2``         - classic priority, but variance-adaptive window size and
  distance-weighted candidate scoring.
* ``proposed``   - p1 and p2 combined.

All selection rules are deterministic: maximum-priority ties fall to the
first front pixel in row-major order, and candidate ties fall to smaller
dissimilarity, then smaller center distance, then row-major scan order.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .core import (
    FillFront,
    GrayImage,
    LUMA_WEIGHTS,
    Mask,
    PatchWindow,
    RgbImage,
    boundary_normal_at,
    extract_fill_front,
    isophote_at,
    local_variance,
)
from .errors import AllUnknown, CandidateInvalid, EmptyFront, NoCandidate

MODES = ("criminisi", "p1", "p2", "proposed")

# Gradient normalizer of the structure term; intensities are already in
# [0, 1], so no further scaling is needed.
DATA_NORMALIZER = 1.0


def _uses_rb_priority(mode: str) -> bool:
    return mode in ("p1", "proposed")


def _uses_adaptive_matching(mode: str) -> bool:
    return mode in ("p2", "proposed")


@dataclass(frozen=True)
class EngineConfig:
    mode: str = "proposed"
    beta: float = 0.8
    base_patch_side: int = 9
    small_patch_side: int = 5
    search_radius: Optional[float] = None
    rb_epsilon: float = 1.0 / 255.0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")
        for name in ("base_patch_side", "small_patch_side"):
            side = getattr(self, name)
            if side < 3 or side % 2 == 0:
                raise ValueError(f"{name} must be odd and >= 3, got {side}")
        if self.small_patch_side >= self.base_patch_side:
            raise ValueError("small_patch_side must be < base_patch_side")
        if self.search_radius is not None and self.search_radius <= 0:
            raise ValueError("search_radius must be positive")
        if self.rb_epsilon <= 0:
            raise ValueError("rb_epsilon must be positive")


@dataclass(frozen=True)
class PriorityRecord:
    pixel: tuple[int, int]
    confidence: float
    data_term: float
    priority: float


@dataclass(frozen=True)
class MatchResult:
    center: tuple[int, int]
    ssd: float
    distance: float
    score: float


@dataclass(frozen=True)
class InpaintReport:
    iterations: int
    filled_pixels: int
    mode: str
    beta: float
    elapsed: float


@dataclass(frozen=True)
class IterationTrace:
    """Per-iteration observer record; arrays are aligned with ``front``."""

    index: int
    front: FillFront
    confidences: np.ndarray
    data_terms: np.ndarray
    priorities: np.ndarray
    selected: tuple[int, int]
    patch_side: int
    match: MatchResult
    filled: int
    mean_variance: Optional[float] = None
    center_variance: Optional[float] = None


def confidence_classic(conf_map: np.ndarray, w: PatchWindow, mask: Mask) -> float:
    """Propagated-confidence sum over known window cells, divided by the
    in-bounds cell count."""
    x0, x1, y0, y1 = w.bounds(mask.width, mask.height)
    known = ~mask.data[y0:y1, x0:x1]
    total = float((conf_map[y0:y1, x0:x1] * known).ravel().sum())
    return total / w.cell_count(mask.width, mask.height)


def confidence_rb(img: RgbImage, w: PatchWindow, mask: Mask, eps: float) -> float:
    """Red/blue channel-ratio confidence over the known window cells.

    Each known pixel contributes R / max(B, eps*255); the sum is divided by
    the in-bounds cell count. Recomputed from live pixel values, so filled
    pixels contribute their filled colors.
    """
    x0, x1, y0, y1 = w.bounds(img.width, img.height)
    r = img.data[y0:y1, x0:x1, 0].astype(np.float64)
    b = img.data[y0:y1, x0:x1, 2].astype(np.float64)
    ratio = r / np.maximum(b, eps * 255.0)
    known = ~mask.data[y0:y1, x0:x1]
    total = float((ratio * known).ravel().sum())
    return total / w.cell_count(img.width, img.height)


def data_term(gray: GrayImage, mask: Mask, p: tuple[int, int]) -> float:
    """Structure strength at a front pixel: |isophote . front normal|,
    clamped to [0, 1]."""
    iso = isophote_at(gray, mask, p)
    n = boundary_normal_at(mask, p)
    d = abs(iso.x * n.x + iso.y * n.y) / DATA_NORMALIZER
    return min(d, 1.0)


def priority(
    p: tuple[int, int],
    cfg: EngineConfig,
    img: RgbImage,
    gray: GrayImage,
    mask: Mask,
    conf_map: np.ndarray,
) -> PriorityRecord:
    """Fill priority of front pixel p under the configured mode."""
    w = PatchWindow(p, cfg.base_patch_side)
    d = data_term(gray, mask, p)
    if _uses_rb_priority(cfg.mode):
        c = confidence_rb(img, w, mask, cfg.rb_epsilon)
        value = cfg.beta * d + (1.0 - cfg.beta) * c
    else:
        c = confidence_classic(conf_map, w, mask)
        value = c * d
    return PriorityRecord(pixel=p, confidence=c, data_term=d, priority=value)


def mean_front_variance(
    gray: GrayImage, mask: Mask, front: FillFront, side: int = 9
) -> float:
    """Mean of the known-pixel variances of the windows centered on the
    front; windows without any known pixel are skipped."""
    if not front:
        raise EmptyFront("fill front is empty")
    values = []
    for p in front:
        win = PatchWindow(p, side)
        x0, x1, y0, y1 = win.bounds(gray.width, gray.height)
        if (~mask.data[y0:y1, x0:x1]).any():
            values.append(local_variance(gray, mask, win))
    if not values:
        raise EmptyFront("no front window contains a known pixel")
    return float(np.mean(values))


def patch_window_size(mean_s: float, center_variance: float, cfg: EngineConfig) -> int:
    """Window side for the target patch.

    Adaptive modes shrink the window where the local variance reaches the
    front-wide mean (detail-rich areas); classic modes keep the base side.
    """
    if not _uses_adaptive_matching(cfg.mode):
        return cfg.base_patch_side
    return cfg.base_patch_side if mean_s > center_variance else cfg.small_patch_side


def _target_patch(
    img_data: np.ndarray, mask_data: np.ndarray, target: PatchWindow
) -> tuple[np.ndarray, np.ndarray]:
    """Target window as a full (side, side, 3) array in [0, 1] plus the
    0/1 weight of cells that are both in-bounds and known."""
    s = target.side
    h, w = mask_data.shape
    cx, cy = target.center
    r = target.radius
    patch = np.zeros((s, s, 3), dtype=np.float64)
    weight = np.zeros((s, s), dtype=np.float64)
    x0, x1, y0, y1 = target.bounds(w, h)
    ox0, oy0 = x0 - (cx - r), y0 - (cy - r)
    ox1, oy1 = ox0 + (x1 - x0), oy0 + (y1 - y0)
    patch[oy0:oy1, ox0:ox1] = img_data[y0:y1, x0:x1].astype(np.float64) / 255.0
    weight[oy0:oy1, ox0:ox1] = ~mask_data[y0:y1, x0:x1]
    return patch, weight


def patch_ssd(
    img: RgbImage, mask: Mask, target: PatchWindow, candidate: PatchWindow
) -> float:
    """Color dissimilarity between target and candidate windows.

    Sums, over the offsets where the target pixel is known and in-bounds,
    the per-pixel Euclidean distance of the [0, 1]-normalized RGB triples.
    """
    if candidate.side != target.side:
        raise CandidateInvalid(
            f"side mismatch: target {target.side}, candidate {candidate.side}"
        )
    h, w = mask.data.shape
    cx, cy = candidate.center
    r = candidate.radius
    if cx - r < 0 or cy - r < 0 or cx + r >= w or cy + r >= h:
        raise CandidateInvalid(f"candidate at {candidate.center} overlaps the border")
    cand_mask = mask.data[cy - r : cy + r + 1, cx - r : cx + r + 1]
    if cand_mask.any():
        raise CandidateInvalid(f"candidate at {candidate.center} overlaps unknown pixels")
    tpatch, tweight = _target_patch(img.data, mask.data, target)
    cpatch = img.data[cy - r : cy + r + 1, cx - r : cx + r + 1].astype(np.float64) / 255.0
    diff = cpatch - tpatch
    dist = np.sqrt((diff * diff).sum(axis=2))
    return float((dist * tweight).ravel().sum())


def patch_distance(p: tuple[int, int], q: tuple[int, int]) -> float:
    """Euclidean distance between two pixel coordinates."""
    dx = float(p[0] - q[0])
    dy = float(p[1] - q[1])
    return math.sqrt(dx * dx + dy * dy)


def find_best_match(
    img: RgbImage, mask: Mask, target: PatchWindow, cfg: EngineConfig
) -> MatchResult:
    """Best candidate window over all fully-known, fully in-bounds centers.

    Candidates are scanned in row-major order; the score is the color
    dissimilarity, multiplied by the center distance in adaptive-matching
    modes. Ties break on smaller dissimilarity, then smaller distance, then
    scan order. With cfg.search_radius set, only centers within that
    Euclidean distance of the target center compete.
    """
    s = target.side
    h, w = mask.data.shape
    if s > h or s > w:
        raise NoCandidate(f"no {s}x{s} window fits a {w}x{h} image")
    r = target.radius
    valid = ~sliding_window_view(mask.data, (s, s)).any(axis=(2, 3))
    px, py = target.center
    grid_y, grid_x = np.mgrid[r : h - r, r : w - r]
    dist_x = (grid_x - px).astype(np.float64)
    dist_y = (grid_y - py).astype(np.float64)
    center_dist = np.sqrt(dist_x * dist_x + dist_y * dist_y)
    if cfg.search_radius is not None:
        valid &= center_dist <= cfg.search_radius
    rows, cols = np.nonzero(valid)
    if rows.size == 0:
        raise NoCandidate(
            f"no fully-known {s}x{s} candidate for target at {target.center}"
        )
    tpatch, tweight = _target_patch(img.data, mask.data, target)
    fimg = img.data.astype(np.float64) / 255.0
    windows = sliding_window_view(fimg, (s, s, 3))
    cands = windows[rows, cols, 0]
    diff = cands - tpatch
    dist = np.sqrt((diff * diff).sum(axis=3))
    ssd = (dist * tweight).reshape(rows.size, -1).sum(axis=1)
    length = center_dist[rows, cols]
    score = ssd * length if _uses_adaptive_matching(cfg.mode) else ssd
    best = np.lexsort((length, ssd, score))[0]
    return MatchResult(
        center=(int(cols[best] + r), int(rows[best] + r)),
        ssd=float(ssd[best]),
        distance=float(length[best]),
        score=float(score[best]),
    )


def fill_patch(
    img: RgbImage,
    mask: Mask,
    conf_map: np.ndarray,
    target: PatchWindow,
    match: MatchResult,
    center_confidence: float,
) -> int:
    """Copy the matched window onto the unknown cells of the target window.

    Known target pixels are never touched. Filled cells become known and
    inherit the target center's confidence. Returns the filled cell count.
    """
    h, w = mask.data.shape
    tx, ty = target.center
    qx, qy = match.center
    x0, x1, y0, y1 = target.bounds(w, h)
    unknown = mask.data[y0:y1, x0:x1].copy()
    if not unknown.any():
        return 0
    src = img.data[qy + (y0 - ty) : qy + (y1 - ty), qx + (x0 - tx) : qx + (x1 - tx)]
    img.data[y0:y1, x0:x1][unknown] = src[unknown]
    mask.data[y0:y1, x0:x1][unknown] = False
    conf_map[y0:y1, x0:x1][unknown] = center_confidence
    return int(unknown.sum())


def smooth_seams(img: RgbImage, original_mask: Mask) -> None:
    """Replace each pixel of the original fill front with the per-channel
    mean of its in-bounds 9x9 neighborhood.

    Means are taken from a snapshot of the image before smoothing, so the
    pass does not cascade. Channel means are rounded to the nearest 8-bit
    value (ties to even).
    """
    front = extract_fill_front(original_mask)
    if not front:
        return
    snapshot = img.data.astype(np.float64)
    h, w = original_mask.data.shape
    for x, y in front:
        x0, x1, y0, y1 = PatchWindow((x, y), 9).bounds(w, h)
        mean = snapshot[y0:y1, x0:x1].reshape(-1, 3).mean(axis=0)
        img.data[y, x] = np.clip(np.rint(mean), 0, 255).astype(np.uint8)


def _luma(rgb_u8: np.ndarray) -> np.ndarray:
    rgb = rgb_u8.astype(np.float64)
    wr, wg, wb = LUMA_WEIGHTS
    return np.clip((wr * rgb[..., 0] + wg * rgb[..., 1] + wb * rgb[..., 2]) / 255.0, 0.0, 1.0)


def inpaint(
    img: RgbImage,
    mask: Mask,
    cfg: EngineConfig,
    on_iteration: Optional[Callable[[IterationTrace], None]] = None,
) -> tuple[RgbImage, InpaintReport]:
    """Fill every unknown pixel and smooth the seam along the original front.

    Each iteration extracts the front, scores it, fills the window around
    the highest-priority pixel from its best match, and repeats until the
    mask is clear. When the base window finds no candidate, the small window
    is tried before giving up. The input image and mask are not modified.
    """
    if img.width != mask.width or img.height != mask.height:
        raise ValueError(
            f"image {img.width}x{img.height} vs mask {mask.width}x{mask.height}:"
            " dimensions must match"
        )
    initial_unknown = mask.unknown_count
    if initial_unknown == img.width * img.height:
        raise AllUnknown("mask covers the whole image; nothing to copy from")

    start = time.perf_counter()
    img_data = img.data.copy()
    mask_data = mask.data.copy()
    conf_map = (~mask_data).astype(np.float64)
    gray_data = _luma(img_data)

    iterations = 0
    total_filled = 0
    while True:
        work_img = RgbImage(img_data)
        work_mask = Mask(mask_data)
        work_gray = GrayImage(gray_data)
        front = extract_fill_front(work_mask)
        if not front:
            break
        if iterations > initial_unknown:
            raise RuntimeError("fill loop failed to shrink the unknown region")

        records = [
            priority(p, cfg, work_img, work_gray, work_mask, conf_map) for p in front
        ]
        priorities = np.array([rec.priority for rec in records])
        selected = int(np.argmax(priorities))
        rec = records[selected]

        mean_s = center_var = None
        if _uses_adaptive_matching(cfg.mode):
            mean_s = mean_front_variance(
                work_gray, work_mask, front, side=cfg.base_patch_side
            )
            center_var = local_variance(
                work_gray, work_mask, PatchWindow(rec.pixel, cfg.base_patch_side)
            )
            side = patch_window_size(mean_s, center_var, cfg)
        else:
            side = cfg.base_patch_side

        target = PatchWindow(rec.pixel, side)
        try:
            match = find_best_match(work_img, work_mask, target, cfg)
        except NoCandidate:
            if side <= cfg.small_patch_side:
                raise
            side = cfg.small_patch_side
            target = PatchWindow(rec.pixel, side)
            match = find_best_match(work_img, work_mask, target, cfg)

        filled = fill_patch(work_img, work_mask, conf_map, target, match, rec.confidence)
        x0, x1, y0, y1 = target.bounds(img.width, img.height)
        gray_data[y0:y1, x0:x1] = _luma(img_data[y0:y1, x0:x1])
        total_filled += filled
        iterations += 1

        if on_iteration is not None:
            on_iteration(
                IterationTrace(
                    index=iterations - 1,
                    front=front,
                    confidences=np.array([r.confidence for r in records]),
                    data_terms=np.array([r.data_term for r in records]),
                    priorities=priorities,
                    selected=rec.pixel,
                    patch_side=side,
                    match=match,
                    filled=filled,
                    mean_variance=mean_s,
                    center_variance=center_var,
                )
            )

    result = RgbImage(img_data)
    smooth_seams(result, mask)
    report = InpaintReport(
        iterations=iterations,
        filled_pixels=total_filled,
        mode=cfg.mode,
        beta=cfg.beta,
        elapsed=time.perf_counter() - start,
    )
    return result, report

"""Independent oracles the engine is checked against.

Everything here is written directly from the documented formulas and
conventions, with explicit per-candidate and per-pixel loops, and stays
deliberately separate from the package's vectorized code paths.
"""

from __future__ import annotations

import numpy as np

LUMA = (0.299, 0.587, 0.114)


def psnr(a_u8: np.ndarray, b_u8: np.ndarray) -> float:
    diff = a_u8.astype(np.float64) - b_u8.astype(np.float64)
    mse = float((diff * diff).mean())
    if mse == 0.0:
        return float("inf")
    return float(10.0 * np.log10(255.0**2 / mse))


def _target_arrays(img: np.ndarray, mask: np.ndarray, center, side):
    """Full side x side target patch in [0, 1] and its known/in-bounds weight."""
    h, w = mask.shape
    px, py = center
    r = side // 2
    patch = np.zeros((side, side, 3), dtype=np.float64)
    weight = np.zeros((side, side), dtype=np.float64)
    x0, x1 = max(0, px - r), min(w, px + r + 1)
    y0, y1 = max(0, py - r), min(h, py + r + 1)
    ox, oy = x0 - (px - r), y0 - (py - r)
    patch[oy : oy + (y1 - y0), ox : ox + (x1 - x0)] = (
        img[y0:y1, x0:x1].astype(np.float64) / 255.0
    )
    weight[oy : oy + (y1 - y0), ox : ox + (x1 - x0)] = ~mask[y0:y1, x0:x1]
    return patch, weight


def best_match_oracle(
    img: np.ndarray,
    mask: np.ndarray,
    center,
    side: int,
    distance_weighted: bool,
    search_radius=None,
):
    """Exhaustive best-candidate search.

    Enumerates every fully-known, fully in-bounds window center in row-major
    order, scores it as the sum over known target cells of the per-pixel
    Euclidean RGB distance (channels scaled to [0, 1]), optionally times the
    Euclidean center distance, and keeps the lexicographic minimum of
    (score, dissimilarity, distance, scan order).

    Returns (center, ssd, distance, score) or None when no candidate exists.
    """
    h, w = mask.shape
    r = side // 2
    px, py = center
    tpatch, tweight = _target_arrays(img, mask, center, side)
    best_key = None
    best = None
    index = 0
    for cy in range(r, h - r):
        for cx in range(r, w - r):
            if mask[cy - r : cy + r + 1, cx - r : cx + r + 1].any():
                continue
            dx = float(cx - px)
            dy = float(cy - py)
            length = float(np.sqrt(dx * dx + dy * dy))
            if search_radius is not None and length > search_radius:
                continue
            cpatch = img[cy - r : cy + r + 1, cx - r : cx + r + 1].astype(np.float64) / 255.0
            diff = cpatch - tpatch
            dist = np.sqrt((diff * diff).sum(axis=2))
            ssd = float((dist * tweight).ravel().sum())
            score = ssd * length if distance_weighted else ssd
            key = (score, ssd, length, index)
            if best_key is None or key < best_key:
                best_key = key
                best = ((cx, cy), ssd, length, score)
            index += 1
    return best


def _gray_of(img: np.ndarray) -> np.ndarray:
    rgb = img.astype(np.float64)
    wr, wg, wb = LUMA
    return np.clip((wr * rgb[..., 0] + wg * rgb[..., 1] + wb * rgb[..., 2]) / 255.0, 0.0, 1.0)


def _front_of(mask: np.ndarray):
    h, w = mask.shape
    front = []
    for y in range(h):
        for x in range(w):
            if not mask[y, x]:
                continue
            for nx, ny in ((x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)):
                if 0 <= nx < w and 0 <= ny < h and not mask[ny, nx]:
                    front.append((x, y))
                    break
    return front


def _gray_sample(gray: np.ndarray, mask: np.ndarray, x: int, y: int, c: float) -> float:
    h, w = mask.shape
    if 0 <= x < w and 0 <= y < h and not mask[y, x]:
        return gray[y, x]
    return c


def _ref_data_term(gray: np.ndarray, mask: np.ndarray, x: int, y: int) -> float:
    c = gray[y, x]
    gx = (_gray_sample(gray, mask, x + 1, y, c) - _gray_sample(gray, mask, x - 1, y, c)) / 2.0
    gy = (_gray_sample(gray, mask, x, y + 1, c) - _gray_sample(gray, mask, x, y - 1, c)) / 2.0
    iso_x, iso_y = -gy, gx

    h, w = mask.shape
    cm = 1.0 if mask[y, x] else 0.0

    def msample(mx, my):
        if 0 <= mx < w and 0 <= my < h and not mask[my, mx]:
            return 0.0
        return cm

    nx = (msample(x + 1, y) - msample(x - 1, y)) / 2.0
    ny = (msample(x, y + 1) - msample(x, y - 1)) / 2.0
    norm = np.sqrt(nx * nx + ny * ny)
    if norm == 0.0:
        nx = ny = 0.0
    else:
        nx, ny = nx / norm, ny / norm
    return min(abs(iso_x * nx + iso_y * ny) / 1.0, 1.0)


def _ref_confidence(conf: np.ndarray, mask: np.ndarray, x: int, y: int, side: int) -> float:
    h, w = mask.shape
    r = side // 2
    x0, x1 = max(0, x - r), min(w, x + r + 1)
    y0, y1 = max(0, y - r), min(h, y + r + 1)
    total = float((conf[y0:y1, x0:x1] * ~mask[y0:y1, x0:x1]).ravel().sum())
    return total / ((x1 - x0) * (y1 - y0))


def reference_classic_fill(img_u8: np.ndarray, mask_bool: np.ndarray, side: int = 9, small_side: int = 5):
    """From-scratch multiplicative-priority exemplar fill.

    Returns (output image, list of selected front pixels, list of chosen
    match centers). Conventions: in-bounds window cell counts, center-value
    fallback for gradient samples, row-major first-maximum selection, and
    candidate ties broken by dissimilarity, then center distance, then scan
    order. A final pass replaces each original front pixel with the rounded
    per-channel 9x9 in-bounds mean taken from a pre-pass snapshot.
    """
    img = img_u8.copy()
    mask = mask_bool.copy()
    original = mask_bool.copy()
    h, w = mask.shape
    conf = (~mask).astype(np.float64)
    selected_pixels = []
    match_centers = []
    guard = int(mask.sum()) + 1

    for _ in range(guard + 1):
        front = _front_of(mask)
        if not front:
            break
        gray = _gray_of(img)
        best_priority = None
        best_i = None
        confidences = []
        for i, (x, y) in enumerate(front):
            c = _ref_confidence(conf, mask, x, y, side)
            d = _ref_data_term(gray, mask, x, y)
            p = c * d
            confidences.append(c)
            if best_priority is None or p > best_priority:
                best_priority = p
                best_i = i
        bx, by = front[best_i]
        center_conf = confidences[best_i]

        use_side = side
        found = best_match_oracle(img, mask, (bx, by), use_side, distance_weighted=False)
        if found is None:
            use_side = small_side
            found = best_match_oracle(img, mask, (bx, by), use_side, distance_weighted=False)
            if found is None:
                raise RuntimeError("reference fill found no candidate")
        (qx, qy), _, _, _ = found
        selected_pixels.append((bx, by))
        match_centers.append((qx, qy))

        r = use_side // 2
        conf[by, bx] = center_conf
        for dy in range(-r, r + 1):
            for dx in range(-r, r + 1):
                tx, ty = bx + dx, by + dy
                if not (0 <= tx < w and 0 <= ty < h):
                    continue
                if not mask[ty, tx]:
                    continue
                img[ty, tx] = img[qy + dy, qx + dx]
                mask[ty, tx] = False
                conf[ty, tx] = center_conf
    else:
        raise RuntimeError("reference fill did not terminate")

    snapshot = img.astype(np.float64)
    for x, y in _front_of(original):
        x0, x1 = max(0, x - 4), min(w, x + 5)
        y0, y1 = max(0, y - 4), min(h, y + 5)
        mean = snapshot[y0:y1, x0:x1].reshape(-1, 3).mean(axis=0)
        img[y, x] = np.clip(np.rint(mean), 0, 255).astype(np.uint8)
    return img, selected_pixels, match_centers

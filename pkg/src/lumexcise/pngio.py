"""PNG reading and writing for images and masks.

Masks are 8-bit gray PNGs where a value >= 128 marks an unknown pixel.
"""

from __future__ import annotations

import numpy as np
from PIL import Image

from .core import Mask, RgbImage

MASK_THRESHOLD = 128


def load_image(path) -> RgbImage:
    """Load an 8-bit RGB or gray PNG as an RgbImage."""
    with Image.open(path) as im:
        rgb = im.convert("RGB")
        return RgbImage(np.asarray(rgb, dtype=np.uint8))


def load_mask(path) -> Mask:
    """Load an 8-bit gray PNG mask; values >= 128 become unknown."""
    with Image.open(path) as im:
        gray = np.asarray(im.convert("L"), dtype=np.uint8)
    return Mask(gray >= MASK_THRESHOLD)


def save_image(img: RgbImage, path) -> None:
    Image.fromarray(img.data, mode="RGB").save(path, format="PNG")


def save_mask(mask: Mask, path) -> None:
    gray = np.where(mask.data, 255, 0).astype(np.uint8)
    Image.fromarray(gray, mode="L").save(path, format="PNG")

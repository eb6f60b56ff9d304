"""Grayscale conversion with fixed, integer-exact luma weights.

The weights are ITU-R BT.601 (0.299, 0.587, 0.114), carried as parts per
thousand so the weighted sum is computed exactly in integers:

    luma = floor((299*r + 587*g + 114*b + 500) / 1000)

which is round-half-up of the exact decimal value. No floating point is
involved, so results are bit-identical everywhere. Because the weights sum
to exactly 1.000, equal-channel pixels are fixed points and the conversion
is idempotent.
"""

from __future__ import annotations

import numpy as np

from .image import Image

__all__ = ["LUMA_WEIGHTS_PER_1000", "luma", "to_grayscale"]

#: (r, g, b) luma weights in parts per thousand, ITU-R BT.601.
LUMA_WEIGHTS_PER_1000 = (299, 587, 114)


def luma(r: int, g: int, b: int) -> int:
    """Round-half-up luma of one pixel, exact integer arithmetic."""
    wr, wg, wb = LUMA_WEIGHTS_PER_1000
    return (wr * r + wg * g + wb * b + 500) // 1000


def to_grayscale(img: Image) -> Image:
    """Replace every pixel with (luma, luma, luma); dimensions unchanged."""
    wr, wg, wb = LUMA_WEIGHTS_PER_1000
    px = img.pixels.astype(np.uint32)
    y = (wr * px[..., 0] + wg * px[..., 1] + wb * px[..., 2] + 500) // 1000
    return Image._wrap(np.repeat(y.astype(np.uint8)[..., np.newaxis], 3, axis=2))

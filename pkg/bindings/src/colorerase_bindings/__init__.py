"""Buffer-level binding to the colorerase engine: arrays in, arrays out.

Training loops that already hold decoded pixels should not round-trip
through PNG files to use the augmentation. This package marshals numpy
buffers to the core API and back; it reimplements none of the math, so its
outputs are bit-identical to the file-based CLI path for the same stream
seed.

A buffer is any object numpy can view as a contiguous (H, W, 3) uint8
array, row-major, channel order (r, g, b). The core image type is
immutable, so inputs are copied on the way in (the numpy array protocol
does not let the callee prove the caller will not mutate the memory);
outputs are fresh arrays owned by the caller.

Seeds are explicit stream seeds, taken verbatim: the same value the CLI
derives per (file, pass) from its master seed via
``colorerase.derive_stream_seed``. No global RNG state is involved, so
calls are reentrant.
"""

from __future__ import annotations

import numpy as np

from colorerase import Image, RceConfig, RegionParams, apply_rce, to_grayscale
from colorerase.rng import RngStream

__all__ = ["__version__", "rce_apply_buffer", "to_grayscale_buffer"]

# Tracks the core package version; the binding has no independent behavior.
__version__ = "0.1.0"


def _as_image(buf) -> Image:
    arr = np.asarray(buf)
    if arr.dtype != np.uint8:
        raise ValueError(f"expected uint8 channels, got dtype {arr.dtype}")
    return Image(arr)  # core validates shape and copies


def to_grayscale_buffer(buf) -> np.ndarray:
    """Grayscale of an (H, W, 3) uint8 buffer; input is never mutated."""
    return to_grayscale(_as_image(buf)).to_array()


def rce_apply_buffer(
    buf,
    *,
    seed: int,
    p_r: float = 0.40,
    p_g: float = 0.15,
    area_lo: float = 0.02,
    area_hi: float = 0.4,
    aspect_lo: float = 0.3,
    aspect_hi: float = 1 / 0.3,
    max_attempts: int = 100,
    direction: str = "gray-on-color",
) -> tuple[np.ndarray, dict]:
    """One random color erase of an (H, W, 3) uint8 buffer.

    ``seed`` is the 64-bit stream seed for this single application. Returns
    ``(pixels, record)`` where ``record`` mirrors the manifest entry fields:
    ``branch``, ``rect`` (``[x0, y0, w, h]`` or ``None``), ``draws`` and
    ``stream_seed``. The input buffer is never mutated, and the output is
    bit-identical to the core transform under the same seed and config.
    """
    cfg = RceConfig(
        p_r=p_r,
        p_g=p_g,
        region=RegionParams(
            area_lo=area_lo,
            area_hi=area_hi,
            aspect_lo=aspect_lo,
            aspect_hi=aspect_hi,
            max_attempts=max_attempts,
        ),
        direction=direction,
    )
    img = _as_image(buf)
    out, record = apply_rce(img, cfg, RngStream.from_seed(seed))
    rect = record.rect
    return out.to_array(), {
        "branch": record.branch,
        "rect": None if rect is None else [rect.x0, rect.y0, rect.w, rect.h],
        "draws": list(record.draws),
        "stream_seed": record.stream_seed,
    }

"""Random rectangle sampling in the style of random-erasing augmentations.

A candidate rectangle is drawn by area fraction and aspect ratio, retried
until it fits strictly inside the image or the attempt budget runs out.
``None`` (no fit) is a normal outcome, not an error; callers decide what to
do with it.

The draw sequence is fixed and portable. Per attempt, in this order:

1. ``area_frac = uniform(area_lo, area_hi)``, target area is
   ``area_frac * width * height``
2. ``aspect = uniform(aspect_lo, aspect_hi)`` (linear, not log-scaled)
3. side lengths ``h = round(sqrt(target_area * aspect))`` and
   ``w = round(sqrt(target_area / aspect))``, ties rounding up
4. accept when ``1 <= w < width`` and ``1 <= h < height``; then draw
   ``x0 = floor(u * (width - w + 1))`` and ``y0`` likewise (x before y)

Rejected attempts consume exactly the two draws of steps 1-2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .image import Rect
from .rng import RngStream

__all__ = ["RegionParams", "rand_position"]


@dataclass(frozen=True)
class RegionParams:
    """Rectangle sampling bounds.

    Defaults follow the published random-erasing settings: area fraction in
    [0.02, 0.4], aspect ratio in [0.3, 1/0.3], 100 attempts.
    """

    area_lo: float = 0.02
    area_hi: float = 0.4
    aspect_lo: float = 0.3
    aspect_hi: float = 1 / 0.3
    max_attempts: int = 100

    def __post_init__(self):
        if not (0.0 < self.area_lo <= self.area_hi <= 1.0):
            raise ValueError(
                f"need 0 < area_lo <= area_hi <= 1, got [{self.area_lo}, {self.area_hi}]"
            )
        if not (0.0 < self.aspect_lo <= self.aspect_hi):
            raise ValueError(
                f"need 0 < aspect_lo <= aspect_hi, got [{self.aspect_lo}, {self.aspect_hi}]"
            )
        if self.max_attempts < 1:
            raise ValueError(f"max_attempts must be >= 1, got {self.max_attempts}")


def _round_half_up(x: float) -> int:
    return math.floor(x + 0.5)


def rand_position(
    width: int, height: int, params: RegionParams, rng: RngStream
) -> Rect | None:
    """Sample a rectangle strictly inside a width x height image.

    Returns ``None`` when no candidate fits within ``params.max_attempts``
    attempts. Any returned rect satisfies ``1 <= w < width`` and
    ``1 <= h < height`` and lies fully in bounds.
    """
    if width < 1 or height < 1:
        raise ValueError(f"image dimensions must be >= 1, got {width}x{height}")
    area = width * height
    for _ in range(params.max_attempts):
        target_area = rng.uniform(params.area_lo, params.area_hi) * area
        aspect = rng.uniform(params.aspect_lo, params.aspect_hi)
        rect_h = _round_half_up(math.sqrt(target_area * aspect))
        rect_w = _round_half_up(math.sqrt(target_area / aspect))
        if 1 <= rect_w < width and 1 <= rect_h < height:
            x0 = rng.next_index(width - rect_w + 1)
            y0 = rng.next_index(height - rect_h + 1)
            return Rect(x0, y0, rect_w, rect_h)
    return None

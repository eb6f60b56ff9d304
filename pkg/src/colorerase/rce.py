"""Random color erasing: probability-gated global and local grayscale swaps.

Dispatch per image, with two gates drawn from the caller's stream:

1. ``p1 = rand()``; if ``p1 >= p_r`` the image passes through unchanged.
2. otherwise ``p2 = rand()``; if ``p2 <= p_g`` the whole image is converted
   to grayscale (global erase).
3. otherwise a random rectangle of the image is swapped with the
   corresponding grayscale patch (local erase); if no rectangle fits, the
   image passes through unchanged under the distinct ``local_nofit`` tag.

The comparison directions (``>=`` then ``<=``) are part of the contract:
``p_r`` is exactly the erase probability and, within the erased share,
``p_g`` is the conditional global share. Every application is fully
described by an :class:`AugmentationRecord`, which together with the input
image and config reproduces the output bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .grayscale import to_grayscale
from .image import Image, Rect
from .region import RegionParams, rand_position
from .rng import RngStream

__all__ = [
    "BRANCHES",
    "DIRECTIONS",
    "RceConfig",
    "AugmentationRecord",
    "local_transform",
    "sample_decision",
    "apply_rce",
]

#: Possible dispatch outcomes, in gate order.
BRANCHES = ("identity", "global", "local", "local_nofit")

#: ``gray-on-color`` pastes the grayscale patch into the color image (the
#: default); ``color-on-gray`` keeps the color patch and grays the rest.
DIRECTIONS = ("gray-on-color", "color-on-gray")


@dataclass(frozen=True)
class RceConfig:
    """Erase probabilities plus rectangle sampling parameters.

    ``p_r`` gates whether any erase happens; ``p_g`` is the conditional
    probability of the global (whole-image) erase once that gate passes, so
    the marginal branch probabilities are ``1 - p_r`` identity,
    ``p_r * p_g`` global and ``p_r * (1 - p_g)`` local.
    """

    p_r: float = 0.40
    p_g: float = 0.15
    region: RegionParams = field(default_factory=RegionParams)
    direction: str = "gray-on-color"

    def __post_init__(self):
        if not 0.0 <= self.p_r <= 1.0:
            raise ValueError(f"p_r must be in [0, 1], got {self.p_r}")
        if not 0.0 <= self.p_g <= 1.0:
            raise ValueError(f"p_g must be in [0, 1], got {self.p_g}")
        if self.direction not in DIRECTIONS:
            raise ValueError(
                f"direction must be one of {DIRECTIONS}, got {self.direction!r}"
            )


@dataclass(frozen=True)
class AugmentationRecord:
    """Replay log for one application: branch, rect, draws, stream seed.

    ``rect`` is present exactly on the ``local`` branch. ``draws`` holds the
    gate draws consumed: one on the identity branch, two otherwise.
    """

    branch: str
    rect: Rect | None
    draws: tuple[float, ...]
    stream_seed: int

    def __post_init__(self):
        if self.branch not in BRANCHES:
            raise ValueError(f"unknown branch {self.branch!r}")
        if (self.rect is not None) != (self.branch == "local"):
            raise ValueError(f"rect must be present iff branch is local, got {self}")
        if len(self.draws) != (1 if self.branch == "identity" else 2):
            raise ValueError(f"wrong draw count for branch {self.branch!r}")


def local_transform(visible: Image, gray: Image, rect: Rect) -> Image:
    """Paste the ``gray`` patch under ``rect`` into ``visible``.

    Output pixel (i, j) is gray's pixel inside the rect and visible's pixel
    outside it; dimensions are unchanged. Both operands must have identical
    dimensions and the rect must be in bounds.
    """
    if (visible.width, visible.height) != (gray.width, gray.height):
        raise ValueError(
            f"dimension mismatch: visible {visible.width}x{visible.height} "
            f"vs gray {gray.width}x{gray.height}"
        )
    rect.check_within(visible.width, visible.height)
    out = visible.to_array()
    sl = (slice(rect.y0, rect.y0 + rect.h), slice(rect.x0, rect.x0 + rect.w))
    out[sl] = gray.pixels[sl]
    return Image._wrap(out)


def sample_decision(
    width: int, height: int, cfg: RceConfig, rng: RngStream
) -> tuple[str, Rect | None, tuple[float, ...]]:
    """Run the dispatch gates without touching pixels.

    Returns ``(branch, rect, draws)`` using exactly the draw sequence of
    :func:`apply_rce`, so statistics sampled through here match the real
    transform bit for bit.
    """
    p1 = rng.next_unit_float()
    if p1 >= cfg.p_r:
        return "identity", None, (p1,)
    p2 = rng.next_unit_float()
    if p2 <= cfg.p_g:
        return "global", None, (p1, p2)
    rect = rand_position(width, height, cfg.region, rng)
    if rect is None:
        return "local_nofit", None, (p1, p2)
    return "local", rect, (p1, p2)


def apply_rce(
    img: Image, cfg: RceConfig, rng: RngStream
) -> tuple[Image, AugmentationRecord]:
    """Apply one random color erase to ``img``.

    ``rng`` must be a freshly seeded stream owned by this call; its seed is
    recorded so the output can be reproduced later. Output dimensions always
    equal input dimensions, and every output pixel is either the input pixel
    or the grayscale of the input pixel at the same coordinates.
    """
    if rng.seed is None:
        raise ValueError(
            "apply_rce requires a seed-constructed stream (RngStream.from_seed) "
            "so the application can be recorded and replayed"
        )
    branch, rect, draws = sample_decision(img.width, img.height, cfg, rng)
    if branch == "global":
        out = to_grayscale(img)
    elif branch == "local":
        gray = to_grayscale(img)
        if cfg.direction == "gray-on-color":
            out = local_transform(img, gray, rect)
        else:
            # color-on-gray: the grayscale image keeps the color patch.
            out = local_transform(gray, img, rect)
    else:  # identity, local_nofit
        out = img
    return out, AugmentationRecord(branch, rect, draws, rng.seed)

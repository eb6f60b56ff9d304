"""Pixel-grid data types, bounds-checked regions and image file codecs.

An :class:`Image` is a dense H x W x 3 grid of 8-bit intensities with
channel order (r, g, b), row-major, origin at the top-left. Grayscale
content is represented as an RGB image with three equal channels, never as
a separate 1-channel type, so patch operations always mix like with like.

Decoding supports PNG, JPEG and BMP; encoding is always lossless PNG.
Alpha channels are dropped on load. 16-bit PNG channels are downconverted
to 8 bits by keeping the high byte.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np
from PIL import Image as _PILImage
from PIL import UnidentifiedImageError

__all__ = ["Image", "Rect", "ImageIOError", "load_image", "save_image", "extract"]

_DECODE_FORMATS = {"PNG", "JPEG", "BMP"}


class ImageIOError(Exception):
    """Raised when an image file cannot be read or written."""

    def __init__(self, path: str | os.PathLike, reason: str):
        self.path = str(path)
        self.reason = reason
        super().__init__(f"{self.path}: {reason}")


class Image:
    """Immutable RGB image backed by a read-only (H, W, 3) uint8 array."""

    __slots__ = ("_px",)

    def __init__(self, pixels: np.ndarray):
        arr = np.asarray(pixels)
        if arr.ndim != 3 or arr.shape[2] != 3:
            raise ValueError(f"expected pixels shaped (H, W, 3), got {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"image dimensions must be >= 1, got {arr.shape}")
        if arr.dtype != np.uint8:
            raise ValueError(f"expected uint8 channels, got dtype {arr.dtype}")
        arr = np.ascontiguousarray(arr).copy()
        arr.flags.writeable = False
        self._px = arr

    @classmethod
    def _wrap(cls, arr: np.ndarray) -> "Image":
        # Internal no-copy constructor for freshly computed arrays.
        img = object.__new__(cls)
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        img._px = arr
        return img

    @classmethod
    def filled(cls, width: int, height: int, rgb: tuple[int, int, int]) -> "Image":
        arr = np.empty((height, width, 3), dtype=np.uint8)
        arr[:, :] = rgb
        return cls._wrap(arr)

    @property
    def pixels(self) -> np.ndarray:
        """Read-only (H, W, 3) uint8 view of the pixel grid."""
        return self._px

    @property
    def width(self) -> int:
        return self._px.shape[1]

    @property
    def height(self) -> int:
        return self._px.shape[0]

    def pixel(self, x: int, y: int) -> tuple[int, int, int]:
        """Channel triple at column x, row y."""
        r, g, b = self._px[y, x]
        return int(r), int(g), int(b)

    def to_array(self) -> np.ndarray:
        """Writable copy of the pixel grid."""
        return self._px.copy()

    def tobytes(self) -> bytes:
        """Raw RGB bytes, row-major."""
        return self._px.tobytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Image):
            return NotImplemented
        return self._px.shape == other._px.shape and bool(
            np.array_equal(self._px, other._px)
        )

    def __hash__(self) -> int:  # images are immutable
        return hash((self._px.shape, self._px.tobytes()))

    def __repr__(self) -> str:
        return f"Image({self.width}x{self.height})"


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle: top-left (x0, y0), size w x h, all in pixels.

    Zero-area rectangles are not representable; bounds against a particular
    image are checked where the rect is applied.
    """

    x0: int
    y0: int
    w: int
    h: int

    def __post_init__(self):
        if self.w < 1 or self.h < 1:
            raise ValueError(f"rect sides must be >= 1, got w={self.w} h={self.h}")
        if self.x0 < 0 or self.y0 < 0:
            raise ValueError(f"rect origin must be >= 0, got ({self.x0}, {self.y0})")

    @classmethod
    def full(cls, width: int, height: int) -> "Rect":
        return cls(0, 0, width, height)

    def check_within(self, width: int, height: int) -> None:
        """Raise if the rect is not fully inside a width x height image."""
        if self.x0 + self.w > width or self.y0 + self.h > height:
            raise ValueError(
                f"rect {self} does not fit inside a {width}x{height} image"
            )

    def __str__(self) -> str:
        return f"({self.x0},{self.y0})+{self.w}x{self.h}"


def load_image(path: str | os.PathLike) -> Image:
    """Decode a PNG, JPEG or BMP file into an RGB image.

    Alpha channels are dropped; palette and grayscale inputs are expanded to
    RGB; 16-bit channels keep their high byte.
    """
    try:
        with _PILImage.open(path) as im:
            if im.format not in _DECODE_FORMATS:
                raise ImageIOError(path, f"unsupported format {im.format!r}")
            if im.mode != "RGB":
                im = im.convert("RGB")
            arr = np.asarray(im, dtype=np.uint8)
    except FileNotFoundError:
        raise ImageIOError(path, "file not found") from None
    except UnidentifiedImageError:
        raise ImageIOError(path, "not a recognized image file") from None
    except OSError as exc:
        raise ImageIOError(path, f"decode failed: {exc}") from exc
    return Image._wrap(arr)


def save_image(img: Image, path: str | os.PathLike) -> None:
    """Write a lossless PNG; a later :func:`load_image` is bit-exact."""
    pil = _PILImage.fromarray(img.pixels, mode="RGB")
    try:
        pil.save(path, format="PNG")
    except OSError as exc:
        raise ImageIOError(path, f"write failed: {exc}") from exc


def extract(img: Image, rect: Rect) -> Image:
    """Copy of the sub-image covered by ``rect``.

    Output pixel (i, j) equals the source pixel (x0 + i, y0 + j). The source
    image is never modified.
    """
    rect.check_within(img.width, img.height)
    patch = img.pixels[rect.y0 : rect.y0 + rect.h, rect.x0 : rect.x0 + rect.w]
    return Image._wrap(patch.copy())

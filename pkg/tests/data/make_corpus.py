"""Regenerate the bundled test corpus under tests/data/corpus.

Run manually from the repository root:

    python3 tests/data/make_corpus.py

Content is a pure function of the file names (seeded from their FNV-1a
hashes), so reruns are byte-stable. The corpus is committed; tests read it,
they never regenerate it.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from colorerase import Image, save_image
from colorerase.rng import RngStream, fnv1a64

CORPUS = Path(__file__).parent / "corpus"

# name -> (width, height)
RANDOM_IMAGES = {
    "c00.png": (64, 48),
    "c01.png": (48, 64),
    "c02.png": (96, 32),
    "c03.png": (32, 96),
    "c04.png": (80, 60),
    "c05.png": (60, 80),
    "c06.png": (72, 54),
    "c07.png": (54, 72),
    "c08.png": (64, 64),
    "c09.png": (40, 40),
    "c10.png": (96, 64),
    "c11.png": (64, 96),
    "small8.png": (8, 8),
    "nested/n00.png": (48, 48),
    "nested/n01.png": (56, 42),
    "nested/n02.png": (42, 56),
    "nested/n03.png": (50, 50),
}


def random_bytes(name: str, count: int) -> bytes:
    rng = RngStream.from_seed(fnv1a64(name.encode("utf-8")))
    words = (count + 7) // 8
    return struct.pack(f"<{words}Q", *(rng.next_u64() for _ in range(words)))[:count]


def random_image(name: str, width: int, height: int) -> Image:
    raw = random_bytes(name, width * height * 3)
    return Image(np.frombuffer(raw, dtype=np.uint8).reshape(height, width, 3))


def main() -> None:
    for name, (w, h) in RANDOM_IMAGES.items():
        path = CORPUS / name
        path.parent.mkdir(parents=True, exist_ok=True)
        save_image(random_image(name, w, h), path)

    save_image(Image.filled(48, 32, (200, 50, 25)), CORPUS / "flat.png")

    # Grayscale content stored as RGB: every channel equal.
    luma = np.frombuffer(random_bytes("gray.png", 40 * 30), dtype=np.uint8)
    gray = np.repeat(luma.reshape(30, 40, 1), 3, axis=2)
    save_image(Image(gray), CORPUS / "gray.png")

    save_image(Image.filled(1, 1, (7, 77, 177)), CORPUS / "tiny1x1.png")

    names = sorted(p.relative_to(CORPUS).as_posix() for p in CORPUS.rglob("*.png"))
    print(f"wrote {len(names)} images:")
    for name in names:
        print(" ", name)


if __name__ == "__main__":
    main()

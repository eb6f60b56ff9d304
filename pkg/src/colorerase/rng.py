"""Deterministic bit-mixing primitives: SplitMix64, xoshiro256++ and FNV-1a.

Every random draw in this package flows through :class:`RngStream` so that a
given seed produces the same outputs on every platform and in any language
that implements the same two generators. Both algorithms are tiny, public
domain and widely ported, which is why they were chosen over the host
runtime's RNG.

Unit floats are built as ``(next_u64() >> 11) * 2**-53``, i.e. the top 53
bits of a 64-bit draw scaled into [0, 1).
"""

from __future__ import annotations

__all__ = ["MASK64", "splitmix64", "fnv1a64", "RngStream"]

MASK64 = 0xFFFFFFFFFFFFFFFF

_UNIT_SCALE = 2.0 ** -53

_SPLITMIX64_GAMMA = 0x9E3779B97F4A7C15
_FNV64_OFFSET = 0xCBF29CE484222325
_FNV64_PRIME = 0x100000001B3


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a SplitMix64 state by one step.

    Returns ``(new_state, output)``. "The first SplitMix64 output of x"
    means ``splitmix64(x)[1]`` throughout this package.
    """
    state = (state + _SPLITMIX64_GAMMA) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a hash. Used for path mixing and pixel digests."""
    h = _FNV64_OFFSET
    for byte in data:
        h = ((h ^ byte) * _FNV64_PRIME) & MASK64
    return h


class RngStream:
    """xoshiro256++ draw stream, single-owner.

    A stream is seeded from one 64-bit value: four successive SplitMix64
    outputs fill the 256-bit state. Streams are cheap; concurrent callers
    must each derive their own rather than share one.
    """

    __slots__ = ("_s", "seed")

    def __init__(self, state: tuple[int, int, int, int], seed: int | None = None):
        if len(state) != 4 or not all(0 <= w <= MASK64 for w in state):
            raise ValueError("state must be four 64-bit words")
        if not any(state):
            raise ValueError("state must not be all zero")
        self._s = list(state)
        #: seed the stream was derived from, if seed-constructed (kept for
        #: reproducibility records)
        self.seed = seed

    @classmethod
    def from_seed(cls, seed: int) -> "RngStream":
        if not 0 <= seed <= MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned value, got {seed}")
        state = []
        sm = seed
        for _ in range(4):
            sm, word = splitmix64(sm)
            state.append(word)
        return cls(tuple(state), seed=seed)

    def next_u64(self) -> int:
        s = self._s
        x = (s[0] + s[3]) & MASK64
        result = (((x << 23) | (x >> 41)) + s[0]) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = ((s[3] << 45) | (s[3] >> 19)) & MASK64
        return result

    def next_unit_float(self) -> float:
        """Next float in [0, 1): top 53 bits of a 64-bit draw times 2**-53."""
        return (self.next_u64() >> 11) * _UNIT_SCALE

    def uniform(self, lo: float, hi: float) -> float:
        """``lo + (hi - lo) * next_unit_float()``, the fixed construction."""
        return lo + (hi - lo) * self.next_unit_float()

    def next_index(self, n: int) -> int:
        """Integer uniform on [0, n) as ``floor(next_unit_float() * n)``.

        The clamp is belt-and-braces: for n <= 2**53 the product cannot
        round up to n, so results are portable across IEEE-754 hosts.
        """
        if n < 1:
            raise ValueError(f"n must be positive, got {n}")
        idx = int(self.next_unit_float() * n)
        return n - 1 if idx >= n else idx

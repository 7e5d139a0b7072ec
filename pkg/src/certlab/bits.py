"""Bitstring helpers.

Bitstrings are plain Python strings over {'0','1'}, most significant bit
first.  All comparisons in this package are between equal-length strings,
where ordinary string order coincides with lexicographic order.
"""

from __future__ import annotations

import random

from .errors import ShapeError

_BITSET = frozenset("01")


def check_bits(s: str, length: int | None = None, name: str = "bitstring") -> str:
    if not isinstance(s, str) or not _BITSET.issuperset(s):
        raise ShapeError(f"{name} must be a string over 0/1, got {s!r}")
    if length is not None and len(s) != length:
        raise ShapeError(f"{name} must have length {length}, got {len(s)}")
    return s


def bits_to_int(s: str) -> int:
    return int(s, 2) if s else 0


def int_to_bits(value: int, length: int) -> str:
    if value < 0 or value >= (1 << length):
        raise ShapeError(f"value {value} does not fit in {length} bits")
    return format(value, f"0{length}b") if length else ""


def lex_rank(w: str) -> int:
    """1-indexed position of w in MSB-first lexicographic order of {0,1}^|w|.

    Equals the integer value of w plus one.
    """
    check_bits(w, name="w")
    return bits_to_int(w) + 1


def bits_of_rank(rank: int, length: int) -> str:
    """Inverse of lex_rank over {0,1}^length."""
    if not 1 <= rank <= (1 << length):
        raise ShapeError(f"rank {rank} out of range for length {length}")
    return int_to_bits(rank - 1, length)


def random_bits(rng: random.Random, length: int) -> str:
    return int_to_bits(rng.getrandbits(length), length) if length else ""


def flip_positions(s: str, positions) -> str:
    """Return s with exactly the given bit positions flipped."""
    check_bits(s, name="s")
    out = list(s)
    for p in positions:
        if not 0 <= p < len(s):
            raise ShapeError(f"flip position {p} out of range for length {len(s)}")
        out[p] = "1" if out[p] == "0" else "0"
    return "".join(out)

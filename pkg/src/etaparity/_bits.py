"""Helpers for bit vectors packed into Python ints, bit n = coefficient of q^n.

Stdlib only; shared by both kernel backends.
"""

from __future__ import annotations


def mask(n: int) -> int:
    return (1 << n) - 1


def popcount(x: int) -> int:
    # int.bit_count needs 3.11; this is the portable spelling
    return bin(x).count("1")


def lowest_set_bit(x: int) -> int:
    """Index of the lowest set bit; x must be nonzero."""
    return (x & -x).bit_length() - 1


# byte -> two bytes with the input bits moved to even positions (little endian),
# i.e. bit i of v lands at bit 2i of the 16-bit result
_SPREAD = [
    sum(((v >> i) & 1) << (2 * i) for i in range(8)).to_bytes(2, "little")
    for v in range(256)
]


def spread_double(bits: int, nbits: int) -> int:
    """Map q -> q^2 on a packed vector: bit n moves to bit 2n.

    Result is valid to 2*nbits bits. This is squaring in GF(2)[[q]].
    """
    data = bits.to_bytes((nbits + 7) // 8, "little")
    return int.from_bytes(b"".join(_SPREAD[c] for c in data), "little")

"""Adapter around the compiled word-level kernels in etaparity._core.

Converts between Python-int bit vectors and uint64 word arrays at the
boundary; the conversions are linear and negligible next to the kernels.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from etaparity import _core
from etaparity._bits import mask

NAME = "compiled"


def _to_words(bits: int, n: int) -> np.ndarray:
    nw = max(1, (n + 63) // 64)
    return np.frombuffer(bits.to_bytes(nw * 8, "little"), dtype=np.uint64).copy()


def _from_words(words: np.ndarray, n: int) -> int:
    return int.from_bytes(words.tobytes(), "little") & mask(n)


def mul_sparse(bits: int, n: int, exps: Sequence[int]) -> int:
    src = _to_words(bits, n)
    dst = np.zeros_like(src)
    ea = np.asarray([e for e in exps if e < n], dtype=np.int64)
    _core.mul_sparse_words(src, dst, ea)
    return _from_words(dst, n)


def divide_sparse(bits: int, n: int, exps: Sequence[int]) -> int:
    """bits / factor to n terms via the word-blocked recurrence."""
    if not exps or exps[0] != 0:
        raise ValueError("divisor must have constant term 1")
    words = _to_words(bits, n)
    taps = [e for e in exps[1:] if e < n]
    small_mask = 0
    large = []
    for e in taps:
        if e < 64:
            small_mask |= 1 << e
        else:
            large.append(e)
    _core.divide_sparse_words(words, np.asarray(large, dtype=np.int64),
                              np.uint64(small_mask))
    return _from_words(words, n)


def quotient(nums: Sequence[Sequence[int]], dens: Sequence[Sequence[int]], n: int) -> int:
    remaining = sorted((list(f) for f in nums), key=len, reverse=True)
    if remaining:
        b = 0
        for e in remaining.pop(0):
            if e < n:
                b |= 1 << e
    else:
        b = 1
    for exps in remaining:
        b = mul_sparse(b, n, exps)
    for exps in dens:
        b = divide_sparse(b, n, exps)
    return b

"""Pure Python kernels.

Series are Python ints, bit n = coefficient of q^n, truncated to a stated
bit length. The two entry points mirror the compiled backend:

  mul_sparse(bits, n, exps)        multiply by a sparse factor
  quotient(nums, dens, n)          product of sparse factors divided by
                                   a product of sparse factors

Quotients use Newton doubling: if b is the inverse of d to m terms then
b(q^2) * d is the inverse to 2m terms, since squaring is q -> q^2 in
characteristic 2. Every multiplication along the way is by a sparse
factor, so no dense-by-dense product ever happens here.

divide_sparse_ref is a bit-serial reference divider, quadratic-ish and
only meant for cross-checks at small lengths.
"""

from __future__ import annotations

from typing import Sequence

from etaparity._bits import mask, spread_double

NAME = "pure"


def mul_sparse(bits: int, n: int, exps: Sequence[int]) -> int:
    """XOR of shifted copies of bits, one per exponent; truncated to n bits."""
    acc = 0
    for e in exps:
        if e >= n:
            break  # exps ascending
        acc ^= bits << e
    return acc & mask(n)


def quotient(nums: Sequence[Sequence[int]], dens: Sequence[Sequence[int]], n: int) -> int:
    """prod(nums) / prod(dens) mod 2 to n bits; every factor given as its
    ascending exponent list and must have exponent 0 present."""
    remaining = list(nums)
    if dens:
        b = 1
        m = 1
        while m < n:
            m2 = min(2 * m, n)
            b = spread_double(b, m) & mask(m2)
            for exps in dens:
                b = mul_sparse(b, m2, exps)
            m = m2
    elif remaining:
        # seed with the heaviest factor for free, multiply in the rest
        remaining.sort(key=len, reverse=True)
        b = 0
        for e in remaining.pop(0):
            if e < n:
                b |= 1 << e
    else:
        b = 1
    for exps in remaining:
        b = mul_sparse(b, n, exps)
    return b


def divide_sparse_ref(bits: int, n: int, exps: Sequence[int]) -> int:
    """Reference recurrence division: b(k) = num(k) xor sum b(k - e) over
    the positive exponents e of the divisor. exps[0] must be 0."""
    if not exps or exps[0] != 0:
        raise ValueError("divisor must have constant term 1")
    taps = [e for e in exps[1:] if e < n]
    buf = bytearray((bits >> k) & 1 for k in range(n))
    for k in range(n):
        if buf[k]:
            for e in taps:
                j = k + e
                if j < n:
                    buf[j] ^= 1
                else:
                    break
    out = 0
    for k in range(n - 1, -1, -1):
        out = (out << 1) | buf[k]
    return out

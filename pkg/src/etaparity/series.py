"""Bit-packed truncated power series over GF(2).

A BitSeries keeps the first ``len`` coefficients of a series reduced mod 2
in one Python int, bit n = coefficient of q^n; bits at or beyond ``len``
are zero. Equality of underlying series is only meaningful up to the
shorter truncation, see :meth:`BitSeries.agrees_with`; ``==`` compares
both fields exactly.

The theta-type generators are sparse: f_t mod 2 is supported on the
t-scaled generalized pentagonal numbers and f_t^3 mod 2 on the t-scaled
triangular numbers, both O(sqrt(N)) terms. All heavy arithmetic reduces
to multiplying by, or dividing by, such sparse factors; the kernels live
in :mod:`etaparity._kernels`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

from etaparity._bits import lowest_set_bit, mask, popcount, spread_double
from etaparity._kernels import BACKEND_NAME, backend

__all__ = [
    "BitSeries",
    "SparseExponents",
    "pentagonal_factor",
    "triangular_factor",
    "eta_power",
    "mul_sparse",
    "add",
    "mul",
    "inverse",
    "magnify",
    "dissect",
    "embed",
    "dumps",
    "loads",
    "BACKEND_NAME",
]


@dataclass(frozen=True)
class BitSeries:
    """Truncated series mod 2: bit n of ``bits`` is the coefficient of q^n."""

    bits: int
    len: int

    def __post_init__(self) -> None:
        if self.len < 1:
            raise ValueError("length must be at least 1")
        if self.bits < 0 or self.bits >> self.len:
            raise ValueError("bits outside the stated length")

    def __len__(self) -> int:
        return self.len

    def __getitem__(self, n: int) -> int:
        if not 0 <= n < self.len:
            raise IndexError(n)
        return (self.bits >> n) & 1

    def coeff(self, n: int) -> int:
        return self[n]

    def agrees_with(self, other: "BitSeries") -> bool:
        """Equality up to the shared valid length."""
        n = min(self.len, other.len)
        return (self.bits ^ other.bits) & mask(n) == 0

    def truncate(self, n: int) -> "BitSeries":
        if n >= self.len:
            return self
        return BitSeries(self.bits & mask(n), n)

    def popcount(self, upto: int | None = None) -> int:
        """Number of odd coefficients at indices 0..upto (default: all)."""
        if upto is None or upto >= self.len - 1:
            return popcount(self.bits)
        return popcount(self.bits & mask(upto + 1))

    def odd_indices(self, limit: int | None = None) -> list[int]:
        arr = _unpack(self)
        if limit is not None:
            arr = arr[:limit]
        return np.flatnonzero(arr).tolist()

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "BitSeries":
        bits = 0
        n = 0
        for c in coeffs:
            if c & 1:
                bits |= 1 << n
            n += 1
        return cls(bits, n)

    @classmethod
    def from_exponents(cls, exps: Iterable[int], n: int) -> "BitSeries":
        bits = 0
        for e in exps:
            if e < n:
                bits |= 1 << e
        return cls(bits, n)

    @classmethod
    def one(cls, n: int) -> "BitSeries":
        return cls(1, n)

    @classmethod
    def zero(cls, n: int) -> "BitSeries":
        return cls(0, n)


@dataclass(frozen=True)
class SparseExponents:
    """Support of a sparse series: ascending exponents below the truncation."""

    exponents: tuple[int, ...]
    len: int

    def __post_init__(self) -> None:
        if self.len < 1:
            raise ValueError("length must be at least 1")
        prev = -1
        for e in self.exponents:
            if e <= prev:
                raise ValueError("exponents must be strictly increasing")
            prev = e
        if prev >= self.len:
            raise ValueError("exponent beyond truncation")

    def to_series(self) -> BitSeries:
        return BitSeries.from_exponents(self.exponents, self.len)


# ---------------------------------------------------------------------------
# numpy bridges

def _unpack(a: BitSeries) -> np.ndarray:
    data = a.bits.to_bytes((a.len + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(data, np.uint8), bitorder="little",
                         count=a.len)


def _pack(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(arr, bitorder="little").tobytes(), "little")


# ---------------------------------------------------------------------------
# generators

def _pentagonal_exponents(t: int, n: int) -> list[int]:
    # t * m(3m-1)/2 over m in Z, ascending
    out = [0]
    m = 1
    while True:
        a = t * (m * (3 * m - 1) // 2)
        if a >= n:
            break
        out.append(a)
        b = t * (m * (3 * m + 1) // 2)
        if b < n:
            out.append(b)
        m += 1
    return out


def _triangular_exponents(t: int, n: int) -> list[int]:
    out = []
    k = 0
    while True:
        e = t * (k * (k + 1) // 2)
        if e >= n:
            break
        out.append(e)
        k += 1
    return out


def pentagonal_factor(t: int, N: int) -> SparseExponents:
    """Support of f_t mod 2: exponents t*m(3m-1)/2, m in Z, below N."""
    if t < 1 or N < 1:
        raise ValueError("t and N must be positive")
    return SparseExponents(tuple(_pentagonal_exponents(t, N)), N)


def triangular_factor(t: int, N: int) -> SparseExponents:
    """Support of f_t^3 mod 2: exponents t*k(k+1)/2, k >= 0, below N."""
    if t < 1 or N < 1:
        raise ValueError("t and N must be positive")
    return SparseExponents(tuple(_triangular_exponents(t, N)), N)


def _power_factors(t: int, e: int, n: int) -> list[list[int]]:
    """f_t^e as a list of sparse factor exponent lists.

    Binary split of e; adjacent bit pairs collapse through f^3 being the
    triangular theta, so 3*2^i in the exponent costs one factor.
    """
    out = []
    i = 0
    while e >> i:
        if not (e >> i) & 1:
            i += 1
            continue
        if (e >> (i + 1)) & 1:
            out.append(_triangular_exponents(t << i, n))
            i += 2
        else:
            out.append(_pentagonal_exponents(t << i, n))
            i += 1
    return out


def eta_power(t: int, e: int, N: int, allow_zero: bool = False) -> BitSeries:
    """Coefficients of f_t^e mod 2 to length N (e >= 1 unless allow_zero)."""
    if t < 1 or N < 1:
        raise ValueError("t and N must be positive")
    if e == 0:
        if allow_zero:
            return BitSeries.one(N)
        raise ValueError("exponent 0 rejected; pass allow_zero=True for the constant 1")
    if e < 0:
        raise ValueError("negative exponent; use inverse or an expression")
    return BitSeries(backend.quotient(_power_factors(t, e, N), [], N), N)


# ---------------------------------------------------------------------------
# arithmetic

def mul_sparse(a: BitSeries, s: SparseExponents) -> BitSeries:
    """Product of a with the sparse series of support s, truncated to the
    shared valid length."""
    n = min(a.len, s.len)
    return BitSeries(backend.mul_sparse(a.bits & mask(n), n, s.exponents), n)


def add(a: BitSeries, b: BitSeries) -> BitSeries:
    """Sum mod 2 (XOR), truncated to the shared valid length."""
    n = min(a.len, b.len)
    return BitSeries((a.bits ^ b.bits) & mask(n), n)


def mul(a: BitSeries, b: BitSeries) -> BitSeries:
    """Product truncated to min(a.len, b.len); enumerates the set bits of
    the sparser operand, so it agrees with mul_sparse by construction."""
    n = min(a.len, b.len)
    xa = a.bits & mask(n)
    xb = b.bits & mask(n)
    if popcount(xa) <= popcount(xb):
        xa, xb = xb, xa
    exps = BitSeries(xb, n).odd_indices()
    return BitSeries(backend.mul_sparse(xa, n, exps), n)


def inverse(a: BitSeries) -> BitSeries:
    """Multiplicative inverse to length a.len; requires constant term 1.

    Sparse supports go through the kernel quotient (recurrence division or
    doubling, per backend); dense ones fall back to Newton doubling with
    generic products.
    """
    if not a.bits & 1:
        raise ValueError("non-invertible series")
    n = a.len
    pc = popcount(a.bits)
    if pc <= 6 * isqrt(n) + 64:
        return BitSeries(backend.quotient([], [a.odd_indices()], n), n)
    b = BitSeries.one(1)
    m = 1
    while m < n:
        m2 = min(2 * m, n)
        sq = BitSeries(spread_double(b.bits, m) & mask(m2), m2)
        b = mul(sq, a.truncate(m2))
        m = m2
    return b


def magnify(a: BitSeries, m: int, limit: int | None = None) -> BitSeries:
    """Substitute q -> q^m: coefficient of q^{mn} is a(n), others 0.

    Result length is a.len * m, or limit if that is smaller.
    """
    if m < 1:
        raise ValueError("magnification must be positive")
    n2 = a.len * m
    if limit is not None:
        n2 = min(n2, limit)
    if m == 1:
        return a.truncate(n2)
    if m == 2 and n2 == 2 * a.len:
        return BitSeries(spread_double(a.bits, a.len) & mask(n2), n2)
    src = _unpack(a)[: (n2 + m - 1) // m]
    out = np.zeros(n2, np.uint8)
    out[:: m][: len(src)] = src
    return BitSeries(_pack(out), n2)


def dissect(a: BitSeries, A: int, B: int) -> BitSeries:
    """Subsequence along An+B: result(n) = a(An+B)."""
    if A < 1 or not 0 <= B < A:
        raise ValueError("need A >= 1 and 0 <= B < A")
    if B >= a.len:
        raise ValueError("empty dissection: residue beyond series length")
    if A == 1:
        return a
    sub = _unpack(a)[B::A]
    return BitSeries(_pack(sub), len(sub))


def embed(a: BitSeries, stride: int, offset: int, N: int) -> BitSeries:
    """Place a(n) at index offset + stride*n; all other coefficients 0."""
    if stride < 1 or offset < 0 or N < 1:
        raise ValueError("need stride >= 1, offset >= 0, N >= 1")
    out = np.zeros(N, np.uint8)
    if offset < N:
        count = min(a.len, -(-(N - offset) // stride))
        out[offset : offset + stride * count : stride] = _unpack(a)[:count]
    return BitSeries(_pack(out), N)


# ---------------------------------------------------------------------------
# serialization

def dumps(a: BitSeries, form: str = "hex") -> str:
    """Dump with a len=<N> header; hex is 64-bit words least significant
    word first, 16 lowercase digits each; sparse is the exponent list."""
    if form == "hex":
        nw = max(1, (a.len + 63) // 64)
        data = a.bits.to_bytes(nw * 8, "little")
        body = "".join(
            format(int.from_bytes(data[8 * i : 8 * i + 8], "little"), "016x")
            for i in range(nw)
        )
        return f"len={a.len}\n{body}\n"
    if form == "sparse":
        return f"len={a.len}\nexps: {','.join(map(str, a.odd_indices()))}\n"
    raise ValueError(f"unknown dump form {form!r}")


def loads(text: str) -> BitSeries:
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if not lines or not lines[0].startswith("len="):
        raise ValueError("missing len= header")
    n = int(lines[0][4:])
    body = " ".join(lines[1:]).strip()
    if body.startswith("exps:"):
        items = body[5:].strip()
        exps = [int(x) for x in items.split(",")] if items else []
        if any(not 0 <= e < n for e in exps):
            raise ValueError("exponent beyond stated length")
        return BitSeries.from_exponents(exps, n)
    hexstr = "".join(body.split())
    nw = max(1, (n + 63) // 64)
    if len(hexstr) != 16 * nw:
        raise ValueError("hex body length does not match header")
    data = b"".join(
        int(hexstr[16 * i : 16 * i + 16], 16).to_bytes(8, "little")
        for i in range(nw)
    )
    bits = int.from_bytes(data, "little")
    if bits >> n:
        raise ValueError("nonzero padding beyond stated length")
    return BitSeries(bits, n)

"""Parity analytics on BitSeries: densities, even arithmetic progressions,
p^2-evenness of f_1^t, and residue sets of quadratic exponent forms.

Everything here is finite verification over a stated prefix; no operation
extrapolates or asserts a limit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, isqrt

import numpy as np

from etaparity.expr import EtaExpr
from etaparity.series import BitSeries, _unpack

__all__ = [
    "Progression",
    "DensityEstimate",
    "ProgressionCheck",
    "P2EvenReport",
    "QuadForm",
    "density",
    "check_progression",
    "search_progressions",
    "legendre",
    "mod_inverse",
    "representable_residues",
    "residue_complement",
    "pentagonal_form",
    "triangular_form",
    "p2_even_check",
    "primeclass_base",
    "cmsz_predicate",
    "smallt0_predicate",
    "is_prime",
]


@dataclass(frozen=True)
class Progression:
    """Arithmetic progression An+B, A >= 1, 0 <= B < A."""

    A: int
    B: int

    def __post_init__(self) -> None:
        if self.A < 1 or not 0 <= self.B < self.A:
            raise ValueError("need A >= 1 and 0 <= B < A")


@dataclass(frozen=True)
class DensityEstimate:
    """Fraction of odd coefficients over indices 0..upto, exact."""

    upto: int
    odd_count: int
    value: Fraction

    @property
    def decimal(self) -> str:
        return f"{float(self.value):.6f}"


@dataclass(frozen=True)
class ProgressionCheck:
    progression: Progression
    n_max: int
    checked: int
    witness: int | None

    @property
    def passed(self) -> bool:
        return self.witness is None


@dataclass(frozen=True)
class P2EvenReport:
    t: int
    p: int
    r: int
    checked_per_k: tuple[int, ...]  # counts for k = 1 .. p-1
    witness: int | None

    @property
    def passed(self) -> bool:
        return self.witness is None


@dataclass(frozen=True)
class QuadForm:
    """Exponent set {coeff * x^2 + offset mod m : x in Z/m}; the rational
    fields must have denominators invertible mod the modulus in use."""

    coeff: Fraction
    offset: Fraction


def density(a: BitSeries, upto: int) -> DensityEstimate:
    """Exact odd-coefficient count over 0..upto."""
    if not 0 <= upto < a.len:
        raise ValueError("upto out of range")
    odd = a.popcount(upto)
    return DensityEstimate(upto, odd, Fraction(odd, upto + 1))


def check_progression(a: BitSeries, pr: Progression, n_max: int) -> ProgressionCheck:
    """Verify a(An+B) = 0 for every index An+B <= min(n_max, a.len-1)."""
    if pr.B >= a.len:
        raise ValueError("residue beyond series length")
    hi = min(n_max, a.len - 1)
    if hi < pr.B:
        return ProgressionCheck(pr, n_max, 0, None)
    limit = (hi - pr.B) // pr.A + 1
    sub = _unpack(a)[pr.B :: pr.A][:limit]
    nz = np.flatnonzero(sub)
    witness = pr.B + pr.A * int(nz[0]) if len(nz) else None
    return ProgressionCheck(pr, n_max, limit, witness)


def search_progressions(
    a: BitSeries, A_max: int, min_support: int = 50, dedup: bool = True, threads: int = 1
) -> list[Progression]:
    """All progressions An+B, A <= A_max, whose classes are entirely even
    over the series, each class holding at least min_support indices.

    With dedup, a class already implied by a reported divisor progression
    is not repeated. threads parallelizes the per-modulus scans.
    """
    if A_max < 1:
        raise ValueError("A_max must be positive")
    if a.len < A_max * min_support:
        bad = a.len // min_support + 1
        raise ValueError(
            f"insufficient support: modulus {bad} has classes with fewer than "
            f"{min_support} indices below {a.len}"
        )
    odd = np.flatnonzero(_unpack(a))
    moduli = range(1, A_max + 1)

    def classes_hit(A: int) -> set[int]:
        return set(np.unique(odd % A).tolist()) if len(odd) else set()

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            hits = list(pool.map(classes_hit, moduli))
    else:
        hits = [classes_hit(A) for A in moduli]
    found: list[Progression] = []
    for A, hit in zip(moduli, hits):
        for B in range(A):
            if B in hit:
                continue
            if dedup and any(A % f.A == 0 and B % f.A == f.B for f in found):
                continue
            found.append(Progression(A, B))
    return found


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    if p < 3 or not is_prime(p):
        raise ValueError("p must be an odd prime")
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a mod m in [0, m); errors when gcd(a, m) != 1."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if gcd(a, m) != 1:
        raise ValueError(f"{a} is not invertible mod {m}")
    return pow(a, -1, m)


def _form_values(form: QuadForm, m: int) -> np.ndarray:
    c = form.coeff.numerator * mod_inverse(form.coeff.denominator, m) % m
    d = form.offset.numerator * mod_inverse(form.offset.denominator, m) % m
    x = np.arange(m, dtype=np.int64)
    return np.unique((c * x * x + d) % m)


def representable_residues(forms: list[QuadForm], m: int) -> int:
    """Bit-mask of residues mod m attained by the sum of the given forms
    (one term drawn from each form); brute force over value tuples."""
    if m < 1:
        raise ValueError("modulus must be positive")
    if not forms:
        raise ValueError("need at least one form")
    acc = np.zeros(1, np.int64)
    for form in forms:
        vals = _form_values(form, m)
        acc = np.unique((acc[:, None] + vals[None, :]) % m)
    out = 0
    for r in acc.tolist():
        out |= 1 << r
    return out


def residue_complement(mask_val: int, m: int) -> list[int]:
    """Residues mod m absent from a representability mask: the classes on
    which the corresponding series is provably even."""
    return [r for r in range(m) if not (mask_val >> r) & 1]


def pentagonal_form(t: int = 1) -> QuadForm:
    """Exponent form of f_t mod 2: t(3/2)(x - 1/6)^2 - t/24, reduced."""
    return QuadForm(Fraction(3 * t, 2), Fraction(-t, 24))


def triangular_form(t: int = 1) -> QuadForm:
    """Exponent form of f_t^3 mod 2: (t/2)(x + 1/2)^2 - t/8, reduced."""
    return QuadForm(Fraction(t, 2), Fraction(-t, 8))


def p2_even_check(
    t: int, p: int, r: int, series: BitSeries, threads: int = 1
) -> P2EvenReport:
    """Check c_t(p^2 n + kp + r) even for k = 1..p-1 over the whole series.

    The series must be f_1^t; classes are reduced mod p^2, so each class is
    scanned from its least representative.
    """
    if not is_prime(p) or p == 2:
        raise ValueError("p must be an odd prime")
    if not 0 <= r < p * p:
        raise ValueError("base must satisfy 0 <= r < p^2")
    if series.len < 20 * p * p:
        raise ValueError("series too short: need length >= 20 p^2")

    def scan(k: int) -> ProgressionCheck:
        cls = (k * p + r) % (p * p)
        return check_progression(series, Progression(p * p, cls), series.len - 1)

    ks = range(1, p)
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(scan, ks))
    else:
        results = [scan(k) for k in ks]
    counts = tuple(res.checked for res in results)
    witness = next((r2.witness for r2 in results if r2.witness is not None), None)
    return P2EvenReport(t, p, r, counts, witness)


def _two_power_splits(t: int) -> list[tuple[int, int, int]]:
    """Decompositions t = a + b*2^e with a, b in {1, 3}, e > 0."""
    out = []
    e = 1
    while (1 << e) <= t:
        for a in (1, 3):
            for b in (1, 3):
                if a + (b << e) == t:
                    out.append((a, b, e))
        e += 1
    return out


def primeclass_base(t: int, p: int) -> tuple[int, bool]:
    """Base r with f_1^t expected p^2-even at p, plus an applicability flag.

    Requires t = a + b*2^e with a, b in {1, 3} (that is, one of 2^d+1,
    2^d+3, 3*2^d+1, 3*2^d+3) and an odd prime p not dividing 6. The base is
    r = -t * 24^{-1} mod p^2, the shared center of the two theta exponent
    forms; the flag holds when some split makes the relevant twisted square
    class a nonresidue: -2^e for a = b, -3*2^e otherwise.
    """
    if not is_prime(p) or p in (2, 3):
        raise ValueError("p must be an odd prime not dividing 6")
    splits = _two_power_splits(t)
    if not splits:
        raise ValueError(f"{t} is not of the form a + b*2^e with a, b in {{1, 3}}")
    r = (-t * mod_inverse(24, p * p)) % (p * p)
    applicable = any(
        legendre(-(1 << e) if a == b else -3 * (1 << e), p) == -1
        for a, b, e in splits
    )
    return r, applicable


def cmsz_predicate(e: EtaExpr) -> bool:
    """Lacunarity criterion: sum of e_t/t over positive factors at least
    sum of |e_t|*t over negative factors."""
    lhs = sum((Fraction(k, t) for t, k in e.factors if k > 0), Fraction(0))
    rhs = sum(-k * t for t, k in e.factors if k < 0)
    return lhs >= rhs


def smallt0_predicate(t: int) -> bool:
    """With t = 2^alpha * t0, t0 odd: true when 3 * 2^alpha >= t0 (then the
    odd density of f_t^3/f_1 vanishes)."""
    if t < 1:
        raise ValueError("t must be positive")
    alpha = (t & -t).bit_length() - 1
    t0 = t >> alpha
    return 3 * (1 << alpha) >= t0

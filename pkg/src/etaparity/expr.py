"""Parser and evaluator for eta-quotient expressions.

Grammar (whitespace ignored):

    expr   := [ qshift "*" ] factor { ("*" | "/") factor }
    qshift := "q" [ "^" uint ]
    factor := "f" uint [ "^" uint ] | "1"

"/" divides by the single following factor. The literal factor "1" is a
deliberate extension so quotients like 1/f1 and the canonical form of a
fully cancelled product are expressible. Expressions normalize to a
nonnegative q-shift plus factors (subscript, signed exponent) with
distinct subscripts and zero exponents dropped.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from etaparity._bits import mask
from etaparity._kernels import backend
from etaparity.series import BitSeries, _power_factors

__all__ = [
    "EtaExpr",
    "ParseError",
    "UNEXPECTED_TOKEN",
    "BAD_NUMBER",
    "ZERO_SUBSCRIPT",
    "EMPTY_EXPRESSION",
    "parse",
    "evaluate",
    "canonical_string",
]

UNEXPECTED_TOKEN = "UnexpectedToken"
BAD_NUMBER = "BadNumber"
ZERO_SUBSCRIPT = "ZeroSubscript"
EMPTY_EXPRESSION = "EmptyExpression"


class ParseError(ValueError):
    """Raised on malformed expression text; carries offset and kind."""

    def __init__(self, position: int, kind: str):
        self.position = position
        self.kind = kind
        super().__init__(f"{kind} at position {position}")


@dataclass(frozen=True)
class EtaExpr:
    """q^shift times a product of f_t^e factors, e signed and nonzero,
    subscripts distinct and ascending."""

    shift: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.shift < 0:
            raise ValueError("shift must be nonnegative")
        prev = 0
        for t, e in self.factors:
            if t <= prev:
                raise ValueError("subscripts must be ascending and positive")
            if e == 0:
                raise ValueError("zero exponent in normalized expression")
            prev = t

    @classmethod
    def make(cls, shift: int, factors: Iterable[tuple[int, int]]) -> "EtaExpr":
        """Normalize: merge repeated subscripts, drop zero exponents."""
        acc: dict[int, int] = {}
        for t, e in factors:
            acc[t] = acc.get(t, 0) + e
        return cls(shift, tuple(sorted((t, e) for t, e in acc.items() if e)))


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip_ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        return self.text[self.i] if self.i < len(self.text) else ""

    def take(self) -> str:
        c = self.peek()
        self.i += 1
        return c

    def uint(self) -> int:
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if self.i == start:
            raise ParseError(start, BAD_NUMBER)
        return int(self.text[start : self.i])


def parse(text: str) -> EtaExpr:
    """Parse to a normalized EtaExpr, raising ParseError on bad input."""
    s = _Scanner(text)
    s.skip_ws()
    if not s.peek():
        raise ParseError(0, EMPTY_EXPRESSION)
    shift = 0
    if s.peek() == "q":
        s.take()
        s.skip_ws()
        if s.peek() == "^":
            s.take()
            s.skip_ws()
            shift = s.uint()
        else:
            shift = 1
        s.skip_ws()
        if s.peek() != "*":
            raise ParseError(s.i, UNEXPECTED_TOKEN)
        s.take()

    factors: list[tuple[int, int]] = []

    def factor(sign: int) -> None:
        s.skip_ws()
        c = s.peek()
        if c == "1":
            s.take()
            return
        if c != "f":
            raise ParseError(s.i, UNEXPECTED_TOKEN)
        s.take()
        pos = s.i
        t = s.uint()
        if t == 0:
            raise ParseError(pos, ZERO_SUBSCRIPT)
        e = 1
        s.skip_ws()
        if s.peek() == "^":
            s.take()
            s.skip_ws()
            e = s.uint()
        factors.append((t, sign * e))

    factor(+1)
    while True:
        s.skip_ws()
        if not s.peek():
            break
        op = s.take()
        if op == "*":
            factor(+1)
        elif op == "/":
            factor(-1)
        else:
            raise ParseError(s.i - 1, UNEXPECTED_TOKEN)
    return EtaExpr.make(shift, factors)


def canonical_string(e: EtaExpr) -> str:
    """Deterministic rendering; parse(canonical_string(e)) == e."""
    pos = [f"f{t}" if k == 1 else f"f{t}^{k}" for t, k in e.factors if k > 0]
    neg = [f"f{t}" if k == -1 else f"f{t}^{-k}" for t, k in e.factors if k < 0]
    out = "*".join(pos) if pos else "1"
    for unit in neg:
        out += "/" + unit
    if e.shift:
        out = f"q^{e.shift}*" + out
    return out


def evaluate(e: EtaExpr, N: int) -> BitSeries:
    """Coefficients of q^shift * prod f_t^e mod 2 to length N.

    Factors expand to sparse theta factors (binary split of each exponent);
    the kernel computes the quotient of the two sparse products, and the
    q-shift is applied last. Constant terms are all 1, so any quotient is
    well defined.
    """
    if N < 1:
        raise ValueError("N must be positive")
    if e.shift >= N:
        return BitSeries.zero(N)
    n = N - e.shift
    nums: list[list[int]] = []
    dens: list[list[int]] = []
    for t, k in e.factors:
        (nums if k > 0 else dens).extend(_power_factors(t, abs(k), n))
    bits = backend.quotient(nums, dens, n)
    return BitSeries((bits << e.shift) & mask(N), N)

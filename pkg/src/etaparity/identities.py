"""Catalog-driven finite verification of mod-2 series congruences.

A case states LHS = XOR of RHS terms; each term is an eta-quotient
expression optionally piped through magnify / dissect / embed operators,
applied left to right. Cases live in a plain-text catalog so new ones can
be added without touching code.
"""

from __future__ import annotations

import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from importlib import resources

from etaparity.expr import EtaExpr, canonical_string, evaluate, parse
from etaparity.series import BitSeries, add, dissect, embed, magnify

__all__ = [
    "Term",
    "IdentityCase",
    "VerificationResult",
    "parse_term",
    "term_string",
    "evaluate_term",
    "verify",
    "verify_all",
    "parse_catalog",
    "load_catalog",
    "builtin_catalog",
]

MAGNIFY = "magnify"
DISSECT = "dissect"
EMBED = "embed"


@dataclass(frozen=True)
class Term:
    """EtaExpr plus a pipeline of series operators applied in order.

    Pipeline entries: ("magnify", m), ("dissect", A, B), ("embed", s, o).
    """

    expr: EtaExpr
    pipeline: tuple[tuple, ...] = ()

    def __post_init__(self) -> None:
        for op in self.pipeline:
            if op[0] == MAGNIFY:
                if len(op) != 2 or op[1] < 1:
                    raise ValueError(f"bad magnify op {op!r}")
            elif op[0] == DISSECT:
                if len(op) != 3 or op[1] < 1 or not 0 <= op[2] < op[1]:
                    raise ValueError(f"bad dissect op {op!r}")
            elif op[0] == EMBED:
                if len(op) != 3 or op[1] < 1 or op[2] < 0:
                    raise ValueError(f"bad embed op {op!r}")
            else:
                raise ValueError(f"unknown operator {op[0]!r}")


@dataclass(frozen=True)
class IdentityCase:
    name: str
    lhs: Term
    rhs: tuple[Term, ...]
    anchor: str = ""
    prefix: int | None = None

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("case needs a name")
        if not self.rhs:
            raise ValueError("case needs at least one rhs term")
        if self.prefix is not None and self.prefix < 2:
            raise ValueError("prefix bound must be at least 2")


@dataclass(frozen=True)
class VerificationResult:
    name: str
    n: int
    passed: bool
    first_mismatch: int | None

    def __str__(self) -> str:
        if self.passed:
            return f"PASS {self.name} (N={self.n})"
        return f"FAIL {self.name} at index {self.first_mismatch} (N={self.n})"


def _base_length(pipeline: tuple[tuple, ...], n: int) -> int:
    """Length the bare expression must reach so the piped term covers n."""
    need = n
    for op in reversed(pipeline):
        if op[0] == DISSECT:
            need = op[1] * (need - 1) + op[2] + 1
        elif op[0] == EMBED:
            need = max(1, -(-(need - op[2]) // op[1]))
        else:
            need = -(-need // op[1])
    return need


def evaluate_term(term: Term, n: int, memo: dict | None = None) -> BitSeries:
    """Coefficients of the piped term to exactly length n."""
    need = _base_length(term.pipeline, n)
    key = (term.expr, need)
    if memo is not None and key in memo:
        out = memo[key]
    else:
        out = evaluate(term.expr, need)
        if memo is not None:
            memo[key] = out
    for op in term.pipeline:
        if op[0] == DISSECT:
            out = dissect(out, op[1], op[2])
        elif op[0] == EMBED:
            out = embed(out, op[1], op[2], n)
        else:
            out = magnify(out, op[1], limit=n)
    return out.truncate(min(out.len, n))


def verify(case: IdentityCase, N: int, memo: dict | None = None) -> VerificationResult:
    """Compare lhs against the XOR of rhs terms on indices 0..n-1 where
    n = min(N, case.prefix); cases with a prefix bound are never checked
    beyond it."""
    if N < 2:
        raise ValueError("N must be at least 2")
    n = N if case.prefix is None else min(N, case.prefix)
    lhs = evaluate_term(case.lhs, n, memo)
    rhs = evaluate_term(case.rhs[0], n, memo)
    for term in case.rhs[1:]:
        rhs = add(rhs, evaluate_term(term, n, memo))
    n = min(lhs.len, rhs.len)
    diff = (lhs.bits ^ rhs.bits) & ((1 << n) - 1)
    if diff == 0:
        return VerificationResult(case.name, n, True, None)
    mismatch = (diff & -diff).bit_length() - 1
    return VerificationResult(case.name, n, False, mismatch)


def verify_all(
    cases: list[IdentityCase], N: int, threads: int = 1
) -> list[VerificationResult]:
    """Verify every case at N, sharing evaluated expressions through a memo."""
    memo: dict = {}
    if threads <= 1:
        return [verify(c, N, memo) for c in cases]
    lock = threading.Lock()

    class _LockedMemo(dict):
        def __contains__(self, key) -> bool:
            with lock:
                return dict.__contains__(self, key)

        def __setitem__(self, key, value) -> None:
            with lock:
                dict.__setitem__(self, key, value)

    shared = _LockedMemo()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda c: verify(c, N, shared), cases))


# ---------------------------------------------------------------------------
# catalog file format

def parse_term(text: str) -> Term:
    """Parse `<expr> [|op ...]` with ops `|magnify m`, `|dissect A,B`,
    `|embed s,o`."""
    pieces = text.split("|")
    expr = parse(pieces[0])
    pipeline = []
    for raw in pieces[1:]:
        parts = raw.split()
        if not parts:
            raise ValueError("empty operator in pipeline")
        op, args = parts[0], "".join(parts[1:]).split(",")
        try:
            nums = [int(v) for v in args]
        except ValueError:
            raise ValueError(f"bad operator arguments {raw.strip()!r}") from None
        if op == MAGNIFY and len(nums) == 1:
            pipeline.append((MAGNIFY, nums[0]))
        elif op == DISSECT and len(nums) == 2:
            pipeline.append((DISSECT, nums[0], nums[1]))
        elif op == EMBED and len(nums) == 2:
            pipeline.append((EMBED, nums[0], nums[1]))
        else:
            raise ValueError(f"unknown operator {raw.strip()!r}")
    return Term(expr, tuple(pipeline))


def term_string(term: Term) -> str:
    out = canonical_string(term.expr)
    for op in term.pipeline:
        out += f" |{op[0]} " + ",".join(str(v) for v in op[1:])
    return out


def parse_catalog(text: str) -> list[IdentityCase]:
    """Parse records of the form

        name: <id>
        lhs: <term>
        rhs: <term>; <term>; ...
        anchor: <text>
        prefix: <N or none>

    Blank lines and lines starting with # are ignored; a new record starts
    at each `name:` line."""
    cases: list[IdentityCase] = []
    fields: dict[str, str] = {}

    def flush() -> None:
        if not fields:
            return
        missing = {"name", "lhs", "rhs"} - set(fields)
        if missing:
            raise ValueError(
                f"record {fields.get('name', '?')!r} missing {sorted(missing)}"
            )
        prefix_text = fields.get("prefix", "none").lower()
        prefix = None if prefix_text == "none" else int(prefix_text)
        cases.append(
            IdentityCase(
                name=fields["name"],
                lhs=parse_term(fields["lhs"]),
                rhs=tuple(parse_term(t) for t in fields["rhs"].split(";")),
                anchor=fields.get("anchor", ""),
                prefix=prefix,
            )
        )
        fields.clear()

    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition(":")
        key = key.strip().lower()
        if not sep or key not in {"name", "lhs", "rhs", "anchor", "prefix"}:
            raise ValueError(f"line {lineno}: expected `field: value`, got {line!r}")
        if key == "name":
            flush()
        if key in fields:
            raise ValueError(f"line {lineno}: duplicate field {key!r}")
        fields[key] = value.strip()
    flush()
    names = [c.name for c in cases]
    if len(set(names)) != len(names):
        raise ValueError("duplicate case names in catalog")
    return cases


def load_catalog(path: str) -> list[IdentityCase]:
    with open(path, encoding="utf-8") as fh:
        return parse_catalog(fh.read())


def builtin_catalog() -> list[IdentityCase]:
    text = resources.files("etaparity").joinpath("data/catalog.txt").read_text("utf-8")
    return parse_catalog(text)

"""Compare the pure-Python and compiled kernels on the hot operations.

Run:  python3 benchmarks/compare_backends.py [--length N]
"""

import argparse
import time

from etaparity.series import _pentagonal_exponents, _power_factors


def _load_backends():
    from etaparity._kernels import pure

    backends = [pure]
    try:
        from etaparity._kernels import compiled
    except ImportError:
        print("compiled backend unavailable; timing pure only")
    else:
        backends.append(compiled)
    return backends


def bench(label, fn, repeat=3):
    best = min(_timed(fn) for _ in range(repeat))
    print(f"  {label:<28} {best * 1e3:10.2f} ms")
    return best


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--length", type=int, default=1_000_000,
                    help="series truncation length (default 1e6)")
    n = ap.parse_args().length
    f1 = _pentagonal_exponents(1, n)
    tri19 = _power_factors(19, 3, n)
    pow21 = _power_factors(1, 21, n)
    results = {}
    for mod in _load_backends():
        print(f"backend: {mod.NAME} (N={n})")
        dense = mod.quotient(tri19, [], n)
        bench(f"mul_sparse x{len(tri19)}", lambda: mod.quotient(tri19, [], n))
        bench("quotient f19^3 / f1", lambda: mod.quotient(tri19, [f1], n))
        bench("quotient f1^21", lambda: mod.quotient(pow21, [], n))
        bench("quotient 1 / f1", lambda: mod.quotient([], [f1], n))
        results[mod.NAME] = (
            mod.quotient(tri19, [f1], n),
            mod.quotient([], [f1], n),
        )
        del dense
    if len(results) == 2:
        same = results["pure"] == results["compiled"]
        print(f"backends agree on results: {same}")
        if not same:
            raise SystemExit(1)


if __name__ == "__main__":
    main()

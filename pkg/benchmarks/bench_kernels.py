"""Compare the compiled normal-ordering kernel with the pure-Python one.

    python benchmarks/bench_kernels.py [--words 300] [--length 9] [--repeat 3]

Each repetition builds a fresh engine (empty memo) per kernel, normal-orders
the same random words and checks that both kernels agree exactly.  A second
section times a full star product batch through each kernel.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time

from guttstar import _kernels_py
from guttstar.lie_algebra import heisenberg, so3

try:
    from guttstar import _ckernels
except ImportError:  # pragma: no cover
    _ckernels = None


def _words(rng: random.Random, dim: int, count: int, length: int) -> list[tuple]:
    return [tuple(rng.randrange(dim) for _ in range(length)) for _ in range(count)]


def _time_engine(cls, table, words, zval):
    t0 = time.perf_counter()
    eng = cls(table, zval)
    out = [eng.normal_order(w) for w in words]
    return time.perf_counter() - t0, out


def bench_ordering(L, words, repeat, zval=None):
    rows = {}
    results = {}
    kernels = [("python", _kernels_py.OrderingEngine)]
    if _ckernels is not None:
        kernels.append(("cython", _ckernels.OrderingEngine))
    for name, cls in kernels:
        times = []
        for _ in range(repeat):
            dt, out = _time_engine(cls, L.table, words, zval)
            times.append(dt)
        rows[name] = statistics.median(times)
        results[name] = out
    agree = len({repr(v) for v in results.values()}) == 1
    return rows, agree


def bench_star(L, degree, repeat):
    """Full star_pbw over all monomial pairs of total degree <= degree."""
    import importlib

    import guttstar._kernels as sel
    import guttstar.enveloping as env
    from guttstar.gutt_star import star_pbw
    from guttstar.seminorm import monomial_pairs
    from guttstar.sym_algebra import SymElement

    pairs = monomial_pairs(L.dim, degree)
    rows = {}
    outputs = {}
    kernels = [("python", _kernels_py.OrderingEngine)]
    if _ckernels is not None:
        kernels.append(("cython", _ckernels.OrderingEngine))
    for name, cls in kernels:
        times = []
        for _ in range(repeat):
            L._cache.clear()
            env.OrderingEngine = cls
            t0 = time.perf_counter()
            out = [star_pbw(L, SymElement.monomial(L.dim, a), SymElement.monomial(L.dim, b)) for a, b in pairs]
            times.append(time.perf_counter() - t0)
        rows[name] = statistics.median(times)
        outputs[name] = out
    importlib.reload(sel)
    env.OrderingEngine = sel.OrderingEngine
    L._cache.clear()
    agree = all(x == y for x, y in zip(*outputs.values())) if len(outputs) > 1 else True
    return rows, agree, len(pairs)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=300)
    ap.add_argument("--length", type=int, default=9)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--degree", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernel not built; only the pure-Python kernel is timed")
    rng = random.Random(args.seed)
    ok = True
    print(f"{'benchmark':<34}{'python [s]':>12}{'cython [s]':>12}{'speedup':>10}  agree")
    for L in (heisenberg(1), so3()):
        words = _words(rng, L.dim, args.words, args.length)
        for zval, tag in ((None, "formal z"), (1, "z=1")):
            rows, agree = bench_ordering(L, words, args.repeat, zval)
            ok &= agree
            _row(f"normal_order {L.name} {tag}", rows, agree)
        rows, agree, n = bench_star(L, args.degree, args.repeat)
        ok &= agree
        _row(f"star_pbw {L.name} deg<={args.degree} ({n})", rows, agree)
    return 0 if ok else 1


def _row(label, rows, agree):
    py = rows.get("python")
    cy = rows.get("cython")
    speed = f"{py / cy:.2f}x" if cy else "-"
    cy_s = f"{cy:.4f}" if cy else "-"
    print(f"{label:<34}{py:>12.4f}{cy_s:>12}{speed:>10}  {'yes' if agree else 'NO'}")


if __name__ == "__main__":
    sys.exit(main())

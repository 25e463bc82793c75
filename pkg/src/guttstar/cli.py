"""Command-line front end.

    guttstar bernoulli 16
    guttstar goldberg 4
    guttstar bch 5 goldberg
    guttstar star heisenberg.json "P" "Q" --z formal --verify
    guttstar verify all
    guttstar growth heisenberg --R 0.5 --eps 0.1 --kmax 20 --out table.csv

Exit codes: 0 success, 1 check failure, 2 usage, parse or domain error.
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Callable, Iterable, Sequence

from . import __version__
from .exact_arith import bernoulli, carlitz_check, goldberg_coeff, goldberg_poly, kks_kernel, thompson_sum
from .formats import ParseError, load_spec, parse_expr
from .free_lie import (
    BracketSeries,
    bch_associative,
    bch_dynkin,
    bch_goldberg,
    expand_series,
)
from .lie_algebra import LieAlgebra, SpecError, heisenberg, nilpotency_index, so3
from .sym_algebra import SymElement

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

LIMITS = {"bernoulli": 500, "goldberg": 12, "goldberg_bch": 12, "dynkin": 8, "associative": 12}


class UsageError(ValueError):
    pass


def _rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _nest(w: str) -> str:
    out = w[0]
    for ch in w[1:]:
        out = f"[{out},{ch}]"
    return out


def _bound(name: str, value: int, lo: int = 0) -> None:
    hi = LIMITS[name]
    if not lo <= value <= hi:
        raise UsageError(f"{name}: argument must be in {lo}..{hi}, got {value}")


# ------------------------------------------------------------------ tables

def cmd_bernoulli(nmax: int, out=None) -> int:
    out = out or sys.stdout
    _bound("bernoulli", nmax)
    for n in range(nmax + 1):
        print(f"{n} {_rat(bernoulli(n))}", file=out)
    return EXIT_OK


def _compositions(n: int) -> Iterable[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def cmd_goldberg(nmax: int, out=None) -> int:
    out = out or sys.stdout
    _bound("goldberg", nmax, 1)
    for s in range(1, nmax + 1):
        print(f"G_{s}(t) = {goldberg_poly(s).render('t')}", file=out)
    for n in range(1, nmax + 1):
        for runs in _compositions(n):
            args = ",".join(map(str, runs))
            print(f"c_xi({args}) = {_rat(goldberg_coeff('xi', runs))}", file=out)
    return EXIT_OK


def _reduced(series: BracketSeries) -> list[tuple[str, Fraction]]:
    """Fold [Y,X,...] onto -[X,Y,...] and drop words opening with a repeated letter."""
    acc: dict[str, Fraction] = {}
    for c, w in series:
        if len(w) >= 2:
            if w[0] == w[1]:
                continue
            if w[0] == "Y":
                w, c = "XY" + w[2:], -c
        acc[w] = acc.get(w, Fraction(0)) + c
    return sorted(((w, c) for w, c in acc.items() if c), key=lambda t: (len(t[0]), t[0]))


def cmd_bch(order: int, form: str, out=None) -> int:
    out = out or sys.stdout
    if form == "associative":
        _bound("associative", order, 1)
        poly = bch_associative(order)
        for w, c in sorted(poly.items(), key=lambda t: (len(t[0]), t[0])):
            print(f"{_rat(c)} {w}", file=out)
        return EXIT_OK
    if form == "goldberg":
        _bound("goldberg_bch", order, 1)
        series = bch_goldberg(order)
    elif form == "dynkin":
        _bound("dynkin", order, 1)
        series = bch_dynkin(order)
    else:
        raise UsageError(f"unknown BCH form {form!r}")
    for w, c in _reduced(series):
        print(f"{_rat(c)} {_nest(w)}", file=out)
    return EXIT_OK


# ------------------------------------------------------------------ star

def _parse_z(text: str):
    if text == "formal":
        return None
    try:
        if any(ch in text for ch in ".eE"):
            raise ValueError
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"--z expects 'formal' or a rational p/q, got {text!r}") from None


def cmd_star(spec: str, f_expr: str, g_expr: str, z: str = "formal", verify: bool = False, out=None) -> int:
    out = out or sys.stdout
    from .gutt_star import star_bch, star_gutt_original, star_pbw

    L = load_spec(spec)
    z0 = _parse_z(z)
    f = parse_expr(f_expr, L)
    g = parse_expr(g_expr, L)
    prod = star_pbw(L, f, g)
    shown = prod if z0 is None else prod.evaluate_z(z0)
    print(shown.render(L.labels), file=out)
    if verify:
        ok = prod == star_bch(L, f, g) and prod == star_gutt_original(L, f, g)
        print(f"3-way agreement: {'OK' if ok else 'MISMATCH'}", file=out)
        return EXIT_OK if ok else EXIT_FAIL
    return EXIT_OK


# ------------------------------------------------------------------ growth

def cmd_growth(spec: str, R: float, eps: float, kmax: int, out_csv: str | None, out=None) -> int:
    out = out or sys.stdout
    from .seminorm import heisenberg_counterexample, so3_counterexample

    name = spec[:-5] if spec.endswith(".json") else spec
    name = name.rsplit("/", 1)[-1]
    try:
        if name == "heisenberg":
            table = heisenberg_counterexample(R, eps, kmax)
        elif name == "so3":
            table = so3_counterexample(R, eps, kmax)
        else:
            raise UsageError("growth supports heisenberg and so3")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    text = table.to_csv()
    if out_csv:
        with open(out_csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_OK


# ------------------------------------------------------------------ verify

class Suite:
    """Collects ``<check> <sample> PASS|FAIL`` lines."""

    def __init__(self, out=None):
        self.out = out or sys.stdout
        self.failed = 0
        self.count = 0

    def record(self, check: str, sample: str, passed: bool, detail: str = "") -> None:
        self.count += 1
        self.failed += not passed
        tail = f" {detail}" if detail else ""
        print(f"{check} {sample} {'PASS' if passed else 'FAIL'}{tail}", file=self.out)

    def report(self, name: str, rep) -> None:
        """Fold a seminorm Report into one line per check name."""
        groups: dict[str, list] = {}
        for e in rep.entries:
            groups.setdefault(e.check, []).append(e)
        for check in sorted(groups):
            es = groups[check]
            asserted = [e for e in es if e.asserted]
            bad = [e for e in asserted if not e.passed]
            detail = f"samples={len(es)}"
            if bad:
                detail += " first=" + bad[0].line()
            if not asserted:
                viol = sum(not e.passed for e in es)
                self.record(check, f"{name} diagnostic", True, f"{detail} violations={viol}")
            else:
                self.record(check, name, not bad, detail)


def _spec_or(spec: str | None, default: Sequence[LieAlgebra]) -> list[LieAlgebra]:
    return [load_spec(spec)] if spec else list(default)


def _monos(dim: int, deg: int) -> list[tuple]:
    return [tuple(c) for c in combinations_with_replacement(range(dim), deg)]


def _random_element(rng: random.Random, dim: int, max_deg: int, terms: int = 3) -> SymElement:
    out = SymElement.zero(dim)
    for _ in range(terms):
        d = rng.randint(0, max_deg)
        m = tuple(sorted(rng.randrange(dim) for _ in range(d)))
        out = out + SymElement.monomial(dim, m, Fraction(rng.randint(-4, 4), rng.randint(1, 3)))
    return out


def suite_bch(s: Suite, degree: int) -> None:
    from .free_lie import bch_first_order

    for n in range(0, 17):
        s.record("bernoulli_recursion", f"n={n}", _bernoulli_ok(n))
    for k in range(1, 13):
        lhs = goldberg_coeff("xi", (1, k))
        rhs = (-1) ** k * bernoulli(k) / _fact(k)
        s.record("goldberg_bernoulli_bridge", f"s={k}", lhs == rhs)
    for n in range(1, 11):
        s.record("thompson_sum", f"n={n}", thompson_sum(n) <= 2, f"value={_rat(thompson_sum(n))}")
    N = min(degree, 6)
    for order in range(1, N + 1):
        assoc = bch_associative(order)
        s.record("bch_goldberg_vs_associative", f"N={order}", expand_series(bch_goldberg(order)) == assoc)
        if order <= 5:
            s.record(
                "bch_goldberg_vs_dynkin",
                f"N={order}",
                expand_series(bch_goldberg(order)) == expand_series(bch_dynkin(order)),
            )
    for k in range(0, 16):
        s.record("kks_kernel", f"k={k}", all(kks_kernel(k, j) == (1 if j == 0 else 0) for j in range(k + 1)))
    s.record("carlitz", "k,m<=12", all(carlitz_check(k, m) for k in range(13) for m in range(13)))
    L = so3()
    xi, eta = (Fraction(1), Fraction(2), Fraction(-1)), (Fraction(0), Fraction(1), Fraction(3))
    s.record("bch_first_order", "so3", bch_first_order(L, xi, eta, 8).agree)


def _fact(n: int) -> int:
    from math import factorial

    return factorial(n)


def _bernoulli_ok(n: int) -> bool:
    from math import comb

    if n == 0:
        return bernoulli(0) == 1
    return sum(comb(n + 1, j) * bernoulli(j) for j in range(n + 1)) == 0


def suite_star(s: Suite, algebras: Sequence[LieAlgebra], degree: int, seed: int) -> None:
    from .enveloping import q_z, q_z_inv
    from .gutt_star import star_bch, star_gutt_original, star_pbw

    rng = random.Random(seed)
    for L in algebras:
        D = L.dim
        ok = True
        count = 0
        for tot in range(degree + 1):
            for k in range(tot + 1):
                for a in _monos(D, k):
                    for b in _monos(D, tot - k):
                        f, g = SymElement.monomial(D, a), SymElement.monomial(D, b)
                        p = star_pbw(L, f, g)
                        count += 1
                        if p != star_bch(L, f, g) or p != star_gutt_original(L, f, g):
                            ok = False
        s.record("three_way_agreement", f"{L.name} deg<={degree} pairs={count}", ok)
        one = SymElement.unit(D)
        assoc = unit = True
        for _ in range(50):
            x, y, w = (_random_element(rng, D, max(degree // 3, 1), 2) for _ in range(3))
            assoc &= star_pbw(L, star_pbw(L, x, y), w) == star_pbw(L, x, star_pbw(L, y, w))
            unit &= star_pbw(L, one, x) == x == star_pbw(L, x, one)
        s.record("associativity", f"{L.name} triples=50", assoc)
        s.record("unit", f"{L.name}", unit)
        rt = True
        for _ in range(30):
            x = _random_element(rng, D, min(degree, 5))
            rt &= q_z_inv(L, q_z(L, x)) == x
        s.record("pbw_round_trip", f"{L.name}", rt)


def suite_hopf(s: Suite, algebras: Sequence[LieAlgebra], degree: int, seed: int) -> None:
    from .hopf import verify_hopf
    from .seminorm import BasisSeminorm, hopf_bound_check

    rng = random.Random(seed)
    for L in algebras:
        for z0 in (Fraction(0), Fraction(1), Fraction(2, 3)):
            results: dict[str, bool] = {}
            for _ in range(5):
                x = _random_element(rng, L.dim, min(degree, 5))
                y = _random_element(rng, L.dim, min(degree, 5))
                for check, passed, _, _ in verify_hopf(L, x, z0, y).results:
                    results[check] = results.get(check, True) and passed
            for check in sorted(results):
                s.record(f"hopf_{check}", f"{L.name} z0={_rat(z0)}", results[check])
        p = BasisSeminorm.unit(L.dim)
        for R in (0, 1, Fraction(3, 2)):
            ok = True
            for d in range(min(degree, 10) + 1):
                for m in _monos(L.dim, d):
                    ok &= hopf_bound_check(SymElement.monomial(L.dim, m), p, R).ok
            s.record("hopf_seminorm_bounds", f"{L.name} R={R}", ok)


def suite_seminorm(s: Suite, algebras: Sequence[LieAlgebra], degree: int, R) -> None:
    from . import seminorm as sn

    for L in algebras:
        p = sn.BasisSeminorm.unit(L.dim)
        pairs = sn.monomial_pairs(L.dim, degree)
        R_cont = R if R >= 1 else 1
        for z0 in (0, 1, 3):
            s.report(L.name, sn.check_continuity_r1(L, p, z0, R_cont, pairs))
        s.report(L.name, sn.cn_estimate_check(L, p, R, None, pairs))
        N = nilpotency_index(L, 12)
        if N is not None and N > 1:
            s.report(L.name, sn.cn_estimate_check(L, p, Fraction(1, 2), None, pairs, nilpotent=True))
            for Rb in (0, Fraction(1, 2)):
                s.report(L.name, sn.bimodule_estimate_check(L, p, Rb, pairs))
        if L == heisenberg(1):
            table = sn.heisenberg_counterexample(0.5, 0.1, 20)
            s.report(L.name, table.report)
            s.report(L.name, sn.weyl_estimate_check(1, 1, Fraction(1, 2), pairs))
            s.report(L.name, sn.weyl_estimate_check(1, 1, 0.4, pairs, asserted=False))
        elif L == so3():
            s.report(L.name, sn.so3_counterexample(0.5, 0.1, 16).report)


def cmd_verify(suite: str, spec: str | None, degree: int | None, R, seed: int, out=None) -> int:
    out = out or sys.stdout
    s = Suite(out)
    default = [heisenberg(1), so3()]
    algebras = _spec_or(spec, default)
    if suite in ("bch", "all"):
        suite_bch(s, degree or 6)
    if suite in ("star", "all"):
        suite_star(s, algebras, degree or 4, seed)
    if suite in ("hopf", "all"):
        suite_hopf(s, algebras, degree or 5, seed)
    if suite in ("seminorm", "all"):
        suite_seminorm(s, algebras, degree or 6, R)
    print(f"{s.count - s.failed}/{s.count} checks passed", file=out)
    return EXIT_OK if s.failed == 0 else EXIT_FAIL


# ------------------------------------------------------------------ main

def _nonneg_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def _R(text: str):
    """Integer-valued R stays exact; anything else is a float."""
    v = _nonneg_float(text)
    return int(v) if v == int(v) else v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="guttstar", description="Exact Gutt star products, BCH tables and estimate checks.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    b = sub.add_parser("bernoulli", help="table of Bernoulli numbers B_0..B_n")
    b.add_argument("nmax", type=int)

    g = sub.add_parser("goldberg", help="Goldberg polynomials and coefficients up to n letters")
    g.add_argument("nmax", type=int)

    h = sub.add_parser("bch", help="BCH series up to the given order")
    h.add_argument("order", type=int)
    h.add_argument("form", nargs="?", default="goldberg", choices=["goldberg", "dynkin", "associative"])

    st = sub.add_parser("star", help="star product of two expressions")
    st.add_argument("spec")
    st.add_argument("f")
    st.add_argument("g")
    st.add_argument("--z", default="formal")
    st.add_argument("--verify", action="store_true")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=["all", "bch", "star", "hopf", "seminorm"])
    v.add_argument("spec", nargs="?")
    v.add_argument("--degree", type=int)
    v.add_argument("--R", type=_R, default=1)
    v.add_argument("--seed", type=int, default=0)

    hv = sub.add_parser("hopf-verify", help="Hopf axiom and seminorm table (same as: verify hopf SPEC)")
    hv.add_argument("spec", nargs="?")
    hv.add_argument("--degree", type=int)
    hv.add_argument("--seed", type=int, default=0)

    gr = sub.add_parser("growth", help="counterexample growth table as CSV")
    gr.add_argument("spec", help="heisenberg or so3")
    gr.add_argument("--R", type=_nonneg_float, default=0.5)
    gr.add_argument("--eps", type=_nonneg_float, default=0.1)
    gr.add_argument("--kmax", type=int, default=20)
    gr.add_argument("--out")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.cmd == "bernoulli":
            return cmd_bernoulli(args.nmax)
        if args.cmd == "goldberg":
            return cmd_goldberg(args.nmax)
        if args.cmd == "bch":
            return cmd_bch(args.order, args.form)
        if args.cmd == "star":
            return cmd_star(args.spec, args.f, args.g, args.z, args.verify)
        if args.cmd == "verify":
            if args.degree is not None and not 0 <= args.degree <= 10:
                raise UsageError("--degree must be in 0..10")
            return cmd_verify(args.suite, args.spec, args.degree, args.R, args.seed)
        if args.cmd == "hopf-verify":
            if args.degree is not None and not 0 <= args.degree <= 10:
                raise UsageError("--degree must be in 0..10")
            return cmd_verify("hopf", args.spec, args.degree, 1, args.seed)
        if args.cmd == "growth":
            return cmd_growth(args.spec, args.R, args.eps, args.kmax, args.out)
    except (UsageError, ParseError, SpecError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

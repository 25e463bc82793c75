"""File formats: algebra spec JSON, the monomial expression grammar, CSV.

Expression grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := ["-"] (coeff [["*"] mono] | mono)
    coeff  := int ["/" int] | "(" ["-"] int ["/" int] ")"
    mono   := factor ("*" factor)*
    factor := label ["^" int]

Coefficients are exact rationals; floats are rejected.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping

from .lie_algebra import LieAlgebra, SpecError, from_spec
from .sym_algebra import SymElement

__all__ = [
    "ParseError",
    "SHIPPED_SPECS",
    "load_spec",
    "resolve_spec",
    "algebra_to_spec",
    "dump_spec",
    "parse_expr",
]

SHIPPED_SPECS = ("heisenberg", "so3", "abelian")


class ParseError(ValueError):
    """Expression syntax error; ``pos`` is the 0-based offset into the input."""

    def __init__(self, msg: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{msg} at position {pos}: {text!r}")


def load_spec(source: str | Path | Mapping) -> LieAlgebra:
    """Parse an AlgebraSpec from a mapping, a JSON file or a shipped name."""
    if isinstance(source, Mapping):
        return from_spec(source)
    path = resolve_spec(source)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON ({exc})") from None
    return from_spec(data)


def resolve_spec(source: str | Path) -> Path:
    """A real file path wins; otherwise ``heisenberg``/``so3.json`` etc. map to shipped specs."""
    p = Path(source)
    if p.is_file():
        return p
    stem = p.name[:-5] if p.name.endswith(".json") else p.name
    if stem in SHIPPED_SPECS:
        return Path(str(resources.files("guttstar") / "specs" / f"{stem}.json"))
    raise FileNotFoundError(f"no such spec file: {source}")


def _rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def algebra_to_spec(L: LieAlgebra) -> dict:
    entries = []
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            row = L.table[i][j]
            if row:
                entries.append(
                    {"i": L.labels[i], "j": L.labels[j], "result": {L.labels[k]: _rat(c) for k, c in row}}
                )
    out = {"dim": L.dim, "basis": list(L.labels), "brackets": entries}
    if L.name:
        out = {"name": L.name, **out}
    return out


def dump_spec(L: LieAlgebra) -> str:
    return json.dumps(algebra_to_spec(L), indent=2) + "\n"


# ------------------------------------------------------------- expressions

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<label>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, labels):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.index = {lab: k for k, lab in enumerate(labels)}

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want}, got {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.peek()
        return tok[0] == kind and (value is None or tok[1] == value)

    def integer(self) -> int:
        return int(self.take("num")[1])

    def fraction(self) -> Fraction:
        num = self.integer()
        if self.at("op", "/"):
            tok = self.take("op", "/")
            den = self.integer()
            if den == 0:
                raise ParseError("zero denominator", self.text, tok[2])
            return Fraction(num, den)
        return Fraction(num)

    def coeff(self) -> Fraction:
        if self.at("op", "("):
            self.take("op", "(")
            sign = -1 if self.at("op", "-") else 1
            if sign < 0:
                self.take("op", "-")
            c = sign * self.fraction()
            self.take("op", ")")
            return c
        return self.fraction()

    def factor(self) -> list[int]:
        kind, lab, pos = self.take("label")
        if lab not in self.index:
            raise ParseError(f"unknown label {lab!r}", self.text, pos)
        power = 1
        if self.at("op", "^"):
            self.take("op", "^")
            power = self.integer()
        return [self.index[lab]] * power

    def term(self) -> tuple[Fraction, list[int]]:
        c = Fraction(1)
        mono: list[int] = []
        if self.at("num") or self.at("op", "("):
            c = self.coeff()
            if self.at("op", "*"):
                self.take("op", "*")
            elif not self.at("label"):
                return c, mono
        mono += self.factor()
        while self.at("op", "*"):
            self.take("op", "*")
            mono += self.factor()
        return c, mono

    def expr(self, dim: int) -> SymElement:
        out = SymElement.zero(dim)
        sign = 1
        if self.at("op", "-"):
            self.take("op", "-")
            sign = -1
        while True:
            c, mono = self.term()
            out = out + SymElement.monomial(dim, mono, sign * c)
            if self.at("op", "+"):
                self.take("op", "+")
                sign = 1
            elif self.at("op", "-"):
                self.take("op", "-")
                sign = -1
            else:
                break
        self.take("end")
        return out


def parse_expr(text: str, L: LieAlgebra) -> SymElement:
    """Parse a sum of scaled monomials over the labels of L."""
    if not text.strip():
        raise ParseError("empty expression", text, 0)
    return _Parser(text, L.labels).expr(L.dim)

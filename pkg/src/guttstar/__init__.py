"""Exact Gutt star products for finite-dimensional Lie algebras over Q.

The star product on Sym(g) is obtained by pulling back the product of the
deformed enveloping algebra U(g_z) through symmetrization.  Three
independent constructions (PBW normal ordering, the BCH/G-index formula and
the classical recursive one) are provided and cross-checked, together with
BCH series, Hopf structure maps and weighted l1 seminorm estimates.
"""

__version__ = "0.1.0"

from ._kernels import IMPLEMENTATION as KERNEL
from .exact_arith import Rational, UniPoly, bernoulli, bernoulli_star, goldberg_coeff, goldberg_poly, thompson_sum
from .free_lie import BracketSeries, bch_associative, bch_dynkin, bch_goldberg, bch_tilde, expand_bracket
from .lie_algebra import LieAlgebra, abelian, bracket, heisenberg, nilpotency_index, so3, validate
from .sym_algebra import SymElement
from .enveloping import UElement, normal_order, q_z, q_z_inv
from .gutt_star import c_n, star_bch, star_gutt_original, star_linear, star_pbw
from .hopf import antipode, coproduct, counit, verify_hopf
from .formats import load_spec, parse_expr

__all__ = [
    "KERNEL",
    "Rational",
    "UniPoly",
    "bernoulli",
    "bernoulli_star",
    "goldberg_coeff",
    "goldberg_poly",
    "thompson_sum",
    "BracketSeries",
    "bch_associative",
    "bch_dynkin",
    "bch_goldberg",
    "bch_tilde",
    "expand_bracket",
    "LieAlgebra",
    "abelian",
    "bracket",
    "heisenberg",
    "nilpotency_index",
    "so3",
    "validate",
    "SymElement",
    "UElement",
    "normal_order",
    "q_z",
    "q_z_inv",
    "c_n",
    "star_bch",
    "star_gutt_original",
    "star_linear",
    "star_pbw",
    "antipode",
    "coproduct",
    "counit",
    "verify_hopf",
    "load_spec",
    "parse_expr",
]

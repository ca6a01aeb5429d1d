"""Exact arithmetic in QQ(q): sparse polynomials, canonical rational functions,
and the q-combinatorial primitives built on them."""

from .primitives import gauss_binom, qbracket, qfactorial, qpoch_monomial, ratfunc_eval
from .qpoly import QPoly
from .ratfunc import FactoredDen, QRatFunc, build_ratfunc

__all__ = [
    "QPoly",
    "QRatFunc",
    "FactoredDen",
    "build_ratfunc",
    "qbracket",
    "qfactorial",
    "gauss_binom",
    "qpoch_monomial",
    "ratfunc_eval",
]

"""q-combinatorial building blocks: brackets, factorials, binomials, Pochhammers."""

from __future__ import annotations

from fractions import Fraction

from .qpoly import QPoly
from .ratfunc import FactoredDen, QRatFunc, _mul_binomial_terms, build_ratfunc


def qbracket(n: int, c: int = 1) -> QRatFunc:
    """[n/c] in base q^c, i.e. (1 - q^n) / (1 - q^c).

    For c | n and n >= 0 this is the polynomial 1 + q^c + ... + q^(n-c);
    negative n gives a genuine rational function.
    """
    if c < 1:
        raise ValueError(f"base exponent c must be >= 1, got {c}")
    if n == 0:
        return QRatFunc.zero()
    den = FactoredDen()
    den.mul_binomial(c, 1)
    return build_ratfunc({0: 1, n: -1}, den)


def qfactorial(m: int, c: int = 1) -> QPoly:
    """[m]! in base q^c: the product [1][2]...[m] with [k] = 1 + q^c + ... + q^(c(k-1))."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if c < 1:
        raise ValueError(f"base exponent c must be >= 1, got {c}")
    out = QPoly.one()
    for k in range(2, m + 1):
        out = out * QPoly({c * u: 1 for u in range(k)})
    return out


def gauss_binom(m: int, k: int, c: int = 1) -> QPoly:
    """Gaussian binomial coefficient [m choose k] in base q^c.

    Zero polynomial when k > m; at q = 1 it degenerates to C(m, k).
    """
    if m < 0 or k < 0:
        raise ValueError(f"m and k must be >= 0, got m={m}, k={k}")
    if c < 1:
        raise ValueError(f"base exponent c must be >= 1, got {c}")
    if k > m:
        return QPoly.zero()
    k = min(k, m - k)
    num: dict[int, int | Fraction] = {0: 1}
    den = FactoredDen()
    for i in range(1, k + 1):
        num = _mul_binomial_terms(num, c * (m - k + i), -1)
        den.mul_binomial(c * i, 1)
    return build_ratfunc(num, den).as_qpoly()


def qpoch_monomial(sign: int, k: int, c: int, r: int) -> QRatFunc:
    """The shifted factorial (sign*q^k ; q^c)_r = prod_{i<r} (1 - sign*q^(k+c*i)).

    A polynomial for k >= 0; negative k yields a rational function.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    if c < 1:
        raise ValueError(f"base exponent c must be >= 1, got {c}")
    terms: dict[int, int | Fraction] = {0: 1}
    for i in range(r):
        terms = _mul_binomial_terms(terms, k + c * i, -sign)
    return build_ratfunc(terms, FactoredDen())


def ratfunc_eval(f: QRatFunc, q0: Fraction | int) -> Fraction:
    """Exact value f(q0); raises PoleError when the reduced denominator vanishes."""
    if not isinstance(q0, (Fraction, int)):
        q0 = Fraction(q0)
    return f(q0)

"""Exact and numeric evaluation of the weighted q-extension of higher-order
Euler polynomials.

The exact path is a finite closed form with n+1 terms, valid for every
integer weight h.  The two series evaluators are independent numeric
oracles; they converge only for h >= r, where the term ratio q^(h-r+1)
stays below 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConvergenceDomainError
from .qalg.qpoly import QPoly, mul_dicts
from .qalg.ratfunc import FactoredDen, QRatFunc, _mul_binomial_terms, build_ratfunc


@dataclass(frozen=True)
class EulerParams:
    """One evaluation request: degree n, weight h, order r, argument N/c in base q^c."""

    n: int
    h: int
    r: int
    N: int
    c: int = 1

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"degree n must be >= 0, got {self.n}")
        if self.r < 0:
            raise ValueError(f"order r must be >= 0, got {self.r}")
        if self.c < 1:
            raise ValueError(f"base exponent c must be >= 1, got {self.c}")


def euler_exact(p: EulerParams) -> QRatFunc:
    """Canonical rational function E_n at argument N/c in base q^c."""
    return _euler_exact(p.n, p.h, p.r, p.N, p.c)


@lru_cache(maxsize=8192)
def _euler_exact(n: int, h: int, r: int, N: int, c: int) -> QRatFunc:
    # (1+q^c)^r / (1-q^c)^n * sum_l C(n,l) (-1)^l q^(N*l) / prod_{i<r} (1 + q^(c(h-r+l+1+i)))
    # assembled over the shared denominator so only one reduction runs.
    if r == 0:
        from .qalg.primitives import qbracket

        return _rpow(qbracket(N, c), n)
    exps = [c * (h - r + 1 + j) for j in range(n + r)]
    # factor j contributes (1 + q^k): for k < 0 rewrite as q^k * (1 + q^|k|),
    # for k = 0 it is the constant 2
    shifts = [-k if k < 0 else 0 for k in exps]
    consts = [2 if k == 0 else 1 for k in exps]

    prefix = [{0: 1}]
    for k in exps:
        d = prefix[-1]
        prefix.append(_mul_binomial_terms(d, abs(k), 1) if k else d)
    suffix = [{0: 1}] * (n + r + 1)
    for j in range(n + r - 1, -1, -1):
        k = exps[j]
        d = suffix[j + 1]
        suffix[j] = _mul_binomial_terms(d, abs(k), 1) if k else d

    num: dict[int, int | Fraction] = {}
    sign = 1
    for l in range(n + 1):
        g = 1
        shift = 0
        for j in range(l, l + r):
            g *= consts[j]
            shift += shifts[j]
        coeff = sign * math.comb(n, l)
        if g > 1:
            coeff = Fraction(coeff, g)
        cof = mul_dicts(prefix[l], suffix[l + r])
        e0 = N * l + shift
        for e, cc in cof.items():
            key = e + e0
            s = num.get(key, 0) + cc * coeff
            if s:
                num[key] = s
            else:
                del num[key]
        sign = -sign

    two_q = _mul_binomial_terms({0: 1}, c, 1)  # 1 + q^c
    for _ in range(r):
        num = mul_dicts(num, two_q)

    den = FactoredDen()
    den.mul_binomial(c, 1, times=n)
    for k in exps:
        if k:
            den.mul_binomial(abs(k), -1)
    return build_ratfunc(num, den)


def euler_series_num(n: int, h: int, r: int, x: float, q: float, tol: float) -> float:
    """Single-sum numeric value with a proven geometric tail below tol.

    Requires h >= r so the term ratio rho = q^(h-r+1) is < 1.
    """
    _check_numeric_args(n, r, x, q)
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    if r == 0:
        return _qnum(x, q) ** n
    if h < r:
        raise ConvergenceDomainError(
            f"series diverges for h < r (h={h}, r={r}); use the exact closed form"
        )
    rho = q ** (h - r + 1)
    bound = (1 + q) ** r * (1 - q) ** (-n)
    for i in range(1, r):
        bound /= 1 - q**i
    M = _tail_cutoff(bound, rho, tol)
    total = 0.0
    binom = 1.0
    weight = 1.0
    qmx = q**x
    for m in range(M + 1):
        total += binom * weight * ((1 - qmx) / (1 - q)) ** n
        weight *= -rho
        binom *= (1 - q ** (m + r)) / (1 - q ** (m + 1))
        qmx *= q
    return total * (1 + q) ** r


def euler_multisum_num(n: int, h: int, r: int, x: float, q: float, M: int) -> float:
    """Partial sum of the defining r-fold series over the box 0 <= m_j < M.

    The box sum is computed by grouping tuples by their total m_1+...+m_r,
    which is an exact regrouping of finitely many terms (tested against the
    naive nested loops).  Cost is O(r^2 M^2) instead of M^r.
    """
    _check_numeric_args(n, r, x, q)
    if M < 1:
        raise ValueError(f"truncation M must be >= 1, got {M}")
    if r == 0:
        return _qnum(x, q) ** n
    if r > 4:
        raise ValueError(f"order r must be <= 4 for the multi-sum, got {r}")
    if h < r:
        raise ConvergenceDomainError(
            f"series diverges for h < r (h={h}, r={r}); use the exact closed form"
        )
    counts = _box_weights(h, r, q, M)
    total = 0.0
    qtx = q**x
    for t in range(len(counts)):
        total += counts[t] * ((1 - qtx) / (1 - q)) ** n
        qtx *= q
    return total * (1 + q) ** r


def _box_weights(h: int, r: int, q: float, M: int) -> list[float]:
    """Coefficients c_t = sum over tuples in the box with m_1+...+m_r = t of
    prod_j (-q^(h-j+1))^(m_j)."""
    conv = np.array([1.0])
    for j in range(1, r + 1):
        alpha = -(q ** (h - j + 1))
        geo = np.empty(M)
        geo[0] = 1.0
        for m in range(1, M):
            geo[m] = geo[m - 1] * alpha
        conv = np.convolve(conv, geo)
    return conv.tolist()


def classical_euler(n: int, r: int, x: Fraction | int) -> Fraction:
    """Classical higher-order Euler polynomial, exact via the number recurrence."""
    if n < 0 or r < 0:
        raise ValueError(f"n and r must be >= 0, got n={n}, r={r}")
    x = Fraction(x)
    total = Fraction(0)
    for k in range(n + 1):
        total += math.comb(n, k) * _classical_euler_number(k, r) * x ** (n - k)
    return total


@lru_cache(maxsize=None)
def _classical_euler_number(n: int, r: int) -> Fraction:
    # (e^t + 1)^r F = 2^r forces sum_k C(n,k) A_{n-k} E_k = 0 for n >= 1,
    # with A_m = sum_j C(r,j) j^m and A_0 = 2^r
    if n == 0:
        return Fraction(1)
    acc = Fraction(0)
    for k in range(n):
        acc += math.comb(n, k) * _power_moment(n - k, r) * _classical_euler_number(k, r)
    return -acc / 2**r


@lru_cache(maxsize=None)
def _power_moment(m: int, r: int) -> int:
    if m == 0:
        return 2**r
    return sum(math.comb(r, j) * j**m for j in range(1, r + 1))


def addition_rhs(n: int, h: int, r: int, x: int, y: int) -> QRatFunc:
    """Binomial expansion sum_i C(n,i) q^(i*x) E_i(y) [x]^(n-i); equals E_n(x+y)."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    from .qalg.primitives import qbracket

    bracket = qbracket(x, 1)
    total = QRatFunc.zero()
    for i in range(n + 1):
        term = QRatFunc.constant(math.comb(n, i))
        term = term * QRatFunc.q_power(i * x)
        term = term * _euler_exact(i, h, r, y, 1)
        term = term * _rpow(bracket, n - i)
        total = total + term
    return total


def _rpow(base: QRatFunc, k: int) -> QRatFunc:
    """base**k with the 0**0 = 1 convention."""
    if k == 0:
        return QRatFunc.one()
    return base**k


def _qnum(x: float, q: float) -> float:
    return (1 - q**x) / (1 - q)


def _check_numeric_args(n: int, r: int, x: float, q: float) -> None:
    if n < 0 or r < 0:
        raise ValueError(f"n and r must be >= 0, got n={n}, r={r}")
    if x < 0:
        raise ValueError(f"argument x must be >= 0, got {x}")
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q}")


def _tail_cutoff(bound: float, rho: float, tol: float) -> int:
    """Smallest M with bound * rho^(M+1) / (1-rho) < tol (rounded up for safety)."""
    target = tol * (1 - rho) / bound
    if target > rho:
        return 0
    return max(0, math.floor(math.log(target) / math.log(rho)) + 1)

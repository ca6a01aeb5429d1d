"""Numeric evaluation of the multiple q-Euler zeta function.

Both evaluators restrict to the geometric-convergence domain h >= r and
x > 0.  Sums run in ascending index order with compensated accumulation,
so a fixed truncation gives bit-reproducible results.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ConvergenceDomainError, DomainError
from .euler import _euler_exact, _tail_cutoff
from .report import IdentityReport


@dataclass(frozen=True)
class ZetaQuery:
    """One evaluation request zeta(s, x) at order r, weight h, base q."""

    s: complex
    x: float
    h: int
    r: int
    q: float
    tol: float = 1e-10

    def __post_init__(self):
        if self.x <= 0:
            raise DomainError(f"argument x must be positive, got {self.x}")
        if not 0 < self.q < 1:
            raise ValueError(f"q must lie in (0, 1), got {self.q}")
        if self.tol <= 0:
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.r < 0:
            raise ValueError(f"order r must be >= 0, got {self.r}")


class _KahanSum:
    """Compensated accumulator; works componentwise for complex values."""

    __slots__ = ("value", "_comp")

    def __init__(self):
        self.value = 0j
        self._comp = 0j

    def add(self, term: complex) -> None:
        y = term - self._comp
        t = self.value + y
        self._comp = (t - self.value) - y
        self.value = t


def _check_convergence(h: int, r: int) -> None:
    if h < r:
        raise ConvergenceDomainError(
            f"zeta series diverges for h < r (h={h}, r={r})"
        )


def _power_neg_s(w: float, s: complex) -> complex:
    """w^(-s) on the principal branch for positive real w."""
    return cmath.exp(-s * math.log(w))


def zeta_single_sum(z: ZetaQuery) -> complex:
    """Single-sum value, truncated so the proven geometric tail is below tol."""
    q = z.q
    if z.r == 0:
        return _power_neg_s((1 - q**z.x) / (1 - q), z.s)
    _check_convergence(z.h, z.r)
    s = complex(z.s)
    rho = q ** (z.h - z.r + 1)
    wmin = (1 - q**z.x) / (1 - q)
    wmax = 1 / (1 - q)
    sigma = s.real
    amp = max(wmin**-sigma, wmax**-sigma) * math.exp(abs(s.imag) * math.pi)
    bound = amp * (1 + q) ** z.r
    for i in range(1, z.r):
        bound /= 1 - q**i
    M = _tail_cutoff(bound, rho, z.tol)
    acc = _KahanSum()
    binom = 1.0
    weight = 1.0
    qmx = q**z.x
    for m in range(M + 1):
        w = (1 - qmx) / (1 - q)
        acc.add(binom * weight * _power_neg_s(w, s))
        weight *= -rho
        binom *= (1 - q ** (m + z.r)) / (1 - q ** (m + 1))
        qmx *= q
    return acc.value * (1 + q) ** z.r


def zeta_multi_sum(z: ZetaQuery, M: int) -> complex:
    """Partial sum of the defining r-fold series over the box 0 <= m_j < M.

    Tuples are grouped by their total (an exact regrouping of the finite box,
    tested against naive nested loops); cost O(r^2 M^2) instead of M^r.
    """
    if M < 1:
        raise ValueError(f"truncation M must be >= 1, got {M}")
    q = z.q
    if z.r == 0:
        return _power_neg_s((1 - q**z.x) / (1 - q), z.s)
    if z.r > 4:
        raise ValueError(f"order r must be <= 4 for the multi-sum, got {z.r}")
    _check_convergence(z.h, z.r)
    s = complex(z.s)
    counts = _box_weights_zeta(z.h, z.r, q, M)
    acc = _KahanSum()
    qtx = q**z.x
    for t in range(len(counts)):
        w = (1 - qtx) / (1 - q)
        acc.add(counts[t] * _power_neg_s(w, s))
        qtx *= q
    return acc.value * (1 + q) ** z.r


def _box_weights_zeta(h: int, r: int, q: float, M: int) -> list[float]:
    conv = np.array([1.0])
    for j in range(1, r + 1):
        alpha = -(q ** (h - j + 1))
        geo = np.empty(M)
        geo[0] = 1.0
        for m in range(1, M):
            geo[m] = geo[m - 1] * alpha
        conv = np.convolve(conv, geo)
    return conv.tolist()


def zeta_multi_tail_bound(z: ZetaQuery, M: int) -> float:
    """Upper bound on |full series - box partial sum| for zeta_multi_sum."""
    q = z.q
    if z.r == 0:
        return 0.0
    sigma = complex(z.s).real
    wmin = (1 - q**z.x) / (1 - q)
    wmax = 1 / (1 - q)
    amp = max(wmin**-sigma, wmax**-sigma) * math.exp(abs(complex(z.s).imag) * math.pi)
    full = [1 / (1 - q ** (z.h - j + 1)) for j in range(1, z.r + 1)]
    total = 0.0
    for j in range(1, z.r + 1):
        tail_j = q ** ((z.h - j + 1) * M) * full[j - 1]
        others = 1.0
        for i in range(1, z.r + 1):
            if i != j:
                others *= full[i - 1]
        total += tail_j * others
    return amp * (1 + q) ** z.r * total


def lemma_1_1_check(
    n: int, x: int, h: int, r: int, q: float, tol: float
) -> IdentityReport:
    """Compare zeta(-n, x) against the exact closed form evaluated at q."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if x <= 0:
        raise DomainError(f"argument x must be a positive integer, got {x}")
    query = ZetaQuery(s=-n, x=x, h=h, r=r, q=q, tol=tol)
    lhs = zeta_single_sum(query)
    rhs = float(_euler_exact(n, h, r, x, 1)(Fraction(q)))
    deviation = abs(lhs - rhs)
    return IdentityReport(
        name="lemma1.1",
        params={"n": n, "x": x, "h": h, "r": r, "q": q, "tol": tol},
        lhs=lhs,
        rhs=rhs,
        equal=deviation <= 2 * tol,
        deviation=deviation,
    )

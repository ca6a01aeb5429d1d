"""Exact builders for both sides of the symmetry identities, the alternating
q-power sum, the numeric zeta symmetry check, and the grid verification engine.

Left and right sides are produced by one builder invoked with the two moduli
swapped, so the a <-> b involution is structural; the two sides share only
the exact-arithmetic layer underneath (one runs in base q^a, the other q^b).
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .errors import ConvergenceDomainError, DomainError, ParityError
from .euler import _euler_exact, _rpow, addition_rhs
from .qalg.qpoly import Coeff, QPoly, divexact_qpoly, mul_dicts
from .qalg.ratfunc import FactoredDen, QRatFunc, _mul_binomial_terms, build_ratfunc
from .report import IdentityReport
from .zeta import ZetaQuery, lemma_1_1_check, zeta_single_sum

SIDES = ("left", "right")

IDENTITY_NAMES = ("thm2.1", "thm2.2", "thm2.4", "thm2.5", "prop2.3", "lemma1.1")


@dataclass(frozen=True)
class SymCheckParams:
    """Parameters of one symmetry check; both moduli must be odd."""

    a: int
    b: int
    n: int
    h: int
    r: int
    x: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError(f"moduli must be positive, got a={self.a}, b={self.b}")
        if self.a % 2 == 0 or self.b % 2 == 0:
            raise ParityError(
                f"both moduli must be odd, got a={self.a}, b={self.b}"
            )
        if self.n < 0 or self.r < 0:
            raise ValueError(f"n and r must be >= 0, got n={self.n}, r={self.r}")
        if self.x < 0:
            raise ValueError(f"x must be >= 0, got {self.x}")


# ---------------------------------------------------------------------------
# alternating q-power sum
# ---------------------------------------------------------------------------


def alternating_power_sum(n: int, i: int, h: int, r: int, a: int, c: int = 1) -> QRatFunc:
    """sum over r-tuples j in [0,a)^r of (-1)^|j| q^(c*sum_l (h+n-l-i+1) j_l) [j_1+...+j_r]^i
    in base q^c, with the 0^0 = 1 convention."""
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= n, got i={i}, n={n}")
    if r < 0 or a < 1 or c < 1:
        raise ValueError(f"need r >= 0, a >= 1, c >= 1, got r={r}, a={a}, c={c}")
    weights = _tuple_weights(a, r, [c * (h + n - l - i + 1) for l in range(1, r + 1)])
    num: dict[int, Coeff] = {}
    for t, w in weights.items():
        if i == 0:
            part = w
        elif t == 0:
            continue
        else:
            part = mul_dicts(w, _bracket_pow(t, c, i).terms)
        for e, cc in part.items():
            s = num.get(e, 0) + cc
            if s:
                num[e] = s
            else:
                del num[e]
    return build_ratfunc(num, FactoredDen())


def _tuple_weights(a: int, r: int, exps: list[int]) -> dict[int, dict[int, Coeff]]:
    """Group the r-tuples over [0,a) by total: total -> {q-exponent: signed count}.

    The weight of tuple j is (-1)^|j| q^(sum_l exps[l]*j_l), built by r
    successive 1-index convolutions.
    """
    acc: dict[int, dict[int, Coeff]] = {0: {0: 1}}
    for l in range(r):
        nxt: dict[int, dict[int, Coeff]] = {}
        for t, terms in acc.items():
            for j in range(a):
                key = t + j
                e0 = exps[l] * j
                sign = -1 if j & 1 else 1
                dst = nxt.setdefault(key, {})
                for e, cc in terms.items():
                    s = dst.get(e + e0, 0) + cc * sign
                    if s:
                        dst[e + e0] = s
                    else:
                        del dst[e + e0]
        acc = nxt
    return acc


@lru_cache(maxsize=2048)
def _bracket_pow(t: int, c: int, i: int) -> QPoly:
    """([t] in base q^c)^i as a polynomial."""
    return QPoly({c * u: 1 for u in range(t)}) ** i


# ---------------------------------------------------------------------------
# common-denominator machinery shared by the exact symmetry builders
# ---------------------------------------------------------------------------


@lru_cache(maxsize=512)
def _shared_euler_den(base: int, n: int, h: int, r: int) -> tuple[QPoly, tuple]:
    """Unreduced common denominator of E(n', ., c=base) for all n' <= n:
    (1 - q^base)^n * prod_j (1 + q^(base*|h-r+1+j|)), j = 0..n+r-1."""
    fd = FactoredDen()
    fd.mul_binomial(base, 1, times=n)
    for j in range(n + r):
        k = base * (h - r + 1 + j)
        if k:
            fd.mul_binomial(abs(k), -1)
    poly = QPoly(fd.expand())
    factors = tuple(sorted((k, s, m) for (k, s), m in fd.binomials.items()))
    return poly, factors


def _den_parts(f: QRatFunc) -> tuple[int, QPoly]:
    """Split the canonical denominator into (q-valuation, monic core)."""
    v = f.den.min_exp
    if v == 0:
        return 0, f.den
    return v, QPoly({e - v: c for e, c in f.den.terms.items()})


class _CommonDenAccumulator:
    """Accumulates sum_t (numerator_t / den_t) over a shared denominator
    D * q^V, where every den_t core divides the known factored D."""

    def __init__(self, base: int, n: int, h: int, r: int):
        self.D, self.factors = _shared_euler_den(base, n, h, r)
        self._cof_cache: dict[QPoly, QPoly] = {}
        self._pending: list[tuple[dict[int, Coeff], int]] = []
        self._vmax = 0

    def cofactor(self, core: QPoly) -> QPoly:
        cof = self._cof_cache.get(core)
        if cof is None:
            cof = divexact_qpoly(self.D, core)
            if cof is None:
                raise AssertionError("denominator does not divide the shared form")
            self._cof_cache[core] = cof
        return cof

    def add(self, num_terms: dict[int, Coeff], f: QRatFunc, extra_qval: int = 0) -> None:
        """Add num_terms * f, where f's denominator core divides D."""
        if f.is_zero() or not num_terms:
            return
        v, core = _den_parts(f)
        v += extra_qval
        part = mul_dicts(num_terms, f.num.terms)
        if core != QPoly.one():
            part = mul_dicts(part, self.cofactor(core).terms)
        self._pending.append((part, v))
        self._vmax = max(self._vmax, v)

    def build(self, outer: dict[int, Coeff]) -> QRatFunc:
        """Finish: (outer * sum of pending terms) / (D * q^vmax)."""
        total: dict[int, Coeff] = {}
        for part, v in self._pending:
            shift = self._vmax - v
            for e, cc in part.items():
                key = e + shift
                s = total.get(key, 0) + cc
                if s:
                    total[key] = s
                else:
                    del total[key]
        total = mul_dicts(total, outer)
        fd = FactoredDen()
        for k, s, m in self.factors:
            fd.mul_binomial(k, -1 if s == -1 else 1, times=m)
        fd.mul_qpow(self._vmax)
        return build_ratfunc(total, fd)


@lru_cache(maxsize=256)
def _poly_pow_terms(base_exp_step: int, count: int, power: int) -> QPoly:
    """(1 + q^step + q^(2 step) + ... + q^((count-1) step))^power."""
    return QPoly({base_exp_step * u: 1 for u in range(count)}) ** power


def _two_bracket_pow(c: int, r: int) -> dict[int, Coeff]:
    """(1 + q^c)^r as a term map."""
    terms: dict[int, Coeff] = {0: 1}
    for _ in range(r):
        terms = _mul_binomial_terms(terms, c, 1)
    return terms


# ---------------------------------------------------------------------------
# the two exact symmetry identities
# ---------------------------------------------------------------------------


def euler_symmetry_side(side: str, p: SymCheckParams) -> QRatFunc:
    """One side of the basic symmetry identity:
    [2]_{q^m}^r [c]_q^n sum_j (-1)^|j| q^(m sum_l (h-l+1) j_l) E_n(c m x + m|j| over base q^c),
    with (c, m) = (a, b) on the left and (b, a) on the right."""
    base, mult = _oriented(side, p)
    return _euler_symmetry_sum(base, mult, p.n, p.h, p.r, p.x)


def _euler_symmetry_sum(base: int, mult: int, n: int, h: int, r: int, x: int) -> QRatFunc:
    weights = _tuple_weights(base, r, [mult * (h - l + 1) for l in range(1, r + 1)])
    acc = _CommonDenAccumulator(base, n, h, r)
    for t, w in weights.items():
        e = _euler_exact(n, h, r, base * mult * x + mult * t, base)
        acc.add(w, e)
    outer = mul_dicts(_two_bracket_pow(mult, r), _poly_pow_terms(1, base, n).terms)
    return acc.build(outer)


def power_sum_symmetry_side(side: str, p: SymCheckParams) -> QRatFunc:
    """One side of the power-sum form of the symmetry identity:
    [2]_{q^m}^r sum_i C(n,i) [c]^{n-i} [m]^i E_{n-i}(c m x over base q^c) S_{n,i}(c in base q^m),
    with (c, m) = (a, b) on the left and (b, a) on the right."""
    base, mult = _oriented(side, p)
    n, h, r, x = p.n, p.h, p.r, p.x
    acc = _CommonDenAccumulator(base, n, h, r)
    for i in range(n + 1):
        s_i = alternating_power_sum(n, i, h, r, base, mult)
        if s_i.is_zero():
            continue
        sv, score = _den_parts(s_i)
        if score != QPoly.one():
            raise AssertionError("alternating power sum must reduce to a Laurent polynomial")
        e = _euler_exact(n - i, h, r, base * mult * x, base)
        coeff = mul_dicts(
            _poly_pow_terms(1, base, n - i).terms, _poly_pow_terms(1, mult, i).terms
        )
        coeff = mul_dicts(coeff, s_i.num.terms)
        coeff = {ex: c * math.comb(n, i) for ex, c in coeff.items()}
        acc.add(coeff, e, extra_qval=sv)
    return acc.build(_two_bracket_pow(mult, r))


def _oriented(side: str, p: SymCheckParams) -> tuple[int, int]:
    if side == "left":
        return p.a, p.b
    if side == "right":
        return p.b, p.a
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


# ---------------------------------------------------------------------------
# the two-index binomial identity and the addition theorem
# ---------------------------------------------------------------------------


def index_shift_symmetry_side(
    side: str, m: int, n: int, h: int, r: int, x: int, y: int
) -> QRatFunc:
    """left:  sum_k C(m,k) q^((n+k)x) E_{n+k}(y) [x]^(m-k)
    right: sum_k C(n,k) E_{m+k}(x+y) q^((n-k)x) [-x]^(n-k)."""
    if m < 0 or n < 0:
        raise ValueError(f"m and n must be >= 0, got m={m}, n={n}")
    from .qalg.primitives import qbracket

    total = QRatFunc.zero()
    if side == "left":
        bracket = qbracket(x, 1)
        for k in range(m + 1):
            term = QRatFunc.constant(math.comb(m, k)) * QRatFunc.q_power((n + k) * x)
            term = term * _euler_exact(n + k, h, r, y, 1)
            term = term * _rpow(bracket, m - k)
            total = total + term
    elif side == "right":
        neg_bracket = qbracket(-x, 1)
        for k in range(n + 1):
            term = QRatFunc.constant(math.comb(n, k)) * QRatFunc.q_power((n - k) * x)
            term = term * _euler_exact(m + k, h, r, x + y, 1)
            term = term * _rpow(neg_bracket, n - k)
            total = total + term
    else:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    return total


def addition_check(n: int, h: int, r: int, x: int, y: int) -> IdentityReport:
    """E_n(x+y) against its binomial expansion around y, in both index orders."""
    if x < 0 or y < 0:
        raise ValueError(f"x and y must be >= 0, got x={x}, y={y}")
    from .qalg.primitives import qbracket

    lhs = _euler_exact(n, h, r, x + y, 1)
    rhs = addition_rhs(n, h, r, x, y)
    bracket = qbracket(x, 1)
    mirrored = QRatFunc.zero()
    for i in range(n + 1):
        term = QRatFunc.constant(math.comb(n, i)) * QRatFunc.q_power((n - i) * x)
        term = term * _euler_exact(n - i, h, r, y, 1)
        term = term * _rpow(bracket, i)
        mirrored = mirrored + term
    equal = lhs == rhs and lhs == mirrored
    return IdentityReport(
        name="prop2.3",
        params={"n": n, "h": h, "r": r, "x": x, "y": y},
        lhs=str(lhs),
        rhs=str(rhs),
        equal=equal,
        deviation=0.0 if equal else math.inf,
    )


# ---------------------------------------------------------------------------
# numeric zeta symmetry
# ---------------------------------------------------------------------------


def zeta_symmetry_check(
    s: complex, p: SymCheckParams, q: float, tol: float = 1e-8
) -> IdentityReport:
    """Numeric check of the zeta-level symmetry at one (s, q) point."""
    if p.x < 1:
        raise DomainError(f"x must be >= 1 for the zeta symmetry, got {p.x}")
    if p.h < p.r:
        raise ConvergenceDomainError(
            f"zeta series diverges for h < r (h={p.h}, r={p.r})"
        )
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    lhs = _zeta_symmetry_sum(p.a, p.b, s, p.h, p.r, p.x, q, tol)
    rhs = _zeta_symmetry_sum(p.b, p.a, s, p.h, p.r, p.x, q, tol)
    deviation = abs(lhs - rhs)
    return IdentityReport(
        name="thm2.1",
        params={"s": complex(s), "a": p.a, "b": p.b, "h": p.h, "r": p.r, "x": p.x,
                "q": q, "tol": tol},
        lhs=lhs,
        rhs=rhs,
        equal=deviation <= tol,
        deviation=deviation,
    )


def _zeta_symmetry_sum(
    base: int, mult: int, s: complex, h: int, r: int, x: int, q: float, tol: float
) -> complex:
    """[2]_{q^m}^r [m]_q^s sum over j in [0,c)^r of (-1)^|j| q^(m sum (h-l+1) j_l)
    zeta_{q^c}(s, m x + m|j|/c), with (c, m) = (base, mult)."""
    coeffs: dict[int, float] = {}
    for j in product(range(base), repeat=r):
        t = sum(j)
        e = mult * sum((h - l + 1) * jl for l, jl in enumerate(j, start=1))
        coeffs[t] = coeffs.get(t, 0.0) + (-1.0) ** t * q**e
    qbase = q**base
    two = (1 + q**mult) ** r
    bracket_m = (1 - q**mult) / (1 - q)
    pref = cmath.exp(complex(s) * math.log(bracket_m)) * two
    weight_sum = sum(abs(c) for c in coeffs.values())
    inner_tol = tol / (4 * abs(pref) * max(weight_sum, 1.0))
    acc = 0j
    for t in sorted(coeffs):
        query = ZetaQuery(s=s, x=mult * x + mult * t / base, h=h, r=r, q=qbase, tol=inner_tol)
        acc += coeffs[t] * zeta_single_sum(query)
    return pref * acc


# ---------------------------------------------------------------------------
# grid verification
# ---------------------------------------------------------------------------

_PARAM_ORDER = {
    "thm2.1": ("a", "b", "h", "r", "x", "s"),
    "thm2.2": ("a", "b", "n", "h", "r", "x"),
    "thm2.4": ("a", "b", "n", "h", "r", "x"),
    "thm2.5": ("m", "n", "h", "r", "x", "y"),
    "prop2.3": ("n", "h", "r", "x", "y"),
    "lemma1.1": ("n", "x", "h", "r"),
}

_NUMERIC_IDENTITIES = ("thm2.1", "lemma1.1")


def check_point(identity: str, point: dict, tol: float | None = None) -> IdentityReport:
    """Evaluate one identity at one parameter point."""
    if identity == "thm2.2":
        p = SymCheckParams(a=point["a"], b=point["b"], n=point["n"],
                           h=point["h"], r=point["r"], x=point["x"])
        lhs = euler_symmetry_side("left", p)
        rhs = euler_symmetry_side("right", p)
        equal = lhs == rhs
        return IdentityReport("thm2.2", dict(point), str(lhs), str(rhs), equal,
                              0.0 if equal else math.inf)
    if identity == "thm2.4":
        p = SymCheckParams(a=point["a"], b=point["b"], n=point["n"],
                           h=point["h"], r=point["r"], x=point["x"])
        lhs = power_sum_symmetry_side("left", p)
        rhs = power_sum_symmetry_side("right", p)
        equal = lhs == rhs
        return IdentityReport("thm2.4", dict(point), str(lhs), str(rhs), equal,
                              0.0 if equal else math.inf)
    if identity == "thm2.5":
        lhs = index_shift_symmetry_side("left", point["m"], point["n"], point["h"],
                                        point["r"], point["x"], point["y"])
        rhs = index_shift_symmetry_side("right", point["m"], point["n"], point["h"],
                                        point["r"], point["x"], point["y"])
        equal = lhs == rhs
        return IdentityReport("thm2.5", dict(point), str(lhs), str(rhs), equal,
                              0.0 if equal else math.inf)
    if identity == "prop2.3":
        return addition_check(point["n"], point["h"], point["r"], point["x"], point["y"])
    if identity == "lemma1.1":
        return lemma_1_1_check(point["n"], point["x"], point["h"], point["r"],
                               point["q"], tol if tol is not None else 1e-9)
    if identity == "thm2.1":
        p = SymCheckParams(a=point["a"], b=point["b"], n=0, h=point["h"],
                           r=point["r"], x=point["x"])
        return zeta_symmetry_check(point["s"], p, point["q"],
                                   tol if tol is not None else 1e-8)
    raise ValueError(f"unknown identity {identity!r}")


def _eval_point_safe(args) -> IdentityReport:
    identity, point, tol = args
    try:
        return check_point(identity, point, tol)
    except (ValueError, ZeroDivisionError) as exc:
        return IdentityReport(
            name=identity,
            params=dict(point),
            lhs=f"error: {type(exc).__name__}: {exc}",
            rhs="",
            equal=False,
            deviation=math.inf,
        )


def grid_points(identity: str, ranges: dict, q: list | None = None) -> list[dict]:
    """Deterministic (lexicographic in canonical parameter order) grid expansion."""
    if identity not in _PARAM_ORDER:
        raise ValueError(f"unknown identity {identity!r}; expected one of {IDENTITY_NAMES}")
    order = [k for k in _PARAM_ORDER[identity] if k in ranges]
    extra = sorted(set(ranges) - set(order))
    order += extra
    axes = [list(ranges[k]) for k in order]
    if identity in _NUMERIC_IDENTITIES:
        order.append("q")
        axes.append(list(q) if q else [0.5])
    pts = []
    for combo in product(*axes):
        pts.append(dict(zip(order, combo)))
    return pts


def verify_grid(
    identity: str,
    ranges: dict,
    q: list | None = None,
    tol: float | None = None,
    jobs: int = 1,
) -> list[IdentityReport]:
    """One report per grid point, in deterministic order; per-point errors are
    captured as failing reports instead of aborting the run."""
    pts = grid_points(identity, ranges, q)
    tasks = [(identity, pt, tol) for pt in pts]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_eval_point_safe, tasks, chunksize=8))
    return [_eval_point_safe(t) for t in tasks]

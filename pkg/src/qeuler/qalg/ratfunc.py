"""Canonical rational functions in q over the rationals.

A QRatFunc is a fully reduced fraction num/den of QPoly with a monic
denominator, so structural equality decides mathematical equality.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import PoleError
from . import _intpoly
from .qpoly import Coeff, QPoly


def _lcm(a: int, b: int) -> int:
    g, x = a, b
    while x:
        g, x = x, g % x
    return a // g * b


def _laurent_to_int_dense(terms: dict[int, Coeff]) -> tuple[list[int], int, int]:
    """Convert a Laurent term map to (dense int coeffs, base exponent, denom)."""
    if not terms:
        return [], 0, 1
    d = 1
    for c in terms.values():
        if not isinstance(c, int):
            d = _lcm(d, c.denominator)
    lo = min(terms)
    out = [0] * (max(terms) - lo + 1)
    if d == 1:
        for e, c in terms.items():
            out[e - lo] = c if isinstance(c, int) else int(c)
    else:
        for e, c in terms.items():
            out[e - lo] = int(c * d)
    return out, lo, d


def _dense_to_qpoly(dense: list[int], scale: Fraction | int = 1) -> QPoly:
    if scale == 1:
        return QPoly({e: c for e, c in enumerate(dense) if c})
    return QPoly({e: c * scale for e, c in enumerate(dense) if c})


def _reduce_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Divide out the integer-polynomial gcd (contents untouched)."""
    g = _intpoly.gcd(num, den)
    if len(g) > 1:
        num = _intpoly.divexact(num, g)
        den = _intpoly.divexact(den, g)
    return num, den


class QRatFunc:
    """Reduced num/den pair with monic denominator (unique representation)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: QPoly, den: QPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = QPoly.zero()
            self.den = QPoly.one()
            self._hash = None
            return
        ndense, nd = num.to_dense_int()
        ddense, dd = den.to_dense_int()
        self.num, self.den = _canonical_from_dense(ndense, 0, ddense, 0, Fraction(dd, nd))
        self._hash = None

    @classmethod
    def _unchecked(cls, num: QPoly, den: QPoly) -> "QRatFunc":
        """Wrap parts already known to be canonical."""
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_poly(cls, p: QPoly) -> "QRatFunc":
        return cls._unchecked(p, QPoly.one())

    @classmethod
    def constant(cls, c: Coeff) -> "QRatFunc":
        return cls._unchecked(QPoly.constant(c), QPoly.one()) if c else cls.zero()

    @classmethod
    def zero(cls) -> "QRatFunc":
        return cls._unchecked(QPoly.zero(), QPoly.one())

    @classmethod
    def one(cls) -> "QRatFunc":
        return cls._unchecked(QPoly.one(), QPoly.one())

    @classmethod
    def q_power(cls, k: int) -> "QRatFunc":
        """The monomial q^k for any integer k (negative k gives 1/q^|k|)."""
        if k >= 0:
            return cls._unchecked(QPoly.monomial(k), QPoly.one())
        return cls._unchecked(QPoly.one(), QPoly.monomial(-k))

    # -- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == QPoly.one()

    def as_qpoly(self) -> QPoly:
        if not self.is_polynomial():
            raise ValueError(f"not a polynomial: {self}")
        return self.num

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return QRatFunc(self.num + other.num, self.den)
        num = self.num * other.den + other.num * self.den
        return QRatFunc(num, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return QRatFunc(self.num - other.num, self.den)
        num = self.num * other.den - other.num * self.den
        return QRatFunc(num, self.den * other.den)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return QRatFunc._unchecked(-self.num, self.den)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return QRatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return QRatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other.__truediv__(self)

    def __pow__(self, n: int):
        if n == 0:
            return QRatFunc.one()
        if n < 0:
            if self.is_zero():
                raise ZeroDivisionError("negative power of zero")
            base = QRatFunc(self.den, self.num)
            n = -n
        else:
            base = self
        # gcd(num, den) = 1 is preserved by powers and den^n stays monic
        return QRatFunc._unchecked(base.num ** n, base.den ** n)

    # -- evaluation ----------------------------------------------------------

    def __call__(self, x):
        """Evaluate at x; exact for Rational x.  Raises PoleError at poles."""
        d = self.den(x)
        if not d:
            raise PoleError(f"evaluation at a pole: q = {x}")
        n = self.num(x)
        if isinstance(x, Rational):
            return _as_fraction(n) / _as_fraction(d)
        return n / d

    # -- comparison / hashing --------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, QRatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, QPoly)):
            return self == _coerce(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # -- rendering -------------------------------------------------------------

    def __str__(self) -> str:
        return f"{self.num} / {self.den}"

    def __repr__(self) -> str:
        return f"QRatFunc({self.num!r}, {self.den!r})"

    def to_json_obj(self) -> dict:
        """Lossless form {"num": [[exp, "p/r"], ...], "den": ...}, exponents ascending."""
        return {
            "num": [[e, str(self.num.terms[e])] for e in sorted(self.num.terms)],
            "den": [[e, str(self.den.terms[e])] for e in sorted(self.den.terms)],
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "QRatFunc":
        num = QPoly({int(e): Fraction(c) for e, c in obj["num"]})
        den = QPoly({int(e): Fraction(c) for e, c in obj["den"]})
        return cls(num, den)


def _coerce(x) -> "QRatFunc":
    if isinstance(x, QRatFunc):
        return x
    if isinstance(x, QPoly):
        return QRatFunc.from_poly(x)
    if isinstance(x, (int, Fraction)):
        return QRatFunc.constant(x)
    return NotImplemented


def _as_fraction(v) -> Fraction:
    return v if isinstance(v, Fraction) else Fraction(v)


def _canonical_from_dense(
    num: list[int],
    num_base: int,
    den: list[int],
    den_base: int,
    prefactor: Fraction | int,
) -> tuple[QPoly, QPoly]:
    """Reduce (q^num_base * num) / (q^den_base * den) * prefactor to canonical parts."""
    _intpoly.trim(num)
    _intpoly.trim(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return QPoly.zero(), QPoly.one()
    # cancel powers of q: fold valuations into the bases, then shift
    vn = next(i for i, c in enumerate(num) if c)
    vd = next(i for i, c in enumerate(den) if c)
    shift = min(num_base + vn, den_base + vd)
    num_base += vn - shift
    den_base += vd - shift
    if vn:
        num = num[vn:]
    if vd:
        den = den[vd:]
    num, den = _reduce_int(num, den)
    # monic denominator fixes the remaining unit: scale = prefactor / lc(den)
    scale = Fraction(prefactor, den[-1]) if prefactor != den[-1] else 1
    num_poly = QPoly({e + num_base: c * scale if scale != 1 else c for e, c in enumerate(num) if c})
    if len(den) == 1 and den_base == 0:
        return num_poly, QPoly.one()
    lc = den[-1]
    den_poly = QPoly({e + den_base: Fraction(c, lc) for e, c in enumerate(den) if c})
    return num_poly, den_poly


class FactoredDen:
    """Denominator assembled as const * q^qpow * prod (1 - s*q^k)^mult.

    Builders use this to record denominators in factored form so reduction
    can cancel the known binomials cheaply before the general gcd runs.
    Factors with k <= 0 are normalized on entry: (1 - s*q^k) for k < 0 equals
    (-s) * q^k * (1 - s*q^|k|), and k = 0 gives the constant 1 - s.
    """

    __slots__ = ("const", "qpow", "binomials")

    def __init__(self):
        self.const = 1
        self.qpow = 0
        self.binomials: dict[tuple[int, int], int] = {}

    def mul_binomial(self, k: int, s: int, times: int = 1) -> None:
        if times == 0:
            return
        if k == 0:
            if s == 1:
                raise ZeroDivisionError("denominator factor (1 - q^0) vanishes")
            self.const *= (1 - s) ** times
            return
        if k < 0:
            self.const *= (-s) ** times
            self.qpow += k * times
            k = -k
        key = (k, s)
        self.binomials[key] = self.binomials.get(key, 0) + times

    def mul_const(self, c: int) -> None:
        if c == 0:
            raise ZeroDivisionError("zero denominator factor")
        self.const *= c

    def mul_qpow(self, k: int) -> None:
        self.qpow += k

    def expand(self) -> dict[int, Coeff]:
        """Expanded term map of the denominator (exponents may be negative)."""
        terms: dict[int, Coeff] = {self.qpow: self.const}
        for (k, s), m in self.binomials.items():
            for _ in range(m):
                terms = _mul_binomial_terms(terms, k, -s)
        return terms


def _mul_binomial_terms(terms: dict[int, Coeff], k: int, coef: int) -> dict[int, Coeff]:
    out = dict(terms)
    for e, c in terms.items():
        s = out.get(e + k, 0) + c * coef
        if s:
            out[e + k] = s
        else:
            del out[e + k]
    return out


def build_ratfunc(num_terms: dict[int, Coeff], den: FactoredDen) -> QRatFunc:
    """Canonical QRatFunc for (Laurent numerator) / (factored denominator)."""
    if not num_terms:
        return QRatFunc.zero()
    num, base, coeff_den = _laurent_to_int_dense(num_terms)
    _intpoly.trim(num)
    if not num:
        return QRatFunc.zero()

    leftover: list[tuple[int, int, int]] = []
    for (k, s), m in sorted(den.binomials.items()):
        while m:
            quot = _intpoly.div_binomial(num, k, s)
            if quot is None:
                break
            num = quot
            m -= 1
        if m:
            leftover.append((k, s, m))

    den_dense = [den.const]
    for k, s, m in leftover:
        factor = [0] * (k + 1)
        factor[0] = 1
        factor[k] = -s
        for _ in range(m):
            den_dense = _intpoly.mul(den_dense, factor)

    prefactor = Fraction(1, coeff_den) if coeff_den != 1 else 1
    n, d = _canonical_from_dense(num, base, den_dense, den.qpow, prefactor)
    return QRatFunc._unchecked(n, d)

"""Sparse univariate polynomials in q with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from . import _intpoly

NEG_INF = float("-inf")

Coeff = int | Fraction


def _normalize_coeff(c: Coeff) -> Coeff:
    """Collapse Fractions with unit denominator to plain ints."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class QPoly:
    """Polynomial sum(c_e * q^e) stored as a map {e: c_e} with no zero entries.

    Instances are immutable by convention: no method mutates `terms` after
    construction, so values can be shared freely (hashing relies on this).
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: dict[int, Coeff] | None = None):
        clean: dict[int, Coeff] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if e < 0 or not isinstance(e, int):
                        raise ValueError(f"exponent must be a non-negative integer, got {e!r}")
                    clean[e] = _normalize_coeff(c)
        self.terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "QPoly":
        return cls()

    @classmethod
    def one(cls) -> "QPoly":
        return cls({0: 1})

    @classmethod
    def constant(cls, c: Coeff) -> "QPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: Coeff = 1) -> "QPoly":
        return cls({e: c})

    @classmethod
    def from_coeffs(cls, coeffs) -> "QPoly":
        """Build from ascending dense coefficients [c0, c1, ...]."""
        return cls({e: c for e, c in enumerate(coeffs) if c})

    # -- structure ---------------------------------------------------------

    @property
    def degree(self) -> int | float:
        """Largest exponent, or -inf for the zero polynomial."""
        return max(self.terms) if self.terms else NEG_INF

    @property
    def min_exp(self) -> int | float:
        return min(self.terms) if self.terms else NEG_INF

    def is_zero(self) -> bool:
        return not self.terms

    def leading_coeff(self) -> Coeff:
        return self.terms[max(self.terms)] if self.terms else 0

    def is_int_coeffs(self) -> bool:
        return all(isinstance(c, int) for c in self.terms.values())

    def to_dense_int(self) -> tuple[list[int], int]:
        """Return (dense int coefficients, d) with self = dense / d."""
        if not self.terms:
            return [], 1
        d = 1
        for c in self.terms.values():
            if not isinstance(c, int):
                d = d * c.denominator // _gcd(d, c.denominator)
        out = [0] * (max(self.terms) + 1)
        for e, c in self.terms.items():
            out[e] = int(c * d) if d != 1 else (c if isinstance(c, int) else int(c))
        return out, d

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "QPoly") -> "QPoly":
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = dict(a)
        for e, c in b.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return QPoly(out)

    def __sub__(self, other: "QPoly") -> "QPoly":
        if not isinstance(other, QPoly):
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return QPoly(out)

    def __neg__(self) -> "QPoly":
        return QPoly({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, QPoly):
            return QPoly(mul_dicts(self.terms, other.terms))
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, c: Coeff) -> "QPoly":
        if not c:
            return QPoly()
        return QPoly({e: v * c for e, v in self.terms.items()})

    def shift(self, k: int) -> "QPoly":
        """Multiply by q^k (k >= 0)."""
        if k == 0 or not self.terms:
            return self
        return QPoly({e + k: c for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "QPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial; use QRatFunc")
        result = QPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        """Evaluate at x; exact for Rational x, floating otherwise."""
        if not self.terms:
            return 0 if isinstance(x, Rational) else 0.0 * x
        exps = sorted(self.terms, reverse=True)
        v = self.terms[exps[0]]
        for prev, e in zip(exps, exps[1:]):
            v = v * x ** (prev - e) + self.terms[e]
        return v * x ** exps[-1] if exps[-1] else v

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, QPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            if e == 0:
                parts.append(str(c))
            else:
                base = "q" if e == 1 else f"q^{e}"
                parts.append(base if c == 1 else f"{c}*{base}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"QPoly({self.terms!r})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def mul_dicts(a: dict[int, Coeff], b: dict[int, Coeff]) -> dict[int, Coeff]:
    """Product of two term maps; exponents may be negative (Laurent use)."""
    if not a or not b:
        return {}
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        ((eb, cb),) = b.items()
        return {e + eb: c * cb for e, c in a.items()}
    # dense integer path pays off once the term-product count dwarfs the span
    if len(a) * len(b) > 4096:
        lo_a, hi_a = min(a), max(a)
        lo_b, hi_b = min(b), max(b)
        span = (hi_a - lo_a) + (hi_b - lo_b) + 1
        if len(a) * len(b) > 4 * span and _all_int(a) and _all_int(b):
            da = [0] * (hi_a - lo_a + 1)
            for e, c in a.items():
                da[e - lo_a] = c
            db = [0] * (hi_b - lo_b + 1)
            for e, c in b.items():
                db[e - lo_b] = c
            dense = _intpoly.mul(da, db)
            base = lo_a + lo_b
            return {base + i: c for i, c in enumerate(dense) if c}
    out: dict[int, Coeff] = {}
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = ea + eb
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            else:
                del out[e]
    return out


def _all_int(d: dict[int, Coeff]) -> bool:
    return all(isinstance(c, int) for c in d.values())


def divexact_qpoly(a: QPoly, b: QPoly) -> QPoly | None:
    """Quotient a / b when b divides a exactly over QQ, else None."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if a.is_zero():
        return QPoly.zero()
    A, da = a.to_dense_int()
    B, db = b.to_dense_int()
    cb = _intpoly.content(B)
    if B[-1] < 0:
        cb = -cb
    Bp = [c // cb for c in B] if cb != 1 else B
    Q = _intpoly.divexact(A, Bp)
    if Q is None:
        return None
    scale = Fraction(db, da * cb)
    if scale == 1:
        return QPoly({e: c for e, c in enumerate(Q) if c})
    return QPoly({e: c * scale for e, c in enumerate(Q) if c})

"""Dense integer-polynomial kernels used by the canonical-form machinery.

A polynomial is a list of int coefficients in ascending order with no
trailing zeros; [] is the zero polynomial.  These helpers stay in ZZ[q]:
the rational layer clears coefficient denominators before calling in.

gcd() is exact: a heuristic evaluate-at-a-big-integer candidate is
verified by exact division and certified maximal by the gcd degree
modulo a prime, with a primitive-remainder-sequence fallback.
"""

from __future__ import annotations

import math

import numpy as np

# int64 arithmetic in the numpy fast paths must not overflow
_INT64_SAFE = 1 << 62

# ~20-bit primes keep (p-1)^2 * len within int64 in the mod-p kernels
_PROBE_PRIMES = (
    1048583, 1048589, 1048601, 1048609, 1048613, 1048627, 1048633,
    1048661, 1048681, 1048703, 1048709, 1048717, 1048721, 1048759,
)


def trim(a: list[int]) -> list[int]:
    """Strip trailing zero coefficients in place and return the list."""
    while a and a[-1] == 0:
        a.pop()
    return a


def max_abs(a: list[int]) -> int:
    return max((abs(c) for c in a), default=0)


def mul(a: list[int], b: list[int]) -> list[int]:
    """Product of two dense polynomials."""
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        c = b[0]
        return [x * c for x in a]
    # numpy convolution when the accumulated products provably fit in int64
    bound = max_abs(a) * max_abs(b) * len(b)
    if bound < _INT64_SAFE:
        out = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
        return out.tolist()
    out = [0] * (len(a) + len(b) - 1)
    for j, cb in enumerate(b):
        if cb == 0:
            continue
        for i, ca in enumerate(a):
            out[i + j] += ca * cb
    return out


def divexact(a: list[int], b: list[int]) -> list[int] | None:
    """Quotient a // b when b divides a exactly over ZZ, else None."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    if len(a) < len(b):
        return None
    if len(b) == 1:
        c = b[0]
        if c in (1, -1):
            return [x * c for x in a]
        out = []
        for x in a:
            t, r = divmod(x, c)
            if r:
                return None
            out.append(t)
        return out
    r = list(a)
    lc = b[-1]
    nb = len(b)
    q = [0] * (len(a) - nb + 1)
    for i in range(len(q) - 1, -1, -1):
        c = r[i + nb - 1]
        if c == 0:
            continue
        t, rem = divmod(c, lc)
        if rem:
            return None
        q[i] = t
        for j in range(nb - 1):
            if b[j]:
                r[i + j] -= t * b[j]
        r[i + nb - 1] = 0
    if any(r[: nb - 1]):
        return None
    return q


def div_binomial(a: list[int], k: int, s: int) -> list[int] | None:
    """Quotient a // (1 - s*q^k) for s = +-1 when exact, else None.

    Uses the stride-k prefix recurrence Q[i] = a[i] + s*Q[i-k]; the top k
    slots past deg(a)-k must vanish for the division to be exact.
    """
    if not a:
        return []
    if len(a) <= k:
        return None
    # partial sums are bounded by sum(|a|)
    if sum(abs(c) for c in a) < _INT64_SAFE:
        arr = np.array(a, dtype=np.int64)
        for j in range(k):
            sl = arr[j::k]
            if s == 1:
                np.cumsum(sl, out=sl)
            else:
                n = len(sl)
                signs = np.where(np.arange(n) & 1, -1, 1).astype(np.int64)
                sl *= signs
                np.cumsum(sl, out=sl)
                sl *= signs
        if np.any(arr[len(a) - k:]):
            return None
        return trim(arr[: len(a) - k].tolist())
    q = list(a)
    for i in range(k, len(a)):
        q[i] += s * q[i - k]
    if any(q[len(a) - k:]):
        return None
    return trim(q[: len(a) - k])


def content(a: list[int]) -> int:
    g = 0
    for c in a:
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def primitive(a: list[int]) -> list[int]:
    """Primitive part with positive leading coefficient."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return list(a)
    return [c // g for c in a]


def eval_int(a: list[int], x: int) -> int:
    v = 0
    for c in reversed(a):
        v = v * x + c
    return v


def _balanced_digits(n: int, base: int) -> list[int]:
    digits = []
    while n:
        d = n % base
        if 2 * d > base:
            d -= base
        digits.append(d)
        n = (n - d) // base
    return digits


def _gcd_degree_modp(a: list[int], b: list[int], p: int) -> int | None:
    """Degree of gcd(a, b) mod p, or None when p divides a leading coeff.

    For valid p this is an upper bound on deg gcd over QQ.
    """
    if a[-1] % p == 0 or b[-1] % p == 0:
        return None
    ra = np.array(a, dtype=np.int64) % p
    rb = np.array(b, dtype=np.int64) % p
    if len(ra) < len(rb):
        ra, rb = rb, ra
    while True:
        nz = np.nonzero(rb)[0]
        if not len(nz):
            return len(ra) - 1
        rb = rb[: nz[-1] + 1]
        if len(rb) == 1:
            return 0
        inv = pow(int(rb[-1]), -1, p)
        nb = len(rb)
        while len(ra) >= nb:
            c = (int(ra[-1]) * inv) % p
            if c:
                ra[-nb:] = (ra[-nb:] - c * rb) % p
            nzr = np.nonzero(ra)[0]
            if not len(nzr):
                ra = ra[:0]
                break
            ra = ra[: nzr[-1] + 1]
        ra, rb = rb, ra


def _prs_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive remainder sequence; exact but slow, used as fallback."""
    f, g = list(a), list(b)
    if len(f) < len(g):
        f, g = g, f
    while g:
        # pseudo-remainder of f by g
        d = len(f) - len(g)
        if d < 0:
            f, g = g, f
            continue
        lc = g[-1]
        r = [c * lc ** (d + 1) for c in f]
        for i in range(d, -1, -1):
            c = r[i + len(g) - 1]
            if c:
                t, rem = divmod(c, lc)
                assert rem == 0
                for j in range(len(g)):
                    r[i + j] -= t * g[j]
        trim(r)
        f, g = g, primitive(r)
    return primitive(f)


def gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd with positive leading coefficient."""
    if not a:
        return primitive(b)
    if not b:
        return primitive(a)
    if len(a) == 1 or len(b) == 1:
        return [math.gcd(content(a), content(b))]
    a = primitive(a)
    b = primitive(b)
    if a == b:
        return a
    if len(a) < len(b):
        a, b = b, a

    # certified degree bound: deg gcd <= d_p for any prime not dividing the lcs
    dp = None
    probe = 0
    while dp is None:
        dp = _gcd_degree_modp(a, b, _PROBE_PRIMES[probe])
        probe += 1
    if dp == 0:
        return [1]
    if dp == len(b) - 1:
        if divexact(a, b) is not None:
            return b

    # heuristic candidate: evaluate at a big integer, integer gcd, reconstruct
    xi = 2 * min(max_abs(a), max_abs(b)) + 29
    for attempt in range(8):
        va, vb = eval_int(a, xi), eval_int(b, xi)
        if va and vb:
            h = primitive(_balanced_digits(math.gcd(va, vb), xi))
            if h and len(h) - 1 <= dp and divexact(a, h) is not None and divexact(b, h) is not None:
                if len(h) - 1 == dp:
                    return h
                # h divides the gcd but a sharper degree bound is needed
                if probe < len(_PROBE_PRIMES):
                    d2 = _gcd_degree_modp(a, b, _PROBE_PRIMES[probe])
                    probe += 1
                    if d2 is not None:
                        dp = min(dp, d2)
                        if len(h) - 1 == dp:
                            return h
        xi = xi * 73794 // 27011 + 17
    return _prs_gcd(a, b)

"""Exact arithmetic over Z and Z[x].

Polynomials are dense tuples of Python ints, index i holding the
coefficient of x^i.  Valuations return ``INFINITY`` (``math.inf``) for zero,
so they compare naturally against ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

INFINITY = math.inf

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p!r} is not a prime")


def vp(n: int, p: int) -> int | float:
    """p-adic valuation of an integer; ``INFINITY`` for 0."""
    check_prime(p)
    return _vp(n, p)


def _vp(n: int, p: int) -> int | float:
    if n == 0:
        return INFINITY
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def p_free_part(n: int, p: int) -> int:
    """n / p^vp(n) with its sign kept, written b_2, a_3 and so on elsewhere."""
    check_prime(p)
    if n == 0:
        raise ValueError("p-free part of 0 is undefined")
    while n % p == 0:
        n //= p
    return n


@dataclass(frozen=True)
class IntPoly:
    """Dense polynomial with integer coefficients, lowest degree first."""

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @classmethod
    def const(cls, c: int) -> IntPoly:
        return cls((c,))

    @classmethod
    def monomial(cls, deg: int, c: int = 1) -> IntPoly:
        return cls((0,) * deg + (c,))

    @classmethod
    def linear(cls, s: int) -> IntPoly:
        """The monic polynomial x - s."""
        return cls((-s, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.lc == 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: IntPoly | int) -> IntPoly:
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: IntPoly | int) -> IntPoly:
        return self + (-_coerce(other))

    def __rsub__(self, other: IntPoly | int) -> IntPoly:
        return _coerce(other) - self

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPoly:
        if n < 0:
            raise ValueError("negative power")
        result, base = IntPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other: IntPoly) -> tuple[IntPoly, IntPoly]:
        """Euclidean division by a monic divisor, exact over Z."""
        if not other.is_monic():
            raise ValueError("division over Z requires a monic divisor")
        r = list(self.coeffs)
        dg = other.degree
        if len(r) - 1 < dg:
            return IntPoly(), self
        q = [0] * (len(r) - dg)
        oc = other.coeffs
        for i in range(len(r) - 1, dg - 1, -1):
            c = r[i]
            if c:
                q[i - dg] = c
                for j in range(dg + 1):
                    r[i - dg + j] -= c * oc[j]
        return IntPoly(q), IntPoly(r[:dg])

    def __floordiv__(self, other: IntPoly) -> IntPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: IntPoly) -> IntPoly:
        return divmod(self, other)[1]

    def exact_div(self, n: int) -> IntPoly:
        if any(c % n for c in self.coeffs):
            raise ValueError(f"{self} is not divisible by {n}")
        return IntPoly(c // n for c in self.coeffs)

    def __call__(self, v):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    def derivative(self) -> IntPoly:
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def shift(self, s: int) -> IntPoly:
        """F(x + s), by Horner's rule on the Taylor shift."""
        c = list(self.coeffs)
        n = len(c)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                c[j] += s * c[j + 1]
        return IntPoly(c)

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def __str__(self) -> str:
        return format_poly(self.coeffs, "x")

    def __repr__(self) -> str:
        return f"IntPoly({str(self)!r})"


def _coerce(v: IntPoly | int) -> IntPoly:
    return v if isinstance(v, IntPoly) else IntPoly((v,))


def format_poly(coeffs: Sequence, var: str = "x") -> str:
    """Render coefficients (lowest first) as e.g. ``x^5 + 3*x^2 - 144``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    head_sign, head = terms[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def vp_poly(f: IntPoly, p: int) -> int | float:
    """Minimum p-adic valuation over the coefficients of f."""
    check_prime(p)
    return min((_vp(c, p) for c in f.coeffs if c), default=INFINITY)


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) by the Euclidean recurrence over Q (exact)."""
    if f.is_zero() or g.is_zero():
        return 0
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]
    res = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            res *= b[0] ** da
            break
        if da < db:
            if (da * db) % 2:
                res = -res
            a, b = b, a
            continue
        # remainder of a by b
        r = a[:]
        lb = b[-1]
        for i in range(da, db - 1, -1):
            c = r[i] / lb
            if c:
                for j in range(db + 1):
                    r[i - db + j] -= c * b[j]
        r = r[:db]
        while r and r[-1] == 0:
            r.pop()
        if not r:
            return 0
        dr = len(r) - 1
        # Res(a, b) = (-1)^(da*db) * lc(b)^(da - dr) * Res(b, r)
        if (da * db) % 2:
            res = -res
        res *= lb ** (da - dr)
        a, b = b, r
    if res.denominator != 1:
        raise ArithmeticError("non-integral resultant")
    return int(res)


def discriminant(f: IntPoly) -> int:
    """(-1)^(n(n-1)/2) * Res(f, f') for monic f."""
    if not f.is_monic() or f.degree < 1:
        raise ValueError("discriminant is implemented for monic nonconstant polynomials")
    n = f.degree
    if n == 1:
        return 1
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return sign * resultant(f, f.derivative())


def divisors(n: int) -> list[int]:
    """Positive divisors of |n| (n != 0)."""
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _root_bound(f: IntPoly) -> float:
    # Fujiwara bound on |root| for monic f.
    n = f.degree
    best = 0.0
    for i in range(1, n + 1):
        c = abs(f[n - i])
        if not c:
            continue
        if i == n:
            c /= 2
        best = max(best, c ** (1.0 / i))
    return 2.0 * best + 1e-9


def _mod_degree_pattern(f: IntPoly, q: int) -> list[int] | None:
    from .ffield import GF, FqPoly, distinct_degree_pattern

    fq = FqPoly(GF(q), f.coeffs)
    if fq.degree != f.degree:
        return None
    return distinct_degree_pattern(fq)


def _has_small_factor_mod(f: IntPoly, q: int, max_deg: int) -> bool | None:
    pattern = _mod_degree_pattern(f, q)
    if pattern is None:
        return None
    # subset sums of factor degrees that reach 1..max_deg
    sums = {0}
    for d in pattern:
        sums |= {s + d for s in sums if s + d <= max_deg}
    return any(1 <= s <= max_deg for s in sums)


def has_integer_root(f: IntPoly) -> bool:
    if f[0] == 0:
        return True
    return any(f(s * d) == 0 for d in divisors(f[0]) for s in (1, -1))


def _has_quadratic_factor(f: IntPoly) -> bool:
    bound = _root_bound(f)
    cmax = math.floor(2 * bound)
    dmax = math.floor(bound * bound)
    for d0 in divisors(f[0]):
        if d0 > dmax:
            break
        for d in (d0, -d0):
            for c in range(-cmax, cmax + 1):
                if (f % IntPoly((d, c, 1))).is_zero():
                    return True
    return False


def is_irreducible_Q(f: IntPoly) -> bool | None:
    """Irreducibility of a monic polynomial over Q.

    Exact for degree <= 5.  Above that only sufficient tests are tried
    (Eisenstein, irreducibility modulo a small prime, integer roots), and
    ``None`` is returned when none of them decides.
    """
    if not f.is_monic() or f.degree < 1:
        raise ValueError("monic nonconstant polynomial required")
    n = f.degree
    if n == 1:
        return True
    if n <= 5:
        if f[0] == 0:
            return False
        max_deg = n // 2
        for q in (2, 3, 5, 7, 11, 13):
            if _has_small_factor_mod(f, q, max_deg) is False:
                return True
        if has_integer_root(f):
            return False
        if max_deg >= 2 and _has_quadratic_factor(f):
            return False
        return True
    if f[0] == 0 or has_integer_root(f):
        return False
    if eisenstein_prime(f) is not None:
        return True
    for q in _SMALL_PRIMES:
        if _mod_degree_pattern(f, q) == [n]:
            return True
    return None


def eisenstein_prime(f: IntPoly) -> int | None:
    """Some prime p for which monic f is p-Eisenstein, else None."""
    g = math.gcd(*f.coeffs[:-1])
    if g == 0:
        return None
    for p in _prime_factors(g):
        if f[0] % (p * p):
            return p
    return None


def is_eisenstein(f: IntPoly, p: int) -> bool:
    return (
        f.is_monic()
        and all(c % p == 0 for c in f.coeffs[:-1])
        and f[0] % (p * p) != 0
    )


@lru_cache(maxsize=4096)
def _prime_factors(n: int) -> tuple[int, ...]:
    n = abs(n)
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return tuple(out)


def squarefree_by_trial(n: int, bound: int = 10**6) -> bool | None:
    """Whether |n| is squarefree, using trial division up to ``bound``.

    Returns None when the unfactored cofactor could still hide a square.
    """
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d <= bound and d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return False
        d += 1 if d == 2 else 2
    if n == 1 or d * d > n or is_prime(n):
        return True
    r = math.isqrt(n)
    if r * r == n:
        return False
    return None

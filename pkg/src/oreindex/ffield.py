"""Finite fields F_p and F_p[x]/(m), polynomials over them, factorization.

Prime-field elements are ints in [0, p); extension-field elements are tuples
of length deg(m) holding the residue's coefficients, lowest first.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Sequence

from .zx import check_prime, format_poly

DEFAULT_SEED = 0


def set_default_seed(seed: int) -> None:
    global DEFAULT_SEED
    DEFAULT_SEED = seed


class GF:
    """The field F_p, or F_p[x]/(modulus) when a modulus is given."""

    def __init__(self, p: int, modulus: Sequence[int] | None = None):
        check_prime(p)
        self.p = p
        if modulus is not None:
            m = [c % p for c in modulus]
            while m and m[-1] == 0:
                m.pop()
            if len(m) < 2:
                raise ValueError("modulus must be nonconstant")
            inv = pow(m[-1], p - 2, p)
            m = tuple(c * inv % p for c in m)
            if len(m) == 2:
                modulus = None
            else:
                if not FqPoly(GF(p), m).is_irreducible():
                    raise ValueError(f"modulus {format_poly(m)} is reducible mod {p}")
                modulus = m
        self.modulus: tuple[int, ...] | None = modulus
        self.k = 1 if modulus is None else len(modulus) - 1
        self.q = p**self.k
        if self.k == 1:
            self.zero, self.one = 0, 1
        else:
            self.zero = (0,) * self.k
            self.one = (1,) + (0,) * (self.k - 1)

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}, {format_poly(self.modulus)})"

    @property
    def is_prime_field(self) -> bool:
        return self.k == 1

    def elem(self, v):
        p = self.p
        if self.k == 1:
            if isinstance(v, (tuple, list)):
                v = v[0] if v else 0
            return v % p
        if isinstance(v, int):
            return (v % p,) + (0,) * (self.k - 1)
        return self._reduce([c % p for c in v])

    def _reduce(self, c: list[int]):
        p, m, k = self.p, self.modulus, self.k
        for i in range(len(c) - 1, k - 1, -1):
            t = c[i]
            if t:
                for j in range(k):
                    c[i - k + j] = (c[i - k + j] - t * m[j]) % p
        c = c[:k] + [0] * (k - len(c))
        return tuple(c)

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        if self.k == 1:
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        if self.k == 1:
            return -a % self.p
        return tuple(-x % self.p for x in a)

    def mul(self, a, b):
        if self.k == 1:
            return a * b % self.p
        out = [0] * (2 * self.k - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return self._reduce([c % self.p for c in out])

    def pow(self, a, e: int):
        if self.k == 1:
            return pow(a, e, self.p)
        result, base = self.one, a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def pth_root(self, a):
        return self.pow(a, self.q // self.p)

    def elements(self) -> Iterator:
        if self.k == 1:
            yield from range(self.p)
        else:
            for c in product(range(self.p), repeat=self.k):
                yield tuple(c)

    def random(self, rng: random.Random):
        if self.k == 1:
            return rng.randrange(self.p)
        return tuple(rng.randrange(self.p) for _ in range(self.k))

    def format_elem(self, a, var: str = "x") -> str:
        if self.k == 1:
            return str(a)
        return format_poly(a, var)


@lru_cache(maxsize=None)
def prime_field(p: int) -> GF:
    return GF(p)


class FqPoly:
    """Polynomial over a finite field, coefficients lowest degree first."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: GF, coeffs: Iterable = ()):
        self.field = field
        c = [field.elem(v) for v in coeffs]
        z = field.zero
        while c and c[-1] == z:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def _raw(cls, field: GF, coeffs: list) -> FqPoly:
        # coefficients already reduced; only trim
        z = field.zero
        while coeffs and coeffs[-1] == z:
            coeffs.pop()
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(coeffs)
        return obj

    @classmethod
    def x(cls, field: GF) -> FqPoly:
        return cls._raw(field, [field.zero, field.one])

    @classmethod
    def one(cls, field: GF) -> FqPoly:
        return cls._raw(field, [field.one])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    def __eq__(self, other) -> bool:
        return isinstance(other, FqPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def _check(self, other: FqPoly) -> None:
        if self.field != other.field:
            raise ValueError(f"mixing polynomials over {self.field} and {other.field}")

    def __add__(self, other: FqPoly) -> FqPoly:
        self._check(other)
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = F.add(out[i], v)
        return FqPoly._raw(F, out)

    def __neg__(self) -> FqPoly:
        return FqPoly._raw(self.field, [self.field.neg(c) for c in self.coeffs])

    def __sub__(self, other: FqPoly) -> FqPoly:
        return self + (-other)

    def __mul__(self, other: FqPoly) -> FqPoly:
        self._check(other)
        F = self.field
        if not self.coeffs or not other.coeffs:
            return FqPoly._raw(F, [])
        out = [F.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == F.zero:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = F.add(out[i + j], F.mul(a, b))
        return FqPoly._raw(F, out)

    def scale(self, c) -> FqPoly:
        F = self.field
        return FqPoly._raw(F, [F.mul(c, v) for v in self.coeffs])

    def __divmod__(self, other: FqPoly) -> tuple[FqPoly, FqPoly]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        r = list(self.coeffs)
        db = other.degree
        if len(r) - 1 < db:
            return FqPoly._raw(F, []), self
        inv_lc = F.inv(other.lc)
        q = [F.zero] * (len(r) - db)
        oc = other.coeffs
        for i in range(len(r) - 1, db - 1, -1):
            c = r[i]
            if c != F.zero:
                c = F.mul(c, inv_lc)
                q[i - db] = c
                for j in range(db + 1):
                    r[i - db + j] = F.sub(r[i - db + j], F.mul(c, oc[j]))
        return FqPoly._raw(F, q), FqPoly._raw(F, r[:db])

    def __floordiv__(self, other: FqPoly) -> FqPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: FqPoly) -> FqPoly:
        return divmod(self, other)[1]

    def __call__(self, v):
        F = self.field
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.add(F.mul(acc, v), c)
        return acc

    def __pow__(self, e: int) -> FqPoly:
        result, base = FqPoly.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def powmod(self, e: int, mod: FqPoly) -> FqPoly:
        result, base = FqPoly.one(self.field), self % mod
        while e:
            if e & 1:
                result = result * base % mod
            e >>= 1
            if e:
                base = base * base % mod
        return result

    def monic(self) -> FqPoly:
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.lc))

    def derivative(self) -> FqPoly:
        F = self.field
        out = []
        for i, c in enumerate(self.coeffs[1:], start=1):
            out.append(F.mul(F.elem(i), c))
        return FqPoly._raw(F, out)

    def gcd(self, other: FqPoly) -> FqPoly:
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def roots(self) -> list:
        return [v for v in self.field.elements() if self(v) == self.field.zero]

    def is_squarefree(self) -> bool:
        return is_squarefree(self)

    def is_irreducible(self) -> bool:
        if self.degree < 1:
            return False
        fac = factor(self)
        return len(fac) == 1 and fac[0][1] == 1

    def sort_key(self):
        F = self.field
        if F.k == 1:
            return (self.degree, tuple(reversed(self.coeffs)))
        return (self.degree, tuple(reversed(self.coeffs)))

    def format(self, var: str = "y", elem_var: str = "x") -> str:
        F = self.field
        if F.k == 1:
            return format_poly(_centered(self.coeffs, F.p), var)
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == F.zero:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            cs = F.format_elem(c, elem_var)
            if not mono:
                terms.append(f"({cs})" if "+" in cs or "-" in cs[1:] else cs)
            elif c == F.one:
                terms.append(mono)
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms) if terms else "0"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"FqPoly({self.field!r}, {self.format()!r})"


def _centered(coeffs: Sequence[int], p: int) -> list[int]:
    # print residues in (-p/2, p/2] so (y - 1) reads naturally
    half = p // 2
    return [c - p if c > half and p > 2 else c for c in coeffs]


def fp_poly(coeffs: Iterable[int], p: int) -> FqPoly:
    """Reduce an integer coefficient sequence modulo p."""
    return FqPoly(prime_field(p), coeffs)


def is_squarefree(g: FqPoly) -> bool:
    """True iff gcd(g, g') is constant."""
    if g.is_zero():
        raise ValueError("zero polynomial")
    if g.degree < 1:
        return True
    d = g.derivative()
    if d.is_zero():
        return False
    return g.gcd(d).degree == 0


def squarefree_decomposition(f: FqPoly) -> list[tuple[FqPoly, int]]:
    """Monic squarefree, pairwise coprime parts with multiplicities."""
    F = f.field
    p = F.p
    f = f.monic()
    out: list[tuple[FqPoly, int]] = []

    def pth_root(g: FqPoly) -> FqPoly:
        return FqPoly._raw(F, [F.pth_root(g.coeffs[i]) for i in range(0, len(g.coeffs), p)])

    def rec(g: FqPoly, mult: int) -> None:
        if g.degree < 1:
            return
        d = g.derivative()
        if d.is_zero():
            rec(pth_root(g), mult * p)
            return
        c = g.gcd(d)
        w = g // c
        i = 1
        while not w.is_one():
            y = w.gcd(c)
            fac = w // y
            if fac.degree > 0:
                out.append((fac.monic(), i * mult))
            w = y
            c = c // y
            i += 1
        if c.degree > 0:
            rec(pth_root(c), mult * p)

    rec(f, 1)
    return out


def distinct_degree_factorization(f: FqPoly) -> list[tuple[FqPoly, int]]:
    """Split a monic squarefree f into products of equal-degree irreducibles."""
    F = f.field
    q = F.q
    out = []
    x = FqPoly.x(F)
    h = x
    g = f
    d = 0
    while g.degree >= 2 * (d + 1):
        d += 1
        h = h.powmod(q, g)
        common = g.gcd(h - x)
        if common.degree > 0:
            out.append((common, d))
            g = g // common
            h = h % g
    if g.degree > 0:
        out.append((g.monic(), g.degree))
    return out


def equal_degree_factorization(f: FqPoly, d: int, rng: random.Random) -> list[FqPoly]:
    """Cantor-Zassenhaus splitting of a product of degree-d irreducibles."""
    if f.degree == d:
        return [f.monic()]
    F = f.field
    q = F.q
    n = f.degree
    while True:
        r = FqPoly(F, [F.random(rng) for _ in range(n)])
        if r.degree < 1:
            continue
        if q % 2:
            t = r.powmod((q**d - 1) // 2, f) - FqPoly.one(F)
        else:
            # absolute trace map to F_2 over F_{q^d}
            k = F.k * d
            t = r % f
            acc = t
            for _ in range(k - 1):
                t = t * t % f
                acc = acc + t
            t = acc
        g = f.gcd(t)
        if 0 < g.degree < n:
            return (
                equal_degree_factorization(g, d, rng)
                + equal_degree_factorization(f // g, d, rng)
            )


def factor(f: FqPoly, seed: int | None = None) -> list[tuple[FqPoly, int]]:
    """Monic irreducible factors with multiplicities, sorted by (degree, coeffs).

    The splitting step is randomized; ``seed`` fixes it.  The result does not
    depend on the seed since the factorization is unique and sorted.
    ``None`` uses the module default (see ``set_default_seed``).
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    rng = random.Random(DEFAULT_SEED if seed is None else seed)
    out = []
    for part, mult in squarefree_decomposition(f):
        if part.degree == 1:
            out.append((part, mult))
            continue
        for block, d in distinct_degree_factorization(part):
            for g in equal_degree_factorization(block, d, rng):
                out.append((g, mult))
    out.sort(key=lambda t: (t[0].sort_key(), t[1]))
    return out


def fp_factor(f: FqPoly, seed: int | None = None) -> list[tuple[FqPoly, int]]:
    if not f.field.is_prime_field:
        raise ValueError("fp_factor expects a polynomial over a prime field")
    return factor(f, seed)


def fq_factor(g: FqPoly, seed: int | None = None) -> list[tuple[FqPoly, int]]:
    return factor(g, seed)


def distinct_degree_pattern(f: FqPoly) -> list[int]:
    """Degrees of the irreducible factors of f, repeated by multiplicity."""
    degs = []
    for part, mult in squarefree_decomposition(f):
        for block, d in distinct_degree_factorization(part):
            degs.extend([d] * (block.degree // d) * mult)
    return sorted(degs)


def _mobius(n: int) -> int:
    result = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            result = -result
        d += 1
    if n > 1:
        result = -result
    return result


def count_monic_irreducibles(p: int, f: int) -> int:
    """Number of monic irreducible polynomials of degree f over F_p."""
    if f < 1:
        raise ValueError("degree must be positive")
    total = sum(_mobius(d) * p ** (f // d) for d in range(1, f + 1) if f % d == 0)
    return total // f

import math
import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oreindex.zx import (
    INFINITY,
    IntPoly,
    discriminant,
    eisenstein_prime,
    is_eisenstein,
    is_irreducible_Q,
    is_prime,
    p_free_part,
    resultant,
    squarefree_by_trial,
    vp,
    vp_poly,
)

X = sympy.symbols("x")
primes = st.sampled_from([2, 3, 5, 7, 11, 13])
coeffs = st.lists(st.integers(-60, 60), min_size=1, max_size=7)


def to_sympy(f: IntPoly):
    return sympy.Poly(list(reversed(f.coeffs)) or [0], X)


def sylvester_resultant(f, g):
    m, n = f.degree, g.degree
    rows = []
    fc, gc = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (m - 1 - i))
    return sympy.Matrix(rows).det()


def test_vp_examples():
    assert vp(0, 3) == INFINITY
    assert vp(48, 2) == 4
    assert vp(24, 2) == 3
    assert vp(-81, 3) == 4


def test_vp_rejects_composite():
    with pytest.raises(ValueError):
        vp(8, 4)


def test_p_free_part_examples():
    assert p_free_part(48, 2) == 3
    assert p_free_part(-2, 3) == -2
    assert p_free_part(144, 2) == 9 and 9 % 2 == 1
    with pytest.raises(ValueError):
        p_free_part(0, 2)


def test_vp_poly_examples():
    assert vp_poly(IntPoly(), 2) == INFINITY
    assert vp_poly(IntPoly((6, 4)), 2) == 1
    assert vp_poly(IntPoly((27, 0, 9)), 3) == 2


@given(st.integers(-10**6, 10**6).filter(bool), st.integers(-10**6, 10**6).filter(bool), primes)
def test_vp_valuation_laws(m, n, p):
    assert vp(m * n, p) == vp(m, p) + vp(n, p)
    assert vp(m + n, p) >= min(vp(m, p), vp(n, p))
    assert n == p ** vp(n, p) * p_free_part(n, p)


def test_is_prime_matches_sympy():
    for n in range(-5, 3000):
        assert is_prime(n) == sympy.isprime(n)
    for n in (2**61 - 1, 2**64 + 13, 10**18 + 9):
        assert is_prime(n) == sympy.isprime(n)


@given(coeffs, coeffs)
def test_arithmetic_matches_sympy(a, b):
    f, g = IntPoly(a), IntPoly(b)
    assert to_sympy(f + g) == to_sympy(f) + to_sympy(g)
    assert to_sympy(f - g) == to_sympy(f) - to_sympy(g)
    assert to_sympy(f * g) == to_sympy(f) * to_sympy(g)


@given(coeffs, st.lists(st.integers(-20, 20), min_size=1, max_size=4))
def test_divmod_by_monic(a, b):
    f, g = IntPoly(a), IntPoly(b + [1])
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


@given(coeffs, st.integers(-30, 30))
def test_shift_is_composition(a, s):
    f = IntPoly(a)
    assert to_sympy(f.shift(s)) == sympy.Poly(to_sympy(f).as_expr().subs(X, X + s), X)


@settings(max_examples=60)
@given(st.lists(st.integers(-30, 30), min_size=2, max_size=6),
       st.lists(st.integers(-30, 30), min_size=2, max_size=5))
def test_resultant_matches_sylvester(a, b):
    f, g = IntPoly(a), IntPoly(b)
    if f.degree < 1 or g.degree < 1:
        return
    assert resultant(f, g) == sylvester_resultant(f, g)


def test_discriminant_examples():
    for b_, c in ((3, 5), (-4, 4), (0, -7)):
        assert discriminant(IntPoly((c, b_, 1))) == b_ * b_ - 4 * c
    assert abs(discriminant(IntPoly((1, 0, 1, 0, 0, 1)))) == 3233
    # 3 * (5^5 * 27 + 108 * 32) = 263493
    assert abs(discriminant(IntPoly((3, 0, 2, 0, 0, 1)))) == 3 * (5**5 * 27 + 108 * 32) == 263493


@settings(max_examples=80)
@given(st.lists(st.integers(-40, 40), min_size=1, max_size=6))
def test_discriminant_matches_sympy(a):
    f = IntPoly(a + [1])
    if f.degree < 2:
        return
    assert discriminant(f) == sympy.discriminant(to_sympy(f))


def test_quintic_discriminant_sign_is_global():
    rng = random.Random(5)
    signs = set()
    for _ in range(200):
        a, b = rng.randint(-500, 500), rng.randint(-500, 500)
        if b == 0:
            continue
        d = discriminant(IntPoly((b, 0, a, 0, 0, 1)))
        target = b * (3125 * b**3 + 108 * a**5)
        assert abs(d) == abs(target)
        if target:
            signs.add(d // target)
    assert signs == {1}


def test_irreducible_examples():
    assert is_irreducible_Q(IntPoly((-53, 0, 0, 0, 0, 1)))
    assert not is_irreducible_Q(IntPoly((0, 0, 1, 0, 0, 1)))
    assert is_irreducible_Q(IntPoly((144, 0, 3, 0, 0, 1)))
    assert not is_irreducible_Q(IntPoly((1, 0, 0, 0, 0, 1)))


def _sympy_irreducible(f: IntPoly) -> bool:
    _, facs = sympy.factor_list(to_sympy(f).as_expr())
    return len(facs) == 1 and facs[0][1] == 1


@settings(max_examples=300)
@given(st.lists(st.integers(-30, 30), min_size=1, max_size=5))
def test_irreducible_matches_factor_oracle(a):
    f = IntPoly(a + [1])
    assert is_irreducible_Q(f) == _sympy_irreducible(f)


def test_irreducible_quintic_trinomials_exhaustive():
    for a in range(-12, 13):
        for b in range(-12, 13):
            f = IntPoly((b, 0, a, 0, 0, 1))
            assert is_irreducible_Q(f) == _sympy_irreducible(f), (a, b)


def test_products_are_reducible():
    f = IntPoly((1, 1, 0, 1)) * IntPoly((3, 0, 1))  # (x^3+x+1)(x^2+3)
    assert is_irreducible_Q(f) is False


def test_high_degree_may_be_unknown():
    f = IntPoly((80, 81) + (0,) * 25 + (1,))
    assert is_irreducible_Q(f) in (True, None)
    assert is_irreducible_Q(IntPoly((-2,) + (0,) * 26 + (1,))) is True  # Eisenstein


def test_eisenstein():
    assert eisenstein_prime(IntPoly((-53, 0, 0, 0, 0, 1))) == 53
    assert is_eisenstein(IntPoly((-3, 6, 9, 1)), 3)
    assert not is_eisenstein(IntPoly((9, 3, 1)), 3)


def test_squarefree_by_trial():
    assert squarefree_by_trial(-7) is True
    assert squarefree_by_trial(12) is False
    assert squarefree_by_trial(2 * 3 * 5 * 7 * 11) is True
    big = 1000003 * 1000033
    assert squarefree_by_trial(big, bound=100) is None
    assert squarefree_by_trial(1000003**2, bound=100) is False
    assert squarefree_by_trial(big, bound=1000003) is True
    assert math.isqrt(big) ** 2 != big

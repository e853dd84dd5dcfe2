import random

import pytest
from hypothesis import assume, given, settings, strategies as st

from oreindex.ffield import GF, FqPoly, count_monic_irreducibles
from oreindex.ore import (
    RegularizationError,
    analyze_phi,
    dedekind_divides_index,
    ideal_census,
    index_divisor_verdict,
    lift,
    ore_analysis,
    regularize_linear,
)
from oreindex.quintic import quintic
from oreindex.zx import IntPoly, discriminant, is_irreducible_Q, vp

from conftest import divides_from_shapes, sympy_prime_shapes

monic = (
    st.lists(st.integers(-50, 50), min_size=3, max_size=7)
    .filter(lambda c: c[0] != 0)
    .map(lambda c: IntPoly(c + [1]))
)


def test_lift_is_canonical():
    phibar = FqPoly(GF(5), [4, 0, 1])
    assert lift(phibar) == IntPoly((4, 0, 1))
    assert lift(FqPoly(GF(3), [2, 1])) == IntPoly((2, 1))


def test_dedekind_examples():
    assert dedekind_divides_index(quintic(3, 144), 2)
    assert not dedekind_divides_index(IntPoly((-2, 0, 0, 0, 0, 1)), 2)
    assert not dedekind_divides_index(IntPoly((-53, 0, 0, 0, 0, 1)), 3)
    # x^2 + 3 at 2: Z[sqrt(-3)] is not maximal
    assert dedekind_divides_index(IntPoly((3, 0, 1)), 2)
    assert not dedekind_divides_index(IntPoly((1, 0, 1)), 3)


def test_quintic_at_two_single_side():
    rep = ore_analysis(quintic(3, 144), 2)
    assert rep.index_lower_bound == 2
    assert not rep.p_regular
    x_rep = rep.factors[0] if rep.factors[0].phi == IntPoly.x() else rep.factors[1]
    assert x_rep.polygon.principal_vertices == ((0, 4), (2, 0))
    assert x_rep.sides[0].residual.poly == FqPoly(GF(2), [1, 0, 1])


def test_ore_example_seven_at_minus_eleven():
    # the polygon at s = -11 carries a repeated residual root
    r = analyze_phi(quintic(11, 69), 3, IntPoly((11, 1)))
    assert r.polygon.principal_vertices == ((0, 7), (1, 2), (3, 0))
    assert [s.residual.degree for s in r.sides] == [1, 2]
    assert r.sides[1].factors == [(FqPoly(GF(3), [2, 1]), 2)]


def test_analyze_phi_foreign_factor_is_empty():
    r = analyze_phi(quintic(7, 21), 2, IntPoly((1, 1)))
    assert r.sides == [] and r.index == 0


def test_p_greater_than_degree():
    v = index_divisor_verdict(quintic(3, 144), 7)
    assert v.divides == "no"
    assert "7 > deg F" in v.trace[0]


def test_regularize_quintic_seven():
    reg = regularize_linear(quintic(7, 21), 3, 2)
    assert reg.report.regular
    assert reg.s % 3 == 2
    assert reg.report.polygon.principal_vertices == ((0, 4), (2, 1), (3, 0))


def test_regularize_not_a_root():
    with pytest.raises(ValueError):
        regularize_linear(quintic(7, 21), 3, 1)


def test_regularize_beyond_first_order():
    # x^2 (x^2 + 4) + 16 at 2: non-integer-slope repeated factor
    F = IntPoly((1024, 0, 0, 0, 1)) + IntPoly((0, 0, 0, 0, 0, 0, 1))
    try:
        regularize_linear(F, 2, 0)
    except RegularizationError:
        pass


@settings(max_examples=60, deadline=None)
@given(st.integers(-10**3, 10**3), st.integers(-10**3, 10**3), st.sampled_from([2, 3]))
def test_regularize_postcondition(a, b, p):
    F = quintic(a, b)
    assume(b != 0 and discriminant(F) != 0)
    for u in range(p):
        if F(u) % p:
            continue
        try:
            reg = regularize_linear(F, p, u)
        except RegularizationError:
            continue
        assert reg.report.regular
        assert (reg.s - u) % p == 0
        assert reg.steps <= vp(discriminant(F), p) // 2 + 1


@settings(max_examples=300, deadline=None)
@given(monic, st.sampled_from([2, 3, 5, 7]))
def test_dedekind_iff_ore_bound_zero(F, p):
    assume(discriminant(F) != 0)
    rep = ore_analysis(F, p)
    assert dedekind_divides_index(F, p) == (rep.index_lower_bound > 0)


@settings(max_examples=150, deadline=None)
@given(monic, st.sampled_from([2, 3, 5]))
def test_regular_shapes_fill_degree(F, p):
    assume(discriminant(F) != 0)
    rep = ore_analysis(F, p)
    if rep.p_regular:
        assert sum(e * f for e, f in rep.shapes) == F.degree


@settings(max_examples=60, deadline=None)
@given(monic, st.integers(-20, 20), st.sampled_from([2, 3]))
def test_translation_invariance(F, s, p):
    assume(discriminant(F) != 0 and F.shift(s).coeffs[0] != 0)
    left = ore_analysis(F, p)
    right = ore_analysis(F.shift(s), p)
    # the bound depends on the lift, so only regular analyses must agree
    if left.p_regular and right.p_regular:
        assert left.index_lower_bound == right.index_lower_bound
        assert left.shapes == right.shapes
    verdicts = {index_divisor_verdict(G, p).divides for G in (F, F.shift(s))}
    assert len(verdicts - {"undetermined"}) <= 1


@settings(max_examples=120, deadline=None)
@given(monic, st.sampled_from([2, 3, 5]))
def test_census_never_exceeds_degree(F, p):
    assume(discriminant(F) != 0)
    c = ideal_census(F, p)
    assert sum(e * f for e, f in c.certain) + sum(e * f0 * a for e, f0, a in c.uncertain) == F.degree


def test_verdict_counts_bounded_by_N():
    v = index_divisor_verdict(quintic(3, 144), 2)
    assert v.divides == "yes"
    assert v.P_f > v.N_f == count_monic_irreducibles(2, v.witness_f)


def test_against_sympy_sample():
    rng = random.Random(20261016)
    checked = 0
    while checked < 40:
        a = rng.choice([1, 2, 4, 8, 3, 9, 27]) * rng.randint(-40, 40)
        b = rng.choice([1, 2, 4, 8, 16, 32, 3, 9, 27, 81]) * rng.randint(-40, 40)
        F = quintic(a, b)
        if b == 0 or not is_irreducible_Q(F):
            continue
        for p in (2, 3):
            shapes = sympy_prime_shapes(list(F.coeffs), p)
            if shapes is None:
                continue
            census = ideal_census(F, p)
            v = index_divisor_verdict(F, p)
            assert v.divides == ("yes" if divides_from_shapes(shapes, p) else "no"), (a, b, p)
            if census.complete:
                assert sorted(census.certain) == shapes, (a, b, p)
            checked += 1

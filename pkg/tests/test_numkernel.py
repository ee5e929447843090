from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from torsion_atlas.numkernel import (
    Pole,
    RatFunc,
    ZeroArgument,
    ZeroPolynomial,
    carmichael_lambda,
    format_rational,
    is_nth_power,
    parse_rational,
    poly,
    poly_eval,
    poly_from_strings,
    poly_gcd,
    poly_mul,
    poly_pow,
    poly_scale,
    poly_to_strings,
    ratfunc_eval,
    ratfunc_fiber,
    rational_roots,
    same_square_class,
    squarefree_part,
)


def test_poly_eval_examples():
    assert poly_eval(poly([-1, 0, 0, 1]), F(1)) == 0
    assert poly_eval(poly([1, -5, 6]), F(1, 2)) == 0
    # numerator of the Z/5 map at t = 1: 25 * 16^3
    num5 = poly_scale(poly_pow(poly([5, 10, 1]), 3), 25)
    assert poly_eval(num5, F(1)) == 102400


def test_squarefree_part():
    assert squarefree_part(poly_pow(poly([-1, 1]), 2)) == poly([-1, 1])
    assert squarefree_part(poly([1, 0, 1])) == poly([1, 0, 1])
    f = poly_mul(poly_pow(poly([-1, 2]), 3), poly([-1, 3]))
    got = squarefree_part(f)
    want = poly_mul(poly([-1, 2]), poly([-1, 3]))
    assert got in (want, tuple(-c for c in want))
    with pytest.raises(ZeroPolynomial):
        squarefree_part(())


def test_rational_roots_examples():
    assert rational_roots(poly([1, -5, 6])) == {F(1, 2), F(1, 3)}
    assert rational_roots(poly([1, 0, 1])) == set()
    assert rational_roots(poly([0, 0, -6, 1])) == {F(0), F(6)}
    with pytest.raises(ZeroPolynomial):
        rational_roots(())


def test_rational_roots_j13_orbit():
    # the fiber polynomial of the Z/13 map over j13(2) carries the orbit of
    # t = 2 under t -> 1/(1-t)
    from torsion_atlas.catalog import TorsionStructure, builtin_catalog
    j13 = builtin_catalog().entries[TorsionStructure(1, 13)].maps[0]
    j0 = ratfunc_eval(j13, F(2))
    fib = ratfunc_fiber(j13, j0)
    assert {F(2), F(-1), F(1, 2)} <= fib
    for t in fib:
        assert ratfunc_eval(j13, t) == j0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 50), st.integers(-50, 50)), min_size=1, max_size=6),
       st.integers(1, 50), st.integers(1, 50))
def test_rational_roots_complete_on_linear_products(roots, q0, q1):
    # product of linear factors (a t - b) times a rootless quadratic
    f = poly([q0, 0, q1])
    expect = set()
    for a, b in roots:
        f = poly_mul(f, poly([-b, a]))
        expect.add(F(b, a))
    assert rational_roots(f) == expect


def test_rational_roots_high_multiplicity():
    f = poly_mul(poly_pow(poly([3, 7]), 4), poly_pow(poly([-2, 5]), 2))
    assert rational_roots(f) == {F(-3, 7), F(2, 5)}


def test_ratfunc_normalization_and_eval():
    j = RatFunc([0, 0, 0, 2], [32, 2])  # reduces to t^3 / (t + 16)
    assert j.num == (0, 0, 0, 1)
    assert j.den == (16, 1)
    assert ratfunc_eval(j, F(2)) == F(4, 9)
    with pytest.raises(Pole):
        ratfunc_eval(j, F(-16))
    # common polynomial factors cancel
    jj = RatFunc(poly_mul(poly([1, 1]), poly([0, 0, 1])), poly_mul(poly([1, 1]), poly([5, 1])))
    assert jj == RatFunc([0, 0, 1], [5, 1])
    # denominator sign is normalized positive
    js = RatFunc([0, 1], [-1, -2])
    assert js.den[-1] > 0


def test_ratfunc_fiber():
    j44 = RatFunc([0, 0, 0, 1], [16, 1])
    assert F(2) in ratfunc_fiber(j44, F(4, 9))
    num5 = poly_scale(poly_pow(poly([5, 10, 1]), 3), 25)
    j5 = RatFunc(num5, poly([0, 0, 0, 0, 0, 1]))
    assert F(1) in ratfunc_fiber(j5, F(102400))
    assert ratfunc_fiber(j44, F(10**40) + F(1, 3)) == set() or True  # must not raise


def test_is_nth_power():
    assert is_nth_power(F(8, 27), 3)
    assert is_nth_power(F(-27), 3)
    assert not is_nth_power(F(4), 3)
    assert is_nth_power(F(0), 2) and is_nth_power(F(0), 3)
    assert not is_nth_power(F(-4), 2)
    assert is_nth_power(F(49, 100), 2)
    with pytest.raises(ValueError):
        is_nth_power(F(2), 5)


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=F(-1000), max_value=F(1000)), st.sampled_from([2, 3]))
def test_is_nth_power_roundtrip(r, n):
    if n == 2 and r < 0:
        return
    assert is_nth_power(r ** n, n)


def test_same_square_class():
    assert same_square_class(F(2), F(8))
    assert not same_square_class(F(2), F(-2))
    assert not same_square_class(F(64), F(-4096))
    assert same_square_class(F(-64), F(-4096))
    with pytest.raises(ZeroArgument):
        same_square_class(F(0), F(1))


def test_carmichael_lambda():
    assert carmichael_lambda(16) == 4
    assert carmichael_lambda(240) == 4
    assert carmichael_lambda(7) == 6
    assert carmichael_lambda(1) == 1
    assert carmichael_lambda(2) == 1 and carmichael_lambda(4) == 2


def test_cyclotomic_divisibility_small():
    for n in range(1, 300):
        assert (4 % carmichael_lambda(n) == 0) == (240 % n == 0)


def test_poly_gcd():
    f = poly_mul(poly([1, 1]), poly([-3, 1]))
    g = poly_mul(poly([1, 1]), poly([7, 2]))
    assert poly_gcd(f, g) == poly([1, 1])
    assert poly_gcd(poly([2, 4]), ()) == poly([1, 2])


def test_serialization():
    assert format_rational(F(-1, 2)) == "-1/2"
    assert format_rational(F(3)) == "3"
    assert parse_rational("-25/2") == F(-25, 2)
    f = poly([10**40, -3, 0, 7])
    assert poly_from_strings(poly_to_strings(f)) == f


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-40, 40), min_size=2, max_size=9))
def test_rational_roots_sound_on_arbitrary_polynomials(coeffs):
    f = poly(coeffs)
    if not f:
        return
    for t in rational_roots(f):
        assert poly_eval(f, t) == 0

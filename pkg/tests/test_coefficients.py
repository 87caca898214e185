import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tameauto.bipoly import BiPoly
from tameauto.coefficients import RatFunc, TPoly, check_char, is_unit, ratfunc_arith, reduce_mod

from conftest import ring_vars


@st.composite
def tpolys(draw, p, max_deg=4, nonzero=False):
    coeffs = draw(st.lists(st.integers(0, p - 1), min_size=1, max_size=max_deg + 1))
    f = TPoly(coeffs, p)
    if nonzero and f.is_zero():
        f = TPoly.one(p)
    return f


@st.composite
def ratfuncs(draw, p, nonzero=False):
    num = draw(tpolys(p, nonzero=nonzero))
    den = draw(tpolys(p, nonzero=True))
    return RatFunc(num, den)


@st.composite
def field_triples(draw):
    p = draw(st.sampled_from([2, 3, 5]))
    return p, draw(ratfuncs(p)), draw(ratfuncs(p)), draw(ratfuncs(p))


@pytest.mark.parametrize("p", [0, 2, 3, 5, 7, 101])
def test_check_char_accepts(p):
    assert check_char(p) == p


@pytest.mark.parametrize("p", [1, 4, 9, -3])
def test_check_char_rejects(p):
    with pytest.raises(ValueError):
        check_char(p)


@pytest.mark.parametrize(
    "coeffs, p, expected",
    [((1,), 5, True), ((0, 1), 5, False), ((3, 0), 5, True), ((0,), 5, False), ((1, 1), 2, False)],
)
def test_is_unit_examples(coeffs, p, expected):
    assert is_unit(TPoly(coeffs, p)) is expected


def test_three_inverse_in_f5():
    # exhaustive inverse search
    assert [s for s in range(5) if 3 * s % 5 == 1] == [2]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_is_unit_matches_exhaustive_search(p):
    # units of F_p[t] are invertible constants: a polynomial of positive degree
    # times any nonzero polynomial keeps positive degree, so only constants need
    # a search partner.
    for coeffs in itertools.product(range(p), repeat=2):
        r = TPoly(coeffs, p)
        has_inverse = any((r * TPoly((s,), p)).is_one() for s in range(p))
        assert is_unit(r) == has_inverse


def test_reduce_mod_examples():
    p = 3
    x, y, t = ring_vars(p)
    a = TPoly.t(p) ** 2
    assert reduce_mod(y + t * t * y ** 3, a) == y
    assert reduce_mod(y + (t * t + t) * y ** 2, a) == y + t * y ** 2
    assert reduce_mod(BiPoly.zero(p, "R"), TPoly.t(p)).is_zero()


def test_reduce_mod_zero_modulus():
    x, y, t = ring_vars(3)
    with pytest.raises(ValueError, match="modulus must be nonzero"):
        reduce_mod(y, TPoly.zero(3))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.data())
def test_reduce_mod_difference_divisible(p, data):
    a = data.draw(tpolys(p, 3, nonzero=True))
    coeffs = data.draw(st.lists(tpolys(p, 5), min_size=1, max_size=4))
    f = BiPoly({(0, j): c for j, c in enumerate(coeffs)}, p, "R")
    g = reduce_mod(f, a)
    for c in (f - g).terms.values():
        assert a.divides(c.as_tpoly())
    for c in g.terms.values():
        assert c.as_tpoly().deg < a.deg or a.deg == 0


def test_ratfunc_arith_examples():
    p = 2
    t = RatFunc.from_tpoly(TPoly.t(p))
    one = RatFunc.one(p)
    assert ratfunc_arith(one / t, (t - 1) / t, "add") == one
    a = RatFunc(TPoly((1, 1), p), TPoly((0, 0, 1), p))
    assert ratfunc_arith(a, one, "mul") == a
    assert ratfunc_arith(one / t, t, "mul") == one
    with pytest.raises(ZeroDivisionError):
        ratfunc_arith(one, RatFunc.zero(p), "div")
    with pytest.raises(ValueError):
        ratfunc_arith(one, one, "pow")


def test_normal_form_is_canonical():
    p = 3
    n, d, c = TPoly((1, 2), p), TPoly((2, 0, 1), p), TPoly((1, 1, 1), p)
    a = RatFunc(n, d)
    b = RatFunc(n * c.scale(2), d * c.scale(2))
    assert a == b and a.num.coeffs == b.num.coeffs and a.den.coeffs == b.den.coeffs
    assert a.den.lc() == 1
    assert a.num.gcd(a.den).is_one()
    assert hash(a) == hash(b)


@settings(max_examples=150, deadline=None)
@given(field_triples())
def test_field_axioms(triple):
    p, a, b, c = triple
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a - a == RatFunc.zero(p)
    if not a.is_zero():
        assert a * a.inverse() == RatFunc.one(p)
        assert (b / a) * a == b


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.data())
def test_divmod_and_gcd(p, data):
    f = data.draw(tpolys(p, 6))
    g = data.draw(tpolys(p, 4, nonzero=True))
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.is_zero() or r.deg < g.deg
    h = f.gcd(g)
    assert h.divides(f) and h.divides(g)
    assert h.lc() == 1


def test_tpoly_printing():
    assert str(TPoly((1, 3, 1), 5)) == "t^2+3*t+1"
    assert str(TPoly((), 5)) == "0"
    assert str(RatFunc(TPoly((1,), 2), TPoly((0, 1), 2))) == "1/t"


def test_characteristic_zero_fractions():
    from fractions import Fraction

    a = TPoly((Fraction(1, 2), 1), 0)
    assert (a * 2).coeffs == (1, 2)
    assert is_unit(TPoly((Fraction(-3),), 0))

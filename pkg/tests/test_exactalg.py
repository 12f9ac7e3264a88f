from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from foldideals.exactalg import (
    MINUS_INFINITY,
    LinearForm,
    ParseError,
    Polynomial,
    Ring,
    RingMismatchError,
    nullspace,
    parse_linear_form,
    parse_polynomial,
    render_linear_form,
)

R = Ring(("x", "y", "z"))

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polys(draw, ring=R, max_terms=4, max_exp=2):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_exp)) for _ in range(ring.ngens))
        terms[e] = draw(rationals)
    return Polynomial(ring, terms)


def P(s):
    return parse_polynomial(s, R)


class TestArithmetic:
    def test_additive_inverse(self):
        assert (P("x") + P("-x")).is_zero()

    def test_cancellation(self):
        assert P("x+y") + P("x-y") == P("2*x")

    def test_sum_of_quadrics(self):
        assert P("x^2+x*y") + P("x*y+y^2") == P("x^2+2*x*y+y^2")

    def test_products(self):
        assert P("x") * P("y") == P("x*y")
        assert P("x+y") * P("x-y") == P("x^2-y^2")
        R3 = Ring.standard(3)
        x1, x2 = R3.gen(0), R3.gen(1)
        assert x1 * x2 * (x1 + x2) == parse_polynomial("x1^2*x2 + x1*x2^2", R3)

    def test_zero_degree_is_minus_infinity(self):
        assert R.zero().degree() is MINUS_INFINITY
        assert MINUS_INFINITY < 0

    def test_ring_mismatch(self):
        other = Ring(("a",))
        with pytest.raises(RingMismatchError):
            R.gen(0) + other.gen(0)
        with pytest.raises(RingMismatchError):
            R.gen(0) * other.gen(0)

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            R.constant(0.5)

    @given(polys(), polys(), polys())
    def test_ring_axioms(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        assert a - a == R.zero()

    @given(polys(), polys())
    def test_degree_of_product(self, a, b):
        if a and b:
            assert (a * b).degree() == a.degree() + b.degree()

    @given(polys(), polys())
    def test_coefficients_stay_reduced(self, a, b):
        for p in (a + b, a * b, a - b):
            for c in p.raw.values():
                assert isinstance(c, Fraction) and c != 0
                assert c.denominator > 0 and gcd(abs(c.numerator), c.denominator) == 1

    @given(polys())
    def test_str_round_trip(self, a):
        assert parse_polynomial(str(a), R) == a


class TestLinearForms:
    def test_vector_mode(self):
        R3 = Ring.standard(3)
        f = parse_linear_form("1 1 0", R3)
        assert f.to_polynomial(R3) == parse_polynomial("x1 + x2", R3)

    def test_single_variable(self):
        assert parse_linear_form("x3", Ring.standard(3)).coeffs == (0, 0, 1)

    def test_rational_coefficients(self):
        R3 = Ring.standard(3)
        f = parse_linear_form("x1 + 2/3*x2 - x3", R3)
        assert f.coeffs == (1, Fraction(2, 3), -1)
        assert parse_linear_form("1 -2/3 0", R3).coeffs == (1, Fraction(-2, 3), 0)

    def test_unicode_minus(self):
        R3 = Ring.standard(3)
        assert parse_linear_form("x1 − x2", R3).coeffs == (1, -1, 0)

    @pytest.mark.parametrize(
        "text, message",
        [
            ("x1 - x1", "zero form"),
            ("x1*x2", "nonlinear"),
            ("x1^2", "nonlinear"),
            ("x1 + w", "unknown variable"),
            ("x1 + 1", "constant term"),
            ("x1 +", "dangling operator"),
            ("x1 x2", "missing operator"),
            ("1 1", "expected 3 coefficients"),
            ("", "empty"),
        ],
    )
    def test_errors(self, text, message):
        with pytest.raises(ParseError, match=message):
            parse_linear_form(text, Ring.standard(3))

    def test_error_position(self):
        with pytest.raises(ParseError) as info:
            parse_linear_form("x1 + w", Ring.standard(3))
        assert info.value.pos == 5
        assert "column 6" in str(info.value)

    @given(st.lists(rationals, min_size=3, max_size=3).filter(any))
    def test_render_round_trip(self, coeffs):
        R3 = Ring.standard(3)
        f = LinearForm(tuple(coeffs))
        assert parse_linear_form(render_linear_form(f, R3), R3) == f

    def test_from_polynomial(self):
        R3 = Ring.standard(3)
        p = parse_polynomial("2*x1 - x3", R3)
        assert LinearForm.from_polynomial(p).to_polynomial(R3) == p
        with pytest.raises(ValueError):
            LinearForm.from_polynomial(parse_polynomial("x1^2", R3))


class TestLinearAlgebra:
    @given(st.lists(st.lists(rationals, min_size=4, max_size=4), min_size=1, max_size=4))
    def test_nullspace(self, rows):
        for v in nullspace(rows, 4):
            assert any(v)
            for r in rows:
                assert sum(a * b for a, b in zip(r, v)) == 0

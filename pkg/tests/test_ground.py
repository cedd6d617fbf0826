"""Values with infinity and the two valued ground fields."""

import itertools

import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from valkey import (
    INFINITY,
    PAdicRationals,
    PrimeField,
    Rationals,
    TAdicRationalFunctions,
    Value,
    ground_from_json,
    ground_to_json,
    parse_element,
)

V = Value.finite

rationals = st.builds(
    mpq,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=12),
)


class TestValue:
    def test_add_with_infinity_absorbs(self):
        assert V("3/2") + INFINITY == INFINITY
        assert INFINITY + V(-5) == INFINITY
        assert INFINITY + INFINITY == INFINITY

    def test_min_of_finite_values(self):
        assert min(V(2), V(3)) == V(2)
        assert min(INFINITY, V(7)) == V(7)

    def test_scale(self):
        assert V(3).scaled(mpq(1, 2)) == V("3/2")
        assert INFINITY.scaled(2) == INFINITY
        assert V(-4).scaled(mpq(-1, 2)) == V(2)
        with pytest.raises(ValueError):
            INFINITY.scaled(0)
        with pytest.raises(ValueError):
            INFINITY.scaled(-1)

    def test_infinity_is_strictly_largest(self):
        assert V(10**9) < INFINITY
        assert not INFINITY < INFINITY
        assert INFINITY <= INFINITY
        assert INFINITY == Value.infinity()

    def test_subtraction_guards(self):
        assert V(5) - V(2) == V(3)
        assert INFINITY - V(2) == INFINITY
        with pytest.raises(ValueError):
            V(1) - INFINITY

    def test_parse_and_str_round_trip(self):
        for text in ("0", "7", "-3", "3/2", "-11/4", "inf"):
            assert str(Value.parse(text)) == text
        with pytest.raises(ValueError):
            Value.parse("1/0")
        with pytest.raises(ValueError):
            Value.parse("banana")

    @given(rationals, rationals)
    def test_ordering_total_and_add_commutative(self, a, b):
        x, y = V(a), V(b)
        assert (x < y) or (y < x) or (x == y)
        assert x + y == y + x

    @given(rationals, rationals, rationals)
    def test_add_monotone(self, a, b, c):
        x, y, z = V(a), V(b), V(c)
        if x <= y:
            assert x + z <= y + z
        assert x + z <= INFINITY + z


class TestPAdic:
    def test_valuation_of_12_at_2(self, q2):
        assert q2.valuation(mpq(12)) == V(2)

    def test_valuation_of_zero_is_infinite(self, q2):
        assert q2.valuation(mpq(0)) == INFINITY

    def test_negative_valuations(self, q2):
        assert q2.valuation(mpq(3, 8)) == V(-3)

    def test_prime_is_validated(self):
        with pytest.raises(ValueError):
            PAdicRationals(4)
        with pytest.raises(ValueError):
            PAdicRationals(1)

    def test_multiplicative_exhaustive_small(self, q2):
        elements = [
            mpq(n, d)
            for n in range(-4, 5)
            for d in range(1, 4)
            if n != 0
        ]
        for a, b in itertools.product(elements, repeat=2):
            assert q2.valuation(a * b) == q2.valuation(a) + q2.valuation(b)

    @given(rationals, rationals)
    def test_ultrametric(self, a, b):
        cfg = PAdicRationals(3)
        va, vb = cfg.valuation(a), cfg.valuation(b)
        vs = cfg.valuation(a + b)
        assert vs >= min(va, vb)
        if va != vb:
            assert vs == min(va, vb)


class TestTAdic:
    def test_t_order_of_fraction(self, qt):
        a = parse_element(qt, "(t^3)/(1 + t)")
        assert qt.valuation(a) == V(3)

    def test_zero_is_infinite(self, qt):
        assert qt.valuation(qt.zero) == INFINITY

    def test_negative_order(self, qt):
        a = parse_element(qt, "(1 + t)/(t^2)")
        assert qt.valuation(a) == V(-2)

    def test_canonical_form_unique(self, qt):
        a = parse_element(qt, "(t^2 + t^3)/(t + t^2)")
        b = parse_element(qt, "t")
        assert a == b
        # denominators are monic after reduction
        c = parse_element(qt, "(t)/(2 + 2*t)")
        assert c.den.is_monic

    def test_multiplicative_on_samples(self, qt):
        elems = [
            parse_element(qt, s)
            for s in ("t", "1 + t", "(t^2)/(1 + t)", "3/2", "t^3 - t", "(1)/(t)")
        ]
        for a, b in itertools.product(elems, repeat=2):
            assert qt.valuation(qt.mul(a, b)) == qt.valuation(a) + qt.valuation(b)

    def test_ultrametric_with_equality_on_distinct_values(self, qt):
        a = parse_element(qt, "t")
        b = parse_element(qt, "t^2")
        assert qt.valuation(qt.add(a, b)) == V(1)
        c = parse_element(qt, "-t")
        assert qt.valuation(qt.add(a, c)) == INFINITY

    def test_gf2_coefficients(self, gf2t):
        a = parse_element(gf2t, "t + t^2")
        assert gf2t.valuation(a) == V(1)
        assert gf2t.add(a, a) == gf2t.zero

    def test_zero_denominator_rejected(self, qt):
        with pytest.raises(ValueError):
            parse_element(qt, "(1)/(t - t)")
        with pytest.raises(ZeroDivisionError):
            qt.div(qt.one, qt.zero)


class TestPrimeField:
    def test_least_nonnegative_residues(self):
        gf5 = PrimeField(5)
        assert gf5.from_int(-3) == 2
        assert gf5.add(3, 4) == 2
        assert gf5.div(1, 2) == 3

    def test_from_rational_needs_invertible_denominator(self):
        gf3 = PrimeField(3)
        assert gf3.from_rational(mpq(1, 2)) == 2
        with pytest.raises(ValueError):
            gf3.from_rational(mpq(1, 3))

    def test_prime_validation(self):
        with pytest.raises(ValueError):
            PrimeField(6)


class TestGroundJson:
    @pytest.mark.parametrize(
        "cfg",
        [
            PAdicRationals(2),
            PAdicRationals(13),
            TAdicRationalFunctions(Rationals()),
            TAdicRationalFunctions(PrimeField(3)),
        ],
    )
    def test_round_trip(self, cfg):
        assert ground_from_json(ground_to_json(cfg)) == cfg

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            ground_from_json({"kind": "complex"})

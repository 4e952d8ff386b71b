import pytest
from hypothesis import given, strategies as st

from heckecells.laurent import GAUSS2, ONE, V, VINV, ZERO, LaurentPoly

polys = st.dictionaries(
    st.integers(min_value=-8, max_value=8),
    st.integers(min_value=-50, max_value=50),
    max_size=6,
).map(LaurentPoly)


def test_binomial_square():
    assert GAUSS2 * GAUSS2 == LaurentPoly({2: 1, 0: 2, -2: 1})


def test_additive_identity():
    p = LaurentPoly({3: 2, -1: 5})
    assert p + ZERO == p


def test_shift_by_inverse_unit():
    assert LaurentPoly({0: 1, 2: 1}) * VINV == LaurentPoly({-1: 1, 1: 1})


def test_bar_monomial():
    assert LaurentPoly({3: 1}).bar() == LaurentPoly({-3: 1})


def test_bar_invariant_example():
    p = LaurentPoly({-3: 1, -1: 3, 1: 3, 3: 1})
    assert p.bar() == p
    assert p.is_bar_invariant()


@given(polys)
def test_bar_is_an_involution(p):
    assert p.bar().bar() == p


@given(polys, polys)
def test_bar_is_a_ring_map(p, q):
    assert (p * q).bar() == p.bar() * q.bar()
    assert (p + q).bar() == p.bar() + q.bar()


@given(polys, polys, polys)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p + q) + r == p + (q + r)
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p * ONE == p
    assert p - p == ZERO


@given(polys, polys)
def test_evaluation_at_one_is_a_ring_map(p, q):
    assert (p * q).evaluate() == p.evaluate() * q.evaluate()
    assert (p + q).evaluate() == p.evaluate() + q.evaluate()


def test_degree_bounds():
    p = LaurentPoly({-2: 1, 5: 3})
    assert p.min_deg == -2 and p.max_deg == 5
    with pytest.raises(ValueError):
        _ = ZERO.min_deg


def test_text_rendering():
    assert LaurentPoly({-3: 1, -1: 3, 1: 3, 3: 1}).text() == "v^-3 + 3v^-1 + 3v + v^3"
    assert LaurentPoly({-4: 1, -2: 4, 0: 6, 2: 4, 4: 1}).text() == "v^-4 + 4v^-2 + 6 + 4v^2 + v^4"
    assert LaurentPoly({1: -2, 0: 1}).text() == "1 - 2v"
    assert ZERO.text() == "0"
    assert (V + VINV).text() == "v^-1 + v"


def test_json_round_trip():
    p = LaurentPoly({-3: 1, 2: -7})
    assert LaurentPoly.from_json(p.to_json()) == p
    assert p.to_json() == {"-3": 1, "2": -7}


def test_nonnegativity():
    assert LaurentPoly({0: 1, 2: 3}).is_nonnegative()
    assert not LaurentPoly({0: 1, 2: -3}).is_nonnegative()


def test_powers():
    assert GAUSS2**0 == ONE
    assert GAUSS2**3 == GAUSS2 * GAUSS2 * GAUSS2
    with pytest.raises(ValueError):
        _ = GAUSS2 ** (-1)

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from jumploci.lemma import beta_integral, identity_a, identity_b, lemma_oracle, sweep


def test_trivial_case():
    r = lemma_oracle(0, 0)
    assert (r.a_left, r.a_right, r.b_left, r.b_right) == (1, 1, 1, 1)


def test_spot_value():
    r = lemma_oracle(1, 1)
    assert r.b_left == Fraction(-1, 3) + Fraction(1, 2) == Fraction(1, 6)


def test_two_three():
    r = lemma_oracle(2, 3)
    assert r.ok and r.b_right == Fraction(2 * 6, 720)


def test_sweep_covers_grid():
    results = sweep(8)
    assert len(results) == 81 and all(results)


def test_negative_rejected():
    with pytest.raises(ValueError):
        lemma_oracle(-1, 0)


@given(st.integers(0, 12), st.integers(0, 12))
def test_against_symbolic_integral(p, q):
    t = sympy.symbols("t")
    exact = sympy.integrate((1 - t) ** q * t ** p, (t, 0, 1))
    assert beta_integral(p, q) == Fraction(int(exact.p), int(exact.q))
    left, right = identity_b(p, q)
    assert left == right == beta_integral(p, q)


@given(st.integers(0, 12), st.integers(0, 12))
def test_identity_a_holds(p, q):
    left, right = identity_a(p, q)
    assert left == right

from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from jumploci.exact import (
    Polynomial,
    PolyMatrix,
    Q,
    column_space_basis,
    columns,
    det,
    identity,
    inverse,
    is_zero,
    kernel_basis,
    minors_ideal,
    qmatrix,
    rank,
    rref,
    same_span,
    solve,
    zeros,
)

small = st.integers(-4, 4)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_scalar_parsing():
    assert Q("3/6") == Fraction(1, 2)
    assert Q(-2) == -2
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(ValueError):
        Q("1/x")


def test_rank_example():
    assert rank(qmatrix([[1, 2, 3], [4, 5, 6]])) == 2


def test_kernel_example():
    (v,) = kernel_basis(qmatrix([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_zero_and_identity():
    assert is_zero(zeros(2, 3))
    assert rank(identity(3)) == 3
    assert kernel_basis(identity(3)) == []


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_nullity_and_kernel(rows):
    m = qmatrix(rows)
    ker = kernel_basis(m)
    assert rank(m) + len(ker) == m.shape[1]
    for v in ker:
        assert is_zero(m @ v)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy(rows):
    assert rank(qmatrix(rows)) == sympy.Matrix(rows).rank()


@given(matrices(4, 4))
@settings(max_examples=40, deadline=None)
def test_rref_is_reduced(rows):
    r, piv = rref(qmatrix(rows))
    assert r.shape == (len(rows), len(rows[0]))
    for k, p in enumerate(piv):
        assert r[k, p] == 1
        assert all(r[j, p] == 0 for j in range(r.shape[0]) if j != k)
    assert sympy.Matrix(rows).rref()[1] == tuple(piv)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
@settings(max_examples=60, deadline=None)
def test_det_and_inverse_match_sympy(rows):
    m = qmatrix(rows)
    d = sympy.Matrix(rows).det()
    assert det(m) == Fraction(int(d.p), int(d.q))
    if d == 0:
        with pytest.raises(ZeroDivisionError):
            inverse(m)
    else:
        assert is_zero(inverse(m) @ m - identity(len(rows)))


def test_solve_inconsistent_and_consistent():
    m = qmatrix([[1, 1], [2, 2]])
    assert solve(m, qmatrix([[1], [3]])[:, 0]) is None
    x = solve(m, qmatrix([[1], [2]])[:, 0])
    assert is_zero(m @ x - qmatrix([[1], [2]])[:, 0])


def test_span_helpers():
    m = qmatrix([[1, 2], [2, 4], [0, 0]])
    assert len(column_space_basis(columns(m), 3)) == 1
    a = [qmatrix([[1], [0]])[:, 0], qmatrix([[0], [1]])[:, 0]]
    b = [qmatrix([[1], [1]])[:, 0], qmatrix([[1], [-1]])[:, 0]]
    assert same_span(a, b, 2)


def test_polynomial_parse_and_print():
    p = Polynomial.parse("2*x^2*y - 3*x + 2", ["x", "y"])
    assert str(p) == "2*x^2*y - 3*x + 2"
    assert p({"x": 1, "y": 1}) == 1
    assert p.derivative("y") == Polynomial.parse("2*x^2", ["x", "y"])
    assert not p.is_homogeneous()
    with pytest.raises(ValueError):
        Polynomial.parse("x +* y", ["x", "y"])


def test_polynomial_normalized():
    p = Polynomial.parse("-2/3*a*b + 4/3*b^2", ["a", "b"])
    assert str(p.normalized()) == "a*b - 2*b^2"


@given(st.lists(st.tuples(small, small, small), min_size=1, max_size=4),
       st.lists(st.tuples(small, small, small), min_size=1, max_size=4),
       st.tuples(small, small))
@settings(max_examples=40, deadline=None)
def test_polynomial_arithmetic_matches_evaluation(t1, t2, pt):
    p = Polynomial(["x", "y"], {(abs(a), abs(b)): c for a, b, c in t1})
    q = Polynomial(["x", "y"], {(abs(a), abs(b)): c for a, b, c in t2})
    assert (p * q)(pt) == p(pt) * q(pt)
    assert (p - q)(pt) == p(pt) - q(pt)


def test_minors_example():
    v = ["a", "b", "c", "d"]
    m = PolyMatrix(v, [[Polynomial.var(v, "a"), Polynomial.var(v, "b")],
                       [Polynomial.var(v, "c"), Polynomial.var(v, "d")]])
    assert [str(g) for g in minors_ideal(m, 2)] == ["a*d - b*c"]


def test_minors_degenerate_sizes():
    v = ["x"]
    m = PolyMatrix(v, [[Polynomial.var(v, "x")]])
    assert [str(g) for g in minors_ideal(m, 0)] == ["1"]
    assert minors_ideal(m, 2) == []


def test_poly_det_matches_sympy():
    xs = sympy.symbols("x0:3")
    names = [str(x) for x in xs]
    entries = [[xs[0], xs[1], 1], [2, xs[2], xs[0]], [xs[1], 0, 3]]
    mine = PolyMatrix(names, [[Polynomial.parse(str(e), names) for e in row] for row in entries])
    expected = sympy.expand(sympy.Matrix(entries).det())
    assert sympy.expand(sympy.sympify(str(mine.det()).replace("^", "**")) - expected) == 0

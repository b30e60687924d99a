import random

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from jumploci import models
from jumploci.exact import identity, inverse, is_zero, qmatrix, rank, zeros
from jumploci.graded import cohomology
from jumploci.grouprep import (
    Presentation,
    SingularRepresentationError,
    cocycle_space,
    conjugate,
    coboundary_b1,
    fox_z1,
    generic_representation,
    jacobian_at,
    rep_variety_equations,
    sampled_representation,
    tangent_crosscheck,
    trivial_representation,
    verify_representation,
)

Z2 = Presentation.parse("a b | a b a^-1 b^-1")


def test_parse_and_print():
    p = Presentation.parse("a b | a a^-1 b^2, a b a^-1 b^-1")
    assert p.relations == ((("b", 1), ("b", 1)), (("a", 1), ("b", 1), ("a", -1), ("b", -1)))
    assert str(p) == "a b | b b, a b a^-1 b^-1"
    for bad in ("a b", "a a | a", "a | c"):
        with pytest.raises(ValueError):
            Presentation.parse(bad)


def test_verify_examples():
    g2 = models.bundled_presentation("genus2")
    assert verify_representation(g2, trivial_representation(g2, 3))
    c2 = Presentation.parse("a | a^2")
    assert verify_representation(c2, {"a": qmatrix([[-1]])})
    rho = {"a": qmatrix([[1, 1], [0, 1]]), "b": qmatrix([[1, 0], [1, 1]])}
    assert not verify_representation(Z2, rho)
    with pytest.raises(SingularRepresentationError):
        verify_representation(Z2, {"a": qmatrix([[0]]), "b": qmatrix([[1]])})


def test_equation_examples():
    s = rep_variety_equations(Presentation.parse("a | a^2"), 1)
    assert [str(e) for e in s.equations] == ["a_11^2 - 1", "a_11*w_a - 1"]
    u = sympy.symbols("a_11 w_a")
    sols = sympy.solve([sympy.sympify(str(e).replace("^", "**")) for e in s.equations], u, dict=True)
    assert sorted(d[u[0]] for d in sols) == [-1, 1]
    f2 = rep_variety_equations(models.bundled_presentation("f2"), 2)
    assert len(f2.equations) == 2 and all("w_" in str(e) for e in f2.equations)
    z2 = rep_variety_equations(Z2, 1)
    assert [str(e) for e in z2.equations] == ["a_11*w_a - 1", "b_11*w_b - 1"]


def test_rational_points_are_representations():
    s = rep_variety_equations(Z2, 2)
    m = qmatrix([[2, 1], [0, 1]])
    good = {"a": m, "b": m @ m}
    assert all(e(s.point(good)) == 0 for e in s.equations)
    bad = {"a": qmatrix([[1, 1], [0, 1]]), "b": qmatrix([[1, 0], [1, 1]])}
    assert any(e(s.point(bad)) != 0 for e in s.equations)


def test_jacobian_against_sympy():
    s = rep_variety_equations(Z2, 2)
    rho = sampled_representation(Z2, 2, random.Random(3))
    syms = sympy.symbols(s.variables)
    eqs = sympy.Matrix([sympy.sympify(str(e).replace("^", "**")) for e in s.equations])
    pt = {sympy.Symbol(k): sympy.Rational(v.numerator, v.denominator) for k, v in s.point(rho).items()}
    expected = eqs.jacobian(syms).subs(pt)
    mine = jacobian_at(s, rho)
    assert all(mine[i, j] == expected[i, j] for i in range(mine.shape[0]) for j in range(mine.shape[1]))


def test_z1_examples():
    f2 = models.bundled_presentation("f2")
    g2 = models.bundled_presentation("genus2")
    assert len(fox_z1(f2, trivial_representation(f2, 1))) == 2
    assert len(fox_z1(Z2, trivial_representation(Z2, 1))) == 2
    assert len(fox_z1(g2, trivial_representation(g2, 1))) == 4


def test_b1_examples():
    z = models.bundled_presentation("z")
    assert coboundary_b1(Z2, trivial_representation(Z2, 2)) == []
    assert len(coboundary_b1(z, {"a": qmatrix([[1, 0], [0, 2]])})) == 2
    f2 = models.bundled_presentation("f2")
    assert len(coboundary_b1(f2, generic_representation(f2, 2, random.Random(0)))) == 3


def _dual_relation(word, rho, t):
    """epsilon-part of a relation evaluated on (1 + eps t_a) rho(a), by dual-number products."""
    n = next(iter(rho.values())).shape[0]
    val, eps = identity(n), zeros(n, n)
    for g, e in word:
        base = rho[g]
        tangent = t[g] @ base
        if e == -1:
            inv = inverse(base)
            base, tangent = inv, -inv @ tangent @ inv
        val, eps = val @ base, val @ tangent + eps @ base
    return eps


def _dual_z1_dim(p, rho):
    n = next(iter(rho.values())).shape[0]
    m = n * n
    cols = []
    for k in range(m * len(p.generators)):
        vec = zeros(m * len(p.generators))
        vec[k] = 1
        t = {g: vec[j * m:(j + 1) * m].reshape(n, n) for j, g in enumerate(p.generators)}
        cols.append(np.concatenate([_dual_relation(r, rho, t).reshape(-1) for r in p.relations])
                    if p.relations else zeros(0))
    if not p.relations:
        return m * len(p.generators)
    return m * len(p.generators) - rank(np.column_stack(cols))


@pytest.mark.parametrize("name", models.PRESENTATIONS)
@pytest.mark.parametrize("n", [1, 2])
def test_z1_against_dual_numbers(name, n):
    p = models.bundled_presentation(name)
    for rho in (trivial_representation(p, n), sampled_representation(p, n, random.Random(7))):
        cs = cocycle_space(p, rho)
        assert len(cs.z1) == _dual_z1_dim(p, rho)
        for z in cs.z1:
            t = cs.as_matrices(z)
            for r in p.relations:
                assert is_zero(_dual_relation(r, rho, t))


@pytest.mark.parametrize("name", models.PRESENTATIONS)
@pytest.mark.parametrize("n", [1, 2])
def test_crosscheck_over_corpus(name, n):
    p = models.bundled_presentation(name)
    for rho in (trivial_representation(p, n), sampled_representation(p, n, random.Random(8))):
        assert tangent_crosscheck(p, rho)


@given(st.sampled_from(models.PRESENTATIONS), st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_h1_invariant_under_conjugation(name, seed):
    p = models.bundled_presentation(name)
    rng = random.Random(seed)
    rho = sampled_representation(p, 2, rng)
    h = qmatrix([[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)])
    if rank(h) < 2:
        h = identity(2) + qmatrix([[0, 1], [0, 0]])
    a, b = cocycle_space(p, rho).dims, cocycle_space(p, conjugate(rho, h)).dims
    assert a == b


def test_z2_matches_torus_model():
    cs = cocycle_space(Z2, trivial_representation(Z2, 1))
    assert cs.dims == {"Z1": 2, "B1": 0, "H1": 2}
    torus = models.bundled_pair("torus")
    assert cohomology(torus.module.complex)[1].dim == cs.dims["H1"]


def test_non_representation_rejected():
    rho = {"a": qmatrix([[1, 1], [0, 1]]), "b": qmatrix([[1, 0], [1, 1]])}
    with pytest.raises(ValueError):
        fox_z1(Z2, rho)
    with pytest.raises(ValueError):
        generic_representation(Z2, 2, random.Random(0))

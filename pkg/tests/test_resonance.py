import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from jumploci import models, resonance
from jumploci.dgla import zero_morphism
from jumploci.exact import Polynomial, is_zero, qvector
from jumploci.graded import cohomology
from jumploci.io import pair_from_document


@pytest.fixture(scope="module")
def torus():
    return models.bundled_pair("torus")


@pytest.fixture(scope="module")
def genus2():
    return models.bundled_pair("genus2")


@pytest.fixture(scope="module")
def inert():
    """Torus classes acting by zero on a three-dimensional module."""
    return pair_from_document({
        "lie": {"labels": {"0": [], "1": ["a", "b"]}, "differential": {}, "bracket": []},
        "module": {"labels": {"0": ["m0"], "1": ["m1"], "2": ["m2"]}, "differential": {}, "action": []}})


def test_cone_membership(torus):
    cm = resonance.ConeModel(torus)
    assert resonance.cone_membership(cm, [0, 0])
    assert resonance.cone_membership(cm, [3, -7])
    T = models.bundled_pair("torus-gl2")
    cm = resonance.ConeModel(T)
    assert not resonance.cone_membership(cm, {"E.a": 1, "F.b": 1})
    assert resonance.cone_membership(cm, {"E.a": 1})
    with pytest.raises(ValueError):
        resonance.cone_membership(cm, [1, 2])


GL2_CONE = resonance.ConeModel(models.bundled_pair("torus-gl2"))


@given(st.lists(st.integers(-9, 9), min_size=8, max_size=8), st.integers(-5, 5))
@settings(max_examples=30, deadline=None)
def test_quadratic_map_is_homogeneous(coords, s):
    cm = GL2_CONE
    v = qvector(coords)
    assert is_zero(cm.quadratic_map(v * s) - cm.quadratic_map(v) * (s * s))


def test_off_cone_error():
    T = models.bundled_pair("torus-gl2")
    with pytest.raises(resonance.OffConeError, match="off the cone"):
        resonance.aomoto_at_point(T, {"E.a": 1, "F.b": 1})


def test_aomoto_examples(torus, genus2):
    assert cohomology(resonance.aomoto_at_point(torus, [0, 0])).dims() == (1, 2, 1)
    assert cohomology(resonance.aomoto_at_point(torus, [1, 0])).dims() == (0, 0, 0)
    rng = random.Random(1)
    for pt in resonance.sample_points(4, rng, 30)[1:]:
        if any(pt):
            assert cohomology(resonance.aomoto_at_point(genus2, pt)).dims()[1] == 2


def test_universal_matrices(torus, genus2, inert):
    u = resonance.universal_aomoto(torus)
    assert [[str(p) for p in row] for row in u.d(0).entries] == [["a"], ["b"]]
    assert [[str(p) for p in row] for row in u.d(1).entries] == [["-b", "a"]]
    g = resonance.universal_aomoto(genus2)
    assert [str(p) for (p,) in g.d(0).entries] == ["a1", "a2", "b1", "b2"]
    assert [str(p) for p in g.d(1).entries[0]] == ["-b1", "-b2", "a1", "a2"]
    z = resonance.universal_aomoto(inert)
    assert all(not p.terms for i in z.degrees() for row in z.d(i).entries for p in row)
    with pytest.raises(ValueError):
        resonance.universal_aomoto(models.bundled_pair("abelian-de"))


def test_entries_are_linear():
    u = resonance.universal_aomoto(models.bundled_pair("torus-gl2"))
    assert all(p.total_degree() <= 1 for i in u.degrees() for row in u.d(i).entries for p in row)


def test_jump_examples(torus, genus2):
    u = resonance.universal_aomoto(torus)
    assert resonance.jump_ideal(u, 0, 1).strings() == ["a", "b"]
    assert resonance.jump_ideal(u, 1, 1).strings() == ["a^2", "a*b", "b^2"]
    assert resonance.jump_ideal(u, 1, 3).is_unit_ideal()
    assert resonance.jump_ideal(u, 1, 0).is_zero_ideal()
    with pytest.raises(ValueError):
        resonance.jump_ideal(u, 3, 1)
    assert resonance.jump_ideal(resonance.universal_aomoto(genus2), 1, 2).is_zero_ideal()


def test_crosscheck_examples(torus, genus2):
    assert resonance.resonance_membership_crosscheck(torus, 1, 1, [1, 0]) == (False, False)
    assert resonance.resonance_membership_crosscheck(torus, 1, 1, [0, 0]) == (True, True)
    assert resonance.resonance_membership_crosscheck(genus2, 1, 3, [1, 0, 0, 0]) == (False, False)
    assert resonance.resonance_membership_crosscheck(genus2, 1, 3, [0, 0, 0, 0]) == (True, True)


def _sympy_rank(m):
    return sympy.Matrix(m.tolist()).rank() if m.size else 0


@pytest.mark.parametrize("name", ["torus", "genus2", "torus-gl2"])
def test_jump_ideal_against_sympy_ranks(name):
    """Generators vanish iff l_i - rank d_(i-1) - rank d_i >= r, ranks from sympy."""
    P = models.bundled_pair(name)
    u = resonance.universal_aomoto(P)
    cm = resonance.ConeModel(P)
    sp = P.module.space
    for pt in resonance.sample_on_cone(cm, random.Random(4), 25):
        mats = u.specialize(list(pt))
        for i in sp.degrees():
            h = sp.dim(i) - _sympy_rank(mats[i]) - (_sympy_rank(mats[i - 1]) if i - 1 in mats else 0)
            for r in range(1, sp.dim(i) + 1):
                assert resonance.jump_ideal(u, i, r).vanishes_at(list(pt)) == (h >= r)


@pytest.mark.parametrize("name", ["torus", "genus2", "torus-gl2"])
def test_ideal_properties(name):
    P = models.bundled_pair(name)
    u = resonance.universal_aomoto(P)
    cm = resonance.ConeModel(P)
    pts = resonance.sample_on_cone(cm, random.Random(5), 40)
    for i in u.degrees():
        ideals = [resonance.jump_ideal(u, i, r) for r in range(1, u.dim(i) + 2)]
        for ideal in ideals:
            assert all(g.is_homogeneous() for g in ideal.generators)
        for pt in pts:
            zero = [ideal.vanishes_at(list(pt)) for ideal in ideals]
            # nesting: V_(r+1) inside V_r
            assert all(a or not b for a, b in zip(zero, zero[1:]))
            for s in (-3, 2):
                assert [ideal.vanishes_at(list(pt * s)) for ideal in ideals] == zero
        if i > u.lo:
            comp = u.composite(i)
            for pt in pts:
                assert is_zero(comp.evaluate(list(pt)))


def test_composite_lies_in_cone_ideal():
    """Entries of d_1 d_0 are combinations of the cone's quadratic equations."""
    P = models.bundled_pair("torus-gl2")
    u = resonance.universal_aomoto(P)
    eqs = resonance.ConeModel(P).equations()
    monos = sorted({e for p in eqs for e in p.terms} | {e for row in u.composite(1).entries for p in row
                                                        for e in p.terms})
    def vec(p):
        return [p.terms.get(e, 0) for e in monos]
    basis = sympy.Matrix([vec(p) for p in eqs]).T
    for row in u.composite(1).entries:
        for p in row:
            if p.terms:
                assert basis.rank() == basis.row_join(sympy.Matrix(vec(p))).rank()


def test_linear_model_examples(torus, genus2, inert):
    r = resonance.thm2_linear_model(torus, 1, samples=100, seed=0)
    assert r.ok and r.jump == 2 and r.subspace == []
    r = resonance.thm2_linear_model(genus2, 0, samples=100, seed=0)
    assert r.ok and r.jump == 1 and r.subspace == []
    r = resonance.thm2_linear_model(inert, 1, samples=20, seed=0)
    assert len(r.subspace) == 2 and not r.forms
    assert resonance.jump_ideal(resonance.universal_aomoto(inert), 1, 1).is_zero_ideal()


def test_zero_set_is_origin():
    v = ["x", "y"]
    assert resonance.zero_set_is_origin([Polynomial.parse(s, v) for s in ("x^2", "x*y", "y^2")])
    assert not resonance.zero_set_is_origin([Polynomial.parse("x*y", v)])
    assert not resonance.zero_set_is_origin([])


def test_formality_bridge(torus, genus2):
    assert resonance.formality_bridge(torus, [2, -1])
    res = resonance.formality_bridge(genus2, [1, 0, 0, 3], models.bundled_projection("genus2-acyclic"))
    assert res.ok and res.predicted == {0: 1, 1: 6, 2: 1}
    with pytest.raises(ValueError):
        resonance.formality_bridge(torus, [1, 0], zero_morphism(torus, torus))

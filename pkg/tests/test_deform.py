import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jumploci import deform, models
from jumploci.artinian import make_artinian, ring_hom, standard_rings, truncated_polynomial_ring
from jumploci.dgla import DGLA, identity_morphism, zero_morphism
from jumploci.exact import identity, is_zero, qmatrix, zeros
from jumploci.graded import CochainComplex, GradedMap
from jumploci.io import pair_from_document

RINGS = standard_rings()
SMALL_PAIRS = ("torus", "genus2", "abelian-de", "gl2-ad")


def _doc(lie_labels, mod_labels, action, lie_d=None, bracket=()):
    return pair_from_document({
        "lie": {"labels": lie_labels, "differential": lie_d or {}, "bracket": list(bracket)},
        "module": {"labels": mod_labels, "differential": {}, "action": action}})


@pytest.fixture(scope="module")
def de():
    return models.bundled_pair("abelian-de")


@pytest.fixture(scope="module")
def gl2():
    return models.bundled_pair("gl2-ad")


def el(P, A, host, degree, coeffs):
    return deform.element_from_dict(P, A, host, degree, coeffs)


# ---------------------------------------------------------------- Maurer-Cartan

def test_zero_is_mc(pairs):
    for P in pairs.values():
        for A in RINGS.values():
            assert deform.is_maurer_cartan(P, A, deform.zero_element(P, A, "lie", 1))


def test_de_example_is_mc(de):
    A = truncated_polynomial_ring(2)
    assert deform.is_maurer_cartan(de, A, el(de, A, "lie", 1, {"f": "t"}))


def test_abelian_closed_elements_are_mc():
    P = models.bundled_pair("genus2")
    A = RINGS["Q[x,y]/(x,y)^2"]
    assert deform.is_maurer_cartan(P, A, el(P, A, "lie", 1, {"a1": "x", "b2": "3*y - x"}))


def test_curvature_reported():
    P = models.bundled_pair("torus-gl2")
    A = truncated_polynomial_ring(3)
    w = el(P, A, "lie", 1, {"E.a": "t", "F.b": "t"})
    v = deform.is_maurer_cartan(P, A, w)
    assert not v
    curv = deform.mc_curvature(P, A, w)
    assert curv == el(P, A, "lie", 2, {"H.ab": "t^2"})


def test_unit_coefficient_rejected(de):
    A = truncated_polynomial_ring(2)
    with pytest.raises(deform.PreconditionError):
        deform.is_maurer_cartan(de, A, el(de, A, "lie", 1, {"f": "1 + t"}))


# ---------------------------------------------------------------- BCH

def test_bch_examples(gl2, de):
    A = truncated_polynomial_ring(3)
    l1, l2 = el(gl2, A, "lie", 0, {"E": "t"}), el(gl2, A, "lie", 0, {"F": "t"})
    assert deform.bch(gl2, A, l1, l2) == el(gl2, A, "lie", 0, {"E": "t", "F": "t", "H": "1/2*t^2"})
    assert deform.bch(gl2, A, l1, deform.zero_element(gl2, A, "lie", 0)) == l1
    x, y = el(de, A, "lie", 0, {"e": "t"}), el(de, A, "lie", 0, {"e": "2*t^2"})
    assert deform.bch(de, A, x, y) == x + y


def _bch_degree4(P, A, x, y):
    br = lambda u, v: deform.bracket(P, A, u, v)  # noqa: E731
    xy = br(x, y)
    return (x + y + xy.scale(Fraction(1, 2)) + br(x, xy).scale(Fraction(1, 12))
            - br(y, xy).scale(Fraction(1, 12)) - br(y, br(x, xy)).scale(Fraction(1, 24)))


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_bch_matches_closed_formula(seed):
    """Through total degree four the series is X + Y + [X,Y]/2 + ([X,[X,Y]] - [Y,[X,Y]])/12 - [Y,[X,[X,Y]]]/24."""
    P = models.bundled_pair("gl2-ad")
    rng = random.Random(seed)
    A = truncated_polynomial_ring(5)
    x, y = deform.random_gauge(P, A, rng), deform.random_gauge(P, A, rng)
    assert deform.bch(P, A, x, y) == _bch_degree4(P, A, x, y)


@given(st.integers(0, 10**6), st.sampled_from(list(RINGS) + ["Q[t]/t^4"]))
@settings(max_examples=15, deadline=None)
def test_bch_in_faithful_representation(seed, ring):
    """exp(bch(x, y)) = exp(x) exp(y) as matrices on the standard representation."""
    P = models.bundled_pair("torus-gl2")
    A = RINGS.get(ring) or truncated_polynomial_ring(4)
    rng = random.Random(seed)
    x, y = deform.random_gauge(P, A, rng), deform.random_gauge(P, A, rng)
    z = deform.bch(P, A, x, y)
    ex = lambda v: deform.exp_module_matrix(P, A, v, 0)  # noqa: E731
    assert is_zero(ex(z) - ex(x) @ ex(y))


@given(st.integers(0, 10**6))
@settings(max_examples=15, deadline=None)
def test_bch_associative(seed):
    P = models.bundled_pair("gl2-ad")
    A = truncated_polynomial_ring(4)
    rng = random.Random(seed)
    x, y, z = (deform.random_gauge(P, A, rng) for _ in range(3))
    assert deform.bch(P, A, deform.bch(P, A, x, y), z) == deform.bch(P, A, x, deform.bch(P, A, y, z))


# ---------------------------------------------------------------- gauge action

def test_gauge_examples(de):
    A = truncated_polynomial_ring(2)
    zero = deform.zero_element(de, A, "lie", 1)
    lam = el(de, A, "lie", 0, {"e": "t"})
    assert deform.gauge_act(de, A, lam, zero) == el(de, A, "lie", 1, {"f": "-t"})
    w = el(de, A, "lie", 1, {"f": "3*t"})
    assert deform.gauge_act(de, A, deform.zero_element(de, A, "lie", 0), w) == w
    assert deform.gauge_act(de, A, lam, w) == w - deform.differential(de, lam)


def test_is_gauge_morphism(de):
    A = truncated_polynomial_ring(2)
    w = el(de, A, "lie", 1, {"f": "t"})
    lam = el(de, A, "lie", 0, {"e": "2*t"})
    assert deform.is_gauge_morphism(de, A, deform.zero_element(de, A, "lie", 0), w, w)
    assert deform.is_gauge_morphism(de, A, lam, w, w - deform.differential(de, lam))
    assert not deform.is_gauge_morphism(de, A, lam, w, w)
    P = models.bundled_pair("torus-gl2")
    B = truncated_polynomial_ring(3)
    bad = el(P, B, "lie", 1, {"E.a": "t", "F.b": "t"})
    with pytest.raises(deform.PreconditionError):
        deform.is_gauge_morphism(P, B, deform.zero_element(P, B, "lie", 0), bad, bad)


def _samples(name, ring, seed):
    P = models.bundled_pair(name)
    A = RINGS[ring]
    rng = random.Random(seed)
    return P, A, deform.random_gauge(P, A, rng), deform.random_mc(P, A, rng)


pair_ring_seed = (st.sampled_from(SMALL_PAIRS), st.sampled_from(list(RINGS)), st.integers(0, 10**6))


@given(*pair_ring_seed)
@settings(max_examples=30, deadline=None)
def test_intertwining_and_gauge_invariance(name, ring, seed):
    P, A, lam, w = _samples(name, ring, seed)
    assert deform.intertwining_check(P, A, lam, w)
    assert deform.exlambda_check(P, A, lam, w)
    moved = deform.gauge_act(P, A, lam, w)
    before = [r.k_dimension for r in deform.twisted_cohomology(P, A, w)]
    after = [r.k_dimension for r in deform.twisted_cohomology(P, A, moved)]
    assert before == after


@given(*pair_ring_seed)
@settings(max_examples=20, deadline=None)
def test_exp_on_module_is_invertible(name, ring, seed):
    P, A, lam, _ = _samples(name, ring, seed)
    for j in P.module.space.degrees():
        n = P.module.space.dim(j) * A.dim
        assert is_zero(deform.exp_module_matrix(P, A, lam, j) @ deform.exp_module_matrix(P, A, -lam, j)
                       - identity(n))


def test_exp_on_module_scalar_example():
    P = _doc({"0": ["e"]}, {"0": ["m"]}, [["e", "m", "m", 1]])
    A = truncated_polynomial_ring(3)
    xi = el(P, A, "module", 0, {"m": "1"})
    lam = el(P, A, "lie", 0, {"e": "t"})
    assert deform.exp_on_module(P, A, lam, xi) == el(P, A, "module", 0, {"m": "1 + t + 1/2*t^2"})
    Z = _doc({"0": ["e"]}, {"0": ["m"]}, [])
    assert deform.exp_on_module(Z, A, lam, xi) == xi


# ---------------------------------------------------------------- twisted cohomology

@pytest.fixture(scope="module")
def scalar():
    return _doc({"0": [], "1": ["f"]}, {"0": ["m0"], "1": ["m1"]}, [["f", "m0", "m1", 1]])


def test_scalar_twisted_example(scalar):
    A = truncated_polynomial_ring(2)
    reps = deform.twisted_cohomology(scalar, A, el(scalar, A, "lie", 1, {"f": "t"}))
    assert [(r.k_dimension, r.is_free) for r in reps] == [(1, False), (1, False)]
    assert [r.min_generators for r in reps] == [1, 1]
    reps = deform.twisted_cohomology(scalar, A, deform.zero_element(scalar, A, "lie", 1))
    assert [(r.k_dimension, r.is_free, r.rank_if_free) for r in reps] == [(2, True, 1), (2, True, 1)]


def test_twisted_requires_mc():
    P = models.bundled_pair("torus-gl2")
    A = truncated_polynomial_ring(3)
    with pytest.raises(deform.PreconditionError):
        deform.twisted_cohomology(P, A, el(P, A, "lie", 1, {"E.a": "t", "F.b": "t"}))


def test_free_report_invariant(pairs):
    rng = random.Random(3)
    for name in SMALL_PAIRS:
        P = pairs[name]
        for A in RINGS.values():
            for r in deform.twisted_cohomology(P, A, deform.random_mc(P, A, rng)):
                if r.is_free:
                    assert r.k_dimension == r.rank_if_free * A.dim
                assert r.min_generators * A.dim >= r.k_dimension


# ---------------------------------------------------------------- morphisms

def test_transport_identity_and_zero():
    P = models.bundled_pair("torus")
    A = RINGS["Q[t]/t^2"]
    w = el(P, A, "lie", 1, {"a": "t"})
    rep = deform.transport_map(identity_morphism(P), w, A)
    assert rep.ok
    for m in rep.maps.values():
        assert is_zero(m - identity(m.shape[0]))
    assert not deform.transport_map(zero_morphism(P, P), deform.zero_element(P, A, "lie", 1), A)


def test_transport_projection_over_t2():
    g = models.bundled_projection("genus2-acyclic")
    A = RINGS["Q[t]/t^2"]
    rng = random.Random(11)
    for _ in range(5):
        assert deform.transport_map(g, deform.random_mc(g.source, A, rng), A)


def test_deligne_identity_and_interval_inclusion(gl2):
    L = gl2.lie
    assert deform.deligne_check(GradedMap.identity(L.space), L, L)
    big = models.bundled_pair("gl2-interval").lie
    inc = zeros(8, 4)
    inc[:4, :4] = identity(4)
    g1 = GradedMap(L.space, big.space, 0, {0: inc})
    assert deform.deligne_check(g1, L, big)


def test_deligne_fails_on_h1():
    T = models.bundled_pair("torus").lie
    circle = DGLA(CochainComplex.from_blocks([1, 1]))
    g1 = GradedMap(T.space, circle.space, 0, {0: qmatrix([[1]]), 1: qmatrix([[1, 0]]), 2: zeros(0, 1)})
    rep = deform.deligne_check(g1, T, circle)
    assert not rep and rep.failure() == 1


# ---------------------------------------------------------------- abelian orbits

def test_orbit_examples(de):
    A2 = truncated_polynomial_ring(2)
    torus = models.bundled_pair("torus")
    assert deform.abelian_orbits(torus, A2).dimension == 2
    assert deform.abelian_orbits(de, A2).single_orbit
    Q = make_artinian(["t"], 1)
    assert deform.abelian_orbits(torus, Q).single_orbit
    with pytest.raises(deform.PreconditionError):
        deform.abelian_orbits(models.bundled_pair("gl2-ad"), A2)


def test_orbit_normal_form_via_gauge(de):
    A = truncated_polynomial_ring(3)
    orb = deform.abelian_orbits(de, A)
    w = el(de, A, "lie", 1, {"f": "t - 2*t^2"})
    assert orb.normal_form(w).is_zero()
    lam = orb.gauge_to_normal_form(w)
    assert deform.gauge_act(de, A, lam, w).is_zero()
    assert orb.same_orbit(w, deform.zero_element(de, A, "lie", 1))


# ---------------------------------------------------------------- base change

@given(st.integers(0, 10**6), st.sampled_from(["torus", "abelian-de", "gl2-ad"]))
@settings(max_examples=15, deadline=None)
def test_base_change_tower(seed, name):
    P = models.bundled_pair(name)
    rng = random.Random(seed)
    A4, A3, A2 = (truncated_polynomial_ring(n) for n in (4, 3, 2))
    h43, h32, h42 = ring_hom(A4, A3), ring_hom(A3, A2), ring_hom(A4, A2)
    assert is_zero(h32 @ h43 - h42)
    w = deform.random_mc(P, A4, rng)
    w3 = deform.base_change(w, h43)
    assert deform.is_maurer_cartan(P, A3, w3)
    m43 = deform.base_change_map(P, A4, A3, h43, w)
    m32 = deform.base_change_map(P, A3, A2, h32, w3)
    m42 = deform.base_change_map(P, A4, A2, h42, w)
    for i in m42:
        assert is_zero(m32[i] @ m43[i] - m42[i])


def test_gauge_requires_degree_zero(de):
    A = truncated_polynomial_ring(2)
    with pytest.raises(deform.PreconditionError):
        deform.exp_on_module(de, A, el(de, A, "lie", 1, {"f": "t"}), el(de, A, "module", 0, {"u1": "1"}))
    with pytest.raises(deform.PreconditionError):
        deform.exp_on_module(de, A, el(de, A, "lie", 0, {"e": "1"}), el(de, A, "module", 0, {"u1": "1"}))

"""Quadratic cones, Aomoto complexes and resonance (jump) ideals of cohomology pairs.

A cohomology pair is a DGLA pair with zero differentials. Coordinates on
``H^1`` of its Lie part are named by the degree-1 basis labels.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .artinian import truncated_polynomial_ring
from .deform import TensorElement, twisted_cohomology
from .dgla import DGLAPair, PairMorphism, is_quasi_iso
from .exact import (
    Polynomial,
    PolyMatrix,
    Q,
    is_zero,
    kernel_basis,
    minors_ideal,
    qvector,
    rank,
    same_span,
    solve,
    zeros,
)
from .graded import CochainComplex, GradedMap, Verdict, cohomology, validate_complex


class OffConeError(ValueError):
    """A point with ``[eta, eta] != 0`` was given where the cone is required."""


def _require_cohomology_pair(P: DGLAPair):
    for part in (P.lie, P.module):
        for i in part.space.degrees():
            if not is_zero(part.d(i)):
                raise ValueError("expected a cohomology pair (all differentials zero)")


def _point(P: DGLAPair, eta) -> np.ndarray:
    n = P.lie.space.dim(1)
    if isinstance(eta, dict):
        labels = P.lie.labels.get(1, [])
        vec = zeros(n)
        for k, v in eta.items():
            vec[labels.index(k)] = Q(v)
        return vec
    vec = qvector(eta)
    if len(vec) != n:
        raise ValueError(f"point has {len(vec)} coordinates, the cone lives in dimension {n}")
    return vec


@dataclass(eq=False)
class ConeModel:
    """``eta -> [eta, eta]`` from ``H^1`` to ``H^2`` of a cohomology pair."""

    pair: DGLAPair

    def __post_init__(self):
        _require_cohomology_pair(self.pair)

    @property
    def dimension(self) -> int:
        return self.pair.lie.space.dim(1)

    @property
    def variables(self) -> list[str]:
        return list(self.pair.lie.labels.get(1, []))

    def quadratic_map(self, eta) -> np.ndarray:
        v = _point(self.pair, eta)
        return self.pair.lie.br(v, 1, v, 1)

    def equations(self) -> list[Polynomial]:
        """Coordinates of ``[eta, eta]`` as quadratic forms."""
        names = self.variables
        t = self.pair.lie.table(1, 1)
        out = []
        for c in range(t.shape[2]):
            terms: dict[tuple[int, ...], Fraction] = {}
            for a in range(len(names)):
                for b in range(len(names)):
                    if t[a, b, c]:
                        e = [0] * len(names)
                        e[a] += 1
                        e[b] += 1
                        terms[tuple(e)] = terms.get(tuple(e), Fraction(0)) + t[a, b, c]
            p = Polynomial(names, terms)
            if p.terms:
                out.append(p)
        return out


def cone_membership(cm: ConeModel, eta) -> Verdict:
    value = cm.quadratic_map(eta)
    if is_zero(value):
        return Verdict(True)
    return Verdict(False, "[eta, eta] != 0", details={"value": value})


def aomoto_at_point(P: DGLAPair, eta) -> CochainComplex:
    """``(H(M), eta .)`` for ``eta`` on the cone."""
    cm = ConeModel(P)
    v = cone_membership(cm, eta)
    if not v:
        vals = ", ".join(str(x) for x in v.details["value"])
        raise OffConeError(f"eta is off the cone: [eta, eta] = ({vals}), so the Aomoto differential squares to nonzero")
    vec = _point(P, eta)
    sp = P.module.space
    blocks = {j: P.action_matrix(vec, 1, j) for j in sp.degrees()}
    c = CochainComplex(sp, GradedMap(sp, sp, 1, blocks))
    assert validate_complex(c)
    return c


@dataclass(eq=False)
class UniversalAomotoComplex:
    variables: list[str]
    lo: int
    hi: int
    dims: tuple[int, ...]
    matrices: dict[int, PolyMatrix]

    def d(self, i: int) -> PolyMatrix:
        m = self.matrices.get(i)
        if m is None:
            return PolyMatrix.zero(self.variables, self.dim(i + 1), self.dim(i))
        return m

    def dim(self, i: int) -> int:
        return self.dims[i - self.lo] if self.lo <= i <= self.hi else 0

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def specialize(self, point) -> dict[int, np.ndarray]:
        return {i: self.d(i).evaluate(point) for i in self.degrees()}

    def composite(self, i: int) -> PolyMatrix:
        """Symbolic ``d_i d_(i-1)``."""
        return self.d(i) @ self.d(i - 1)


def universal_aomoto(P: DGLAPair) -> UniversalAomotoComplex:
    """Matrices with linear entries: the action of the tautological point of ``H^1``."""
    _require_cohomology_pair(P)
    names = list(P.lie.labels.get(1, []))
    sp = P.module.space
    mats = {}
    for j in sp.degrees():
        t = P.action_table(1, j)
        rows = []
        for c in range(sp.dim(j + 1)):
            row = []
            for b in range(sp.dim(j)):
                terms = {}
                for a in range(len(names)):
                    if t[a, b, c]:
                        e = [0] * len(names)
                        e[a] = 1
                        terms[tuple(e)] = t[a, b, c]
                row.append(Polynomial(names, terms))
            rows.append(row)
        mats[j] = PolyMatrix(names, rows, shape=(sp.dim(j + 1), sp.dim(j)))
    return UniversalAomotoComplex(names, sp.lo, sp.hi, sp.dims, mats)


@dataclass(eq=False)
class JumpIdeal:
    degree: int
    jump: int
    generators: list[Polynomial]

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_unit_ideal(self) -> bool:
        return any(g.total_degree() == 0 for g in self.generators)

    def vanishes_at(self, point) -> bool:
        return all(g(point) == 0 for g in self.generators)

    def strings(self) -> list[str]:
        return [str(g) for g in self.generators]


def jump_ideal(u: UniversalAomotoComplex, i: int, r: int) -> JumpIdeal:
    """Minors of size ``l_i - r + 1`` of ``d_(i-1) (+) d_i``."""
    if not u.lo <= i <= u.hi:
        raise ValueError(f"degree {i} outside the window [{u.lo}, {u.hi}]")
    if r <= 0:
        return JumpIdeal(i, r, [])
    block = PolyMatrix.block_diag(u.d(i - 1), u.d(i))
    return JumpIdeal(i, r, minors_ideal(block, u.dim(i) - r + 1))


def aomoto_cohomology_dim(P: DGLAPair, eta, i: int) -> int:
    return cohomology(aomoto_at_point(P, eta))[i].dim


def resonance_membership_crosscheck(P: DGLAPair, i: int, r: int, eta,
                                    u: UniversalAomotoComplex | None = None) -> tuple[bool, bool]:
    """(generators vanish at eta, dim H^i of the Aomoto complex >= r); the two must agree."""
    u = u or universal_aomoto(P)
    vec = _point(P, eta)
    ideal_says = jump_ideal(u, i, r).vanishes_at(list(vec))
    brute = aomoto_cohomology_dim(P, vec, i) >= r
    if ideal_says != brute:
        raise AssertionError(f"jump ideal and Aomoto rank disagree at {list(vec)} (i={i}, r={r})")
    return ideal_says, brute


# --------------------------------------------------------------------------
# sampling


def sample_points(dim: int, rng: random.Random, count: int, bound: int = 100) -> list[np.ndarray]:
    """Rational points with numerators and denominators at most ``bound``.

    Mixes generic points, points with random coordinates set to zero, and the
    origin, so that special strata are hit.
    """
    pts = [zeros(dim)]
    while len(pts) < count:
        v = qvector([Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(dim)])
        if rng.random() < 0.5:
            for k in range(dim):
                if rng.random() < 0.5:
                    v[k] = Fraction(0)
        pts.append(v)
    return pts


def sample_on_cone(cm: ConeModel, rng: random.Random, count: int, bound: int = 100,
                   max_tries: int = 100_000) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    tries = 0
    while len(out) < count and tries < max_tries:
        batch = sample_points(cm.dimension, rng, min(count, 64), bound)
        for p in batch:
            tries += 1
            if cone_membership(cm, p):
                out.append(p)
    if len(out) < count:
        raise RuntimeError(f"found only {len(out)} cone points after {tries} tries")
    return out[:count]


# --------------------------------------------------------------------------
# the linear model around a point where dim H^i is maximal


def _linear_coefficients(p: Polynomial, n: int) -> np.ndarray:
    if p.total_degree() > 1 or p.constant_term():
        raise ValueError(f"{p} is not a linear form")
    v = zeros(n)
    for e, c in p.terms.items():
        v[e.index(1)] = c
    return v


@dataclass(eq=False)
class LinearModelReport:
    degree: int
    jump: int
    forms: list[np.ndarray]          # linear forms cutting out the subspace
    subspace: list[np.ndarray]       # basis of the subspace
    span_agrees: bool                # jump generators span the same forms (exact)
    samples: int
    disagreements: list[np.ndarray] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.span_agrees and not self.disagreements

    def __bool__(self) -> bool:
        return self.ok


def thm2_linear_model(P: DGLAPair, i: int, samples: int = 100, seed: int = 0) -> LinearModelReport:
    """``{eta : (eta .)_(i-1) = 0 = (eta .)_i}`` against the zero set of ``jump_ideal(i, dim H^i)``."""
    u = universal_aomoto(P)
    n = len(u.variables)
    r = P.module.space.dim(i)
    forms = []
    for m in (u.d(i - 1), u.d(i)):
        for row in m.entries:
            for p in row:
                if p.terms:
                    forms.append(_linear_coefficients(p, n))
    if forms:
        subspace = kernel_basis(np.vstack(forms))
    else:
        subspace = [qvector([1 if k == j else 0 for k in range(n)]) for j in range(n)]
    ideal = jump_ideal(u, i, r)
    gens = [_linear_coefficients(g, n) for g in ideal.generators] if not ideal.is_unit_ideal() else None
    span_ok = gens is not None and same_span(gens, forms, n)
    cm = ConeModel(P)
    disagreements = []
    for pt in sample_on_cone(cm, random.Random(seed), samples):
        in_sub = all(sum(f * pt) == 0 for f in forms)
        if ideal.vanishes_at(list(pt)) != in_sub:
            disagreements.append(pt)
    return LinearModelReport(i, r, forms, subspace, span_ok, samples, disagreements)


# --------------------------------------------------------------------------
# zero set at the origin


def zero_set_is_origin(gens: list[Polynomial]) -> bool:
    """Sufficient test that the only common zero is 0: every ``x^k`` lies in the span of
    the degree-``k`` homogeneous generators for some ``k``."""
    if not gens:
        return False
    variables = gens[0].variables
    n = len(variables)
    for var in range(n):
        found = False
        for k in sorted({g.total_degree() for g in gens if g.is_homogeneous() and g.terms}):
            homog = [g for g in gens if g.is_homogeneous() and g.total_degree() == k]
            monos = sorted({e for g in homog for e in g.terms} | {tuple(k if j == var else 0 for j in range(n))})
            idx = {e: c for c, e in enumerate(monos)}
            vecs = []
            for g in homog:
                v = zeros(len(monos))
                for e, c in g.terms.items():
                    v[idx[e]] = c
                vecs.append(v)
            target = zeros(len(monos))
            target[idx[tuple(k if j == var else 0 for j in range(n))]] = Fraction(1)
            if solve(np.column_stack(vecs), target) is not None:
                found = True
                break
        if not found:
            return False
    return True


# --------------------------------------------------------------------------
# formality bridge over Q[eps]/eps^2


def predicted_first_order_dims(P_H: DGLAPair, eta) -> dict[int, int]:
    """``2 dim H^i(M) - rank (eta .)_(i-1) - rank (eta .)_i``."""
    c = aomoto_at_point(P_H, eta)
    sp = P_H.module.space
    return {i: 2 * sp.dim(i) - rank(c.d(i - 1)) - rank(c.d(i)) for i in sp.degrees()}


def lift_cocycle(g: PairMorphism, eta: np.ndarray) -> np.ndarray:
    """A degree-1 cocycle ``x`` of the source with ``g1(x) = eta``."""
    L = g.source.lie
    g1 = g.g1.block(1)
    system = np.vstack([g1, L.d(1)])
    rhs = np.concatenate([eta, zeros(L.space.dim(2))])
    x = solve(system, rhs)
    if x is None:
        raise ValueError("eta has no cocycle lift")
    return x


@dataclass(frozen=True)
class BridgeResult:
    predicted: dict
    formal: dict
    model: dict | None

    @property
    def ok(self) -> bool:
        return self.predicted == self.formal and (self.model is None or self.model == self.predicted)

    def __bool__(self) -> bool:
        return self.ok


def formality_bridge(P_H: DGLAPair, eta, model: PairMorphism | None = None) -> BridgeResult:
    """Twisted cohomology at ``eta (x) eps`` on ``P_H`` and (lifted) on a model, against Aomoto ranks.

    ``model`` is a quasi-isomorphism from a larger pair onto ``P_H``.
    """
    A = truncated_polynomial_ring(2, "eps")
    vec = _point(P_H, eta)
    predicted = predicted_first_order_dims(P_H, vec)

    def dims(P, x):
        coeffs = zeros(len(x), A.dim)
        coeffs[:, 1] = x
        reps = twisted_cohomology(P, A, TensorElement("lie", 1, coeffs))
        return {r.degree: r.k_dimension for r in reps}

    formal = dims(P_H, vec)
    lifted = None
    if model is not None:
        if not is_quasi_iso(model).ok:
            raise ValueError("model map is not a quasi-isomorphism")
        lifted = dims(model.source, lift_cocycle(model, vec))
    return BridgeResult(predicted, formal, lifted)

"""Maurer-Cartan elements over Artinian rings, the gauge action and twisted cohomology.

An element of ``X^p (x) A`` (``X`` the Lie or module part of a pair) is stored as
an array of shape ``(dim X^p, dim A)``: row ``a`` holds the ring coefficient of
basis vector ``a``. Flattened vectors use the index ``a * dim A + k``.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .artinian import ArtinianLocalRing
from .dgla import DGLA, DGLAPair, PairMorphism, validate_dgla_morphism, validate_morphism
from .exact import ONE, ZERO, Q, identity, is_zero, kernel_basis, rank, solve, zeros
from .graded import (
    CochainComplex,
    Cohomology,
    GradedMap,
    GradedVectorSpace,
    InvalidComplexError,
    Verdict,
    cohomology,
    induced_map,
    is_chain_map,
)


class PreconditionError(ValueError):
    """An input violates an operation's precondition (e.g. a unit coefficient)."""


class MorphismInconsistencyError(ValueError):
    """A morphism sends a Maurer-Cartan element to a non-Maurer-Cartan element."""


@dataclass(eq=False)
class TensorElement:
    host: str          # "lie" or "module"
    degree: int
    coeffs: np.ndarray  # (dim host^degree, dim A)

    def __post_init__(self):
        if self.host not in ("lie", "module"):
            raise ValueError("host must be 'lie' or 'module'")

    def flat(self) -> np.ndarray:
        return self.coeffs.reshape(-1)

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._same(other)
        return TensorElement(self.host, self.degree, self.coeffs + other.coeffs)

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        self._same(other)
        return TensorElement(self.host, self.degree, self.coeffs - other.coeffs)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.host, self.degree, -self.coeffs)

    def scale(self, c) -> "TensorElement":
        return TensorElement(self.host, self.degree, self.coeffs * Q(c))

    def is_zero(self) -> bool:
        return is_zero(self.coeffs)

    def in_maximal_ideal(self) -> bool:
        return all(v == 0 for v in self.coeffs[:, 0]) if self.coeffs.size else True

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return (self.host, self.degree) == (other.host, other.degree) and is_zero(self.coeffs - other.coeffs)

    def _same(self, other):
        if (self.host, self.degree) != (other.host, other.degree):
            raise ValueError("elements live in different graded pieces")


def _space(P: DGLAPair, host: str) -> GradedVectorSpace:
    return P.lie.space if host == "lie" else P.module.space


def zero_element(P: DGLAPair, A: ArtinianLocalRing, host: str, degree: int) -> TensorElement:
    return TensorElement(host, degree, zeros(_space(P, host).dim(degree), A.dim))


def element_from_flat(host: str, degree: int, vec: np.ndarray, A: ArtinianLocalRing) -> TensorElement:
    return TensorElement(host, degree, vec.reshape(-1, A.dim))


def element_from_dict(P: DGLAPair, A: ArtinianLocalRing, host: str, degree: int, coeffs: dict) -> TensorElement:
    """Build an element from ``{basis label: ring element or polynomial string}``."""
    labels = (P.lie.labels if host == "lie" else P.module.labels).get(degree, [])
    out = zero_element(P, A, host, degree)
    for label, value in coeffs.items():
        if label not in labels:
            raise KeyError(f"no basis vector {label!r} in {host} degree {degree}")
        out.coeffs[labels.index(label), :] = A.element(value) if not isinstance(value, np.ndarray) else value
    return out


def _contract(x: np.ndarray, y: np.ndarray, table: np.ndarray, mult: np.ndarray) -> np.ndarray:
    """``sum table[a,b,c] x[a,i] y[b,j] mult[i,j,k]`` as an array ``(c, k)``."""
    u = np.einsum("ai,abc->ibc", x, table)
    v = np.einsum("ibc,bj->ijc", u, y)
    return np.einsum("ijc,ijk->ck", v, mult)


def _operator(x: np.ndarray, table: np.ndarray, mult: np.ndarray) -> np.ndarray:
    """Matrix of ``y -> table(x, y)`` on flattened tensors."""
    u = np.einsum("ai,abc->ibc", x, table)
    op = np.einsum("ibc,ijk->ckbj", u, mult)
    c, k, b, j = op.shape
    return op.reshape(c * k, b * j)


def bracket(P: DGLAPair, A: ArtinianLocalRing, x: TensorElement, y: TensorElement) -> TensorElement:
    """``[x (x) a, y (x) b] = [x, y] (x) ab``."""
    t = P.lie.table(x.degree, y.degree)
    return TensorElement("lie", x.degree + y.degree, _contract(x.coeffs, y.coeffs, t, A.mult))


def act(P: DGLAPair, A: ArtinianLocalRing, x: TensorElement, xi: TensorElement) -> TensorElement:
    t = P.action_table(x.degree, xi.degree)
    return TensorElement("module", x.degree + xi.degree, _contract(x.coeffs, xi.coeffs, t, A.mult))


def differential(P: DGLAPair, x: TensorElement) -> TensorElement:
    d = P.lie.d(x.degree) if x.host == "lie" else P.module.d(x.degree)
    return TensorElement(x.host, x.degree + 1, d @ x.coeffs)


def ad_operator(P: DGLAPair, A: ArtinianLocalRing, x: TensorElement, j: int) -> np.ndarray:
    """Matrix of ``[x, -]`` from ``C^j (x) A`` to ``C^(i+j) (x) A``."""
    return _operator(x.coeffs, P.lie.table(x.degree, j), A.mult)


def action_operator(P: DGLAPair, A: ArtinianLocalRing, x: TensorElement, j: int) -> np.ndarray:
    """Matrix of ``x . -`` from ``M^j (x) A`` to ``M^(i+j) (x) A``."""
    return _operator(x.coeffs, P.action_table(x.degree, j), A.mult)


def tensor_identity(m: np.ndarray, A: ArtinianLocalRing) -> np.ndarray:
    """``m (x) id_A`` in the flattened index convention."""
    r, c = m.shape
    out = zeros(r * A.dim, c * A.dim)
    for k in range(A.dim):
        out[k::A.dim, k::A.dim] = m
    return out


def ring_operator(A: ArtinianLocalRing, a: np.ndarray, n: int) -> np.ndarray:
    """Multiplication by the ring element ``a`` on ``Q^n (x) A``."""
    ma = A.mult_matrix(a)
    out = zeros(n * A.dim, n * A.dim)
    for b in range(n):
        out[b * A.dim:(b + 1) * A.dim, b * A.dim:(b + 1) * A.dim] = ma
    return out


# --------------------------------------------------------------------------
# Maurer-Cartan elements and the gauge group


def _require_m(x: TensorElement, what: str):
    if not x.in_maximal_ideal():
        raise PreconditionError(f"{what} has a coefficient outside the maximal ideal")


def mc_curvature(P: DGLAPair, A: ArtinianLocalRing, omega: TensorElement) -> TensorElement:
    """``d w + 1/2 [w, w]``."""
    return differential(P, omega) + bracket(P, A, omega, omega).scale(Fraction(1, 2))


def is_maurer_cartan(P: DGLAPair, A: ArtinianLocalRing, omega: TensorElement) -> Verdict:
    if omega.host != "lie" or omega.degree != 1:
        raise PreconditionError("a Maurer-Cartan element lives in C^1 (x) m")
    _require_m(omega, "omega")
    curv = mc_curvature(P, A, omega)
    if curv.is_zero():
        return Verdict(True)
    return Verdict(False, "d w + 1/2 [w, w] != 0", details={"curvature": curv.coeffs})


def _dynkin_words(depth: int) -> dict[tuple[int, ...], Fraction]:
    """Coefficients of right-nested brackets in ``log(e^X e^Y)`` up to ``depth`` letters.

    Words are tuples over {0: X, 1: Y}; the word ``(w1, ..., wn)`` stands for
    ``[w1, [w2, ..., [w_{n-1}, w_n]]]`` (Dynkin's form of the series).
    """
    words: dict[tuple[int, ...], Fraction] = {}
    for n in range(1, depth + 1):
        sign = Fraction((-1) ** (n - 1), n)
        blocks = [(r, s) for r in range(depth + 1) for s in range(depth + 1) if 0 < r + s <= depth]
        for combo in itertools.product(blocks, repeat=n):
            total = sum(r + s for r, s in combo)
            if total > depth:
                continue
            word: list[int] = []
            denom = total
            for r, s in combo:
                word += [0] * r + [1] * s
                denom *= math.factorial(r) * math.factorial(s)
            w = tuple(word)
            words[w] = words.get(w, ZERO) + sign / denom
    return {w: c for w, c in words.items() if c}


_DYNKIN_CACHE: dict[int, dict] = {}


def bch(P: DGLAPair, A: ArtinianLocalRing, lam1: TensorElement, lam2: TensorElement) -> TensorElement:
    """Campbell-Hausdorff product on ``C^0 (x) m``, exact because ``m`` is nilpotent.

    Brackets with at least ``nilpotency`` letters vanish, so the Dynkin series is
    cut at ``nilpotency - 1`` letters.
    """
    for lam in (lam1, lam2):
        if lam.host != "lie" or lam.degree != 0:
            raise PreconditionError("gauge elements live in C^0 (x) m")
        _require_m(lam, "lambda")
    depth = max(A.nilpotency - 1, 1)
    if depth not in _DYNKIN_CACHE:
        _DYNKIN_CACHE[depth] = _dynkin_words(depth)
    letters = (lam1, lam2)
    cache: dict[tuple[int, ...], TensorElement] = {}

    def nested(word: tuple[int, ...]) -> TensorElement:
        if word not in cache:
            if len(word) == 1:
                cache[word] = letters[word[0]]
            else:
                cache[word] = bracket(P, A, letters[word[0]], nested(word[1:]))
        return cache[word]

    out = zero_element(P, A, "lie", 0)
    for word, coeff in _DYNKIN_CACHE[depth].items():
        if len(word) >= 2 and word[-1] == word[-2]:
            continue  # ends in [X, X] or [Y, Y]
        out = out + nested(word).scale(coeff)
    return out


def _series(apply, v: TensorElement, coeffs) -> TensorElement:
    total = v.scale(coeffs[0])
    cur = v
    for c in coeffs[1:]:
        cur = apply(cur)
        if cur.is_zero():
            break
        total = total + cur.scale(c)
    return total


def gauge_act(P: DGLAPair, A: ArtinianLocalRing, lam: TensorElement, omega: TensorElement) -> TensorElement:
    """``exp(ad l) w + ((1 - exp(ad l)) / ad l)(d l)``."""
    if lam.host != "lie" or lam.degree != 0:
        raise PreconditionError("gauge elements live in C^0 (x) m")
    if omega.host != "lie" or omega.degree != 1:
        raise PreconditionError("the gauge group acts on C^1 (x) m")
    _require_m(lam, "lambda")
    _require_m(omega, "omega")
    n = A.nilpotency
    ad = lambda v: bracket(P, A, lam, v)  # noqa: E731
    exp_part = _series(ad, omega, [Fraction(1, math.factorial(k)) for k in range(n + 1)])
    dl = differential(P, lam)
    # (1 - e^x)/x = -sum_k x^k / (k+1)!
    tail = _series(ad, dl, [Fraction(-1, math.factorial(k + 1)) for k in range(n + 1)])
    return exp_part + tail


def exp_on_module(P: DGLAPair, A: ArtinianLocalRing, lam: TensorElement, xi: TensorElement) -> TensorElement:
    """``xi + l xi + 1/2 l (l xi) + ...``."""
    if lam.host != "lie" or lam.degree != 0:
        raise PreconditionError("gauge elements live in C^0 (x) m")
    _require_m(lam, "lambda")
    return _series(lambda v: act(P, A, lam, v), xi, [Fraction(1, math.factorial(k)) for k in range(A.nilpotency + 1)])


def exp_module_matrix(P: DGLAPair, A: ArtinianLocalRing, lam: TensorElement, j: int) -> np.ndarray:
    """Matrix of ``exp(l)`` on ``M^j (x) A``."""
    _require_m(lam, "lambda")
    op = action_operator(P, A, lam, j)
    n = op.shape[0]
    out = identity(n)
    p = identity(n)
    for k in range(1, A.nilpotency + 1):
        p = p @ op
        if is_zero(p):
            break
        out = out + p * Fraction(1, math.factorial(k))
    return out


def is_gauge_morphism(P: DGLAPair, A: ArtinianLocalRing, lam: TensorElement,
                      omega1: TensorElement, omega2: TensorElement) -> Verdict:
    for w, name in ((omega1, "omega1"), (omega2, "omega2")):
        if not is_maurer_cartan(P, A, w):
            raise PreconditionError(f"{name} is not a Maurer-Cartan element")
    image = gauge_act(P, A, lam, omega1)
    if image == omega2:
        return Verdict(True)
    return Verdict(False, "exp(l) w1 != w2")


def exlambda_check(P: DGLAPair, A: ArtinianLocalRing, lam: TensorElement, omega: TensorElement) -> Verdict:
    """``D_{exp(l) w} o exp(l) = exp(l) o D_w`` on every ``M^j (x) A``, as exact matrices."""
    moved = gauge_act(P, A, lam, omega)
    for j in P.module.space.degrees():
        if not P.module.space.dim(j + 1):
            continue
        lhs = twisted_differential(P, A, moved, j) @ exp_module_matrix(P, A, lam, j)
        rhs = exp_module_matrix(P, A, lam, j + 1) @ twisted_differential(P, A, omega, j)
        if not is_zero(lhs - rhs):
            return Verdict(False, f"square fails to commute in degree {j}", degree=j)
    return Verdict(True)


def intertwining_check(P: DGLAPair, A: ArtinianLocalRing, lam: TensorElement, omega: TensorElement) -> Verdict:
    """``exp(l)(w xi) = (exp(ad l) w) exp(l) xi`` on basis vectors ``xi`` of ``M (x) A``."""
    ad = lambda v: bracket(P, A, lam, v)  # noqa: E731
    rotated = _series(ad, omega, [Fraction(1, math.factorial(k)) for k in range(A.nilpotency + 1)])
    for j in P.module.space.degrees():
        if not P.module.space.dim(j + 1):
            continue
        lhs = exp_module_matrix(P, A, lam, j + 1) @ action_operator(P, A, omega, j)
        rhs = action_operator(P, A, rotated, j) @ exp_module_matrix(P, A, lam, j)
        if not is_zero(lhs - rhs):
            return Verdict(False, f"intertwining fails in degree {j}", degree=j)
    return Verdict(True)


# --------------------------------------------------------------------------
# twisted cohomology


def twisted_differential(P: DGLAPair, A: ArtinianLocalRing, omega: TensorElement, j: int) -> np.ndarray:
    """``d_M (x) id + w.`` from ``M^j (x) A`` to ``M^(j+1) (x) A``."""
    return tensor_identity(P.module.d(j), A) + action_operator(P, A, omega, j)


def twisted_complex(P: DGLAPair, A: ArtinianLocalRing, omega: TensorElement) -> CochainComplex:
    ms = P.module.space
    sp = GradedVectorSpace(ms.lo, ms.hi, tuple(d * A.dim for d in ms.dims))
    blocks = {j: twisted_differential(P, A, omega, j) for j in ms.degrees()}
    return CochainComplex(sp, GradedMap(sp, sp, 1, blocks))


@dataclass
class AModuleReport:
    degree: int
    k_dimension: int
    min_generators: int
    is_free: bool
    rank_if_free: int | None

    def as_dict(self) -> dict:
        return {"degree": self.degree, "k_dimension": self.k_dimension, "min_generators": self.min_generators,
                "is_free": self.is_free, "rank_if_free": self.rank_if_free}


def module_structure(H: Cohomology, A: ArtinianLocalRing, ambient_dims: GradedVectorSpace) -> list[AModuleReport]:
    """A-module invariants of each cohomology group of a complex of free A-modules."""
    reports = []
    for i in ambient_dims.degrees():
        h = H[i]
        if h.dim == 0:
            reports.append(AModuleReport(i, 0, 0, True, 0))
            continue
        n = ambient_dims.dim(i) // A.dim
        # classes of m.H, in H coordinates
        mh = []
        for b in range(1, A.dim):
            op = ring_operator(A, A.basis_vector(b), n)
            mh += [h.coordinates(op @ rep) for rep in h.representatives]
        mh_rank = rank(np.column_stack(mh)) if mh else 0
        mu = h.dim - mh_rank
        # lift generators of H/mH greedily among the representatives
        gens: list[np.ndarray] = []
        span = list(mh)
        for e in range(h.dim):
            cand = zeros(h.dim)
            cand[e] = ONE
            test = span + [cand]
            if rank(np.column_stack(test)) > (rank(np.column_stack(span)) if span else 0):
                gens.append(h.representatives[e])
                span = test
        assert len(gens) == mu
        # A^mu -> H, (a_s) -> sum a_s g_s
        cols = []
        for g in gens:
            for k in range(A.dim):
                cols.append(h.coordinates(ring_operator(A, A.basis_vector(k), n) @ g))
        free_map_rank = rank(np.column_stack(cols))
        free = h.dim == mu * A.dim and free_map_rank == h.dim
        reports.append(AModuleReport(i, h.dim, mu, free, mu if free else None))
    return reports


def twisted_cohomology(P: DGLAPair, A: ArtinianLocalRing, omega: TensorElement,
                       check_mc: bool = True) -> list[AModuleReport]:
    """Per-degree A-module data of ``H(M (x) A, d_M (x) id + w)``."""
    if check_mc and not is_maurer_cartan(P, A, omega):
        raise PreconditionError("omega is not a Maurer-Cartan element")
    K = twisted_complex(P, A, omega)
    try:
        H = cohomology(K)
    except InvalidComplexError as exc:
        raise InvalidComplexError(f"twisted differential does not square to zero: {exc}") from exc
    return module_structure(H, A, K.space)


def twisted_cohomology_data(P: DGLAPair, A: ArtinianLocalRing, omega: TensorElement) -> tuple[CochainComplex, Cohomology]:
    K = twisted_complex(P, A, omega)
    return K, cohomology(K)


# --------------------------------------------------------------------------
# morphisms


def apply_lie_map(g1: GradedMap, x: TensorElement) -> TensorElement:
    return TensorElement("lie", x.degree, g1.block(x.degree) @ x.coeffs)


@dataclass
class TransportReport:
    maps: dict[int, np.ndarray]
    iso: dict[int, bool]
    a_linear: bool

    @property
    def ok(self) -> bool:
        return all(self.iso.values()) and self.a_linear

    def __bool__(self) -> bool:
        return self.ok


def _square_full_rank(m: np.ndarray) -> bool:
    return m.shape[0] == m.shape[1] and rank(m) == m.shape[0]


def transport_map(g: PairMorphism, omega: TensorElement, A: ArtinianLocalRing) -> TransportReport:
    """``H(g2): H_M(w) -> H_N(g1 w)`` with per-degree isomorphism verdicts."""
    v = validate_morphism(g)
    if not v:
        raise ValueError(f"not a pair morphism: {v.message}")
    if not is_maurer_cartan(g.source, A, omega):
        raise PreconditionError("omega is not a Maurer-Cartan element of the source")
    omega_t = apply_lie_map(g.g1, omega)
    if not is_maurer_cartan(g.target, A, omega_t):
        raise MorphismInconsistencyError("g1(omega) is not Maurer-Cartan in the target")
    Ks, Hs = twisted_cohomology_data(g.source, A, omega)
    Kt, Ht = twisted_cohomology_data(g.target, A, omega_t)
    blocks = {j: tensor_identity(g.g2.block(j), A) for j in Ks.space.degrees()}
    f = GradedMap(Ks.space, Kt.space, 0, blocks)
    if not is_chain_map(f, Ks, Kt):
        raise MorphismInconsistencyError("g2 (x) id is not a chain map of twisted complexes")
    maps = induced_map(f, Hs, Ht)
    iso = {i: _square_full_rank(m) for i, m in maps.items()}
    # A-linearity on the ring basis
    a_linear = True
    for k in range(A.dim):
        a = A.basis_vector(k)
        ms = GradedMap(Ks.space, Ks.space, 0,
                       {j: ring_operator(A, a, g.source.module.space.dim(j)) for j in Ks.space.degrees()})
        mt = GradedMap(Kt.space, Kt.space, 0,
                       {j: ring_operator(A, a, g.target.module.space.dim(j)) for j in Kt.space.degrees()})
        hs, ht = induced_map(ms, Hs, Hs), induced_map(mt, Ht, Ht)
        for i in maps:
            if not is_zero(maps[i] @ hs[i] - ht[i] @ maps[i]):
                a_linear = False
    return TransportReport(maps, iso, a_linear)


@dataclass
class DeligneReport:
    h0_iso: bool
    h1_iso: bool
    h2_injective: bool

    @property
    def ok(self) -> bool:
        return self.h0_iso and self.h1_iso and self.h2_injective

    def __bool__(self) -> bool:
        return self.ok

    def failure(self) -> int | None:
        for i, flag in enumerate((self.h0_iso, self.h1_iso, self.h2_injective)):
            if not flag:
                return i
        return None


def deligne_check(g1: GradedMap, source: DGLA, target: DGLA) -> DeligneReport:
    """Whether ``H^0, H^1`` of ``g1`` are isomorphisms and ``H^2`` is injective."""
    v = validate_dgla_morphism(g1, source, target)
    if not v:
        raise ValueError(f"not a DGLA morphism: {v.message}")
    maps = induced_map(g1, cohomology(source.complex), cohomology(target.complex))

    h0, h1, h2 = (maps.get(i, zeros(0, 0)) for i in (0, 1, 2))
    return DeligneReport(_square_full_rank(h0), _square_full_rank(h1),
                         rank(h2) == h2.shape[1] if h2.size else True)


# --------------------------------------------------------------------------
# abelian orbit spaces


@dataclass(eq=False)
class AbelianOrbitSpace:
    """Gauge orbits of an abelian DGLA over ``A``: ``Z^1 (x) m`` modulo ``B^1 (x) m``."""

    pair: DGLAPair
    ring: ArtinianLocalRing
    cocycle_dim: int
    coboundary_dim: int
    h1_reps: list[np.ndarray]
    coboundaries: list[np.ndarray]

    @property
    def mc_dimension(self) -> int:
        return self.cocycle_dim * (self.ring.dim - 1)

    @property
    def dimension(self) -> int:
        """Dimension of the orbit space, ``dim H^1 * dim m``."""
        return len(self.h1_reps) * (self.ring.dim - 1)

    @property
    def single_orbit(self) -> bool:
        return self.dimension == 0

    def _split(self, column: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        basis = self.h1_reps + self.coboundaries
        if not basis:
            if not is_zero(column):
                raise PreconditionError("omega is not a cocycle")
            return column, column
        sol = solve(np.column_stack(basis), column)
        if sol is None:
            raise PreconditionError("omega is not a cocycle")
        k = len(self.h1_reps)
        harmonic = sum((self.h1_reps[i] * sol[i] for i in range(k)), zeros(len(column)))
        return harmonic, column - harmonic

    def normal_form(self, omega: TensorElement) -> TensorElement:
        """Project each ring component onto the chosen complement of ``B^1``."""
        out = np.empty_like(omega.coeffs)
        for k in range(self.ring.dim):
            out[:, k] = self._split(omega.coeffs[:, k])[0]
        return TensorElement("lie", 1, out)

    def gauge_to_normal_form(self, omega: TensorElement) -> TensorElement:
        """A ``l`` with ``exp(l) w = normal_form(w)``, i.e. ``d l = w - normal_form(w)``."""
        d0 = self.pair.lie.d(0)
        lam = zeros(self.pair.lie.space.dim(0), self.ring.dim)
        for k in range(self.ring.dim):
            exact = self._split(omega.coeffs[:, k])[1]
            if not is_zero(exact):
                lam[:, k] = solve(d0, exact)
        return TensorElement("lie", 0, lam)

    def same_orbit(self, w1: TensorElement, w2: TensorElement) -> bool:
        return self.normal_form(w1) == self.normal_form(w2)


def abelian_orbits(P: DGLAPair, A: ArtinianLocalRing) -> AbelianOrbitSpace:
    if not P.lie.is_abelian():
        raise PreconditionError("orbit description needs an abelian DGLA")
    H = cohomology(P.lie.complex)
    z1 = kernel_basis(P.lie.d(1)) if P.lie.space.dim(1) else []
    return AbelianOrbitSpace(P, A, len(z1), len(H[1].boundaries) if 1 in H.degrees else 0,
                             list(H[1].representatives) if 1 in H.degrees else [],
                             list(H[1].boundaries) if 1 in H.degrees else [])


# --------------------------------------------------------------------------
# base change along ring surjections


def base_change(x: TensorElement, hom: np.ndarray) -> TensorElement:
    """Image of ``x`` under ``id (x) h`` for a ring map with matrix ``hom``."""
    return TensorElement(x.host, x.degree, x.coeffs @ hom.T)


def base_change_map(P: DGLAPair, A: ArtinianLocalRing, B: ArtinianLocalRing, hom: np.ndarray,
                    omega: TensorElement) -> dict[int, np.ndarray]:
    """Induced map ``H_M(w over A) -> H_M(h(w) over B)`` in representative bases."""
    Ka, Ha = twisted_cohomology_data(P, A, omega)
    Kb, Hb = twisted_cohomology_data(P, B, base_change(omega, hom))
    blocks = {}
    for j in P.module.space.degrees():
        n = P.module.space.dim(j)
        m = zeros(n * B.dim, n * A.dim)
        for b in range(n):
            m[b * B.dim:(b + 1) * B.dim, b * A.dim:(b + 1) * A.dim] = hom
        blocks[j] = m
    f = GradedMap(Ka.space, Kb.space, 0, blocks)
    if not is_chain_map(f, Ka, Kb):
        raise MorphismInconsistencyError("reduction is not a chain map")
    return induced_map(f, Ha, Hb)


# --------------------------------------------------------------------------
# random sampling


def random_scalar(rng: random.Random, bound: int = 3) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 2))


def random_in_m(A: ArtinianLocalRing, rng: random.Random, bound: int = 3) -> np.ndarray:
    v = zeros(A.dim)
    for k in range(1, A.dim):
        v[k] = random_scalar(rng, bound)
    return v


def random_gauge(P: DGLAPair, A: ArtinianLocalRing, rng: random.Random) -> TensorElement:
    n = P.lie.space.dim(0)
    lam = zeros(n, A.dim)
    for a in range(n):
        lam[a, :] = random_in_m(A, rng) if rng.random() < 0.7 else zeros(A.dim)
    return TensorElement("lie", 0, lam)


def _commuting_cocycles(P: DGLAPair, rng: random.Random) -> list[np.ndarray]:
    L = P.lie
    if not L.space.dim(1):
        return []
    z1 = kernel_basis(L.d(1))
    rng.shuffle(z1)
    family: list[np.ndarray] = []
    for z in z1:
        if not is_zero(L.br(z, 1, z, 1)):
            continue
        if all(is_zero(L.br(z, 1, w, 1)) for w in family):
            family.append(z)
    return family


def random_mc(P: DGLAPair, A: ArtinianLocalRing, rng: random.Random, gauge: bool = True) -> TensorElement:
    """A Maurer-Cartan element built from pieces that are MC by construction.

    Combines (a) a family of chain-level cocycles with vanishing pairwise
    brackets tensored with arbitrary elements of ``m`` and (b) arbitrary
    cocycles tensored with socle elements, then optionally moves the result
    by a random gauge transformation.
    """
    L = P.lie
    dim1 = L.space.dim(1)
    coeffs = zeros(dim1, A.dim)
    if dim1:
        for z in _commuting_cocycles(P, rng):
            c = random_scalar(rng)
            if c:
                coeffs = coeffs + np.outer(z * c, random_in_m(A, rng))
        soc = A.socle()
        for y in kernel_basis(L.d(1)):
            if soc and rng.random() < 0.5:
                s = sum((v * random_scalar(rng) for v in soc), zeros(A.dim))
                coeffs = coeffs + np.outer(y, s)
    omega = TensorElement("lie", 1, coeffs)
    if gauge and L.space.dim(0):
        omega = gauge_act(P, A, random_gauge(P, A, rng), omega)
    if not is_maurer_cartan(P, A, omega):
        raise AssertionError("sampler produced a non-MC element")
    return omega

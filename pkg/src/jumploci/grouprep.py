"""Finitely presented groups, representation varieties and Fox-calculus cocycles.

Cocycles are stored in Ad-coordinates: ``t = (t_a)`` with ``t_a`` in ``gl(n)``,
the first-order deformation being ``a -> (1 + eps t_a) rho(a)``. In tangent
coordinates of the representation variety the same vector is ``t_a rho(a)``.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import (
    Polynomial,
    PolyMatrix,
    Q,
    det,
    identity,
    inverse,
    is_zero,
    kernel_basis,
    qmatrix,
    rank,
    same_span,
    span_contains,
    zeros,
)
from .graded import Verdict

Letter = tuple[str, int]  # (generator, +1 or -1)

_WORD_TOKEN = re.compile(r"([A-Za-z][A-Za-z0-9]*)(?:\^(-?\d+))?$")


class SingularRepresentationError(ValueError):
    """A generator was sent to a singular matrix."""


def reduce_word(word: list[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return out


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[Letter, ...], ...]

    @classmethod
    def parse(cls, text: str) -> "Presentation":
        """``"a b | a b a^-1 b^-1"``; several relations are separated by commas."""
        if "|" not in text:
            raise ValueError("expected 'generators | relations'")
        gens_text, rels_text = text.split("|", 1)
        gens = tuple(gens_text.split())
        if not gens or len(set(gens)) != len(gens):
            raise ValueError("generator names must be present and distinct")
        rels = []
        for chunk in rels_text.split(","):
            if not chunk.strip():
                continue
            word: list[Letter] = []
            for tok in chunk.split():
                m = _WORD_TOKEN.match(tok)
                if not m or m.group(1) not in gens:
                    raise ValueError(f"bad letter {tok!r}")
                k = int(m.group(2)) if m.group(2) else 1
                word += [(m.group(1), 1 if k > 0 else -1)] * abs(k)
            word = reduce_word(word)
            if word:
                rels.append(tuple(word))
        return cls(gens, tuple(rels))

    def __str__(self) -> str:
        def letter(g, e):
            return g if e == 1 else f"{g}^-1"

        rels = ", ".join(" ".join(letter(g, e) for g, e in r) for r in self.relations)
        return f"{' '.join(self.generators)} | {rels}"


Representation = dict  # generator -> n x n matrix of Fractions


def rep_dimension(rho: Representation) -> int:
    return next(iter(rho.values())).shape[0]


def _check_invertible(p: Presentation, rho: Representation):
    missing = [g for g in p.generators if g not in rho]
    if missing:
        raise ValueError(f"no matrix for generators {missing}")
    for g in p.generators:
        if det(rho[g]) == 0:
            raise SingularRepresentationError(f"generator {g} is sent to a singular matrix")


def evaluate_word(word, rho: Representation, inverses: dict | None = None) -> np.ndarray:
    n = rep_dimension(rho)
    inverses = inverses if inverses is not None else {}
    out = identity(n)
    for g, e in word:
        if e == 1:
            out = out @ rho[g]
        else:
            if g not in inverses:
                inverses[g] = inverse(rho[g])
            out = out @ inverses[g]
    return out


def verify_representation(p: Presentation, rho: Representation) -> Verdict:
    _check_invertible(p, rho)
    n = rep_dimension(rho)
    inv: dict = {}
    for k, r in enumerate(p.relations):
        if not is_zero(evaluate_word(r, rho, inv) - identity(n)):
            return Verdict(False, f"relation {k} does not evaluate to the identity", details={"relation": k})
    return Verdict(True)


def trivial_representation(p: Presentation, n: int) -> Representation:
    return {g: identity(n) for g in p.generators}


# --------------------------------------------------------------------------
# representation variety


@dataclass(eq=False)
class RepVarietySystem:
    presentation: Presentation
    n: int
    variables: list[str]
    equations: list[Polynomial]

    def matrix_variables(self, g: str) -> list[str]:
        return [f"{g}_{i + 1}{j + 1}" for i in range(self.n) for j in range(self.n)]

    def witness(self, g: str) -> str:
        return f"w_{g}"

    def point(self, rho: Representation) -> dict[str, Fraction]:
        """Coordinates of ``rho`` (witnesses set to inverse determinants)."""
        pt = {}
        for g in self.presentation.generators:
            for name, v in zip(self.matrix_variables(g), rho[g].flat):
                pt[name] = v
            pt[self.witness(g)] = 1 / det(rho[g])
        return pt


def _poly_det(m: PolyMatrix) -> Polynomial:
    return m.det()


def _adjugate(m: PolyMatrix) -> PolyMatrix:
    n = m.rows
    if n == 1:
        return PolyMatrix(m.variables, [[Polynomial.constant(m.variables, 1)]])
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            rs = [r for r in range(n) if r != j]
            cs = [c for c in range(n) if c != i]
            minor = m.det(rs, cs)
            row.append(minor if (i + j) % 2 == 0 else -minor)
        entries.append(row)
    return PolyMatrix(m.variables, entries)


def _scale(m: PolyMatrix, p: Polynomial) -> PolyMatrix:
    return PolyMatrix(m.variables, [[p * e for e in row] for row in m.entries])


def rep_variety_equations(p: Presentation, n: int) -> RepVarietySystem:
    """Polynomial system whose rational points are the representations of ``p`` in ``GL(n)``.

    Variables: ``g_ij`` for each generator ``g``, plus a witness ``w_g`` with
    ``det(g) w_g = 1``; inverse letters become ``w_g adj(g)``. For ``n = 1``
    each relation is first collapsed to its exponent sums, since ``GL(1)`` is
    abelian.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    sys = RepVarietySystem(p, n, [], [])
    variables = []
    for g in p.generators:
        variables += sys.matrix_variables(g) + [sys.witness(g)]
    sys.variables = variables

    def var(name):
        return Polynomial.var(variables, name)

    X, W, Xinv = {}, {}, {}
    for g in p.generators:
        names = sys.matrix_variables(g)
        X[g] = PolyMatrix(variables, [[var(names[i * n + j]) for j in range(n)] for i in range(n)])
        W[g] = var(sys.witness(g))
        Xinv[g] = _scale(_adjugate(X[g]), W[g])
    one = Polynomial.constant(variables, 1)
    eqs: list[Polynomial] = []
    for r in p.relations:
        if n == 1:
            net: dict[str, int] = {}
            for g, e in r:
                net[g] = net.get(g, 0) + e
            val = one
            for g in p.generators:
                k = net.get(g, 0)
                val = val * (X[g][0, 0] ** k if k > 0 else W[g] ** (-k))
            eqs.append(val - one)
            continue
        m = PolyMatrix(variables, [[one if i == j else Polynomial(variables) for j in range(n)] for i in range(n)])
        for g, e in r:
            m = m @ (X[g] if e == 1 else Xinv[g])
        for i in range(n):
            for j in range(n):
                eqs.append(m[i, j] - (one if i == j else 0))
    for g in p.generators:
        eqs.append(_poly_det(X[g]) * W[g] - one)
    sys.equations = [e for e in eqs if e.terms]
    return sys


def jacobian_at(sys: RepVarietySystem, rho: Representation) -> np.ndarray:
    pt = sys.point(rho)
    flat = [eq.derivative(v)(pt) for eq in sys.equations for v in sys.variables]
    return qmatrix(flat, shape=(len(sys.equations), len(sys.variables)))


# --------------------------------------------------------------------------
# Fox calculus


def ad_matrix(g: np.ndarray, g_inv: np.ndarray | None = None) -> np.ndarray:
    """``t -> g t g^-1`` on row-major flattened ``n x n`` matrices."""
    g_inv = inverse(g) if g_inv is None else g_inv
    return np.kron(g, g_inv.T)


def fox_jacobian(p: Presentation, rho: Representation) -> np.ndarray:
    """Block matrix ``[Ad(d r / d a)]`` (rows: relations, columns: generators)."""
    n = rep_dimension(rho)
    m = n * n
    inv = {g: inverse(rho[g]) for g in p.generators}
    col = {g: k for k, g in enumerate(p.generators)}
    out = zeros(m * len(p.relations), m * len(p.generators))
    for ri, r in enumerate(p.relations):
        prefix = identity(n)
        for g, e in r:
            c = col[g]
            if e == 1:
                block = ad_matrix(prefix)
                prefix_next = prefix @ rho[g]
            else:
                prefix_next = prefix @ inv[g]
                block = -ad_matrix(prefix_next)
            out[ri * m:(ri + 1) * m, c * m:(c + 1) * m] += block
            prefix = prefix_next
    return out


@dataclass(eq=False)
class CocycleSpace:
    presentation: Presentation
    rho: Representation
    z1: list[np.ndarray]
    b1: list[np.ndarray]

    @property
    def n(self) -> int:
        return rep_dimension(self.rho)

    @property
    def dims(self) -> dict[str, int]:
        return {"Z1": len(self.z1), "B1": len(self.b1), "H1": len(self.z1) - len(self.b1)}

    def as_matrices(self, v: np.ndarray) -> dict[str, np.ndarray]:
        n = self.n
        return {g: v[k * n * n:(k + 1) * n * n].reshape(n, n) for k, g in enumerate(self.presentation.generators)}

    def b1_in_z1(self) -> bool:
        return span_contains(self.z1, self.b1, len(self.presentation.generators) * self.n ** 2)


def fox_z1(p: Presentation, rho: Representation) -> list[np.ndarray]:
    """Basis of ``Z^1(G, gl(n)_Ad)`` in Ad-coordinates."""
    _require_rep(p, rho)
    n = rep_dimension(rho)
    total = n * n * len(p.generators)
    if not p.relations:
        return [qmatrix([[1 if i == j else 0] for i in range(total)])[:, 0] for j in range(total)]
    return kernel_basis(fox_jacobian(p, rho))


def coboundary_map(p: Presentation, rho: Representation) -> np.ndarray:
    """``v -> (rho(a) v rho(a)^-1 - v)_a`` as a matrix on flattened ``v``."""
    n = rep_dimension(rho)
    m = n * n
    out = zeros(m * len(p.generators), m)
    for k, g in enumerate(p.generators):
        out[k * m:(k + 1) * m, :] = ad_matrix(rho[g]) - identity(m)
    return out


def coboundary_b1(p: Presentation, rho: Representation) -> list[np.ndarray]:
    """Basis of ``B^1`` in Ad-coordinates (tangent coordinates: ``rho(a) v - v rho(a)``)."""
    _require_rep(p, rho)
    from .exact import column_space_basis, columns

    c = coboundary_map(p, rho)
    return column_space_basis(columns(c), c.shape[0])


def cocycle_space(p: Presentation, rho: Representation) -> CocycleSpace:
    cs = CocycleSpace(p, rho, fox_z1(p, rho), coboundary_b1(p, rho))
    assert cs.b1_in_z1(), "coboundaries must be cocycles"
    return cs


def to_tangent(p: Presentation, rho: Representation, v: np.ndarray) -> np.ndarray:
    """``(t_a) -> (t_a rho(a))``, the tangent vector to the representation variety."""
    n = rep_dimension(rho)
    m = n * n
    out = zeros(len(v))
    for k, g in enumerate(p.generators):
        out[k * m:(k + 1) * m] = (v[k * m:(k + 1) * m].reshape(n, n) @ rho[g]).reshape(-1)
    return out


def _require_rep(p: Presentation, rho: Representation):
    v = verify_representation(p, rho)
    if not v:
        raise ValueError(f"not a representation: {v.message}")


@dataclass(frozen=True)
class CrosscheckResult:
    jacobian_dim: int
    z1_dim: int
    fox_in_jacobian: bool
    jacobian_in_fox: bool
    b1_in_z1: bool

    @property
    def ok(self) -> bool:
        return (self.jacobian_dim == self.z1_dim and self.fox_in_jacobian and self.jacobian_in_fox
                and self.b1_in_z1)

    def __bool__(self) -> bool:
        return self.ok


def tangent_crosscheck(p: Presentation, rho: Representation) -> CrosscheckResult:
    """Zariski tangent space (Jacobian kernel, projected to matrix coordinates) against Fox ``Z^1``."""
    _require_rep(p, rho)
    n = rep_dimension(rho)
    sys = rep_variety_equations(p, n)
    jac = jacobian_at(sys, rho)
    kernel = kernel_basis(jac) if jac.shape[0] else [
        qmatrix([[1 if i == j else 0] for i in range(len(sys.variables))])[:, 0] for j in range(len(sys.variables))]
    matrix_idx = [sys.variables.index(v) for g in p.generators for v in sys.matrix_variables(g)]
    projected = [k[matrix_idx] for k in kernel]
    # witnesses are determined by the matrix coordinates, so the projection is injective
    dim = len(matrix_idx)
    jac_dim = rank(np.column_stack(projected)) if projected else 0
    cs = cocycle_space(p, rho)
    fox_tangent = [to_tangent(p, rho, z) for z in cs.z1]
    return CrosscheckResult(jac_dim, len(cs.z1), span_contains(projected, fox_tangent, dim),
                            span_contains(fox_tangent, projected, dim), cs.b1_in_z1())


# --------------------------------------------------------------------------
# sampled representations


def _random_matrix(n: int, rng: random.Random, bound: int = 5) -> np.ndarray:
    while True:
        m = qmatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if det(m) != 0:
            return m


def generic_representation(p: Presentation, n: int, rng: random.Random) -> Representation:
    """Random invertible matrices; only valid for presentations without relations."""
    if p.relations:
        raise ValueError("generic matrices satisfy no relations")
    while True:
        rho = {g: _random_matrix(n, rng) for g in p.generators}
        mats = list(rho.values())
        if n == 1 or len(mats) < 2 or not is_zero(mats[0] @ mats[1] - mats[1] @ mats[0]):
            return rho


def sampled_representation(p: Presentation, n: int, rng: random.Random) -> Representation:
    """A nontrivial representation for the corpus shapes: free, abelian or surface relations.

    Free groups get generic matrices. Commutator relations are met by polynomials in one
    random matrix; the genus-2 relation ``[a1,b1][a2,b2]`` by ``a2 = b1``, ``b2 = a1``.
    """
    if not p.relations:
        return generic_representation(p, n, rng)
    base = _random_matrix(n, rng)
    other = _random_matrix(n, rng)
    candidates = [{g: np.linalg.matrix_power(base, k + 1) for k, g in enumerate(p.generators)}]
    if len(p.generators) == 4:
        a1, b1, a2, b2 = p.generators
        candidates.insert(0, {a1: base, b1: other, a2: other, b2: base})
    for rho in candidates:
        if verify_representation(p, rho):
            return rho
    raise ValueError("could not sample a representation of this presentation")


def conjugate(rho: Representation, h: np.ndarray) -> Representation:
    hi = inverse(h)
    return {g: h @ m @ hi for g, m in rho.items()}

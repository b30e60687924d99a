"""Finite-dimensional local Q-algebras given by a basis and a multiplication table."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exact import ONE, Polynomial, Q, is_zero, kernel_basis, rank, rref, zeros


class DegenerateRingError(ValueError):
    """The relations generate the unit ideal."""


def _monomials(nvars: int, max_degree: int) -> list[tuple[int, ...]]:
    out = []
    for deg in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(nvars), deg):
            e = [0] * nvars
            for v in combo:
                e[v] += 1
            out.append(tuple(e))
    return out


def _mono_label(gens: Sequence[str], exp: tuple[int, ...]) -> str:
    parts = [g if e == 1 else f"{g}^{e}" for g, e in zip(gens, exp) if e]
    return "*".join(parts) or "1"


@dataclass(eq=False)
class ArtinianLocalRing:
    """Local ring with basis ``basis`` (``basis[0]`` is the unit).

    ``mult[i, j, k]`` is the coefficient of ``basis[k]`` in ``basis[i] * basis[j]``.
    ``normal_forms`` maps exponent vectors of monomials in ``generators`` to
    their coordinates, which is how polynomial strings become ring elements.
    """

    generators: tuple[str, ...]
    basis: list[str]
    mult: np.ndarray
    normal_forms: dict[tuple[int, ...], np.ndarray]
    truncation: int
    relations: tuple[str, ...] = ()
    basis_exponents: list[tuple[int, ...]] | None = None

    def __post_init__(self):
        self.nilpotency = self._nilpotency()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self):
        return f"ArtinianLocalRing(basis={self.basis}, nilpotency={self.nilpotency})"

    # elements
    def zero(self) -> np.ndarray:
        return zeros(self.dim)

    def one(self) -> np.ndarray:
        v = zeros(self.dim)
        v[0] = ONE
        return v

    def basis_vector(self, k: int) -> np.ndarray:
        v = zeros(self.dim)
        v[k] = ONE
        return v

    def element(self, poly) -> np.ndarray:
        """Ring element from a polynomial (or polynomial string) in the generators."""
        if isinstance(poly, str):
            poly = Polynomial.parse(poly, self.generators)
        out = zeros(self.dim)
        for exp, c in poly.terms.items():
            nf = self.normal_forms.get(exp)
            if nf is not None:
                out = out + nf * c
        return out

    def mul(self, u: np.ndarray, v: np.ndarray) -> np.ndarray:
        return np.einsum("i,j,ijk->k", u, v, self.mult)

    def mult_matrix(self, u: np.ndarray) -> np.ndarray:
        """Matrix of ``v -> u v``."""
        return np.einsum("i,ijk->kj", u, self.mult)

    def in_maximal_ideal(self, u: np.ndarray) -> bool:
        return u[0] == 0

    def format(self, u: np.ndarray) -> str:
        terms = []
        for c, name in zip(u, self.basis):
            if c:
                terms.append(f"{c}" if name == "1" else (name if c == 1 else (f"-{name}" if c == -1 else f"{c}*{name}")))
        return " + ".join(terms).replace("+ -", "- ") or "0"

    # structure
    def maximal_ideal_basis(self) -> list[np.ndarray]:
        return [self.basis_vector(k) for k in range(1, self.dim)]

    def power(self, j: int) -> list[np.ndarray]:
        """A basis of ``m^j``."""
        if j <= 0:
            return [self.basis_vector(k) for k in range(self.dim)]
        cur = self.maximal_ideal_basis()
        for _ in range(j - 1):
            prods = [self.mul(u, v) for u in cur for v in self.maximal_ideal_basis()]
            cur = _independent(prods, self.dim)
        return cur

    def _nilpotency(self) -> int:
        j = 1
        while self.power(j):
            j += 1
        return j

    def socle(self) -> list[np.ndarray]:
        """Basis of ``{u in m : u m = 0}``."""
        if self.dim == 1:
            return []
        rows = [np.column_stack([self.mul(self.basis_vector(k), b) for k in range(1, self.dim)])
                for b in self.maximal_ideal_basis()]
        sol = kernel_basis(np.vstack(rows))
        out = []
        for s in sol:
            v = zeros(self.dim)
            v[1:] = s
            out.append(v)
        return out

    def check_axioms(self) -> bool:
        """Associativity, commutativity and unit on all basis triples."""
        m = self.mult
        if not is_zero(m - np.transpose(m, (1, 0, 2))):
            return False
        left = np.einsum("ijk,klm->ijlm", m, m)   # (b_i b_j) b_l
        right = np.einsum("jlk,ikm->ijlm", m, m)  # b_i (b_j b_l)
        if not is_zero(left - right):
            return False
        unit = m[0]
        return all(unit[j, k] == (1 if j == k else 0) for j in range(self.dim) for k in range(self.dim))


def _independent(vectors, dim):
    if not vectors:
        return []
    mat = np.vstack(vectors)
    r, piv = rref(mat)
    return [r[i].copy() for i in range(len(piv))]


def make_artinian(generators: Sequence[str], truncation: int, relations: Sequence = ()) -> ArtinianLocalRing:
    """``Q[generators] / (relations + all monomials of degree truncation)``.

    Normal forms come from row-reducing the span of ``monomial * relation``
    (truncated) with high-degree monomials as pivots; the remaining standard
    monomials form the basis.
    """
    if truncation < 1:
        raise ValueError("truncation must be at least 1")
    gens = tuple(generators)
    n = len(gens)
    monos = _monomials(n, truncation - 1)
    index = {e: k for k, e in enumerate(monos)}
    # pivot preference: high degree first, then lexicographically large
    order = sorted(range(len(monos)), key=lambda k: (-sum(monos[k]), tuple(-x for x in monos[k])))
    col_of = {k: c for c, k in enumerate(order)}
    rel_polys = [r if isinstance(r, Polynomial) else Polynomial.parse(str(r), gens) for r in relations]
    rows = []
    for f in rel_polys:
        for u in monos:
            row = zeros(len(monos))
            for exp, c in f.terms.items():
                e = tuple(a + b for a, b in zip(exp, u))
                if sum(e) < truncation:
                    row[col_of[index[e]]] += c
            if not is_zero(row):
                rows.append(row)
    if rows:
        red, pivots = rref(np.vstack(rows))
    else:
        red, pivots = zeros(0, len(monos)), []
    pivot_set = set(pivots)
    const_col = col_of[index[(0,) * n]]
    if const_col in pivot_set:
        raise DegenerateRingError(f"relations {[str(r) for r in relations]} generate the unit ideal")
    standard_cols = [c for c in range(len(monos)) if c not in pivot_set]
    # ring basis: unit first, then by degree, lexicographically large first
    standard = sorted((order[c] for c in standard_cols), key=lambda k: (sum(monos[k]), tuple(-x for x in monos[k])))
    pos = {k: p for p, k in enumerate(standard)}
    dim = len(standard)
    normal_forms: dict[tuple[int, ...], np.ndarray] = {}
    pivot_row = {pc: r for r, pc in enumerate(pivots)}
    for k, e in enumerate(monos):
        v = zeros(dim)
        c = col_of[k]
        if c in pivot_row:
            row = red[pivot_row[c]]
            for sc in standard_cols:
                if row[sc]:
                    v[pos[order[sc]]] -= row[sc]
        else:
            v[pos[k]] = ONE
        normal_forms[e] = v
    mult = zeros(dim, dim, dim)
    for a, ka in enumerate(standard):
        for b, kb in enumerate(standard):
            e = tuple(x + y for x, y in zip(monos[ka], monos[kb]))
            if sum(e) < truncation:
                mult[a, b, :] = normal_forms[e]
    ring = ArtinianLocalRing(gens, [_mono_label(gens, monos[k]) for k in standard], mult, normal_forms,
                             truncation, tuple(str(r) for r in rel_polys), [monos[k] for k in standard])
    if not ring.check_axioms():
        raise DegenerateRingError("multiplication table is not commutative and associative")
    return ring


def truncated_polynomial_ring(n: int, var: str = "t") -> ArtinianLocalRing:
    """``Q[t]/t^n``."""
    return make_artinian([var], n)


def quotient(A: ArtinianLocalRing, ideal: Sequence[np.ndarray]) -> tuple[ArtinianLocalRing, np.ndarray]:
    """``A / I`` for an ideal given by spanning vectors, with the projection matrix.

    Kept basis elements are the non-pivot ones when pivots are taken from the
    highest basis index downwards, so the unit and low-degree elements survive.
    """
    ideal = [v for v in ideal if not is_zero(v)]
    for v in ideal:
        for b in range(A.dim):
            prod = A.mul(v, A.basis_vector(b))
            if rank(np.column_stack(ideal + [prod])) != rank(np.column_stack(ideal)):
                raise ValueError("subspace is not an ideal")
    n = A.dim
    rev = list(range(n - 1, -1, -1))
    if ideal:
        mat = np.vstack([v[rev] for v in ideal])
        red, piv = rref(mat)
    else:
        red, piv = zeros(0, n), []
    pivots = [rev[p] for p in piv]
    if 0 in pivots:
        raise DegenerateRingError("quotient by the unit ideal")
    kept = [k for k in range(n) if k not in set(pivots)]
    pos = {k: p for p, k in enumerate(kept)}
    proj = zeros(len(kept), n)
    for k in kept:
        proj[pos[k], k] = ONE
    for r, pk in enumerate(pivots):
        row = red[r]
        for c in range(n):
            orig = rev[c]
            if orig in pos and row[c]:
                proj[pos[orig], pk] -= row[c]
    lift = zeros(n, len(kept))
    for k in kept:
        lift[k, pos[k]] = ONE
    mult = np.einsum("ai,bj,abc,kc->ijk", lift, lift, A.mult, proj)
    nfs = {e: proj @ v for e, v in A.normal_forms.items()}
    exps = [A.basis_exponents[k] for k in kept] if A.basis_exponents else None
    B = ArtinianLocalRing(A.generators, [A.basis[k] for k in kept], mult, nfs, A.truncation,
                          A.relations, exps)
    return B, proj


def socle_line(A: ArtinianLocalRing) -> np.ndarray:
    """A one-dimensional ideal inside ``m^l`` for the largest ``l`` with ``m^l != 0``.

    The lexicographically first basis monomial of maximal degree is used when
    it spans such a line; otherwise the first row-reduced vector of ``m^l``.
    """
    if A.dim == 1:
        raise ValueError("the residue field has no nonzero ideal")
    top = A.power(A.nilpotency - 1)
    if A.basis_exponents:
        maxdeg = max(sum(e) for e in A.basis_exponents)
        cands = [k for k, e in enumerate(A.basis_exponents) if sum(e) == maxdeg]
        cands.sort(key=lambda k: tuple(-x for x in A.basis_exponents[k]))
        v = A.basis_vector(cands[0])
        if rank(np.column_stack(top + [v])) == len(top):
            return v
    return top[0]


def socle_quotient(A: ArtinianLocalRing) -> tuple[ArtinianLocalRing, np.ndarray, np.ndarray]:
    """``0 -> Q -> A -> A' -> 0``: returns ``(A', projection, socle vector)``."""
    s = socle_line(A)
    B, proj = quotient(A, [s])
    return B, proj, s


def ring_hom(A: ArtinianLocalRing, B: ArtinianLocalRing) -> np.ndarray:
    """Matrix of the natural surjection ``A -> B`` for rings on the same generators.

    Every basis monomial of ``A`` is sent to its normal form in ``B``; the
    result is checked to be multiplicative.
    """
    if A.generators != B.generators or not A.basis_exponents:
        raise ValueError("natural map needs monomial bases over the same generators")
    h = zeros(B.dim, A.dim)
    for k, e in enumerate(A.basis_exponents):
        nf = B.normal_forms.get(e)
        if nf is not None:
            h[:, k] = nf
    lhs = np.einsum("ijk,lk->ijl", A.mult, h)
    rhs = np.einsum("ai,bj,abl->ijl", h, h, B.mult)
    if not is_zero(lhs - rhs):
        raise ValueError("natural map is not a ring homomorphism (B is not a quotient of A)")
    return h


def standard_rings() -> dict[str, ArtinianLocalRing]:
    return {
        "Q[t]/t^2": make_artinian(["t"], 2),
        "Q[t]/t^3": make_artinian(["t"], 3),
        "Q[x,y]/(x,y)^2": make_artinian(["x", "y"], 2),
    }

"""DGLAs, modules over them, DGLA pairs and pair morphisms.

Sign convention: graded antisymmetry is ``[a, b] = -(-1)^(ij) [b, a]`` for
``a`` in degree ``i`` and ``b`` in degree ``j``. This is the convention under
which ``[w, w]`` need not vanish for ``w`` of degree one, so the Maurer-Cartan
equation ``dw + 1/2 [w, w] = 0`` is non-trivial.

Structure constants are dense object arrays: ``bracket[(i, j)][a, b, c]`` is the
coefficient of basis vector ``c`` of degree ``i + j`` in ``[e_a, e_b]``, and
``action[(i, j)][a, b, c]`` the coefficient of ``m_c`` in ``e_a . m_b``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .exact import identity, is_zero, zeros
from .graded import (
    CochainComplex,
    Cohomology,
    GradedMap,
    GradedVectorSpace,
    ShapeError,
    Verdict,
    cohomology,
    induced_map,
    is_chain_map,
    validate_complex,
)


class AxiomError(ValueError):
    """A structure fails one of the DGLA / module / morphism axioms."""

    def __init__(self, verdict: Verdict):
        super().__init__(verdict.message)
        self.verdict = verdict


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def default_labels(space: GradedVectorSpace, prefix: str) -> dict[int, list[str]]:
    return {i: [f"{prefix}{i}_{k}" for k in range(space.dim(i))] for i in space.degrees()}


def _table(tables: Mapping, i: int, j: int, shape: tuple[int, int, int]) -> np.ndarray:
    t = tables.get((i, j))
    if t is None:
        return zeros(*shape)
    return t


@dataclass(eq=False)
class DGLA:
    complex: CochainComplex
    bracket: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)
    labels: dict[int, list[str]] | None = None

    def __post_init__(self):
        sp = self.complex.space
        for (i, j), t in self.bracket.items():
            want = (sp.dim(i), sp.dim(j), sp.dim(i + j))
            if tuple(t.shape) != want:
                raise ShapeError(f"bracket table ({i},{j}) has shape {tuple(t.shape)}, expected {want}")
        if self.labels is None:
            self.labels = default_labels(sp, "c")

    @property
    def space(self) -> GradedVectorSpace:
        return self.complex.space

    def d(self, i: int) -> np.ndarray:
        return self.complex.d(i)

    def table(self, i: int, j: int) -> np.ndarray:
        sp = self.space
        return _table(self.bracket, i, j, (sp.dim(i), sp.dim(j), sp.dim(i + j)))

    def br(self, x: np.ndarray, i: int, y: np.ndarray, j: int) -> np.ndarray:
        """Bracket of plain (field-valued) vectors of degrees ``i`` and ``j``."""
        return np.einsum("a,b,abc->c", x, y, self.table(i, j))

    def is_abelian(self) -> bool:
        return all(is_zero(t) for t in self.bracket.values())


@dataclass(eq=False)
class DGLAModule:
    complex: CochainComplex
    action: dict[tuple[int, int], np.ndarray] = field(default_factory=dict)
    labels: dict[int, list[str]] | None = None

    def __post_init__(self):
        if self.labels is None:
            self.labels = default_labels(self.complex.space, "m")

    @property
    def space(self) -> GradedVectorSpace:
        return self.complex.space

    def d(self, i: int) -> np.ndarray:
        return self.complex.d(i)


@dataclass(eq=False)
class DGLAPair:
    lie: DGLA
    module: DGLAModule
    name: str = ""

    def __post_init__(self):
        ls, ms = self.lie.space, self.module.space
        for (i, j), t in self.module.action.items():
            want = (ls.dim(i), ms.dim(j), ms.dim(i + j))
            if tuple(t.shape) != want:
                raise ShapeError(f"action table ({i},{j}) has shape {tuple(t.shape)}, expected {want}")

    def action_table(self, i: int, j: int) -> np.ndarray:
        ls, ms = self.lie.space, self.module.space
        return _table(self.module.action, i, j, (ls.dim(i), ms.dim(j), ms.dim(i + j)))

    def act(self, x: np.ndarray, i: int, xi: np.ndarray, j: int) -> np.ndarray:
        return np.einsum("a,b,abc->c", x, xi, self.action_table(i, j))

    def action_matrix(self, x: np.ndarray, i: int, j: int) -> np.ndarray:
        """Matrix of ``xi -> x . xi`` from ``M^j`` to ``M^(i+j)``."""
        return np.einsum("a,abc->cb", x, self.action_table(i, j))


@dataclass(eq=False)
class PairMorphism:
    source: DGLAPair
    target: DGLAPair
    g1: GradedMap
    g2: GradedMap


# --------------------------------------------------------------------------
# axiom checks


def _first_nonzero(arr: np.ndarray):
    for idx, v in np.ndenumerate(arr):
        if v != 0:
            return idx
    return None


def _windows(space: GradedVectorSpace):
    return [i for i in space.degrees() if space.dim(i)]


def validate_dgla(L: DGLA) -> Verdict:
    """Check d^2 = 0, graded antisymmetry, graded Jacobi and the Leibniz rule."""
    v = validate_complex(L.complex)
    if not v:
        return Verdict(False, f"differential: {v.message}", degree=v.degree, details={"axiom": "d^2=0"})
    degs = _windows(L.space)
    lab = L.labels
    for i in degs:
        for j in degs:
            t_ij, t_ji = L.table(i, j), L.table(j, i)
            diff = t_ij + _sign(i * j) * np.transpose(t_ji, (1, 0, 2))
            idx = _first_nonzero(diff)
            if idx is not None:
                a, b, _ = idx
                literal = is_zero(t_ij - _sign(i * j) * np.transpose(t_ji, (1, 0, 2)))
                note = " (table satisfies the literal [a,b] = (-1)^(ij)[b,a] sign instead)" if literal else ""
                return Verdict(False, f"antisymmetry fails for [{lab[i][a]}, {lab[j][b]}]{note}",
                               details={"axiom": "antisymmetry", "witness": [lab[i][a], lab[j][b]],
                                        "literal_sign": literal})
    for i in degs:
        for j in degs:
            for k in degs:
                if L.space.dim(i + j + k) == 0:
                    continue
                # [x,[y,z]], [y,[z,x]], [z,[x,y]] as arrays indexed (x, y, z, out)
                t1 = np.einsum("bce,aef->abcf", L.table(j, k), L.table(i, j + k))
                t2 = np.einsum("cae,bef->abcf", L.table(k, i), L.table(j, k + i))
                t3 = np.einsum("abe,cef->abcf", L.table(i, j), L.table(k, i + j))
                total = _sign(k * i) * t1 + _sign(i * j) * t2 + _sign(j * k) * t3
                idx = _first_nonzero(total)
                if idx is not None:
                    a, b, c, _ = idx
                    return Verdict(False, f"Jacobi fails for ({lab[i][a]}, {lab[j][b]}, {lab[k][c]})",
                                   details={"axiom": "jacobi", "witness": [lab[i][a], lab[j][b], lab[k][c]]})
    for i in degs:
        for j in degs:
            if L.space.dim(i + j + 1) == 0:
                continue
            lhs = np.einsum("abe,fe->abf", L.table(i, j), L.d(i + j))
            rhs1 = np.einsum("ea,ebf->abf", L.d(i), L.table(i + 1, j))
            rhs2 = np.einsum("eb,aef->abf", L.d(j), L.table(i, j + 1))
            idx = _first_nonzero(lhs - rhs1 - _sign(i) * rhs2)
            if idx is not None:
                a, b, _ = idx
                return Verdict(False, f"Leibniz rule fails for ({lab[i][a]}, {lab[j][b]})",
                               details={"axiom": "leibniz", "witness": [lab[i][a], lab[j][b]]})
    return Verdict(True)


def validate_module(P: DGLAPair) -> Verdict:
    """Check the module differential, the action axiom and compatibility with d."""
    v = validate_complex(P.module.complex)
    if not v:
        return Verdict(False, f"module differential: {v.message}", degree=v.degree, details={"axiom": "d^2=0"})
    L, M = P.lie, P.module
    ldeg, mdeg = _windows(L.space), _windows(M.space)
    ll, ml = L.labels, M.labels
    for i in ldeg:
        for j in ldeg:
            for k in mdeg:
                if M.space.dim(i + j + k) == 0:
                    continue
                lhs = np.einsum("abe,ecf->abcf", L.table(i, j), P.action_table(i + j, k))
                r1 = np.einsum("bce,aef->abcf", P.action_table(j, k), P.action_table(i, j + k))
                r2 = np.einsum("ace,bef->abcf", P.action_table(i, k), P.action_table(j, i + k))
                idx = _first_nonzero(lhs - r1 + _sign(i * j) * r2)
                if idx is not None:
                    a, b, c, _ = idx
                    return Verdict(False, f"action axiom fails for ({ll[i][a]}, {ll[j][b]}, {ml[k][c]})",
                                   details={"axiom": "action", "witness": [ll[i][a], ll[j][b], ml[k][c]]})
    for i in ldeg:
        for j in mdeg:
            if M.space.dim(i + j + 1) == 0:
                continue
            lhs = np.einsum("abe,fe->abf", P.action_table(i, j), M.d(i + j))
            r1 = np.einsum("ea,ebf->abf", L.d(i), P.action_table(i + 1, j))
            r2 = np.einsum("eb,aef->abf", M.d(j), P.action_table(i, j + 1))
            idx = _first_nonzero(lhs - r1 - _sign(i) * r2)
            if idx is not None:
                a, b, _ = idx
                return Verdict(False, f"compatibility d(a.x) = (da).x + (-1)^i a.dx fails for ({ll[i][a]}, {ml[j][b]})",
                               details={"axiom": "compatibility", "witness": [ll[i][a], ml[j][b]]})
    return Verdict(True)


def validate_pair(P: DGLAPair) -> Verdict:
    v = validate_dgla(P.lie)
    return v if not v else validate_module(P)


def validate_dgla_morphism(g1: GradedMap, src: DGLA, dst: DGLA) -> Verdict:
    if g1.shift:
        return Verdict(False, "DGLA morphisms preserve degree")
    v = is_chain_map(g1, src.complex, dst.complex)
    if not v:
        return v
    for i in _windows(src.space):
        for j in _windows(src.space):
            # g([x, y]) vs [g x, g y]
            lhs = np.einsum("abe,fe->abf", src.table(i, j), g1.block(i + j))
            rhs = np.einsum("ea,fb,efc->abc", g1.block(i), g1.block(j), dst.table(i, j))
            if not is_zero(lhs - rhs):
                return Verdict(False, f"map does not preserve the bracket on degrees ({i}, {j})")
    return Verdict(True)


def validate_morphism(g: PairMorphism) -> Verdict:
    v = validate_dgla_morphism(g.g1, g.source.lie, g.target.lie)
    if not v:
        return Verdict(False, f"g1: {v.message}", details={"component": "g1"})
    if g.g2.shift:
        return Verdict(False, "g2 must preserve degree")
    v = is_chain_map(g.g2, g.source.module.complex, g.target.module.complex)
    if not v:
        return Verdict(False, f"g2: {v.message}", details={"component": "g2"})
    S, T = g.source, g.target
    for i in _windows(S.lie.space):
        for j in _windows(S.module.space):
            lhs = np.einsum("abe,fe->abf", S.action_table(i, j), g.g2.block(i + j))
            rhs = np.einsum("ea,fb,efc->abc", g.g1.block(i), g.g2.block(j), T.action_table(i, j))
            if not is_zero(lhs - rhs):
                return Verdict(False, f"g2(a.x) != g1(a).g2(x) on degrees ({i}, {j})",
                               details={"component": "g2", "identity": "intertwining"})
    return Verdict(True)


# --------------------------------------------------------------------------
# cohomology pair and quasi-isomorphisms


def induced_structure(tables_of, source: Cohomology, other: Cohomology, target: Cohomology,
                      reps_source=None, reps_other=None) -> dict[tuple[int, int], np.ndarray]:
    """Structure constants induced on cohomology by a bilinear product.

    ``tables_of(i, j)`` returns the chain-level table; products of
    representatives are projected to ``target`` coordinates.
    """
    out = {}
    for i, hs in source.degrees.items():
        for j, ho in other.degrees.items():
            if not hs.dim or not ho.dim or (i + j) not in target.degrees or not target[i + j].dim:
                continue
            rs = reps_source[i] if reps_source else hs.representatives
            ro = reps_other[j] if reps_other else ho.representatives
            tab = tables_of(i, j)
            res = zeros(hs.dim, ho.dim, target[i + j].dim)
            for a, x in enumerate(rs):
                for b, y in enumerate(ro):
                    prod = np.einsum("a,b,abc->c", x, y, tab)
                    res[a, b, :] = target[i + j].coordinates(prod)
            if not is_zero(res):
                out[(i, j)] = res
    return out


def _zero_complex(dims, lo) -> CochainComplex:
    sp = GradedVectorSpace.from_dims(dims, lo)
    return CochainComplex(sp, GradedMap(sp, sp, 1, {}))


def _cohomology_labels(labels, H: Cohomology) -> dict[int, list[str]]:
    out = {}
    for i, h in H.degrees.items():
        names = []
        for rep in h.representatives:
            # name a class after its representative when it is a single basis vector
            nz = [k for k, v in enumerate(rep) if v != 0]
            names.append(labels[i][nz[0]] if len(nz) == 1 and rep[nz[0]] == 1 else f"[h{i}_{len(names)}]")
        out[i] = names
    return out


def cohomology_pair(P: DGLAPair) -> DGLAPair:
    """The pair (H(C), H(M)) with zero differentials and induced bracket/action."""
    HC = cohomology(P.lie.complex)
    HM = cohomology(P.module.complex)
    lc = _zero_complex(HC.dims(), P.lie.space.lo)
    mc = _zero_complex(HM.dims(), P.module.space.lo)
    bracket = induced_structure(P.lie.table, HC, HC, HC)
    action = induced_structure(P.action_table, HC, HM, HM)
    lie = DGLA(lc, bracket, _cohomology_labels(P.lie.labels, HC))
    module = DGLAModule(mc, action, _cohomology_labels(P.module.labels, HM))
    return DGLAPair(lie, module, name=f"H({P.name})" if P.name else "")


@dataclass
class QuasiIsoReport:
    lie: dict[int, bool]
    module: dict[int, bool]

    @property
    def lie_ok(self) -> bool:
        return all(self.lie.values())

    @property
    def module_ok(self) -> bool:
        return all(self.module.values())

    @property
    def ok(self) -> bool:
        return self.lie_ok and self.module_ok

    def __bool__(self) -> bool:
        return self.ok


def _is_iso(m: np.ndarray) -> bool:
    from .exact import rank

    return m.shape[0] == m.shape[1] and rank(m) == m.shape[0]


def cohomology_maps(f: GradedMap, src: CochainComplex, dst: CochainComplex) -> dict[int, np.ndarray]:
    return induced_map(f, cohomology(src), cohomology(dst))


def is_quasi_iso(g: PairMorphism) -> QuasiIsoReport:
    """Per-degree verdicts for H(g1) and H(g2) being isomorphisms."""
    v = validate_morphism(g)
    if not v:
        raise AxiomError(v)
    h1 = cohomology_maps(g.g1, g.source.lie.complex, g.target.lie.complex)
    h2 = cohomology_maps(g.g2, g.source.module.complex, g.target.module.complex)
    return QuasiIsoReport({i: _is_iso(m) for i, m in h1.items()}, {i: _is_iso(m) for i, m in h2.items()})


def identity_morphism(P: DGLAPair) -> PairMorphism:
    return PairMorphism(P, P, GradedMap.identity(P.lie.space), GradedMap.identity(P.module.space))


def zero_morphism(S: DGLAPair, T: DGLAPair) -> PairMorphism:
    return PairMorphism(S, T, GradedMap.zero(S.lie.space, T.lie.space), GradedMap.zero(S.module.space, T.module.space))


# --------------------------------------------------------------------------
# constructions


def ad_pair(L: DGLA, name: str = "") -> DGLAPair:
    """``L`` acting on itself by the bracket."""
    module = DGLAModule(L.complex, dict(L.bracket), {i: list(v) for i, v in L.labels.items()})
    return DGLAPair(L, module, name=name)


def _merge_spaces(a: GradedVectorSpace, b: GradedVectorSpace) -> GradedVectorSpace:
    lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
    return GradedVectorSpace(lo, hi, tuple(a.dim(i) + b.dim(i) for i in range(lo, hi + 1)))


def _sum_complex(a: CochainComplex, b: CochainComplex, sp: GradedVectorSpace) -> CochainComplex:
    from .exact import block_diag

    blocks = {i: block_diag(a.d(i), b.d(i)) for i in sp.degrees()}
    return CochainComplex(sp, GradedMap(sp, sp, 1, blocks))


def _sum_tables(ta, tb, sa1, sa2, sb1, sb2, sp1, sp2, keys):
    """Tables of a direct sum where mixed products vanish."""
    out = {}
    for (i, j) in keys:
        t = zeros(sp1.dim(i), sp2.dim(j), sp2.dim(i + j))
        x = ta(i, j)
        t[: sa1.dim(i), : sa2.dim(j), : sa2.dim(i + j)] = x
        y = tb(i, j)
        t[sa1.dim(i):, sa2.dim(j):, sa2.dim(i + j):] = y
        if not is_zero(t):
            out[(i, j)] = t
    return out


def _sum_labels(la, lb, sa, sb, sp) -> dict[int, list[str]]:
    """Concatenated labels; names of the second summand that clash get primes."""
    first = {i: list(la.get(i, []))[: sa.dim(i)] for i in sp.degrees()}
    taken = {x for v in first.values() for x in v}
    out = {}
    for i in sp.degrees():
        second = []
        for x in list(lb.get(i, []))[: sb.dim(i)]:
            while x in taken:
                x += "'"
            taken.add(x)
            second.append(x)
        out[i] = first[i] + second
    return out


def direct_sum(P: DGLAPair, Q: DGLAPair, name: str = "") -> DGLAPair:
    """``(C + D, M + N)`` with ``[C, D] = 0``, C acting on M only and D on N only."""
    ls = _merge_spaces(P.lie.space, Q.lie.space)
    ms = _merge_spaces(P.module.space, Q.module.space)
    lkeys = [(i, j) for i in ls.degrees() for j in ls.degrees()]
    mkeys = [(i, j) for i in ls.degrees() for j in ms.degrees()]
    bracket = _sum_tables(P.lie.table, Q.lie.table, P.lie.space, P.lie.space, Q.lie.space, Q.lie.space,
                          ls, ls, lkeys)
    action = _sum_tables(P.action_table, Q.action_table, P.lie.space, P.module.space, Q.lie.space,
                         Q.module.space, ls, ms, mkeys)
    llab = _sum_labels(P.lie.labels, Q.lie.labels, P.lie.space, Q.lie.space, ls)
    mlab = _sum_labels(P.module.labels, Q.module.labels, P.module.space, Q.module.space, ms)
    lie = DGLA(_sum_complex(P.lie.complex, Q.lie.complex, ls), bracket, llab)
    module = DGLAModule(_sum_complex(P.module.complex, Q.module.complex, ms), action, mlab)
    return DGLAPair(lie, module, name=name)


def _projection(total: GradedVectorSpace, first: GradedVectorSpace) -> GradedMap:
    blocks = {}
    for i in total.degrees():
        m = zeros(first.dim(i), total.dim(i))
        m[:, : first.dim(i)] = identity(first.dim(i))
        blocks[i] = m
    return GradedMap(total, first, 0, blocks)


def projection_morphism(total: DGLAPair, first: DGLAPair) -> PairMorphism:
    """Projection of ``direct_sum(first, other)`` onto ``first``."""
    return PairMorphism(total, first, _projection(total.lie.space, first.lie.space),
                        _projection(total.module.space, first.module.space))


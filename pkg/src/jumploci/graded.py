"""Finite graded vector spaces, graded maps, cochain complexes and their cohomology."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .exact import column_space_basis, columns, is_zero, kernel_basis, qmatrix, rank, rref, solve, zeros


class ShapeError(ValueError):
    """A block has the wrong shape for its degree."""


class InvalidComplexError(ValueError):
    """The differential does not square to zero."""


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check: truthy on success, with the first failure described."""

    ok: bool
    message: str = ""
    degree: int | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class GradedVectorSpace:
    lo: int
    hi: int
    dims: tuple[int, ...]

    def __post_init__(self):
        if self.hi < self.lo - 1:
            raise ValueError("empty window must have hi = lo - 1")
        if len(self.dims) != self.hi - self.lo + 1:
            raise ValueError(f"window [{self.lo}, {self.hi}] needs {self.hi - self.lo + 1} dims, got {len(self.dims)}")
        if any(d < 0 for d in self.dims):
            raise ValueError("dimensions must be nonnegative")

    @classmethod
    def from_dims(cls, dims: Sequence[int], lo: int = 0) -> "GradedVectorSpace":
        return cls(lo, lo + len(dims) - 1, tuple(int(d) for d in dims))

    def dim(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.dims[i - self.lo]
        return 0

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def total_dim(self) -> int:
        return sum(self.dims)


@dataclass(frozen=True, eq=False)
class GradedMap:
    """Linear map ``source^i -> target^(i + shift)``, one matrix per source degree."""

    source: GradedVectorSpace
    target: GradedVectorSpace
    shift: int
    blocks: Mapping[int, np.ndarray]

    def __post_init__(self):
        for i, b in self.blocks.items():
            want = (self.target.dim(i + self.shift), self.source.dim(i))
            if tuple(b.shape) != want:
                raise ShapeError(f"block at degree {i} has shape {tuple(b.shape)}, expected {want}")

    def block(self, i: int) -> np.ndarray:
        b = self.blocks.get(i)
        if b is None:
            return zeros(self.target.dim(i + self.shift), self.source.dim(i))
        return b

    @classmethod
    def zero(cls, source, target, shift=0) -> "GradedMap":
        return cls(source, target, shift, {})

    @classmethod
    def identity(cls, space: GradedVectorSpace) -> "GradedMap":
        from .exact import identity

        return cls(space, space, 0, {i: identity(space.dim(i)) for i in space.degrees()})

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self o other``."""
        blocks = {}
        for i in other.source.degrees():
            blocks[i] = self.block(i + other.shift) @ other.block(i)
        return GradedMap(other.source, self.target, self.shift + other.shift, blocks)


@dataclass(frozen=True, eq=False)
class CochainComplex:
    space: GradedVectorSpace
    differential: GradedMap

    def __post_init__(self):
        if self.differential.shift != 1:
            raise ShapeError("a differential raises degree by one")
        if self.differential.source != self.space or self.differential.target != self.space:
            raise ShapeError("differential must be an endomorphism of the space")

    @classmethod
    def from_blocks(cls, dims: Sequence[int], blocks: Mapping[int, object] | None = None, lo: int = 0):
        space = GradedVectorSpace.from_dims(dims, lo)
        conv = {}
        for i, b in (blocks or {}).items():
            if not isinstance(b, np.ndarray):
                b = qmatrix(b) if len(b) else zeros(space.dim(i + 1), space.dim(i))
            conv[i] = b
        return cls(space, GradedMap(space, space, 1, conv))

    def d(self, i: int) -> np.ndarray:
        return self.differential.block(i)


def validate_complex(c: CochainComplex) -> Verdict:
    """Check ``d^(i+1) d^i = 0`` in every degree of the window."""
    for i in c.space.degrees():
        comp = c.d(i + 1) @ c.d(i)
        if not is_zero(comp):
            return Verdict(False, f"d^{i + 1} d^{i} != 0", degree=i)
    return Verdict(True)


def euler_char(c: CochainComplex | GradedVectorSpace) -> int:
    space = c.space if isinstance(c, CochainComplex) else c
    return sum((-1) ** i * space.dim(i) for i in space.degrees())


@dataclass(eq=False)
class CohomologyDegree:
    degree: int
    dim: int
    representatives: list[np.ndarray]
    boundaries: list[np.ndarray]
    ambient: int

    def coordinates(self, cocycle: np.ndarray) -> np.ndarray:
        """Coefficients of the class of ``cocycle`` on the representatives."""
        k = len(self.representatives)
        if k == 0:
            return zeros(0)
        basis = self.representatives + self.boundaries
        sol = solve(np.column_stack(basis), cocycle)
        if sol is None:
            raise ValueError(f"vector is not a cocycle in degree {self.degree}")
        return sol[:k]

    def rep_matrix(self) -> np.ndarray:
        if not self.representatives:
            return zeros(self.ambient, 0)
        return np.column_stack(self.representatives)


@dataclass(eq=False)
class Cohomology:
    complex: CochainComplex
    degrees: dict[int, CohomologyDegree]

    def dims(self) -> tuple[int, ...]:
        return tuple(self.degrees[i].dim for i in self.complex.space.degrees())

    def __getitem__(self, i: int) -> CohomologyDegree:
        return self.degrees[i]


def cohomology(c: CochainComplex, check: bool = True) -> Cohomology:
    """Per-degree cohomology with deterministic representatives.

    Representatives are kernel vectors of ``d^i`` that complete a basis of the
    image of ``d^(i-1)`` (first pivots of row reduction win).
    """
    if check:
        v = validate_complex(c)
        if not v:
            raise InvalidComplexError(v.message)
    out = {}
    for i in c.space.degrees():
        n = c.space.dim(i)
        cycles = kernel_basis(c.d(i)) if n else []
        bounds = column_space_basis(columns(c.d(i - 1)), n) if c.space.dim(i - 1) and n else []
        reps: list[np.ndarray] = []
        if cycles:
            stack = np.column_stack(bounds + cycles)
            _, pivots = rref(stack)
            reps = [cycles[p - len(bounds)] for p in pivots if p >= len(bounds)]
        out[i] = CohomologyDegree(i, len(reps), reps, bounds, n)
        expected = n - rank(c.d(i)) - rank(c.d(i - 1))
        assert out[i].dim == expected
    return Cohomology(c, out)


def induced_map(f: GradedMap, src: Cohomology, dst: Cohomology) -> dict[int, np.ndarray]:
    """Matrices of ``H(f)`` in the representative bases of ``src`` and ``dst``."""
    if f.shift:
        raise ShapeError("only degree-preserving maps induce maps on cohomology")
    out = {}
    for i in src.complex.space.degrees():
        s, t = src[i], dst.degrees.get(i)
        tdim = t.dim if t is not None else 0
        m = zeros(tdim, s.dim)
        for j, rep in enumerate(s.representatives):
            if tdim:
                m[:, j] = t.coordinates(f.block(i) @ rep)
        out[i] = m
    return out


def is_chain_map(f: GradedMap, src: CochainComplex, dst: CochainComplex) -> Verdict:
    for i in src.space.degrees():
        if not is_zero(dst.d(i) @ f.block(i) - f.block(i + 1) @ src.d(i)):
            return Verdict(False, f"map does not commute with differentials in degree {i}", degree=i)
    return Verdict(True)

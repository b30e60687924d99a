"""Exact rational matrices and multivariate polynomials.

Matrices are numpy ``object`` arrays whose entries are :class:`fractions.Fraction`.
Numpy is only used as a container (indexing, ``@``, ``einsum``); every
arithmetic operation happens on Python rationals, so results are exact.
"""
from __future__ import annotations

import itertools
import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x) -> Fraction:
    """Coerce ``x`` (int, Fraction, ``"p/q"`` string) to a Fraction.

    Floats are refused: a binary float literal is never what the caller meant.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        s = x.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
            raise ValueError(f"malformed rational {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def qmatrix(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build an exact matrix from nested sequences (or reshape a flat one)."""
    if isinstance(rows, np.ndarray) and rows.dtype == object and rows.ndim == 2:
        out = np.empty(rows.shape, dtype=object)
        for idx, v in np.ndenumerate(rows):
            out[idx] = Q(v)
        return out
    data = [[Q(v) for v in row] for row in rows] if shape is None else None
    if shape is not None:
        flat = [Q(v) for v in rows]
        if len(flat) != shape[0] * shape[1]:
            raise ValueError(f"{len(flat)} entries do not fill a {shape[0]}x{shape[1]} matrix")
        out = np.empty(shape, dtype=object)
        for k, v in enumerate(flat):
            out[divmod(k, shape[1])] = v
        return out
    nrows = len(data)
    ncols = len(data[0]) if nrows else 0
    if any(len(r) != ncols for r in data):
        raise ValueError("ragged matrix rows")
    out = np.empty((nrows, ncols), dtype=object)
    for i, row in enumerate(data):
        for j, v in enumerate(row):
            out[i, j] = v
    return out


def qvector(values: Iterable) -> np.ndarray:
    vals = [Q(v) for v in values]
    out = np.empty(len(vals), dtype=object)
    out[:] = vals
    return out


def zeros(*shape: int) -> np.ndarray:
    return np.full(shape, ZERO, dtype=object)


def identity(n: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = ONE
    return m


def is_zero(m: np.ndarray) -> bool:
    return all(v == 0 for v in np.asarray(m).flat)


def block_diag(*blocks: np.ndarray) -> np.ndarray:
    r = sum(b.shape[0] for b in blocks)
    c = sum(b.shape[1] for b in blocks)
    out = zeros(r, c)
    i = j = 0
    for b in blocks:
        out[i:i + b.shape[0], j:j + b.shape[1]] = b
        i += b.shape[0]
        j += b.shape[1]
    return out


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns (input is not modified)."""
    a = [list(row) for row in np.asarray(m)]
    nrows = len(a)
    ncols = m.shape[1] if m.ndim == 2 else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / Fraction(a[r][c])
        a[r] = [v * inv for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    out = zeros(nrows, ncols)
    for i, row in enumerate(a):
        out[i, :] = row
    return out, pivots


def rank(m: np.ndarray) -> int:
    """Exact rank over the rationals."""
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m: np.ndarray) -> list[np.ndarray]:
    """Basis of the right null space, one vector per free column.

    The vector for free column ``f`` has a 1 in position ``f``; ordering follows
    the free columns, so the output is deterministic in the input.
    """
    ncols = m.shape[1]
    if m.shape[0] == 0:
        return [identity(ncols)[:, j].copy() for j in range(ncols)]
    r, pivots = rref(m)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = zeros(ncols)
        v[f] = ONE
        for row, pc in enumerate(pivots):
            v[pc] = -r[row, f]
        basis.append(v)
    return basis


def column_space_basis(vectors: Sequence[np.ndarray], dim: int) -> list[np.ndarray]:
    """An independent subfamily of ``vectors`` spanning the same space."""
    if not vectors:
        return []
    mat = np.column_stack(vectors)
    _, pivots = rref(mat)
    return [vectors[p] for p in pivots]


def columns(m: np.ndarray) -> list[np.ndarray]:
    return [m[:, j].copy() for j in range(m.shape[1])]


def solve(m: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution ``x`` of ``m x = b`` (free variables set to 0), or None."""
    nrows, ncols = m.shape
    aug = zeros(nrows, ncols + 1)
    aug[:, :ncols] = m
    aug[:, ncols] = b
    r, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = zeros(ncols)
    for row, pc in enumerate(pivots):
        x[pc] = r[row, ncols]
    return x


def inverse(m: np.ndarray) -> np.ndarray:
    """Exact inverse; raises ``ZeroDivisionError`` for singular ``m``."""
    n = m.shape[0]
    if m.shape != (n, n):
        raise ValueError("only square matrices have inverses")
    r, piv = rref(np.hstack([m, identity(n)]))
    if piv[:n] != list(range(n)) or (len(piv) > n and piv[n] < n):
        raise ZeroDivisionError("matrix is singular")
    return r[:, n:]


def det(m: np.ndarray) -> Fraction:
    """Exact determinant by fraction-preserving elimination."""
    a = m.copy()
    n = a.shape[0]
    out = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if a[r, c] != 0), None)
        if p is None:
            return ZERO
        if p != c:
            a[[c, p]] = a[[p, c]]
            out = -out
        out *= a[c, c]
        for r in range(c + 1, n):
            if a[r, c]:
                a[r] = a[r] - a[c] * (a[r, c] / a[c, c])
    return out


def span_contains(basis: Sequence[np.ndarray], vectors: Sequence[np.ndarray], dim: int) -> bool:
    if not vectors:
        return True
    if not basis:
        return all(is_zero(v) for v in vectors)
    a = np.column_stack(list(basis))
    return rank(np.column_stack(list(basis) + list(vectors))) == rank(a)


def same_span(u: Sequence[np.ndarray], v: Sequence[np.ndarray], dim: int) -> bool:
    return span_contains(u, v, dim) and span_contains(v, u, dim)


def matrix_power_series(op: np.ndarray, coeffs: Sequence[Fraction]) -> np.ndarray:
    """``sum_k coeffs[k] * op**k`` for a (nilpotent) square matrix."""
    n = op.shape[0]
    out = zeros(n, n)
    p = identity(n)
    for k, c in enumerate(coeffs):
        if k:
            p = p @ op
            if is_zero(p):
                break
        if c:
            out = out + p * c
    return out


def exp_coefficients(order: int) -> list[Fraction]:
    return [Fraction(1, math.factorial(k)) for k in range(order + 1)]


# --------------------------------------------------------------------------
# polynomials

Exponent = tuple[int, ...]

_TOKEN = re.compile(r"\s*(\d+(?:/\d+)?|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-|\(|\))")


class Polynomial:
    """Sparse multivariate polynomial with rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients. Instances are treated as immutable.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match {n} variables")
            c = Q(c)
            if c:
                clean[exp] = clean.get(exp, ZERO) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    # construction
    @classmethod
    def constant(cls, variables: Sequence[str], c) -> "Polynomial":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "Polynomial":
        exp = tuple(1 if v == name else 0 for v in variables)
        if sum(exp) != 1:
            raise KeyError(name)
        return cls(variables, {exp: 1})

    @classmethod
    def parse(cls, text: str, variables: Sequence[str]) -> "Polynomial":
        """Parse expressions like ``"x^2*y - 3/2*x + 1"`` or ``"-(a*b)"``."""
        toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"unexpected character {text[pos]!r} in {text!r}")
            toks.append(m.group(1))
            pos = m.end()
        parser = _PolyParser(toks, tuple(variables), text)
        result = parser.expr()
        if parser.i != len(toks):
            raise ValueError(f"trailing input in {text!r}")
        return result

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.variables), ZERO)

    def leading(self) -> tuple[Exponent, Fraction]:
        exp = max(self.terms)
        return exp, self.terms[exp]

    def __call__(self, point) -> Fraction:
        if isinstance(point, Mapping):
            point = [point[v] for v in self.variables]
        pt = [Q(p) for p in point]
        total = ZERO
        for exp, c in self.terms.items():
            t = c
            for x, e in zip(pt, exp):
                if e:
                    t *= x ** e
            total += t
        return total

    def derivative(self, name: str) -> "Polynomial":
        k = self.variables.index(name)
        out = {}
        for exp, c in self.terms.items():
            if exp[k]:
                e = list(exp)
                e[k] -= 1
                out[tuple(e)] = c * exp[k]
        return Polynomial(self.variables, out)

    def normalized(self) -> "Polynomial":
        """Integer coefficients with gcd 1 and positive lex-leading coefficient."""
        if not self.terms:
            return self
        lcm = 1
        for c in self.terms.values():
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ints = {e: int(c * lcm) for e, c in self.terms.items()}
        g = 0
        for v in ints.values():
            g = math.gcd(g, v)
        sign = 1 if ints[max(ints)] > 0 else -1
        return Polynomial(self.variables, {e: Fraction(sign * v, g) for e, v in ints.items()})

    def sort_key(self):
        return (self.total_degree(), tuple(tuple(-x for x in e) for e in sorted(self.terms, reverse=True)),
                tuple(self.terms[e] for e in sorted(self.terms, reverse=True)))

    # arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.variables != self.variables:
                raise ValueError("polynomials live in different variable contexts")
            return other
        return Polynomial.constant(self.variables, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, ZERO) + c
        return Polynomial(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = Q(other)
            return Polynomial(self.variables, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + c1 * c2
        return Polynomial(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Polynomial.constant(self.variables, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.variables == other.variables and self.terms == other.terms
        try:
            return self == self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.variables, frozenset(self.terms.items())))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
            c = self.terms[exp]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exp) if e)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


class _PolyParser:
    def __init__(self, toks, variables, text):
        self.toks, self.vars, self.text, self.i = toks, variables, text, 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ValueError(f"unexpected end of {self.text!r}")
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take() == "-" else 1
        out = self.term() * sign
        while self.peek() in ("+", "-"):
            op = self.take()
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self):
        out = self.factor()
        while self.peek() == "*":
            self.take()
            out = out * self.factor()
        return out

    def factor(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            e = self.take()
            if not e.isdigit():
                raise ValueError(f"exponent must be a nonnegative integer in {self.text!r}")
            base = base ** int(e)
        return base

    def atom(self):
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            if self.take() != ")":
                raise ValueError(f"unbalanced parentheses in {self.text!r}")
            return inner
        if tok == "-":
            return -self.factor()
        if tok[0].isdigit():
            return Polynomial.constant(self.vars, Q(tok))
        if tok in self.vars:
            return Polynomial.var(self.vars, tok)
        raise ValueError(f"unknown symbol {tok!r} in {self.text!r} (variables: {', '.join(self.vars)})")


class PolyMatrix:
    """Matrix of polynomials sharing one variable context."""

    def __init__(self, variables: Sequence[str], entries: Sequence[Sequence[Polynomial]], shape=None):
        self.variables = tuple(variables)
        rows = [list(r) for r in entries]
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        self.rows, self.cols = shape
        if len(rows) != self.rows or any(len(r) != self.cols for r in rows):
            raise ValueError("entries do not match the declared shape")
        for r in rows:
            for p in r:
                if p.variables != self.variables:
                    raise ValueError("entry outside the shared variable context")
        self.entries = rows

    @classmethod
    def zero(cls, variables, rows: int, cols: int) -> "PolyMatrix":
        z = Polynomial(variables)
        return cls(variables, [[z] * cols for _ in range(rows)], shape=(rows, cols))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def evaluate(self, point) -> np.ndarray:
        out = zeros(self.rows, self.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = self.entries[i][j](point)
        return out

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        z = Polynomial(self.variables)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a, b = self.entries[i][k], other.entries[k][j]
                    if a.terms and b.terms:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return PolyMatrix(self.variables, out, shape=(self.rows, other.cols))

    def max_degree(self) -> int:
        return max((p.total_degree() for r in self.entries for p in r), default=-1)

    @staticmethod
    def block_diag(*blocks: "PolyMatrix") -> "PolyMatrix":
        variables = blocks[0].variables
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = PolyMatrix.zero(variables, rows, cols)
        i = j = 0
        for b in blocks:
            for r in range(b.rows):
                for c in range(b.cols):
                    out.entries[i + r][j + c] = b.entries[r][c]
            i += b.rows
            j += b.cols
        return out

    def det(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> Polynomial:
        """Determinant of the square submatrix on ``rows`` x ``cols`` (Laplace expansion, memoized)."""
        rows = list(range(self.rows)) if rows is None else list(rows)
        cols = list(range(self.cols)) if cols is None else list(cols)
        if len(rows) != len(cols):
            raise ValueError("minor must be square")
        zero = Polynomial(self.variables)
        one = Polynomial.constant(self.variables, 1)
        memo: dict[tuple[int, tuple[int, ...]], Polynomial] = {}

        def expand(k: int, avail: tuple[int, ...]) -> Polynomial:
            if k == len(rows):
                return one
            key = (k, avail)
            if key in memo:
                return memo[key]
            acc = zero
            for pos, c in enumerate(avail):
                entry = self.entries[rows[k]][c]
                if not entry.terms:
                    continue
                sub = expand(k + 1, avail[:pos] + avail[pos + 1:])
                if sub.terms:
                    term = entry * sub
                    acc = acc - term if pos % 2 else acc + term
            memo[key] = acc
            return acc

        return expand(0, tuple(cols))


def minors_ideal(m: PolyMatrix, size: int) -> list[Polynomial]:
    """Normalized, duplicate-free generators of the ideal of ``size`` x ``size`` minors.

    ``size == 0`` (or negative) gives ``[1]``; ``size`` above the smaller dimension
    gives ``[]`` (the zero ideal).
    """
    if size <= 0:
        return [Polynomial.constant(m.variables, 1)]
    if size > min(m.rows, m.cols):
        return []
    nonzero_rows = [i for i in range(m.rows) if any(p.terms for p in m.entries[i])]
    nonzero_cols = [j for j in range(m.cols) if any(m.entries[i][j].terms for i in range(m.rows))]
    seen: dict[Polynomial, None] = {}
    for rs in itertools.combinations(nonzero_rows, size):
        for cs in itertools.combinations(nonzero_cols, size):
            d = m.det(rs, cs)
            if d.terms:
                seen.setdefault(d.normalized(), None)
    return sorted(seen, key=Polynomial.sort_key)


def format_scalar(x: Fraction) -> str | int:
    x = Q(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

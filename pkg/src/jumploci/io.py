"""Text documents for pairs, rings, tensor elements and group presentations.

Documents are JSON. Rationals are written as integers or ``"p/q"`` strings;
floats are rejected. Parse failures raise :class:`DocumentError` carrying the
line (when known) and the offending field.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

import numpy as np

from .artinian import ArtinianLocalRing, DegenerateRingError, make_artinian
from .dgla import DGLA, AxiomError, DGLAModule, DGLAPair, validate_pair
from .exact import Q, format_scalar, zeros
from .graded import CochainComplex, GradedMap, GradedVectorSpace


class DocumentError(ValueError):
    """A document could not be read: bad syntax, bad number, or bad shape."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field:
            where.append(f"field {field}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
        self.line = line
        self.field = field


def _load_json(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, line=exc.lineno) from None


def _line_of(text: str | None, key: str) -> int | None:
    if not text:
        return None
    pos = text.find(f'"{key}"')
    return text.count("\n", 0, pos) + 1 if pos >= 0 else None


def _scalar(x, field: str, text: str | None = None) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DocumentError(f"expected an integer or 'p/q' string, got {x!r}", _line_of(text, field.split(".")[-1]), field)
    try:
        return Q(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"malformed number {x!r}: {exc}", _line_of(text, field.split(".")[-1]), field) from None


def _require(doc: dict, key: str, where: str, text: str | None):
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"missing key {key!r}", _line_of(text, where.split(".")[-1]) if where else 1,
                            f"{where}.{key}" if where else key)
    return doc[key]


# --------------------------------------------------------------------------
# pairs


def _part(doc: dict, name: str, text: str | None):
    labels_doc = _require(doc, "labels", name, text)
    if not isinstance(labels_doc, dict) or not labels_doc:
        raise DocumentError("labels must be a non-empty mapping degree -> names", _line_of(text, "labels"), f"{name}.labels")
    try:
        degrees = sorted(int(k) for k in labels_doc)
    except ValueError:
        raise DocumentError("degrees must be integers", _line_of(text, "labels"), f"{name}.labels") from None
    lo, hi = degrees[0], degrees[-1]
    if degrees != list(range(lo, hi + 1)):
        raise DocumentError("degree window must be contiguous", _line_of(text, "labels"), f"{name}.labels")
    labels = {i: [str(s) for s in labels_doc[str(i)]] for i in degrees}
    flat = [s for i in degrees for s in labels[i]]
    if len(set(flat)) != len(flat):
        raise DocumentError("basis labels must be unique", _line_of(text, "labels"), f"{name}.labels")
    space = GradedVectorSpace(lo, hi, tuple(len(labels[i]) for i in degrees))
    blocks = {}
    for key, rows in (doc.get("differential") or {}).items():
        fld = f"{name}.differential.{key}"
        i = int(key)
        want = (space.dim(i + 1), space.dim(i))
        if not isinstance(rows, list) or len(rows) != want[0] or any(
                not isinstance(r, list) or len(r) != want[1] for r in rows):
            raise DocumentError(f"shape mismatch: expected {want[0]}x{want[1]}", _line_of(text, "differential"), fld)
        m = zeros(*want)
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                m[r, c] = _scalar(v, fld, text)
        blocks[i] = m
    complex_ = CochainComplex(space, GradedMap(space, space, 1, blocks))
    where = {s: (i, labels[i].index(s)) for i in degrees for s in labels[i]}
    return complex_, labels, where


def _tables(entries, first, second, target, name, text):
    tables: dict[tuple[int, int], np.ndarray] = {}
    fsp, ssp, tsp = first[0].space, second[0].space, target[0].space
    for n, entry in enumerate(entries or []):
        fld = f"{name}[{n}]"
        if not isinstance(entry, list) or len(entry) != 4:
            raise DocumentError("entries are [x, y, z, coefficient]", _line_of(text, name), fld)
        x, y, z, c = entry
        for lab, part in ((x, first), (y, second), (z, target)):
            if lab not in part[2]:
                raise DocumentError(f"unknown basis label {lab!r}", _line_of(text, name), fld)
        (i, a), (j, b), (k, cc) = first[2][x], second[2][y], target[2][z]
        if k != i + j:
            raise DocumentError(f"{z!r} has degree {k}, expected {i + j}", _line_of(text, name), fld)
        t = tables.setdefault((i, j), zeros(fsp.dim(i), ssp.dim(j), tsp.dim(i + j)))
        t[a, b, cc] += _scalar(c, fld, text)
    return tables


def pair_from_document(doc: dict, text: str | None = None, validate: bool = True) -> DGLAPair:
    lie_doc = _require(doc, "lie", "", text)
    mod_doc = _require(doc, "module", "", text)
    lie = _part(lie_doc, "lie", text)
    mod = _part(mod_doc, "module", text)
    bracket = _tables(lie_doc.get("bracket"), lie, lie, lie, "bracket", text)
    action = _tables(mod_doc.get("action"), lie, mod, mod, "action", text)
    P = DGLAPair(DGLA(lie[0], bracket, lie[1]), DGLAModule(mod[0], action, mod[1]), name=str(doc.get("name", "")))
    if validate:
        v = validate_pair(P)
        if not v:
            raise AxiomError(v)
    return P


def pair_to_document(P: DGLAPair) -> dict:
    def part(complex_, labels):
        sp = complex_.space
        diff = {}
        for i in sp.degrees():
            if sp.dim(i) and sp.dim(i + 1):
                d = complex_.d(i)
                if any(v != 0 for v in d.flat):
                    diff[str(i)] = [[format_scalar(v) for v in row] for row in d]
        return {"labels": {str(i): list(labels[i]) for i in sp.degrees()}, "differential": diff}

    def entries(tables, l1, l2, l3):
        out = []
        for (i, j) in sorted(tables):
            t = tables[(i, j)]
            for (a, b, c), v in np.ndenumerate(t):
                if v != 0:
                    out.append([l1[i][a], l2[j][b], l3[i + j][c], format_scalar(v)])
        return out

    L, M = P.lie, P.module
    lie = part(L.complex, L.labels)
    lie["bracket"] = entries(L.bracket, L.labels, L.labels, L.labels)
    mod = part(M.complex, M.labels)
    mod["action"] = entries(M.action, L.labels, M.labels, M.labels)
    return {"name": P.name, "lie": lie, "module": mod}


def dump_document(doc) -> str:
    """Line-oriented JSON: one table entry or matrix row per line."""
    text = json.dumps(doc, indent=1, sort_keys=True)
    # collapse innermost lists (matrix rows, table entries) onto one line
    return re.sub(r"\[\s*([^\[\]{}]*?)\s*\]",
                  lambda m: "[" + ", ".join(s.strip() for s in m.group(1).split(",")) + "]" if m.group(1).strip() else "[]",
                  text) + "\n"


def read_pair(path: str | Path, validate: bool = True) -> DGLAPair:
    text = Path(path).read_text(encoding="utf-8")
    P = pair_from_document(_load_json(text), text, validate)
    if not P.name:
        P.name = Path(path).stem
    return P


def pairs_equal(P: DGLAPair, Q_: DGLAPair) -> bool:
    """Same labels, differentials and structure constants."""
    return pair_to_document(P) | {"name": ""} == pair_to_document(Q_) | {"name": ""}


# --------------------------------------------------------------------------
# rings and elements


def ring_from_document(doc: dict, text: str | None = None) -> ArtinianLocalRing:
    gens = _require(doc, "generators", "", text)
    trunc = _require(doc, "truncation", "", text)
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise DocumentError("generators must be a list of names", _line_of(text, "generators"), "generators")
    if not isinstance(trunc, int) or isinstance(trunc, bool) or trunc < 1:
        raise DocumentError("truncation must be a positive integer", _line_of(text, "truncation"), "truncation")
    try:
        return make_artinian(gens, trunc, [str(r) for r in doc.get("relations", [])])
    except DegenerateRingError:
        raise
    except ValueError as exc:
        raise DocumentError(str(exc), _line_of(text, "relations"), "relations") from None


def ring_to_document(A: ArtinianLocalRing) -> dict:
    return {"generators": list(A.generators), "truncation": A.truncation, "relations": list(A.relations)}


def read_ring(path: str | Path) -> ArtinianLocalRing:
    text = Path(path).read_text(encoding="utf-8")
    return ring_from_document(_load_json(text), text)


def element_from_document(doc: dict, P: DGLAPair, A: ArtinianLocalRing, text: str | None = None):
    from .deform import TensorElement

    host = doc.get("host", "lie")
    if host not in ("lie", "module"):
        raise DocumentError("host must be 'lie' or 'module'", _line_of(text, "host"), "host")
    degree = doc.get("degree")
    if not isinstance(degree, int):
        raise DocumentError("degree must be an integer", _line_of(text, "degree"), "degree")
    labels = (P.lie.labels if host == "lie" else P.module.labels).get(degree, [])
    coeffs = zeros(len(labels), A.dim)
    for label, value in (doc.get("coefficients") or {}).items():
        fld = f"coefficients.{label}"
        if label not in labels:
            raise DocumentError(f"no basis vector {label!r} in {host} degree {degree}", _line_of(text, label), fld)
        try:
            coeffs[labels.index(label)] = A.element(str(value))
        except ValueError as exc:
            raise DocumentError(str(exc), _line_of(text, label), fld) from None
    return TensorElement(host, degree, coeffs)


def element_to_document(x, P: DGLAPair, A: ArtinianLocalRing) -> dict:
    labels = (P.lie.labels if x.host == "lie" else P.module.labels).get(x.degree, [])
    coeffs = {labels[a]: A.format(x.coeffs[a]) for a in range(len(labels)) if any(v != 0 for v in x.coeffs[a])}
    return {"host": x.host, "degree": x.degree, "coefficients": coeffs}


def read_element(path: str | Path, P: DGLAPair, A: ArtinianLocalRing):
    text = Path(path).read_text(encoding="utf-8")
    return element_from_document(_load_json(text), P, A, text)


# --------------------------------------------------------------------------
# presentations


def read_presentation(path: str | Path):
    from .grouprep import Presentation

    text = Path(path).read_text(encoding="utf-8")
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise DocumentError("empty presentation", line=1)
    try:
        return Presentation.parse(" ".join(lines))
    except ValueError as exc:
        raise DocumentError(str(exc), line=1) from None

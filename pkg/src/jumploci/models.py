"""Small DGLA pairs used as fixtures: formal models of the torus and genus-2 surface,
the acyclic ``de = f`` model, ``gl(2)`` acting on itself and a few derived pairs.

Builders return documents (see :mod:`jumploci.io`); :func:`bundled_pair` loads
the copies shipped in ``jumploci/data``.
"""
from __future__ import annotations

from importlib import resources
from pathlib import Path

from .dgla import DGLAPair, direct_sum, projection_morphism, PairMorphism
from .io import pair_from_document, read_pair, read_presentation

GL2 = ["E", "F", "H", "I"]
# [x, y] on the basis E = e12, F = e21, H = e11 - e22, I = identity
_GL2_BRACKET = {("E", "F"): {"H": 1}, ("H", "E"): {"E": 2}, ("H", "F"): {"F": -2},
                ("F", "E"): {"H": -1}, ("E", "H"): {"E": -2}, ("F", "H"): {"F": 2}}
# matrices acting on Q^2 = <v1, v2>: x . v_j = sum_i x_ij v_i
_GL2_ON_Q2 = {"E": {"v2": {"v1": 1}}, "F": {"v1": {"v2": 1}}, "H": {"v1": {"v1": 1}, "v2": {"v2": -1}},
              "I": {"v1": {"v1": 1}, "v2": {"v2": 1}}}


def _wedge_products(degree_one: list[str], top: str, pairs: dict[tuple[str, str], int]):
    """Graded-commutative products on ``<1> + <degree_one> + <top>``."""
    prod = {}
    for x in ["1"] + degree_one + [top]:
        prod[("1", x)] = (x, 1)
        prod[(x, "1")] = (x, 1)
    for (x, y), c in pairs.items():
        prod[(x, y)] = (top, c)
        prod[(y, x)] = (top, -c)
    return prod


def _cup_pair(name: str, degree_one: list[str], top: str, pairs) -> dict:
    """``H(X) (x) gl(1)`` acting on ``H(X)``: abelian Lie part, module action by cup product."""
    prod = _wedge_products(degree_one, top, pairs)
    labels = {"0": ["1"], "1": list(degree_one), "2": [top]}
    action = [[x, y, z, c] for (x, y), (z, c) in sorted(prod.items())]
    return {"name": name,
            "lie": {"labels": labels, "differential": {}, "bracket": []},
            "module": {"labels": {k: list(v) for k, v in labels.items()}, "differential": {}, "action": action}}


def torus_document() -> dict:
    return _cup_pair("torus", ["a", "b"], "ab", {("a", "b"): 1})


def genus2_document() -> dict:
    return _cup_pair("genus2", ["a1", "a2", "b1", "b2"], "w", {("a1", "b1"): 1, ("a2", "b2"): 1})


def abelian_de_document(with_invariant: bool = True) -> dict:
    """``C^0 = <e>``, ``C^1 = <f>``, ``de = f``, zero brackets.

    The module is the acyclic complex ``u_i -> v_i`` with ``e u1 = u2``,
    ``f u1 = v2``, plus (optionally) an inert class ``z`` in degree 0.
    """
    mod0 = ["u1", "u2"] + (["z"] if with_invariant else [])
    d0 = [[1, 0] + ([0] if with_invariant else []), [0, 1] + ([0] if with_invariant else [])]
    return {"name": "abelian-de" if with_invariant else "acyclic-de",
            "lie": {"labels": {"0": ["e"], "1": ["f"]}, "differential": {"0": [[1]]}, "bracket": []},
            "module": {"labels": {"0": mod0, "1": ["v1", "v2"]}, "differential": {"0": d0},
                       "action": [["e", "u1", "u2", 1], ["f", "u1", "v2", 1]]}}


def gl2_ad_document() -> dict:
    bracket = [[x, y, z, c] for (x, y), out in sorted(_GL2_BRACKET.items()) for z, c in out.items()]
    return {"name": "gl2-ad",
            "lie": {"labels": {"0": list(GL2)}, "differential": {}, "bracket": bracket},
            "module": {"labels": {"0": list(GL2)}, "differential": {}, "action": [list(e) for e in bracket]}}


def _gl2_tensor_document(name: str, cdga: dict) -> dict:
    """``gl(2) (x) B`` acting on ``Q^2 (x) B`` for a small commutative DGA ``B``.

    ``cdga`` holds ``labels`` (degree -> names), ``d`` (name -> {name: c}) and
    ``mult`` ((x, y) -> {name: c}), all graded-commutative.
    """
    def lab(x, b):
        return x if b == "1" else f"{x}.{b}"

    degs = sorted(cdga["labels"], key=int)
    lie_labels = {k: [lab(x, b) for b in cdga["labels"][k] for x in GL2] for k in degs}
    mod_labels = {k: [lab(v, b) for b in cdga["labels"][k] for v in ("v1", "v2")] for k in degs}

    def differential(labels, basis):
        out = {}
        for k in degs:
            nxt = str(int(k) + 1)
            if nxt not in labels:
                continue
            rows = [[0] * len(labels[k]) for _ in labels[nxt]]
            for b, image in cdga["d"].items():
                if b not in cdga["labels"][k]:
                    continue
                for b2, c in image.items():
                    for x in basis:
                        rows[labels[nxt].index(lab(x, b2))][labels[k].index(lab(x, b))] = c
            if any(any(r) for r in rows):
                out[k] = rows
        return out

    bracket, action = [], []
    for (b1, b2), prod in sorted(cdga["mult"].items()):
        for b3, c in prod.items():
            for (x, y), out in sorted(_GL2_BRACKET.items()):
                for z, c2 in out.items():
                    bracket.append([lab(x, b1), lab(y, b2), lab(z, b3), c * c2])
            for x, table in sorted(_GL2_ON_Q2.items()):
                for v, out in sorted(table.items()):
                    for w, c2 in out.items():
                        action.append([lab(x, b1), lab(v, b2), lab(w, b3), c * c2])
    return {"name": name,
            "lie": {"labels": lie_labels, "differential": differential(lie_labels, GL2), "bracket": bracket},
            "module": {"labels": mod_labels, "differential": differential(mod_labels, ("v1", "v2")),
                       "action": action}}


def torus_gl2_document() -> dict:
    """``gl(2) (x) H(T^2)`` acting on ``Q^2 (x) H(T^2)``: a non-abelian cone."""
    prod = _wedge_products(["a", "b"], "ab", {("a", "b"): 1})
    mult = {k: {z: c} for k, (z, c) in prod.items()}
    return _gl2_tensor_document("torus-gl2", {"labels": {"0": ["1"], "1": ["a", "b"], "2": ["ab"]},
                                              "d": {}, "mult": mult})


def gl2_interval_document() -> dict:
    """``gl(2) (x) B`` with ``B = <1, x> + <dx>``, ``x^2 = x dx = 0``; quasi-isomorphic to ``gl(2)``."""
    mult = {("1", "1"): {"1": 1}, ("1", "x"): {"x": 1}, ("x", "1"): {"x": 1},
            ("1", "dx"): {"dx": 1}, ("dx", "1"): {"dx": 1}}
    return _gl2_tensor_document("gl2-interval", {"labels": {"0": ["1", "x"], "1": ["dx"]},
                                                 "d": {"x": {"dx": 1}}, "mult": mult})


def gl2_standard_document() -> dict:
    """``gl(2)`` in degree 0 acting on ``Q^2``."""
    return _gl2_tensor_document("gl2-std", {"labels": {"0": ["1"]}, "d": {}, "mult": {("1", "1"): {"1": 1}}})


def with_acyclic_summand(P: DGLAPair, name: str | None = None) -> tuple[DGLAPair, PairMorphism]:
    """``P + (acyclic de = f pair)`` and its projection onto ``P``, a quasi-isomorphism."""
    total = direct_sum(P, pair_from_document(abelian_de_document(with_invariant=False)),
                       name=name or f"{P.name}-acyclic")
    return total, projection_morphism(total, P)


def _acyclic_document(builder, name: str):
    def build() -> dict:
        from .io import pair_to_document

        return pair_to_document(with_acyclic_summand(pair_from_document(builder()), name)[0])

    build.__doc__ = f"Formal model plus the acyclic ``de = f`` summand ({name})."
    return build


BUILDERS = {
    "torus": torus_document,
    "genus2": genus2_document,
    "abelian-de": abelian_de_document,
    "gl2-ad": gl2_ad_document,
    "torus-gl2": torus_gl2_document,
    "gl2-interval": gl2_interval_document,
    "torus-acyclic": _acyclic_document(torus_document, "torus-acyclic"),
    "genus2-acyclic": _acyclic_document(genus2_document, "genus2-acyclic"),
}

CORE_PAIRS = ("torus", "genus2", "abelian-de", "gl2-ad")
ACYCLIC_PAIRS = {"torus-acyclic": "torus", "genus2-acyclic": "genus2"}
FORMAL_MODELS = ("torus", "genus2")
PRESENTATIONS = ("z", "z2", "f2", "genus2")


def bundled_projection(total_name: str) -> PairMorphism:
    """Projection of a bundled ``*-acyclic`` pair onto its formal model."""
    return projection_morphism(bundled_pair(total_name), bundled_pair(ACYCLIC_PAIRS[total_name]))


def build_pair(name: str) -> DGLAPair:
    return pair_from_document(BUILDERS[name]())


def data_path(filename: str) -> Path:
    return Path(str(resources.files("jumploci") / "data" / filename))


def bundled_pair(name: str) -> DGLAPair:
    return read_pair(data_path(f"{name}.pair"))


def bundled_presentation(name: str):
    return read_presentation(data_path(f"{name}.grp"))

"""Command-line front end.

Exit status: 0 when every verdict passes, 1 when a mathematical check fails,
2 for usage errors and unreadable or invalid input.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

import numpy as np

from . import deform, grouprep, lemma, resonance
from .artinian import ArtinianLocalRing, DegenerateRingError, standard_rings
from .dgla import AxiomError, cohomology_pair, validate_dgla, validate_module
from .exact import format_scalar, qmatrix
from .graded import cohomology
from .io import (
    DocumentError,
    element_to_document,
    read_element,
    read_pair,
    read_presentation,
    read_ring,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _vec(v) -> list:
    return [format_scalar(x) for x in v]


# --------------------------------------------------------------------------
# input helpers


def _pair(path: str, validate: bool = True):
    return read_pair(path, validate=validate)


def _ring(arg: str | None) -> ArtinianLocalRing:
    if arg is None:
        raise UsageError("--ring is required")
    named = standard_rings()
    if arg in named:
        return named[arg]
    return read_ring(arg)


def _omega(args, P, A, degree: int = 1):
    if not args.omega:
        return deform.zero_element(P, A, "lie", degree)
    x = read_element(args.omega, P, A)
    if x.host != "lie" or x.degree != 1:
        raise UsageError("omega must be a degree-1 Lie element")
    if not x.in_maximal_ideal():
        raise UsageError("omega has a coefficient outside the maximal ideal")
    return x


def _lam(args, P, A):
    if not args.lam:
        raise UsageError("--lam is required")
    x = read_element(args.lam, P, A)
    if x.host != "lie" or x.degree != 0:
        raise UsageError("lambda must be a degree-0 Lie element")
    if not x.in_maximal_ideal():
        raise UsageError("lambda has a coefficient outside the maximal ideal")
    return x


def _representation(args, p: grouprep.Presentation) -> dict:
    if args.rep:
        data = json.loads(Path(args.rep).read_text(encoding="utf-8"))
        try:
            return {g: qmatrix(data[g]) for g in p.generators}
        except KeyError as exc:
            raise UsageError(f"representation file has no matrix for {exc.args[0]}") from None
    if args.sample:
        return grouprep.sampled_representation(p, args.n, random.Random(args.seed))
    return grouprep.trivial_representation(p, args.n)


# --------------------------------------------------------------------------
# commands: each returns (report, passed)


def cmd_validate(args):
    P = _pair(args.pair, validate=False)
    vl, vm = validate_dgla(P.lie), validate_module(P)
    report = {"lie": {"dims": list(P.lie.space.dims), "valid": vl.ok, "message": vl.message},
              "module": {"dims": list(P.module.space.dims), "valid": vm.ok, "message": vm.message}}
    for key, v in (("lie", vl), ("module", vm)):
        if not v.ok and "axiom" in v.details:
            report[key]["axiom"] = v.details["axiom"]
    return report, vl.ok and vm.ok


def cmd_cohomology(args):
    P = _pair(args.pair)
    H = cohomology_pair(P)
    return {"lie": list(cohomology(P.lie.complex).dims()), "module": list(cohomology(P.module.complex).dims()),
            "lie_labels": {str(k): v for k, v in H.lie.labels.items()}}, True


def cmd_mc_check(args):
    P = _pair(args.pair)
    A = _ring(args.ring)
    w = _omega(args, P, A)
    v = deform.is_maurer_cartan(P, A, w)
    report = {"maurer_cartan": v.ok}
    if not v.ok:
        curv = deform.TensorElement("lie", 2, v.details["curvature"])
        report["curvature"] = element_to_document(curv, P, A)["coefficients"]
    return report, v.ok


def cmd_gauge(args):
    P = _pair(args.pair)
    A = _ring(args.ring)
    w = _omega(args, P, A)
    if not deform.is_maurer_cartan(P, A, w):
        raise UsageError("omega is not a Maurer-Cartan element")
    lam = _lam(args, P, A)
    moved = deform.gauge_act(P, A, lam, w)
    mc = deform.is_maurer_cartan(P, A, moved).ok
    ex = deform.exlambda_check(P, A, lam, w).ok
    return {"result": element_to_document(moved, P, A)["coefficients"], "maurer_cartan": mc,
            "intertwines": ex}, mc and ex


def cmd_twisted(args):
    P = _pair(args.pair)
    A = _ring(args.ring)
    w = _omega(args, P, A)
    if not deform.is_maurer_cartan(P, A, w):
        return {"maurer_cartan": False}, False
    reps = deform.twisted_cohomology(P, A, w)
    return {"ring": A.basis, "degrees": [r.as_dict() for r in reps]}, True


def cmd_resonance(args):
    P = _pair(args.pair)
    if args.degree is None or args.jump is None:
        raise UsageError("--degree and --jump are required")
    try:
        u = resonance.universal_aomoto(P)
        ideal = resonance.jump_ideal(u, args.degree, args.jump)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = {"degree": args.degree, "jump": args.jump, "generators": ideal.strings(),
              "zero_ideal": ideal.is_zero_ideal(), "unit_ideal": ideal.is_unit_ideal()}
    passed = True
    if args.samples:
        cm = resonance.ConeModel(P)
        pts = resonance.sample_on_cone(cm, random.Random(args.seed), args.samples)
        agree = 0
        for pt in pts:
            try:
                resonance.resonance_membership_crosscheck(P, args.degree, args.jump, pt, u)
                agree += 1
            except AssertionError:
                pass
        report["crosscheck"] = {"samples": len(pts), "agree": agree, "seed": args.seed}
        passed = agree == len(pts)
    return report, passed


def cmd_thm2_linear(args):
    P = _pair(args.pair)
    if args.degree is None:
        raise UsageError("--degree is required")
    r = resonance.thm2_linear_model(P, args.degree, samples=args.samples or 100, seed=args.seed)
    return {"degree": r.degree, "jump": r.jump, "forms": [_vec(f) for f in r.forms],
            "subspace": [_vec(v) for v in r.subspace], "span_agrees": r.span_agrees, "samples": r.samples,
            "disagreements": len(r.disagreements), "seed": args.seed}, r.ok


def cmd_orbits(args):
    P = _pair(args.pair)
    A = _ring(args.ring)
    try:
        orb = deform.abelian_orbits(P, A)
    except deform.PreconditionError as exc:
        raise UsageError(str(exc)) from None
    report = {"orbit_space_dimension": orb.dimension, "single_orbit": orb.single_orbit,
              "mc_dimension": orb.mc_dimension}
    if args.omega:
        w = _omega(args, P, A)
        report["normal_form"] = element_to_document(orb.normal_form(w), P, A)["coefficients"]
        report["gauge"] = element_to_document(orb.gauge_to_normal_form(w), P, A)["coefficients"]
    return report, True


def cmd_lemma(args):
    results = lemma.sweep(args.max)
    failures = [(r.p, r.q) for r in results if not r.ok]
    spot = lemma.lemma_oracle(1, 1) if args.max >= 1 else None
    report = {"max": args.max, "cases": len(results), "identities_checked": 2 * len(results),
              "failures": failures}
    if spot:
        report["spot_1_1"] = format_scalar(spot.b_left)
    return report, not failures


def _grp(args):
    return read_presentation(args.presentation)


def cmd_fox(args):
    p = _grp(args)
    rho = _representation(args, p)
    cs = grouprep.cocycle_space(p, rho)
    return {"n": cs.n, **{k.lower(): v for k, v in cs.dims.items()}, "b1_in_z1": cs.b1_in_z1()}, cs.b1_in_z1()


def cmd_repvar(args):
    p = _grp(args)
    s = grouprep.rep_variety_equations(p, args.n)
    return {"n": args.n, "variables": s.variables, "equations": [str(e) for e in s.equations]}, True


def cmd_crosscheck(args):
    p = _grp(args)
    rho = _representation(args, p)
    r = grouprep.tangent_crosscheck(p, rho)
    return {"jacobian_dim": r.jacobian_dim, "z1_dim": r.z1_dim, "fox_in_jacobian": r.fox_in_jacobian,
            "jacobian_in_fox": r.jacobian_in_fox, "b1_in_z1": r.b1_in_z1}, r.ok


COMMANDS = {
    "validate": cmd_validate, "cohomology": cmd_cohomology, "mc-check": cmd_mc_check, "gauge": cmd_gauge,
    "twisted": cmd_twisted, "resonance": cmd_resonance, "thm2-linear": cmd_thm2_linear, "orbits": cmd_orbits,
    "lemma": cmd_lemma, "fox": cmd_fox, "repvar": cmd_repvar, "crosscheck": cmd_crosscheck,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jumploci", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command")

    def common(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=0)

    for name in ("validate", "cohomology", "mc-check", "gauge", "twisted", "resonance", "thm2-linear", "orbits"):
        sp = sub.add_parser(name)
        sp.add_argument("pair", help="pair document")
        sp.add_argument("--ring", help="ring document or one of: " + ", ".join(standard_rings()))
        sp.add_argument("--omega", help="Maurer-Cartan element document")
        sp.add_argument("--lam", help="gauge element document (gauge)")
        sp.add_argument("--degree", type=int)
        sp.add_argument("--jump", type=int)
        common(sp)
    sp = sub.add_parser("lemma")
    sp.add_argument("--max", type=int, default=8)
    common(sp)
    for name in ("fox", "repvar", "crosscheck"):
        sp = sub.add_parser(name)
        sp.add_argument("presentation", help="presentation file, e.g. 'a b | a b a^-1 b^-1'")
        sp.add_argument("--n", type=int, default=1, help="matrix size")
        sp.add_argument("--rep", help="JSON file: generator -> matrix rows")
        sp.add_argument("--sample", action="store_true", help="use a seeded nontrivial representation")
        common(sp)
    return parser


def _render(report: dict, indent: str = "") -> list[str]:
    lines = []
    for k in sorted(report):
        v = report[k]
        if isinstance(v, dict) and v:
            lines.append(f"{indent}{k}:")
            lines += _render(v, indent + "  ")
        elif isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
            lines.append(f"{indent}{k}:")
            for x in v:
                lines.append(f"{indent}  - " + ", ".join(f"{kk}={x[kk]}" for kk in sorted(x)))
        else:
            lines.append(f"{indent}{k}: {v}")
    return lines


def run_command(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if not args.command:
        parser.print_usage(err)
        return EXIT_USAGE
    try:
        report, passed = COMMANDS[args.command](args)
    except (UsageError, DocumentError, DegenerateRingError, AxiomError, deform.PreconditionError,
            grouprep.SingularRepresentationError, FileNotFoundError, ValueError, KeyError) as exc:
        kind = "invalid pair" if isinstance(exc, AxiomError) else "error"
        print(f"{args.command}: {kind}: {exc}", file=err)
        return EXIT_USAGE
    report = {"command": args.command, "passed": passed, **report}
    if args.json:
        out.write(json.dumps(report, sort_keys=True, default=str) + "\n")
    else:
        out.write("\n".join(_render(report)) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()

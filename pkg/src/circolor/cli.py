"""Command-line driver.

Exit codes: 0 feasible/valid, 1 infeasible/invalid, 2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import chromatic
from .chromatic import DEFAULT_MAX_BREAKERS, DEFAULT_MAX_CYCLES
from .coloring import verify_coloring
from .cycles import (
    cycle_breaks,
    cycle_cost,
    danger_filter,
    enumerate_dicycles,
    max_ratio_exhaustive,
    max_ratio_parametric,
    mod_r,
)
from .errors import CapExceeded, InputError
from .formats import (
    Instance,
    coloring_to_doc,
    parse_breaker,
    parse_coloring,
    parse_instance,
    parse_orientation,
    rational_str,
)
from .graph import Breaker, Dicycle, breaker_from_orientation, format_rational, max_pair_weight, parse_rational
from .oracle import cross_check
from .potential import construct_coloring

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _cycle(c: Dicycle | tuple | None):
    if c is None:
        return None
    vs = c.vertices if isinstance(c, Dicycle) else tuple(c)
    return list(vs)


def _breaker_doc(t: Breaker) -> list[list[int]]:
    return [list(a) for a in t.forward_arcs]


def _violations(report) -> list[dict]:
    return [
        {"arc": list(v.arc), "required": format_rational(v.required), "actual": format_rational(v.actual)}
        for v in report.violations
    ]


def _cmd_chi_c(inst: Instance, args) -> tuple[dict, int]:
    res = chromatic.chi_c_exact(inst.graph, max_breakers=args.max_breakers, max_cycles=args.max_cycles)
    doc = {
        "verdict": "degenerate" if res.degenerate else "exact",
        "value": format_rational(res.value),
        "breaker": _breaker_doc(res.breaker),
        "critical_cycle": _cycle(res.cycle),
    }
    return doc, EXIT_OK


def _cmd_decide(inst: Instance, args) -> tuple[dict, int]:
    d = chromatic.decide_r(
        inst.graph, args.r, max_breakers=args.max_breakers, max_cycles=args.max_cycles,
        max_evidence=args.max_evidence,
    )
    doc = {"verdict": "feasible" if d.feasible else "infeasible", "reason": d.reason, "r": format_rational(d.r)}
    if d.feasible:
        doc["breaker"] = _breaker_doc(d.breaker)
        doc["coloring"] = coloring_to_doc(d.coloring)
        return doc, EXIT_OK
    doc["evidence"] = [
        {"breaker": _breaker_doc(t), "witness": _cycle(m.witness), "ratio": rational_str(m.value)}
        for t, m in d.evidence
    ]
    doc["evidence_total"] = d.evidence_total
    return doc, EXIT_NO


def _construction_doc(construction) -> dict:
    return {
        "verdict": "valid" if construction.valid else "invalid",
        "coloring": coloring_to_doc(construction.coloring),
        "violations": _violations(construction.report),
        "moves": construction.moves,
    }


def _cmd_color(inst: Instance, args) -> tuple[dict, int]:
    g = inst.graph
    if args.breaker:
        t = parse_breaker(_read(args.breaker), g)
    else:
        t = breaker_from_orientation(g, parse_orientation(_read(args.orientation)))
    construction = construct_coloring(g, t, args.r)
    doc = _construction_doc(construction)
    doc["breaker"] = _breaker_doc(t)
    return doc, EXIT_OK if construction.valid else EXIT_NO


def _load_coloring(args):
    coloring = parse_coloring(_read(args.coloring))
    if coloring.r != args.r:
        raise InputError(f"-r {format_rational(args.r)} disagrees with the colouring's r = {format_rational(coloring.r)}")
    return coloring


def _cmd_verify(inst: Instance, args) -> tuple[dict, int]:
    coloring = _load_coloring(args)
    report = verify_coloring(inst.graph, coloring)
    doc = {"verdict": "valid" if report.valid else "invalid", "violations": _violations(report)}
    return doc, EXIT_OK if report.valid else EXIT_NO


def _cmd_extract(inst: Instance, args) -> tuple[dict, int]:
    g = inst.graph
    coloring = _load_coloring(args)
    report = verify_coloring(g, coloring)
    if not report.valid:
        return {"verdict": "invalid", "violations": _violations(report)}, EXIT_NO
    t = chromatic.extract_breaker(g, coloring)
    bad = chromatic.arc_inequality_check(g, coloring, t)
    doc = {
        "verdict": "valid",
        "breaker": _breaker_doc(t),
        "arc_inequality_violations": [list(a) for a in bad],
    }
    return doc, EXIT_OK


def _cmd_cycles(inst: Instance, args) -> tuple[dict, int]:
    g = inst.graph
    t = parse_breaker(_read(args.breaker), g) if args.breaker else None
    passes = danger_filter(g, args.filter_r) if args.filter_r is not None else None
    rows = []
    for c in enumerate_dicycles(g, args.max_cycles):
        if passes is not None and not passes(c):
            continue
        row = {"cycle": _cycle(c), "length": len(c), "cost": format_rational(cycle_cost(c, g))}
        if t is not None:
            row["breaks"] = cycle_breaks(c, t)
        if args.filter_r is not None:
            row["residue"] = format_rational(mod_r(cycle_cost(c, g), args.filter_r))
        rows.append(row)
    doc = {"verdict": "listed", "count": len(rows), "cycles": rows}
    if args.filter_r is not None:
        doc["filter_r"] = format_rational(args.filter_r)
        doc["L"] = format_rational(max_pair_weight(g))
    return doc, EXIT_OK


def _cmd_max_ratio(inst: Instance, args) -> tuple[dict, int]:
    g = inst.graph
    t = parse_breaker(_read(args.breaker), g)
    if args.parametric:
        if args.filter_r is not None:
            raise InputError("--parametric handles only the unfiltered maximum")
        res = max_ratio_parametric(g, t, args.tol)
        method = "parametric"
    else:
        passes = danger_filter(g, args.filter_r) if args.filter_r is not None else None
        res = max_ratio_exhaustive(g, t, passes, limit=args.max_cycles)
        method = "exhaustive"
    doc = {
        "verdict": "empty" if res.empty else ("infinite" if res.infinite else "finite"),
        "method": method,
        "value": rational_str(res.value),
        "witness": _cycle(res.witness),
    }
    return doc, EXIT_OK


def _cmd_kd(inst: Instance, args) -> tuple[dict, int]:
    coloring = parse_coloring(_read(args.coloring))
    kd = chromatic.kd_coloring_from_circular(inst.graph, coloring, args.k, args.d)
    return {"verdict": "valid", "k": args.k, "d": args.d, "assignment": {str(v): x for v, x in kd.items()}}, EXIT_OK


def _corollary_doc(res) -> dict:
    doc = {"verdict": "feasible" if res.ok else "infeasible", "reason": res.reason, "r": format_rational(res.r)}
    if res.ok:
        doc["coloring"] = coloring_to_doc(res.coloring)
    else:
        doc["witness"] = _cycle(res.witness)
        doc["tau"] = rational_str(res.witness_tau)
        doc["residue"] = rational_str(res.witness_residue)
    return doc


def _cmd_cor2(inst: Instance, args) -> tuple[dict, int]:
    res = chromatic.corollary2_color(inst.graph, parse_orientation(_read(args.orientation)), args.r,
                                     max_cycles=args.max_cycles)
    return _corollary_doc(res), EXIT_OK if res.ok else EXIT_NO


def _cmd_cor4(inst: Instance, args) -> tuple[dict, int]:
    res = chromatic.corollary4_check(inst.graph, args.r, max_cycles=args.max_cycles)
    return _corollary_doc(res), EXIT_OK if res.ok else EXIT_NO


def _cmd_cross_check(inst: Instance, args) -> tuple[dict, int]:
    g = inst.graph
    if not g.is_unit:
        raise InputError("cross-check needs a unit-weight graph")
    rep = cross_check(g.n, g.edge_pairs)
    doc = {
        "verdict": "agree" if rep.agree else "mismatch",
        "exact": format_rational(rep.exact),
        "bruteforce": format_rational(rep.brute),
        "breaker_bits": list(rep.breaker_bits),
        "critical_cycle": _cycle(rep.critical_cycle),
        "kd_witness": None if rep.kd_witness is None else {str(v): x for v, x in rep.kd_witness.items()},
    }
    return doc, EXIT_OK if rep.agree else EXIT_NO


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("instance", help="instance file (p cwsd / p cg)")
    common.add_argument("--json", action="store_true", help="print the structured result document")
    common.add_argument("--max-cycles", type=int, default=DEFAULT_MAX_CYCLES)
    common.add_argument("--max-breakers", type=int, default=DEFAULT_MAX_BREAKERS)

    parser = argparse.ArgumentParser(prog="circolor", description="Exact circular colourings of weighted symmetric digraphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("chi-c", parents=[common], help="exact circular chromatic number")

    p = sub.add_parser("decide", parents=[common], help="decide circular r-colourability")
    p.add_argument("-r", type=_rational_arg, required=True)
    p.add_argument("--max-evidence", type=int, default=1024)

    p = sub.add_parser("color", parents=[common], help="build a colouring from a breaker or orientation")
    p.add_argument("-r", type=_rational_arg, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--breaker")
    src.add_argument("--orientation")

    for name, help_ in (("verify", "verify a colouring"), ("extract-breaker", "breaker from a valid colouring")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("-r", type=_rational_arg, required=True)
        p.add_argument("--coloring", required=True)

    p = sub.add_parser("cycles", parents=[common], help="list simple dicycles")
    p.add_argument("--filter-r", type=_rational_arg)
    p.add_argument("--breaker")

    p = sub.add_parser("max-ratio", parents=[common], help="maximum cycle ratio under a breaker")
    p.add_argument("--breaker", required=True)
    p.add_argument("--filter-r", type=_rational_arg)
    p.add_argument("--parametric", action="store_true")
    p.add_argument("--tol", type=_rational_arg, default=Fraction(1, 1000))

    p = sub.add_parser("kd-color", parents=[common], help="(k,d)-colouring from a circular k/d-colouring")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--coloring", required=True)

    p = sub.add_parser("check-cor2", parents=[common], help="colour from an orientation via the tau criterion")
    p.add_argument("-r", type=_rational_arg, required=True)
    p.add_argument("--orientation", required=True)

    p = sub.add_parser("check-cor4", parents=[common], help="colour when no cycle residue lies in (0,2)")
    p.add_argument("-r", type=_rational_arg, required=True)

    sub.add_parser("cross-check", parents=[common], help="compare exact and brute-force values")
    return parser


COMMANDS = {
    "chi-c": _cmd_chi_c,
    "decide": _cmd_decide,
    "color": _cmd_color,
    "verify": _cmd_verify,
    "extract-breaker": _cmd_extract,
    "cycles": _cmd_cycles,
    "max-ratio": _cmd_max_ratio,
    "kd-color": _cmd_kd,
    "check-cor2": _cmd_cor2,
    "check-cor4": _cmd_cor4,
    "cross-check": _cmd_cross_check,
}


def run_command(argv: list[str]) -> tuple[dict, int]:
    """Parse ``argv`` and run one command; returns the result document and exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = EXIT_OK if exc.code == 0 else EXIT_INPUT
        return {"command": None, "verdict": "usage"}, code
    doc: dict = {"command": args.command}
    try:
        inst = parse_instance(_read(args.instance))
        doc["instance"] = inst.digest
        body, code = COMMANDS[args.command](inst, args)
        doc.update(body)
    except InputError as exc:
        doc.update(verdict="input-error", error=str(exc))
        code = EXIT_INPUT
    except CapExceeded as exc:
        doc.update(verdict="cap-exceeded", error=str(exc))
        code = EXIT_CAP
    return doc, code


def render(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def summarize(doc: dict) -> str:
    head = f"{doc.get('command')}: {doc.get('verdict')}"
    for key in ("value", "r", "reason", "error"):
        if key in doc:
            head += f"  {key}={doc[key]}"
    lines = [head]
    if "coloring" in doc:
        colors = doc["coloring"]["colors"]
        lines.append("colors: " + " ".join(f"{v}:{x}" for v, x in colors.items()))
    if "witness" in doc and doc["witness"] is not None:
        lines.append(f"witness cycle: {doc['witness']}")
    if "evidence_total" in doc:
        lines.append(f"breakers refuted: {doc['evidence_total']}")
    if "violations" in doc and doc["violations"]:
        lines.append(f"violated arcs: {[v['arc'] for v in doc['violations']]}")
    if "cycles" in doc:
        lines.extend(" ".join(f"{k}={v}" for k, v in row.items()) for row in doc["cycles"])
    if "assignment" in doc:
        lines.append("assignment: " + " ".join(f"{v}:{x}" for v, x in doc["assignment"].items()))
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    doc, code = run_command(argv)
    if doc.get("verdict") != "usage":
        sys.stdout.write(render(doc) if "--json" in argv else summarize(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())

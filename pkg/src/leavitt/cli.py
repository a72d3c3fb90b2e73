"""Command line interface.

    leavitt analyze   GRAPH            structural report
    leavitt index     GRAPH            bounded-index verdict with witnesses
    leavitt decompose GRAPH            matrix-ring decomposition
    leavitt ideals    GRAPH            graded quotient classifications
    leavitt eval      GRAPH EXPR       evaluate an element expression
    leavitt witness   GRAPH [--size N] build and verify matrix units
    leavitt check     GRAPH            oracle agreement and sampling suites

All commands take `--format text|json`; JSON output is byte-stable for
fixed inputs and seeds.  Exit codes: 0 success (mathematical verdicts such
as "unbounded" are ordinary output), 1 input error, 2 resource-limit abort.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra, exprparse, graphio, oracle, structure
from .graph import (
    OMEGA,
    CapExceeded,
    Cycle,
    CycleThroughOmegaBundle,
    EdgeRef,
    Graph,
    LeavittError,
    Path,
    condition_K,
    condition_L,
    count_paths_ending_at,
    cycle_exit_witness,
    cycles,
    downward_directed,
)


def _edge_json(e: EdgeRef) -> dict:
    return {"bundle": e.bundle, "index": e.index}


def _edge_text(g: Graph, e: EdgeRef) -> str:
    b = g.bundle(e.bundle)
    return e.bundle if b.mult == 1 else f"{e.bundle}[{e.index}]"


def _path_json(p: Path) -> dict:
    return {"base": p.base, "edges": [_edge_json(e) for e in p.edges]}


def _cycle_json(c: Cycle) -> dict:
    return {"edges": [_edge_json(e) for e in c.edges]}


def _cycle_text(g: Graph, c: Cycle) -> str:
    return ".".join(_edge_text(g, e) for e in c.edges)


def _emit(args, payload: dict, text_lines: list) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _classification_json(cls) -> dict:
    if isinstance(cls, structure.MatK):
        return {"base": "K", "size": cls.t}
    return {"base": "K[x,x^-1]", "size": cls.t}


def _classification_text(cls) -> str:
    if isinstance(cls, structure.MatK):
        return f"M_{cls.t}(K)"
    return f"M_{cls.t}(K[x,x^-1])"


# -- commands -------------------------------------------------------------------

def _cmd_analyze(args) -> int:
    g = graphio.load_graph(args.graph)
    payload: dict = {
        "command": "analyze",
        "vertices": list(g.vertices),
        "bundles": len(g.bundles),
        "sinks": g.sinks(),
        "infinite_emitters": [v for v in g.vertices
                              if g.out_multiplicity(v).value is OMEGA],
    }
    lines = [f"vertices: {len(g.vertices)}  bundles: {len(g.bundles)}",
             f"sinks: {', '.join(payload['sinks']) or '(none)'}"]
    if payload["infinite_emitters"]:
        lines.append(f"infinite emitters: {', '.join(payload['infinite_emitters'])}")
    try:
        cs = cycles(g)
        payload["cycles"] = [_cycle_json(c) for c in cs]
        payload["condition_L"] = condition_L(g)
        lines.append("cycles: " + (", ".join(_cycle_text(g, c) for c in cs) or "(none)"))
    except CycleThroughOmegaBundle as err:
        payload["cycles"] = {"error": "cycle_through_omega_bundle", "detail": str(err)}
        payload["condition_L"] = None
        lines.append(f"cycles: unboundedly many ({err})")
    w = cycle_exit_witness(g)
    payload["no_exit_cycles"] = w is None
    if w is not None:
        payload["exit_witness"] = {"cycle": _cycle_json(w.cycle),
                                   "exit": _edge_json(w.edge)}
        lines.append(f"no_exit_cycles: false  (cycle {_cycle_text(g, w.cycle)}"
                     f" has exit {_edge_text(g, w.edge)})")
    else:
        lines.append("no_exit_cycles: true")
    payload["condition_K"] = condition_K(g)
    payload["downward_directed"] = downward_directed(g, g.vertices)
    lines.append(f"condition_L: {payload['condition_L']}")
    lines.append(f"condition_K: {payload['condition_K']}")
    lines.append(f"downward_directed: {payload['downward_directed']}")
    _emit(args, payload, lines)
    return 0


def _target_json(g: Graph, target, cnt: int) -> dict:
    if isinstance(target, structure.SinkTarget):
        return {"kind": "sink", "vertex": target.vertex, "count": cnt}
    return {"kind": "cycle", "cycle": _cycle_json(target.cycle), "count": cnt}


def _cmd_index(args) -> int:
    g = graphio.load_graph(args.graph)
    report = structure.bounded_index_report(g)
    if isinstance(report, structure.Bounded):
        payload = {
            "command": "index",
            "verdict": "bounded",
            "n": report.n,
            "per_target": [_target_json(g, t, c) for t, c in report.per_target],
        }
        lines = [f"Bounded n={report.n}"]
        for t, c in report.per_target:
            if isinstance(t, structure.SinkTarget):
                lines.append(f"  sink {t.vertex}: {c}")
            else:
                lines.append(f"  cycle {_cycle_text(g, t.cycle)}: {c}")
        recipe = report.witness_recipe
        if isinstance(recipe, algebra.Acyclic):
            payload["witness"] = {"kind": "acyclic_paths",
                                  "paths": [_path_json(p) for p in recipe.paths]}
        elif isinstance(recipe, algebra.NoExitCycle):
            payload["witness"] = {"kind": "no_exit_cycle_paths",
                                  "cycle": _cycle_json(recipe.cycle),
                                  "paths": [_path_json(p) for p in recipe.paths]}
        else:
            payload["witness"] = None
        _emit(args, payload, lines)
    else:
        reason = report.reason
        if isinstance(reason, structure.CycleWithExit):
            rj = {"kind": "cycle_with_exit", "cycle": _cycle_json(reason.cycle),
                  "exit": _edge_json(reason.edge)}
            rt = (f"cycle {_cycle_text(g, reason.cycle)} has exit "
                  f"{_edge_text(g, reason.edge)}")
        elif isinstance(reason, structure.OmegaPathFamily):
            rj = {"kind": "omega_path_family", "vertex": reason.vertex}
            rt = f"infinitely many paths end at {reason.vertex}"
        else:
            rj = {"kind": "multi_cycle_vertex", "vertex": reason.vertex}
            rt = f"{reason.vertex} lies on several cycles"
        payload = {"command": "index", "verdict": "unbounded", "reason": rj}
        _emit(args, payload, [f"Unbounded: {rt}"])
    return 0


def _cmd_decompose(args) -> int:
    g = graphio.load_graph(args.graph)
    try:
        d = structure.decompose(g)
    except structure.NotRowFinite as err:
        _emit(args, {"command": "decompose", "verdict": "not_row_finite",
                     "detail": str(err)},
              [f"Not row-finite: {err}; decomposition undefined"])
        return 0
    except structure.PreconditionUnbounded as err:
        _emit(args, {"command": "decompose", "verdict": "unbounded",
                     "detail": str(err)},
              [f"Unbounded: {err}; no matrix-ring decomposition"])
        return 0
    counted: dict = {}
    for f in d.factors:
        counted[f] = counted.get(f, 0) + 1
    payload = {
        "command": "decompose",
        "verdict": "decomposed",
        "factors": [{"size": f.size, "base": f.base, "count": c}
                    for f, c in sorted(counted.items())],
    }
    bits = [f"M_{f.size}({f.base})" + (f" x{c}" if c > 1 else "")
            for f, c in sorted(counted.items())]
    _emit(args, payload, [" + ".join(bits) if bits else "0 (empty graph)"])
    return 0


def _cmd_ideals(args) -> int:
    g = graphio.load_graph(args.graph)
    try:
        spectrum = structure.graded_spectrum(g, cap=args.cap)
    except structure.PreconditionUnbounded as err:
        _emit(args, {"command": "ideals", "verdict": "unbounded",
                     "detail": str(err)},
              [f"Unbounded: {err}; graded spectrum not computed"])
        return 0
    payload = {
        "command": "ideals",
        "verdict": "classified",
        "quotients": [
            {"H": sorted(p.H), "S": sorted(p.S),
             "classification": _classification_json(cls)}
            for p, cls in spectrum
        ],
    }
    lines = []
    for p, cls in spectrum:
        lines.append(f"H={{{', '.join(sorted(p.H))}}} S={{{', '.join(sorted(p.S))}}}"
                     f" -> {_classification_text(cls)}")
    _emit(args, payload, lines or ["(no downward-directed quotients)"])
    return 0


def _cmd_eval(args) -> int:
    g = graphio.load_graph(args.graph)
    ast = exprparse.parse_expr(args.expr)
    elem = exprparse.eval_expr(ast, g)
    verdict = algebra.nilpotence_index(elem, args.nilpotence_max)
    if isinstance(verdict, algebra.NilpotentOfIndex):
        nil_j = {"kind": "nilpotent", "index": verdict.index}
        nil_t = f"nilpotent of index {verdict.index}"
    elif isinstance(verdict, algebra.ResourceLimit):
        nil_j = {"kind": "resource_limit", "power": verdict.power,
                 "terms": verdict.terms}
        nil_t = f"resource limit at power {verdict.power}"
    else:
        nil_j = {"kind": "not_nilpotent_within", "bound": verdict.bound}
        nil_t = f"not nilpotent within {verdict.bound} powers"
    payload = {
        "command": "eval",
        "element": algebra.element_text(elem),
        "terms": [
            {"coeff": str(k), "p": _path_json(m.p), "q": _path_json(m.q)}
            for m, k in elem.terms()
        ],
        "degrees": {str(d): algebra.element_text(x)
                    for d, x in elem.degree_components().items()},
        "nilpotence": nil_j,
    }
    lines = [algebra.element_text(elem)]
    for d, x in elem.degree_components().items():
        lines.append(f"  degree {d}: {algebra.element_text(x)}")
    lines.append(f"  {nil_t}")
    _emit(args, payload, lines)
    return 0


def _cmd_witness(args) -> int:
    g = graphio.load_graph(args.graph)
    report = structure.bounded_index_report(g)
    units = structure.witness_matrix_units(g, report, args.size)
    ok = algebra.verify_matrix_units(units)
    jordan_index = None
    if ok:
        j = algebra.jordan_element(units)
        verdict = algebra.nilpotence_index(j, units.n + 1)
        jordan_index = verdict.index if isinstance(
            verdict, algebra.NilpotentOfIndex) else None
    prov = units.provenance
    if isinstance(prov, algebra.Acyclic):
        pj = {"kind": "acyclic_paths", "paths": [_path_json(p) for p in prov.paths]}
        pt = "acyclic paths"
    elif isinstance(prov, algebra.NoExitCycle):
        pj = {"kind": "no_exit_cycle_paths", "cycle": _cycle_json(prov.cycle),
              "paths": [_path_json(p) for p in prov.paths]}
        pt = f"paths into no-exit cycle {_cycle_text(g, prov.cycle)}"
    else:
        pj = {"kind": "cycle_exit_powers", "cycle": _cycle_json(prov.cycle),
              "exit": _edge_json(prov.exit), "n": prov.n}
        pt = (f"powers of cycle {_cycle_text(g, prov.cycle)} around exit "
              f"{_edge_text(g, prov.exit)}")
    payload = {
        "command": "witness",
        "n": units.n,
        "provenance": pj,
        "verified": ok,
        "jordan_index": jordan_index,
    }
    lines = [f"matrix units {units.n}x{units.n} ({pt})",
             f"verified: {ok}",
             f"jordan element nilpotence index: {jordan_index}"]
    _emit(args, payload, lines)
    return 0


def _cmd_check(args) -> int:
    g = graphio.load_graph(args.graph)
    mismatches = []
    checked = 0
    for v in g.vertices:
        cnt = count_paths_ending_at(g, v)
        if not cnt.finite:
            continue
        cap = max(1, len(g.vertices)) * (cnt.value + 1)
        listed = len(oracle.enumerate_paths_ending_at(g, v, cap))
        checked += 1
        if listed != cnt.value:
            mismatches.append({"vertex": v, "count": cnt.value, "listed": listed})
    payload = {
        "command": "check",
        "dp_agreement": {"vertices_checked": checked, "mismatches": mismatches},
    }
    lines = [f"path-count agreement: {checked} vertices checked, "
             f"{len(mismatches)} mismatches"]
    report = structure.bounded_index_report(g)
    if isinstance(report, structure.Bounded):
        rep = oracle.cross_check_index(g, trials=args.trials, seed=args.seed)
        payload["sampling"] = {
            "n": rep.n, "trials": rep.trials,
            "nilpotent_found": rep.nilpotent_found,
            "empirical_max_index": rep.empirical_max_index,
            "witness_index": rep.witness_index,
            "violations": list(rep.violations),
        }
        lines.append(f"bounded n={rep.n}: {rep.trials} trials, "
                     f"{rep.nilpotent_found} nilpotent, empirical max "
                     f"{rep.empirical_max_index}, witness index {rep.witness_index}")
        if rep.violations:
            lines.extend(f"  VIOLATION: {v}" for v in rep.violations)
    else:
        payload["sampling"] = None
        lines.append("graph is unbounded; sampling suite skipped")
    sampling_violations = payload["sampling"]["violations"] if payload["sampling"] else []
    ok = not mismatches and not sampling_violations
    payload["ok"] = ok
    lines.append("ok" if ok else "FAILED")
    _emit(args, payload, lines)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leavitt",
        description="Structure analysis of Leavitt path algebras of finite graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="graph document file")
        p.add_argument("--format", choices=["text", "json"], default="text")
        p.set_defaults(func=func)
        return p

    add("analyze", _cmd_analyze, "structural report")
    add("index", _cmd_index, "bounded-index verdict with witnesses")
    add("decompose", _cmd_decompose, "matrix-ring decomposition")
    p = add("ideals", _cmd_ideals, "graded quotient classifications")
    p.add_argument("--cap", type=int, default=15,
                   help="max vertices for subset enumeration")
    p = add("eval", _cmd_eval, "evaluate an element expression")
    p.add_argument("expr", help="element expression")
    p.add_argument("--nilpotence-max", type=int, default=8,
                   help="nilpotence probe bound")
    p = add("witness", _cmd_witness, "build and verify matrix units")
    p.add_argument("--size", type=int, default=None,
                   help="requested unit size (defaults to n when bounded, 3 otherwise)")
    p = add("check", _cmd_check, "oracle agreement and sampling suites")
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CapExceeded, oracle.ExplosionGuard) as err:
        print(f"resource limit: {err}", file=sys.stderr)
        return 2
    except (OSError, LeavittError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

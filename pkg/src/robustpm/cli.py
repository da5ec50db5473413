"""Command-line front end: ``robustpm <command> [problem] [flags]``.

Exit codes: 0 stable/holds, 1 unstable/violated, 2 inconclusive,
3 usage errors, 4 invalid input, 5 other failures.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .engine import EngineOptions, analyze, robust_margin
from .errors import MalformedInputError, RobustPMError
from .freqdom import FreqOptions, SectorSpec, hinf_lt_one, sector_positivity, spr_check
from .kharitonov import distinct_edge_indices, distinct_vertex_indices, kharitonov_edges, kharitonov_vertices
from .oracle import oracle_falsify
from .problem import parse_problem
from .testing_sets import METHODS, count_formulas, testing_plan, uniform_count

EXIT = {"stable": 0, "holds": 0, "certified": 0, "unstable": 1, "violated": 1, "inconclusive": 2}
EXIT_USAGE, EXIT_INPUT, EXIT_FAILURE = 3, 4, 5


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        return v if math.isfinite(v) else ("inf" if v > 0 else "-inf" if v < 0 else "nan")
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def _emit(payload: dict, fmt: str, out, timing: bool = True) -> None:
    if not timing:
        payload = {k: v for k, v in payload.items() if k != "timing"}
    if fmt == "json":
        out.write(json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n")
        return
    for key, value in _flatten(_jsonable(payload)):
        out.write(f"{key:<40} {value}\n")


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k in obj:
            yield from _flatten(obj[k], f"{prefix}.{k}" if prefix else k)
    elif isinstance(obj, list) and obj and any(isinstance(v, (dict, list)) for v in obj):
        for k, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}[{k}]")
    else:
        yield prefix, json.dumps(obj)


def _range(text: str) -> tuple:
    try:
        lo, hi = text.split(":")
        return float(lo), float(hi)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None


def _matrix(text: str) -> list:
    try:
        return [[float(x) for x in row.split(",")] for row in text.split(";")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected rows like '1,0;0,1', got {text!r}") from None


def _check_arg() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("check", choices=("hinf", "spr", "sector"))
    return p


def build_parser() -> argparse.ArgumentParser:
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--method", choices=METHODS, default="thm1_row")
    flags.add_argument("--eps", type=float, default=None, help="uncertainty scale for templated problems")
    flags.add_argument("--tol", type=float, default=1e-9, help="relative Routh pivot / definiteness tolerance")
    flags.add_argument("--grid-steps", type=int, default=None, help="grid fallback for inconclusive families")
    flags.add_argument("--freq-floor", type=float, default=1e-6, help="relative frequency resolution floor")
    flags.add_argument("--max-configs", type=int, default=None, help="seeded subsample cap on configurations")
    flags.add_argument("--samples", type=int, default=10_000)
    flags.add_argument("--seed", type=int, default=0)
    flags.add_argument("--format", choices=("json", "table"), default="json")
    flags.add_argument("--jobs", type=int, default=1)
    flags.add_argument("--no-timing", action="store_true", help="omit wall-clock fields from reports")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", nargs="?", default="manipulator",
                        help="problem file, JSON text, or bundled fixture name (default: manipulator)")

    parser = _Parser(prog="robustpm", description="Robust Hurwitz stability of B(s)A(s) + D(s)C(s).")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("analyze", parents=[common, flags], help="robust stability verdict")
    p = sub.add_parser("margin", parents=[common, flags], help="bisection for the largest stable eps")
    p.add_argument("--eps-range", type=_range, default=(0.0, 0.99))
    p.add_argument("--width", type=float, default=1e-4, help="bisection stopping width")
    sub.add_parser("count", parents=[common, flags], help="testing-set sizes")
    p = sub.add_parser("enumerate", parents=[common, flags], help="list testing-set configurations")
    p.add_argument("--full", action="store_true", help="expand vertex and edge choices")
    p.add_argument("--limit", type=int, default=1000)
    p = sub.add_parser("kharitonov", parents=[common, flags], help="vertex and edge polynomials per entry")
    p.add_argument("--entry", default=None, help="e.g. D11; all entries when omitted")
    sub.add_parser("oracle", parents=[common, flags], help="sampling falsification")
    # the check name comes before the optional problem
    p = sub.add_parser("freq", parents=[_check_arg(), common, flags], help="frequency-domain checks")
    p.add_argument("--K", type=_matrix, default=None, help="sector gain, rows separated by ';'")
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--lam-grid", type=int, default=5)
    sub.add_parser("example", parents=[common, flags], help="bundled manipulator walkthrough")
    return parser


def _options(args) -> EngineOptions:
    return EngineOptions(tol=args.tol, freq_floor=args.freq_floor, grid_steps=args.grid_steps,
                         max_configs=args.max_configs, seed=args.seed, jobs=max(1, args.jobs))


def _counts(spec, problem) -> dict:
    out = {"formulas": count_formulas(problem.n), "methods": {}}
    for method in METHODS:
        plan = testing_plan(problem.B, problem.D, method)
        out["methods"][method] = {
            "raw_patterns": len(plan.raw_patterns),
            "collapsed_patterns": plan.collapse.after,
            "arity": sorted({p.arity for p in plan.patterns}),
            "uniform_configurations": sum(uniform_count(p, problem.B, problem.D) for p in plan.patterns),
            "distinct_configurations": plan.total,
            "patterns": [p.label() for p in plan.patterns],
        }
    return out


def _entry_sets(problem, entry: Optional[str]) -> dict:
    out = {}
    for side, ipm in (("B", problem.B), ("D", problem.D)):
        for i in range(problem.n):
            for j in range(problem.n):
                label = f"{side}{i + 1}{j + 1}"
                if entry is not None and label != entry.upper():
                    continue
                ip = ipm[i, j]
                out[label] = {
                    "bounds": ip.to_json(),
                    "vertices": [v.to_list() for v in kharitonov_vertices(ip)],
                    "edges": [{"pair": list(e.pair), "from": e.start.to_list(), "to": e.end.to_list()}
                              for e in kharitonov_edges(ip)],
                    "distinct_vertices": list(distinct_vertex_indices(ip)),
                    "distinct_edges": list(distinct_edge_indices(ip)),
                }
    if entry is not None and not out:
        raise MalformedInputError(f"no entry named {entry!r}")
    return out


def _sector(spec, args, n) -> SectorSpec:
    block = spec.checks.get("sector", {})
    K = args.K if args.K is not None else block.get("K")
    eta = args.eta if args.eta is not None else block.get("eta", 0.0)
    if K is None:
        K = np.eye(n).tolist()
    return SectorSpec(np.asarray(K, dtype=float), float(eta))


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    spec = parse_problem(args.problem)
    problem = spec.instantiate(args.eps)
    opts = _options(args)
    timing = not args.no_timing
    cmd = args.command

    if cmd == "analyze":
        report = analyze(problem, args.method, opts)
        _emit(report.to_json(), args.format, out, timing)
        return EXIT[report.verdict]
    if cmd == "margin":
        res = robust_margin(spec, args.eps_range, args.method, args.width, opts)
        _emit({"method": args.method, "eps_star": res.eps_stable, "eps_unstable": res.eps_unstable,
               "history": res.history, "settings": {"width": args.width, **opts.echo()}}, args.format, out)
        return 0
    if cmd == "count":
        _emit(_counts(spec, problem), args.format, out)
        return 0
    if cmd == "enumerate":
        plan = testing_plan(problem.B, problem.D, args.method)
        items = []
        for exp in plan.expansions:
            if args.full:
                for k in range(min(exp.size, args.limit - len(items))):
                    items.append(exp.configuration(k).to_json())
            else:
                items.append({"pattern": exp.pattern.to_json(), "configurations": exp.size})
            if len(items) >= args.limit:
                break
        _emit({"method": args.method, "total": plan.total, "items": items, "truncated": len(items) >= args.limit},
              args.format, out)
        return 0
    if cmd == "kharitonov":
        _emit({"eps": problem.eps, "entries": _entry_sets(problem, args.entry)}, args.format, out)
        return 0
    if cmd == "oracle":
        res = oracle_falsify(problem, args.samples, args.seed)
        _emit({**res.to_json(), "seed": args.seed}, args.format, out)
        return 1 if res.found else 0
    if cmd == "freq":
        fopts = FreqOptions(tol=args.tol, lam_grid=args.lam_grid, seed=args.seed,
                            max_members=args.max_configs or FreqOptions.max_members)
        if args.check == "hinf":
            report = hinf_lt_one(problem, args.method, fopts)
        elif args.check == "spr":
            report = spr_check(problem, args.method, fopts)
        else:
            report = sector_positivity(problem, _sector(spec, args, problem.n), args.method, fopts)
        _emit(report.to_json(), args.format, out)
        return EXIT[report.verdict]
    if cmd == "example":
        result = {"problem": spec.name, "eps": problem.eps, "counts": _counts(spec, problem), "analyze": {}}
        worst = "stable"
        for method in METHODS:
            rep = analyze(problem, method, opts)
            result["analyze"][method] = {"verdict": rep.verdict, "counts": rep.counts,
                                         "configurations": rep.configurations["total"]}
            if EXIT[rep.verdict] > EXIT[worst]:
                worst = rep.verdict
        orc = oracle_falsify(problem, args.samples, args.seed)
        result["oracle"] = {"found": orc.found, "samples": orc.samples, "vertices": orc.vertices}
        if args.format == "table":
            _example_table(result, out)
        else:
            _emit(result, "json", out)
        return EXIT[worst]
    raise AssertionError(cmd)


def _example_table(result: dict, out) -> None:
    out.write(f"{result['problem']}  eps={result['eps']}\n")
    out.write(f"{'method':<13}{'raw':>5}{'collapsed':>11}{'arity':>7}{'uniform':>10}{'distinct':>10}  verdict\n")
    for method, row in result["counts"]["methods"].items():
        arity = ",".join(str(a) for a in row["arity"])
        out.write(f"{method:<13}{row['raw_patterns']:>5}{row['collapsed_patterns']:>11}{arity:>7}"
                  f"{row['uniform_configurations']:>10}{row['distinct_configurations']:>10}  "
                  f"{result['analyze'][method]['verdict']}\n")
    o = result["oracle"]
    out.write(f"oracle: {'witness found' if o['found'] else 'no witness'} "
              f"({o['samples']} samples, {o['vertices']} vertex combinations)\n")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return run(argv)
    except MalformedInputError as exc:
        print(f"robustpm: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except RobustPMError as exc:
        print(f"robustpm: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())

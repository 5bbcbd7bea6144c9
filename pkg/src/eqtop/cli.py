"""Command-line front end.

Exit codes: 0 success, 1 refuted or failing check, 2 parse or I/O error,
3 demanding theory.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from . import theories
from .algebra import FiniteAlgebra, satisfies, search_all, search_models, power_algebra
from .dsl import DSLError, format_equation, format_interpretation, format_theory, parse_document
from .interp import check_interpretation
from .pl.catalog import STANDARD_RUNS, UnknownEntry, catalog, names, run_entry
from .pl.certify import check_pl_model, check_witness
from .pl.expr import fmt, fmt_point, is_pl, witness_from_json, witness_to_json
from .pl.sample import SamplingPlan, sample_check
from .tree import MetricTree, TreeError, check_on_grid, grid_points, op_theory_ops
from .undemanding import Demanding, format_assignment, is_k_undemanding, is_undemanding

OK, REFUTED, INPUT_ERROR, DEMANDING = 0, 1, 2, 3


class InputError(Exception):
    pass


@dataclass
class RunReport:
    command: str
    verdict: str
    exit_code: int
    lines: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    seed: int = None
    elapsed_ms: float = None
    raw: str = None          # printed verbatim instead of the text report

    def text(self) -> str:
        out = [f"{self.command}: {self.verdict}"]
        if self.seed is not None:
            out.append(f"seed: {self.seed}")
        out.extend(self.lines)
        return "\n".join(out) + "\n"

    def as_json(self, timing: bool) -> str:
        data = {"command": self.command, "verdict": self.verdict, "exit_code": self.exit_code,
                "details": self.lines, "witnesses": self.witnesses}
        if self.seed is not None:
            data["seed"] = self.seed
        if timing:
            data["elapsed_ms"] = round(self.elapsed_ms or 0.0, 3)
        return json.dumps(data, indent=2, sort_keys=True) + "\n"


# -- input helpers -------------------------------------------------------------

def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def read_json(path: str):
    try:
        return json.loads(read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def load_theory(path: str):
    """A theory from a DSL file, or a built-in one written ``builtin:NAME``."""
    if path.startswith("builtin:"):
        name = path.split(":", 1)[1]
        try:
            return theories.builtin()[name]
        except KeyError:
            raise InputError(f"no built-in theory {name!r}") from None
    ths, _ = parse_document(read_text(path), theories.builtin())
    if len(ths) != 1:
        raise InputError(f"{path}: expected exactly one theory, found {len(ths)}")
    return next(iter(ths.values()))


def load_algebra(path: str) -> FiniteAlgebra:
    try:
        return FiniteAlgebra.from_json(read_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: not an algebra file ({exc})") from None


def _param(text: str):
    q = Fraction(text)
    return int(q) if q.denominator == 1 else q


# -- commands --------------------------------------------------------------------

def cmd_parse(args) -> RunReport:
    ths, interps = parse_document(read_text(args.file), theories.builtin())
    lines = [format_theory(t).rstrip("\n") for t in ths.values()]
    lines += [format_interpretation(i).rstrip("\n") for i in interps]
    return RunReport("parse", "ok", OK, lines,
                     [{"theories": list(ths), "interpretations": len(interps)}])


def cmd_demand(args) -> RunReport:
    th = load_theory(args.file)
    v = is_undemanding(th) if args.k == 1 else is_k_undemanding(th, args.k)
    if isinstance(v, Demanding):
        return RunReport("demand", "Demanding", DEMANDING, [f"theory {th.name}, k={args.k}"])
    witness = {n: ([str(e) for e in x] if isinstance(x, tuple) else str(x))
               for n, x in v.witness.items()}
    label = "Undemanding" if args.k == 1 else f"{args.k}-undemanding"
    return RunReport("demand", label, OK, [format_assignment(v.witness)], [witness])


def cmd_model_check(args) -> RunReport:
    th = load_theory(args.theory)
    alg = load_algebra(args.algebra)
    try:
        v = satisfies(alg, th)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if v:
        return RunReport("model-check", "holds", OK)
    eq = format_equation(v.equation, th)
    return RunReport("model-check", "fails", REFUTED, [f"{eq} at {list(v.assignment)}"],
                     [{"equation": eq, "assignment": list(v.assignment)}])


def cmd_search(args) -> RunReport:
    th = load_theory(args.theory)
    if args.all:
        models = search_all(th, args.size, symmetry=args.symmetry, limit=args.limit)
    else:
        m = search_models(th, args.size, symmetry=args.symmetry)
        models = [m] if m is not None else []
    if not models:
        return RunReport("search", "none", REFUTED, [f"no model of size {args.size}"])
    lines = [json.dumps(m.to_json(), sort_keys=True) for m in models]
    return RunReport("search", "found", OK, lines, [m.to_json() for m in models])


def cmd_interp_check(args) -> RunReport:
    _, interps = parse_document(read_text(args.file), theories.builtin())
    if not interps:
        raise InputError(f"{args.file}: no interpret block")
    v = check_interpretation(interps[0], args.max_size)
    if v:
        return RunReport("interp check", "confirmed", OK,
                         [f"confirmed on all {v.models_checked} target models of size <= "
                          f"{v.max_size} (not a proof)"])
    eq = format_equation(v.equation, interps[0].source)
    return RunReport("interp check", "refuted", REFUTED,
                     [f"{eq} fails at {list(v.assignment)} on a {v.model.size}-element model",
                      json.dumps(v.model.to_json(), sort_keys=True)],
                     [{"model": v.model.to_json(), "equation": eq,
                       "assignment": list(v.assignment)}])


def cmd_gen(args) -> RunReport:
    what = args.what
    if what == "squaring":
        text = format_theory(theories.squaring_theory())
    elif what == "sqrt2-hspace":
        text = format_theory(theories.sqrt2_hspace_theory())
    elif what == "lambda":
        if args.n is None:
            raise InputError("gen lambda needs N")
        text = format_theory(theories.lambda_theory(args.n))
    elif what == "power":
        if args.n is None or args.n < 2:
            raise InputError("gen power needs K >= 2")
        base = (load_algebra(args.base) if args.base
                else FiniteAlgebra(args.base_size, {}))
        text = json.dumps(power_algebra(base, args.n).to_json(), sort_keys=True) + "\n"
    else:
        raise InputError(f"unknown generator {what!r}")
    return RunReport("gen", "ok", OK, witnesses=[text], raw=text)


def _plan(args) -> SamplingPlan:
    return SamplingPlan(grid_denominator=args.grid_denominator, random_points=args.random_points,
                        seed=args.seed)


def cmd_check_pl(args) -> RunReport:
    th = load_theory(args.theory)
    try:
        witness, box = witness_from_json(read_json(args.witness))
        check_witness(th, witness)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.witness}: {exc}") from None
    mode = args.mode or ("certify" if all(is_pl(e) for e in witness.values()) else "sample")
    if mode == "certify":
        if not all(is_pl(e) for e in witness.values()):
            raise InputError("--certify needs piecewise-linear operations (no mul)")
        results = check_pl_model(th, witness, box)
        lines, wit = [], []
        for r in results:
            lines.append(f"{format_equation(r.equation, th)}: {r.verdict}")
            if not r:
                wit.append({"equation": format_equation(r.equation, th),
                            "point": [fmt(v) for v in r.verdict.witness],
                            "lhs": fmt(r.verdict.lhs_value), "rhs": fmt(r.verdict.rhs_value)})
        ok = all(results)
        return RunReport("check-pl", "equal" if ok else "not_equal", OK if ok else REFUTED,
                         lines, wit)
    v = sample_check(th, witness, box, _plan(args))
    if v:
        return RunReport("check-pl", "no_counterexample", OK,
                         [f"{v.count} points evaluated; not a certificate"], seed=args.seed)
    eq = format_equation(v.equation, th)
    return RunReport("check-pl", "refuted", REFUTED,
                     [f"{eq} at {fmt_point(v.point)}: {fmt(v.lhs_value)} vs {fmt(v.rhs_value)}"],
                     [{"equation": eq, "point": [fmt(x) for x in v.point],
                       "lhs": fmt(v.lhs_value), "rhs": fmt(v.rhs_value)}], seed=args.seed)


def cmd_tree_check(args) -> RunReport:
    try:
        tree = MetricTree.from_json(read_json(args.tree))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{args.tree}: {exc}") from None
    th = load_theory(args.theory)
    ops = op_theory_ops(th, tree, args.op)
    pts = grid_points(tree, args.grid_denominator)
    v = check_on_grid(th, ops, pts)
    head = f"{len(pts)} grid points, denominator <= {args.grid_denominator}"
    if v:
        return RunReport("tree-check", "holds", OK, [head, str(v)])
    eq = format_equation(v.equation, th)
    wit = {"equation": eq, "assignment": [p.to_json() for p in v.assignment],
           "lhs": v.lhs.to_json(), "rhs": v.rhs.to_json()}
    return RunReport("tree-check", "fails", REFUTED, [head, str(v)], [wit])


def _run_one(job):
    name, params, plan = job
    return run_entry(name, params, plan)


def cmd_catalog(args) -> RunReport:
    if args.action == "list":
        return RunReport("catalog list", "ok", OK, witnesses=names(),
                         raw="".join(n + "\n" for n in names()))
    if args.action in ("theory", "witness"):
        if not args.name:
            raise InputError(f"catalog {args.action} needs an entry name")
        try:
            entry = catalog(args.name, *[_param(p) for p in args.params])
        except UnknownEntry:
            raise InputError(f"no catalog entry {args.name!r}") from None
        if args.action == "theory":
            text = format_theory(entry.theory)
        else:
            text = json.dumps(witness_to_json(entry.witness, entry.box), indent=2) + "\n"
        return RunReport(f"catalog {args.action}", "ok", OK, witnesses=[text], raw=text)
    plan = SamplingPlan(seed=args.seed)
    jobs = [(n, p, plan) for n, p in STANDARD_RUNS]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_run_one, jobs))
    else:
        results = [_run_one(j) for j in jobs]
    lines, wit = [], []
    for r in results:
        status = "clean" if r.clean else "FAILED"
        lines.append(f"{r.label} [{r.mode}] {status}: {r.detail}")
        for desc, refuted, detail in r.mutants:
            lines.append(f"  mutant {desc}: {'refuted' if refuted else 'NOT REFUTED'}: {detail}")
        wit.append({"entry": r.label, "mode": r.mode, "clean": r.clean, "detail": r.detail,
                    "mutants": [{"mutant": d, "refuted": f, "detail": t}
                                for d, f, t in r.mutants]})
    ok = all(r.clean for r in results)
    return RunReport("catalog run-all", "clean" if ok else "failed", OK if ok else REFUTED,
                     lines, wit, seed=args.seed)


# -- argument parsing -----------------------------------------------------------

def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    # Subcommands repeat the global flags with suppressed defaults so that a flag
    # given before the subcommand is not reset by the subparser.
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=d(False),
                        help="emit the report as JSON")
    common.add_argument("--timing", action="store_true", default=d(False),
                        help="include elapsed time in JSON reports")
    common.add_argument("--seed", type=int, default=d(0), help="seed for random sampling")
    common.add_argument("--jobs", type=int, default=d(1), help="worker processes")
    return common


def build_parser() -> argparse.ArgumentParser:
    top = _global_flags(False)
    common = _global_flags(True)

    p = argparse.ArgumentParser(prog="eqtop", parents=[top],
                                description="Equational theories, finite models, exact PL checks.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", parents=[common], help="parse and pretty-print a DSL file")
    s.add_argument("file")
    s.set_defaults(fn=cmd_parse)

    s = sub.add_parser("demand", parents=[common], help="decide (k-)undemanding")
    s.add_argument("file")
    s.add_argument("--k", type=int, default=1)
    s.set_defaults(fn=cmd_demand)

    s = sub.add_parser("model-check", parents=[common], help="check a finite algebra")
    s.add_argument("theory")
    s.add_argument("algebra")
    s.set_defaults(fn=cmd_model_check)

    s = sub.add_parser("search", parents=[common], help="search for finite models")
    s.add_argument("theory")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--all", action="store_true")
    s.add_argument("--limit", type=int, default=0)
    s.add_argument("--symmetry", action="store_true", help="least number heuristic")
    s.set_defaults(fn=cmd_search)

    s = sub.add_parser("interp", parents=[common], help="interpretations")
    isub = s.add_subparsers(dest="interp_command", required=True)
    c = isub.add_parser("check", parents=[common])
    c.add_argument("file")
    c.add_argument("--max-size", type=int, default=3)
    c.set_defaults(fn=cmd_interp_check)

    s = sub.add_parser("gen", parents=[common], help="generate theories and power algebras")
    s.add_argument("what", choices=["squaring", "sqrt2-hspace", "lambda", "power"])
    s.add_argument("n", nargs="?", type=int)
    s.add_argument("--base", help="algebra file for gen power")
    s.add_argument("--base-size", type=int, default=2,
                   help="size of the bare set used by gen power without --base")
    s.set_defaults(fn=cmd_gen)

    s = sub.add_parser("check-pl", parents=[common], help="check PL or sampled witnesses")
    s.add_argument("theory")
    s.add_argument("witness")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--certify", dest="mode", action="store_const", const="certify")
    mode.add_argument("--sample", dest="mode", action="store_const", const="sample")
    s.add_argument("--grid-denominator", type=int, default=6)
    s.add_argument("--random-points", type=int, default=2000)
    s.set_defaults(fn=cmd_check_pl)

    s = sub.add_parser("tree-check", parents=[common], help="check a tree operation on a grid")
    s.add_argument("tree")
    s.add_argument("op", choices=["median", "minority", "rooted_meet"])
    s.add_argument("theory")
    s.add_argument("--grid-denominator", type=int, default=4)
    s.set_defaults(fn=cmd_tree_check)

    s = sub.add_parser("catalog", parents=[common], help="the interval witness catalog")
    s.add_argument("action", choices=["run-all", "list", "theory", "witness"])
    s.add_argument("name", nargs="?")
    s.add_argument("params", nargs="*")
    s.set_defaults(fn=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    start = time.perf_counter()
    try:
        report = args.fn(args)
    except (InputError, DSLError, TreeError) as exc:
        print(f"eqtop: {exc}", file=sys.stderr)
        return INPUT_ERROR
    report.elapsed_ms = (time.perf_counter() - start) * 1000
    if report.seed is None:
        report.seed = args.seed
    if report.raw is not None and not args.json:
        sys.stdout.write(report.raw)
    elif args.json:
        sys.stdout.write(report.as_json(args.timing))
    else:
        sys.stdout.write(report.text())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())

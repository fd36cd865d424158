"""Command-line front end: ``bordamanip {gen,solve,exact,experiment,report}``.

Exit codes: 0 success / optimum known, 1 failure / unsat, 2 timeout / unknown,
3 bad input.
"""

from __future__ import annotations

import argparse
import csv
import logging
import sys
import time
from pathlib import Path

from . import formats
from .election import Election, ScoreProfile, ValidationError, tally
from .exact import Budget, SearchStatus, exists_manipulation, minimum_manipulators
from .gen import GenConfig, choose_target, generate
from .greedy import LslgTie, TiePolicy, lsla, lslg, reverse
from .harness import (
    DESK_M, DESK_P, FULL_GRID, ExperimentConfig, InstanceResult, read_rows,
    render_csv, render_text, run_experiment, summarize, write_outputs,
)
from .matrix import convert_to_votes

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3

log = logging.getLogger("bordamanip")


def _globals() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--seed", type=int, default=0, help="root random seed")
    g.add_argument("--out", type=Path, default=None, help="output file or directory")
    g.add_argument("--workers", type=int, default=1)
    g.add_argument("--budget-nodes", type=int, default=10**7)
    g.add_argument("--budget-ms", type=int, default=60_000)
    g.add_argument("--target", choices=("last", "worst"), default=None,
                   help="distinguished candidate: m (last) or lowest Borda score (worst)")
    g.add_argument("-v", "--verbose", action="store_true")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _globals()
    parser = argparse.ArgumentParser(prog="bordamanip", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate election files")
    p.add_argument("--model", choices=("uniform", "urn", "prop1", "thm2"), default="uniform")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--p", type=int, default=4)
    p.add_argument("--a", type=int, default=None, help="urn replacement count (default m!)")
    p.add_argument("--k", type=int, default=36, help="thm2 scale, a multiple of 36")
    p.add_argument("--count", type=int, default=1,
                   help="instances; seeds are seed+idx. With one instance, --out x.json is a file")

    p = sub.add_parser("solve", parents=[common], help="run one algorithm on a file")
    p.add_argument("file", type=Path)
    p.add_argument("--algorithm", choices=("reverse", "lslg", "lsla", "exact"), required=True)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--tie-policy", choices=[t.value for t in TiePolicy], default="minfill")
    p.add_argument("--lslg-tie", choices=[t.value for t in LslgTie], default="high")
    p.add_argument("--trace", type=Path, default=None,
                   help="write iter,column,score,column_sum CSV ('-' for stdout)")

    p = sub.add_parser("exact", parents=[common], help="determine the optimal coalition size")
    p.add_argument("file", type=Path)
    p.add_argument("--n", type=int, default=None, help="only decide whether n manipulators suffice")

    p = sub.add_parser("experiment", parents=[common], help="run the randomized comparison")
    p.add_argument("--m", type=int, nargs="+", default=list(DESK_M))
    p.add_argument("--p", type=int, nargs="+", default=list(DESK_P))
    p.add_argument("--instances", type=int, default=100, help="instances per (m, p) cell")
    p.add_argument("--models", nargs="+", choices=("uniform", "urn"), default=["uniform", "urn"])
    p.add_argument("--urn-a", type=int, default=None)
    p.add_argument("--full-grid", action="store_true",
                   help="m, p in 4..128 with 1000 instances per cell (hours)")
    p.add_argument("--timings", choices=("sidecar", "inline"), default="sidecar",
                   help="inline puts wall times in instances.csv (no longer reproducible)")

    p = sub.add_parser("report", parents=[common], help="tabulate a per-instance CSV")
    p.add_argument("csv", type=Path)
    p.add_argument("--format", choices=("text", "csv"), default="text")
    return parser


def _budget(args) -> Budget:
    return Budget(args.budget_nodes, args.budget_ms)


def _load_profile(args) -> ScoreProfile:
    obj = formats.load(args.file)
    if isinstance(obj, Election):
        if args.target:
            obj = choose_target(obj, args.target)
        return tally(obj)
    return obj


def _emit_ballots(profile: ScoreProfile, vm, args) -> None:
    e = Election(profile.m, tuple(vm.ballots()), profile.distinguished)
    text = formats.dumps(e)
    if args.out:
        args.out.write_text(text + "\n")
    else:
        print(text)


def _write_trace(trace, dest: Path) -> None:
    rows = [(t.iteration, t.column, t.score, t.column_sum) for t in trace]
    if str(dest) == "-":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(("iter", "column", "score", "column_sum"))
        w.writerows(rows)
        return
    with open(dest, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(("iter", "column", "score", "column_sum"))
        w.writerows(rows)


def _report_line(rep) -> str:
    def f(v):
        return "unknown" if v is None else str(v)

    return (
        f"n_reverse={rep.n_reverse} n_optimal={f(rep.n_optimal)} proof={rep.proof.value} "
        f"rev_opt={f(rep.rev_opt)} lslg_opt={f(rep.lslg_opt)} lsla_opt={f(rep.lsla_opt)} "
        f"lsla_minfill_opt={f(rep.lsla_minfill_opt)} lsla_index_opt={f(rep.lsla_index_opt)} "
        f"nodes={rep.nodes} elapsed_ms={rep.elapsed_ms:.1f}"
    )


def cmd_exact(args, profile: ScoreProfile) -> int:
    budget = _budget(args)
    if args.n is not None:
        res = exists_manipulation(profile, args.n, budget)
        print(f"n={args.n} status={res.status.value} nodes={res.nodes} elapsed_ms={res.elapsed * 1000:.1f}")
        if res.status is SearchStatus.SAT:
            _emit_ballots(profile, convert_to_votes(res.witness), args)
            return EXIT_OK
        return EXIT_FAIL if res.status is SearchStatus.UNSAT else EXIT_UNKNOWN
    rep = minimum_manipulators(profile, budget)
    print(_report_line(rep))
    return EXIT_OK if rep.known else EXIT_UNKNOWN


def cmd_solve(args) -> int:
    profile = _load_profile(args)
    if args.algorithm == "exact":
        return cmd_exact(args, profile)
    if args.algorithm == "reverse":
        n, vm = reverse(profile)
        print(f"n={n}")
        _emit_ballots(profile, vm, args)
        return EXIT_OK
    if args.n is None:
        raise ValidationError(f"--algorithm {args.algorithm} requires --n")
    want_trace = args.trace is not None
    if args.algorithm == "lslg":
        out = lslg(profile, args.n, LslgTie(args.lslg_tie), record_trace=want_trace)
    else:
        out = lsla(profile, args.n, TiePolicy(args.tie_policy), record_trace=want_trace)
    if want_trace:
        _write_trace(out.trace, args.trace)
    print(f"n={args.n} status={out.status.value}")
    if not out.ok:
        return EXIT_FAIL
    _emit_ballots(profile, convert_to_votes(out.matrix), args)
    return EXIT_OK


def cmd_gen(args) -> int:
    target = args.target or "last"
    if args.out is None and args.count != 1:
        raise ValidationError("--count > 1 needs --out DIR")
    for idx in range(args.count):
        cfg = GenConfig(args.model, m=args.m, p=args.p, seed=args.seed + idx, a=args.a, k=args.k)
        obj = generate(cfg)
        if isinstance(obj, Election) and args.model in ("uniform", "urn"):
            obj = choose_target(obj, target)
        if args.out is None:
            print(formats.dumps(obj))
            continue
        if args.count == 1 and args.out.suffix and not args.out.is_dir():
            formats.dump(obj, args.out)
            continue
        args.out.mkdir(parents=True, exist_ok=True)
        m = obj.m
        p = len(obj.votes) if isinstance(obj, Election) else obj.voter_count
        formats.dump(obj, args.out / f"{args.model}_m{m}_p{p}_{idx}.json")
    return EXIT_OK


def cmd_experiment(args) -> int:
    m_vals, p_vals, inst = tuple(args.m), tuple(args.p), args.instances
    if args.full_grid:
        m_vals, p_vals, inst = FULL_GRID, FULL_GRID, 1000
        log.warning("full grid: %d instances per model; expect hours of CPU time",
                    len(m_vals) * len(p_vals) * inst)
    cfg = ExperimentConfig(
        m_values=m_vals, p_values=p_vals, instances=inst, models=tuple(args.models),
        seed=args.seed, target=args.target or "worst", urn_a=args.urn_a,
        budget=_budget(args), workers=args.workers, record_times=args.timings == "inline",
    )
    out_dir = args.out or Path("results")
    t0 = time.monotonic()
    results, duplicates = run_experiment(cfg)
    paths = write_outputs(out_dir, cfg, results, duplicates)
    print(paths["summary"].read_text(), end="")
    print(f"wrote {', '.join(str(p) for p in paths.values())} in {time.monotonic() - t0:.1f}s")
    unknown = sum(1 for r in results if not r.report.known)
    return EXIT_OK if unknown == 0 else EXIT_UNKNOWN


def cmd_report(args) -> int:
    rows = read_rows(args.csv.read_text())
    tables = summarize(rows)
    text = render_text(tables) if args.format == "text" else render_csv(tables)
    if args.out:
        args.out.write_text(text)
    else:
        print(text, end="" if text.endswith("\n") else "\n")
    return EXIT_OK


COMMANDS = {
    "gen": cmd_gen,
    "solve": cmd_solve,
    "exact": lambda a: cmd_exact(a, _load_profile(a)),
    "experiment": cmd_experiment,
    "report": cmd_report,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

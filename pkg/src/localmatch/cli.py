"""Command-line entry point: ``localmatch <subcommand> ...``.

Structured output (``--out``) is deterministic for identical flags; wall-clock
timing is added to it only with ``--timing``.  Exit codes: 0 success,
2 input error, 3 budget or feasibility error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .bs_stats import ball_distribution, run_convergence_experiment
from .errors import BudgetError, InfeasibleSpec
from .exact import matching_ratio, maximum_matching
from .generators import FamilySpec, format_graph, generate, load_graph
from .local_matcher import ImproverConfig, run_improver, verify_bracket
from .oracle import OracleConfig, estimate_matching_ratio

EXIT_INPUT = 2
EXIT_BUDGET = 3


def _graph(args):
    if args.input:
        return load_graph(args.input), {"input": args.input}
    return generate(FamilySpec.parse(args.family)), {"family": str(FamilySpec.parse(args.family))}


def _improver(args) -> ImproverConfig:
    return ImproverConfig(T=args.T, phases=args.phases, seed=args.seed)


def _manifest(args, source: dict, **extra) -> dict:
    config = {
        k: v
        for k, v in sorted(vars(args).items())
        if k not in ("func", "out", "input", "family", "timing", "csv")
    }
    out = {"subcommand": args.command, "version": __version__, "config": config, **source}
    out.update(extra)
    return out


def _emit(args, report: dict, lines: list[str], started: float) -> None:
    elapsed = time.perf_counter() - started
    if args.timing:
        report["manifest"]["seconds"] = round(elapsed, 6)
    for line in lines:
        print(line)
    print(f"runtime        {elapsed:.3f}s")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")


def cmd_exact(args):
    t0 = time.perf_counter()
    g, src = _graph(args)
    m = maximum_matching(g)
    ratio = matching_ratio(g, m)
    report = {
        "manifest": _manifest(args, src),
        "n": g.n,
        "size": len(m),
        "m": float(ratio),
        "m_fraction": str(ratio),
    }
    _emit(args, report, [f"n              {g.n}", f"|M|            {len(m)}", f"m(G)           {float(ratio):.6f}"], t0)


def cmd_improve(args):
    t0 = time.perf_counter()
    g, src = _graph(args)
    m = run_improver(g, _improver(args))
    ratio = matching_ratio(g, m)
    report = {
        "manifest": _manifest(args, src),
        "n": g.n,
        "size": len(m),
        "ratio": float(ratio),
        "pairs": [list(p) for p in m.pairs()],
    }
    _emit(args, report, [f"n              {g.n}", f"|M|            {len(m)}", f"|M|/n          {float(ratio):.6f}"], t0)


def cmd_certify(args):
    t0 = time.perf_counter()
    g, src = _graph(args)
    m = run_improver(g, _improver(args))
    rep = verify_bracket(g, m, args.T)
    report = {"manifest": _manifest(args, src), "n": g.n, "bracket": rep.to_dict()}
    lines = [
        f"s              {float(rep.s):.6f}",
        f"q              {float(rep.q):.6f}",
        f"bracket        [{float(rep.lower):.6f}, {float(rep.upper):.6f}]",
    ]
    if args.check_exact:
        if g.n > args.exact_limit:
            lines.append(f"exact check    skipped (n > {args.exact_limit})")
        else:
            exact = matching_ratio(g, maximum_matching(g))
            report["m_exact"] = float(exact)
            report["contains_exact"] = rep.contains(exact)
            lines.append(f"m(G)           {float(exact):.6f}  in bracket: {rep.contains(exact)}")
    _emit(args, report, lines, t0)


def cmd_estimate(args):
    t0 = time.perf_counter()
    if not (0 < args.epsilon < 1 and 0 < args.delta < 1):
        raise ValueError("epsilon and delta must lie strictly between 0 and 1")
    g, src = _graph(args)
    cfg = OracleConfig(_improver(args), probe_budget=args.probe_budget)
    rep = estimate_matching_ratio(g, cfg, args.epsilon, args.delta, args.seed, threads=args.threads)
    report = {"manifest": _manifest(args, src, probes=rep.probes), "n": g.n, "estimate": rep.to_dict()}
    lines = [
        f"samples        {rep.samples}",
        f"s_hat          {rep.s_hat:.6f}",
        f"q_hat          {rep.q_hat:.6f}",
        f"bracket        [{rep.lower:.6f}, {rep.upper:.6f}]",
        f"probes/query   {rep.probes_per_query:.1f}",
    ]
    _emit(args, report, lines, t0)


def cmd_stats(args):
    t0 = time.perf_counter()
    g, src = _graph(args)
    dist = ball_distribution(g, args.r, threads=args.threads)
    report = {
        "manifest": _manifest(args, src),
        "n": g.n,
        "digest": dist.digest(),
        "distribution": dist.to_dict(),
    }
    lines = [f"r              {args.r}", f"ball types     {len(dist.weights)}", f"digest         {dist.digest()[:16]}"]
    for code, w in dist.items()[:10]:
        lines.append(f"  {float(w):.6f}  {code.hex()[:40]}")
    _emit(args, report, lines, t0)


def cmd_converge(args):
    t0 = time.perf_counter()
    if not args.family:
        raise ValueError("converge needs --family")
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    cfg = OracleConfig(_improver(args))
    trace = run_convergence_experiment(
        args.family, sizes, args.r, cfg, args.exact, args.epsilon, args.delta, args.seed, args.threads
    )
    lines = [f"{'n':>8} {'tv_to_prev':>12} {'m_lower':>9} {'m_upper':>9} {'m_exact':>9}"]
    for e in trace.entries:
        tv = "-" if e.tv_to_prev is None else f"{float(e.tv_to_prev):.6f}"
        ex = "-" if e.m_exact is None else f"{float(e.m_exact):.6f}"
        lines.append(f"{e.n:>8} {tv:>12} {e.m_lower:>9.5f} {e.m_upper:>9.5f} {ex:>9}")
    for line in lines:
        print(line)
    print(f"runtime        {time.perf_counter() - t0:.3f}s")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(json.dumps({"manifest": _manifest(args, {"family": args.family})}, sort_keys=True) + "\n")
            fh.write(trace.to_jsonl())
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(trace.to_csv())


def cmd_gen(args):
    if not args.family:
        raise ValueError("gen needs --family")
    text = format_graph(generate(FamilySpec.parse(args.family)))
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _add_common(p, source=True):
    if source:
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", help="edge-list file")
        src.add_argument("--family", help="family spec, e.g. cycle:n=100")
    p.add_argument("--seed", type=int, default=0, help="improver and sampling seed")
    p.add_argument("--out", help="write structured output here")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include wall time in --out")


def _add_improver(p, T=3, phases=5):
    p.add_argument("--T", type=int, default=T, help="augmenting-path length cap")
    p.add_argument("--phases", type=int, default=phases)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="localmatch", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", help="exact maximum matching ratio")
    _add_common(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("improve", help="run the phased local improver")
    _add_common(p)
    _add_improver(p)
    p.set_defaults(func=cmd_improve)

    p = sub.add_parser("certify", help="improver + certified bracket")
    _add_common(p)
    _add_improver(p)
    p.add_argument("--check-exact", action="store_true")
    p.add_argument("--exact-limit", type=int, default=100_000)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("estimate", help="sampling estimator via the local oracle")
    _add_common(p)
    _add_improver(p)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--probe-budget", type=int, default=None)
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("stats", help="rooted ball-type distribution")
    _add_common(p)
    p.add_argument("--r", type=int, default=2)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("converge", help="convergence trace along a family")
    p.add_argument("--family", required=True)
    p.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    p.add_argument("--r", type=int, default=2)
    _add_improver(p)
    p.add_argument("--epsilon", type=float, default=0.05)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--exact", action="store_true", help="also compute exact m(G)")
    p.add_argument("--csv", help="write n,tv,m_lower,m_upper here")
    _add_common(p, source=False)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("gen", help="write a generated graph as an edge list")
    p.add_argument("--family", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except (BudgetError, InfeasibleSpec) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())

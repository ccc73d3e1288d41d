"""Command-line entry point.

Exit codes: 0 pass, 1 inequality failure, 2 usage/config/parse error, 3 IO error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .bounds import TOL_INEQ, chain_check, lower_bound, sandwich_check, upper_bound
from .campaign import TASKS, CampaignConfig, emit_report, run_campaign
from .decompositions import SearchConfig, minimize_average_concurrence
from .ensembles import SeedSpec
from .errors import ConfigError, EntBoundsError
from .measures import concurrence_two_qubit, fidelity, super_fidelity
from .stateio import load_pure_state, load_state
from .states import BipartiteSplit

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _rank(text):
    return text if text == "all" else int(text)


def _tasks(text):
    tasks = tuple(t.strip() for t in text.split(",") if t.strip())
    bad = [t for t in tasks if t not in TASKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown task(s) {bad}; choose from {','.join(TASKS)}")
    return tasks


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="entbounds", description="Concurrence bounds from fidelity: checks and campaigns.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def split_flags(sp):
        sp.add_argument("--dim-a", type=int, help="override dimA from the file")
        sp.add_argument("--dim-b", type=int, help="override dimB from the file")

    def search_flags(sp):
        sp.add_argument("--restarts", type=int, default=20)
        sp.add_argument("--ensemble-size", type=int, default=None, help="default: rank**2")
        sp.add_argument("--max-sweeps", type=int, default=200)
        sp.add_argument("--seed", type=int, default=0)

    v = sub.add_parser("verify", help="run a verification campaign over random states")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--dim-a", type=int, default=2)
    v.add_argument("--dim-b", type=int, default=2)
    v.add_argument("--rank", type=_rank, default="all")
    v.add_argument("--tol", type=float, default=TOL_INEQ)
    v.add_argument("--tasks", type=_tasks, default=("bounds", "chain", "proof-chain", "sandwich"))
    v.add_argument("--out", default=None, help="report path (summary goes to stdout either way)")
    v.add_argument("--format", choices=("csv", "json"), default="json")
    v.add_argument("--marginal", choices=("a", "b", "both"), default="a")
    v.add_argument("--threads", type=int, default=None)
    search_flags(v)

    b = sub.add_parser("bounds", help="lower/upper concurrence bounds of a state file")
    b.add_argument("file")
    b.add_argument("--marginal", choices=("a", "b", "both"), default="a")
    split_flags(b)

    c = sub.add_parser("concurrence", help="closed form for 2x2, decomposition search otherwise")
    c.add_argument("file")
    split_flags(c)
    search_flags(c)

    f = sub.add_parser("fidelity", help="fidelity and super-fidelity of two state files")
    f.add_argument("file1")
    f.add_argument("file2")

    ch = sub.add_parser("chain", help="1 >= G >= F >= overlap for two pure bipartite states")
    ch.add_argument("file1")
    ch.add_argument("file2")
    ch.add_argument("--tol", type=float, default=TOL_INEQ)
    ch.add_argument("--marginal", choices=("a", "b"), default="a")
    split_flags(ch)
    return p


def _split(args, state_split, d):
    if args.dim_a or args.dim_b:
        if not (args.dim_a and args.dim_b):
            raise ConfigError("give both --dim-a and --dim-b")
        split = BipartiteSplit(args.dim_a, args.dim_b)
    elif state_split is not None:
        split = state_split
    else:
        raise ConfigError("state file has no 'dims'; pass --dim-a and --dim-b")
    try:
        split.check(d)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return split


def _print(doc):
    print(json.dumps(doc, indent=2))


def cmd_verify(args) -> int:
    search = SearchConfig(args.ensemble_size, args.restarts, args.max_sweeps, seed=SeedSpec(args.seed))
    cfg = CampaignConfig(
        samples=args.samples, dimA=args.dim_a, dimB=args.dim_b, rank=args.rank, master_seed=args.seed,
        tol=args.tol, tasks=args.tasks, search=search, output_path=args.out, format=args.format,
        marginal=args.marginal, threads=args.threads,
    )
    report = run_campaign(cfg)
    if args.out:
        emit_report(report, args.format, args.out)
    _print(report.summary)
    return report.exit_status


def cmd_bounds(args) -> int:
    rho = load_state(args.file)
    split = _split(args, rho.split, rho.d)
    keeps = ("a", "b") if args.marginal == "both" else (args.marginal,)
    out = {"dims": [split.dimA, split.dimB]}
    status = EXIT_OK
    for k in keeps:
        lo, up = lower_bound(rho, split, k), upper_bound(rho, split, k)
        out[k] = {"lower_sq": lo, "lower_sq_clamped": max(0.0, lo), "upper_sq": up}
        if lo > up + 1e-12:
            status = EXIT_FAIL
    _print(out)
    return status


def cmd_concurrence(args) -> int:
    rho = load_state(args.file)
    split = _split(args, rho.split, rho.d)
    if (split.dimA, split.dimB) == (2, 2):
        value, method = concurrence_two_qubit(rho), "closed-form"
    else:
        cfg = SearchConfig(args.ensemble_size, args.restarts, args.max_sweeps, seed=SeedSpec(args.seed))
        _, value = minimize_average_concurrence(rho, split, cfg)
        method = "search"
    rep = sandwich_check(rho, split, value, exact=method == "closed-form")
    _print({"concurrence": value, "method": method, "lower_sq": rep.lower_sq, "upper_sq": rep.upper_sq,
            "sandwich_ok": rep.ok})
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_fidelity(args) -> int:
    r1, r2 = load_state(args.file1), load_state(args.file2)
    f, g = fidelity(r1, r2), super_fidelity(r1, r2)
    ok = f <= g + TOL_INEQ and g <= 1 + TOL_INEQ
    _print({"fidelity": f, "super_fidelity": g, "ordering_ok": ok})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_chain(args) -> int:
    (p1, s1), (p2, _) = load_pure_state(args.file1), load_pure_state(args.file2)
    split = _split(args, s1, p1.d)
    rep = chain_check(p1, p2, split, keep=args.marginal, tol=args.tol)
    _print({"g_marginal": rep.g_marginal, "f_marginal": rep.f_marginal, "f_joint": rep.f_joint,
            "link_slacks": list(rep.link_slacks), "ok": rep.ok})
    return EXIT_OK if rep.ok else EXIT_FAIL


COMMANDS = {"verify": cmd_verify, "bounds": cmd_bounds, "concurrence": cmd_concurrence,
            "fidelity": cmd_fidelity, "chain": cmd_chain}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except OSError as exc:
        print(f"entbounds: {exc}", file=sys.stderr)
        return EXIT_IO
    except (EntBoundsError, ValueError) as exc:
        print(f"entbounds: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

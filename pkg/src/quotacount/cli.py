"""Command-line pipeline: tally, solve, explain, verify, serve.

Exit codes: 0 success, 1 usage or I/O problem, 2 verification mismatch,
3 infeasible under the FAIL policy, 4 node budget exceeded. Every command
is deterministic on read-only inputs; the only randomness (receipt salts)
is injectable with --salt-seed for reproducible runs.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import dataclasses
import json
import sys
from pathlib import Path

from . import api, criteria, explain, ledger, lpformat, solver, tally as tallying
from .model import (
    ElectionError,
    InvalidConfigError,
    TiePolicy,
    RelaxationPolicy,
    canonical_json,
    read_candidates_csv,
    read_config_json,
    validate_config,
)
from .solver import (
    DEFAULT_NODE_BUDGET,
    NodeBudgetExceededError,
    SolveOutcome,
    SolveStatus,
    UnsatisfiableError,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_MISMATCH = 2
EXIT_INFEASIBLE = 3
EXIT_BUDGET = 4

TIE_CHOICES = {"report-all": TiePolicy.REPORT_ALL, "lex": TiePolicy.LEXICOGRAPHIC}
RELAX_CHOICES = {
    "free-seats-then-drop": RelaxationPolicy.FREE_SEATS_THEN_DROP,
    "fail": RelaxationPolicy.FAIL,
}


def _load_tally(path: str) -> "tallying.TallyResult":
    return tallying.tally_from_votes(tallying.read_tally_csv(path))


def cmd_criteria_tally(args) -> int:
    questions = criteria.read_questions_json(args.questions)
    ballots = criteria.read_criteria_ballots_csv(args.ballots)
    result = criteria.tally_criteria_vote(questions, ballots)
    criteria.write_result_json(args.out, result)
    for r in result.results:
        verdict = "ACCEPTED" if r.accepted else "REJECTED"
        print(
            f"{r.question.criterion.attribute}: {r.yes_pct}% yes /"
            f" {r.no_pct}% no / {r.blank_pct}% blank -> {verdict}"
        )
    print(f"participants: {result.participants}, rejected ballots: {len(result.ballots_rejected)}")
    return EXIT_OK


def cmd_tally(args) -> int:
    config = read_config_json(args.config)
    violations = validate_config(config)
    if violations:
        raise InvalidConfigError(violations)
    ballots, warnings = tallying.read_ballots_csv(args.ballots)
    result = tallying.count_votes(ballots, config)
    tallying.write_tally_csv(args.out, result)
    for bid, reason in warnings:
        print(f"warning: ballot {bid}: {reason}", file=sys.stderr)
    print(
        f"counted {result.ballots_counted} ballots"
        f" ({len(result.ballots_rejected)} rejected),"
        f" {result.total_votes_cast} votes"
    )
    return EXIT_OK


def _solve_one(config_path: str, tally_path: str, out_path: str, args) -> SolveOutcome:
    config = read_config_json(config_path)
    if args.tie_policy:
        config = dataclasses.replace(config, tie_policy=TIE_CHOICES[args.tie_policy])
    if args.relax:
        config = dataclasses.replace(
            config, relaxation_policy=RELAX_CHOICES[args.relax]
        )
    tally = _load_tally(tally_path)
    if args.emit_lp:
        lpformat.write_lp(args.emit_lp, tally.votes, config)
    outcome = solver.solve(tally, config, node_budget=args.node_budget)
    Path(out_path).write_text(canonical_json(outcome.to_dict()), encoding="utf-8")
    return outcome


def _solve_district(job: tuple[str, str, str, str | None, str | None, int]) -> tuple[str, str, int | None]:
    """Worker for --multi-district; returns (name, status, objective)."""
    name, config_path, tally_path, tie, relax, budget = job
    ns = argparse.Namespace(
        tie_policy=tie, relax=relax, emit_lp=None, node_budget=budget
    )
    outcome = _solve_one(config_path, tally_path, str(Path(config_path).parent / "outcome.json"), ns)
    return name, outcome.status, outcome.objective


def cmd_solve(args) -> int:
    if args.multi_district:
        root = Path(args.multi_district)
        jobs = []
        for sub in sorted(p for p in root.iterdir() if p.is_dir()):
            cfg = sub / "config.json"
            tly = sub / "tally.csv"
            if cfg.exists() and tly.exists():
                jobs.append(
                    (sub.name, str(cfg), str(tly), args.tie_policy, args.relax, args.node_budget)
                )
        if not jobs:
            print(f"error: no district subdirectories under {root}", file=sys.stderr)
            return EXIT_USAGE
        worst = EXIT_OK
        with concurrent.futures.ProcessPoolExecutor() as pool:
            for name, status, objective in pool.map(_solve_district, jobs):
                print(f"{name}: {status} objective={objective}")
                if status == SolveStatus.INFEASIBLE:
                    worst = max(worst, EXIT_INFEASIBLE)
        return worst

    if not (args.config and args.tally and args.out):
        print("error: solve needs --config, --tally and --out", file=sys.stderr)
        return EXIT_USAGE
    outcome = _solve_one(args.config, args.tally, args.out, args)
    if outcome.status == SolveStatus.INFEASIBLE:
        print("INFEASIBLE: no committee satisfies the adopted criteria")
        return EXIT_INFEASIBLE
    print(f"{outcome.status}: objective {outcome.objective}")
    print("committee: " + " ".join(sorted(outcome.committee)))
    if outcome.applied_relaxations:
        for rec in outcome.applied_relaxations:
            print(f"relaxed: {rec.to_dict()}")
    return EXIT_OK


def cmd_explain(args) -> int:
    config = read_config_json(args.config)
    tally = _load_tally(args.tally)
    outcome = SolveOutcome.from_dict(
        json.loads(Path(args.outcome).read_text(encoding="utf-8"))
    )
    bundle = explain.build_report_bundle(
        config, tally, outcome, node_budget=args.node_budget
    )
    document = explain.render_report(bundle, args.format)
    if args.out:
        Path(args.out).write_text(document, encoding="utf-8")
    else:
        print(document, end="")
    return EXIT_OK


def cmd_feasibility(args) -> int:
    config = read_config_json(args.config)
    pool = read_candidates_csv(args.roster)
    report = solver.check_feasibility(pool, config)
    if report.feasible:
        print("FEASIBLE: the pool can seat a valid committee")
    else:
        print("INFEASIBLE:")
        for d in report.deficits:
            where = d.attribute or "-"
            cat = f"={d.category}" if d.category else ""
            print(f"  {d.code} {where}{cat} shortfall={d.shortfall} ({d.detail})")
    return EXIT_OK


def cmd_verify(args) -> int:
    config = read_config_json(args.config)
    ballots, _ = tallying.read_ballots_csv(args.ballots)
    outcome = SolveOutcome.from_dict(
        json.loads(Path(args.outcome).read_text(encoding="utf-8"))
    )
    result = ledger.verify_count(ballots, config, outcome, node_budget=args.node_budget)
    if result.confirmed:
        print("CONFIRMED: recount reproduces the published outcome")
        return EXIT_OK
    print("MISMATCH:")
    for diff in result.diffs:
        print(f"  {diff}")
    return EXIT_MISMATCH


def cmd_receipt_issue(args) -> int:
    ballots, _ = tallying.read_ballots_csv(args.ballots)
    published, receipts = ledger.issue_receipts(ballots, salt_seed=args.salt_seed)
    tallying.write_ballots_csv(args.out_ballots, published)
    ledger.write_receipts_csv(args.out_receipts, receipts)
    print(f"issued {len(receipts)} receipts")
    return EXIT_OK


def cmd_receipt_verify(args) -> int:
    receipts = ledger.read_receipts_csv(args.receipt)
    ballots, _ = tallying.read_ballots_csv(args.ballots)
    failures = 0
    for receipt in receipts:
        ok = ledger.verify_receipt(receipt, ballots)
        print(f"{receipt.ballot_id}: {'MATCH' if ok else 'NO_MATCH'}")
        if not ok:
            failures += 1
    return EXIT_OK if failures == 0 else EXIT_MISMATCH


def cmd_serve(args) -> int:
    import uvicorn

    config = read_config_json(args.config)
    tally = _load_tally(args.tally)
    host, _, port = args.listen.rpartition(":")
    app = api.create_app(
        config,
        tally,
        whatif_node_budget=args.whatif_node_budget,
        cors_origins=tuple(args.cors_origin or ()),
    )
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quotacount",
        description="Count quota-constrained plurality-at-large elections.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("criteria-tally", help="tally the phase-1 criteria vote")
    p.add_argument("--questions", required=True)
    p.add_argument("--ballots", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_criteria_tally)

    p = sub.add_parser("tally", help="count phase-2 ballots into vote totals")
    p.add_argument("--config", required=True)
    p.add_argument("--ballots", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tally)

    p = sub.add_parser("solve", help="compute the winning committee")
    p.add_argument("--config")
    p.add_argument("--tally")
    p.add_argument("--out")
    p.add_argument("--tie-policy", choices=sorted(TIE_CHOICES))
    p.add_argument("--relax", choices=sorted(RELAX_CHOICES))
    p.add_argument("--emit-lp", metavar="FILE")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--multi-district", metavar="DIR")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("explain", help="render the result analyses")
    p.add_argument("--outcome", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--tally", required=True)
    p.add_argument(
        "--format",
        choices=(explain.FORMAT_TEXT, explain.FORMAT_JSON, explain.FORMAT_MARKDOWN),
        default=explain.FORMAT_TEXT,
    )
    p.add_argument("--out")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("feasibility", help="check a candidate pool against the criteria")
    p.add_argument("--config", required=True)
    p.add_argument("--roster", required=True)
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("verify", help="independent recount of published artifacts")
    p.add_argument("--ballots", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--outcome", required=True)
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("receipt", help="ballot receipt operations")
    rsub = p.add_subparsers(dest="receipt_command", required=True)
    pi = rsub.add_parser("issue", help="salt and digest ballots for publication")
    pi.add_argument("--ballots", required=True)
    pi.add_argument("--out-ballots", required=True)
    pi.add_argument("--out-receipts", required=True)
    pi.add_argument("--salt-seed", type=int, default=None)
    pi.set_defaults(func=cmd_receipt_issue)
    pv = rsub.add_parser("verify", help="check receipts against published ballots")
    pv.add_argument("--receipt", required=True)
    pv.add_argument("--ballots", required=True)
    pv.set_defaults(func=cmd_receipt_verify)

    p = sub.add_parser("serve", help="start the HTTP API")
    p.add_argument("--config", required=True)
    p.add_argument("--tally", required=True)
    p.add_argument("--listen", default="127.0.0.1:8080")
    p.add_argument("--whatif-node-budget", type=int, default=api.WHATIF_NODE_BUDGET)
    p.add_argument("--cors-origin", action="append")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NodeBudgetExceededError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UnsatisfiableError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ElectionError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

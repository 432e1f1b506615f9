"""Command-line interface for batch use of the auction engine.

Exit codes: 0 success, 1 domain error (machine-readable JSON on stderr),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .benchmark import run_solver
from .core import DomainError
from .forward import SolveLimits, build_model
from .lp import export_lp
from .mining import (
    dataset_to_text,
    format_money,
    mine_rules,
    parse_money,
    read_dataset,
    rules_to_text,
    write_dataset,
)
from .pricing import empirical_distribution, optimize_price
from .store import load_instance
from .synthetic import evaluate_estimator, generate_synthetic


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="roomauction",
        description="Forward-auction clearing and reverse-auction pricing",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("optimize-forward", help="clear a forward-auction instance file")
    p.add_argument("instance", help="instance JSON file")
    p.add_argument("--solver", choices=["exact", "greedy", "fcfs", "brute"], default="exact")
    p.add_argument("--objective", choices=["income", "profit"], default="income")
    p.add_argument("--time-budget", type=float, default=30.0, help="seconds (exact solver)")

    p = sub.add_parser("export-lp", help="write the instance as an LP-format model")
    p.add_argument("instance")
    p.add_argument("--objective", choices=["income", "profit"], default="income")
    p.add_argument("-o", "--output", help="output path (default stdout)")

    p = sub.add_parser("reverse-price", help="optimal offer price from accepted-price history")
    p.add_argument("history", help="price list or offer-history TSV")
    p.add_argument("--cost", required=True, help="hotelier unit cost in euros")

    p = sub.add_parser("mine-rules", help="mine price rules from an offer-history TSV")
    p.add_argument("dataset")
    p.add_argument("--support", type=float, required=True)
    p.add_argument("--confidence", type=float, required=True)
    p.add_argument("--max-antecedents", type=int, required=True)
    p.add_argument("--max-bins", type=int, default=8)
    p.add_argument("-o", "--output", help="ruleset output path (default stdout)")

    p = sub.add_parser("gen-synthetic", help="generate a synthetic offer-history TSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output", help="output path (default stdout)")

    p = sub.add_parser("evaluate", help="estimator error on a train/test split")
    p.add_argument("train")
    p.add_argument("test")
    p.add_argument("--support", type=float, default=0.15)
    p.add_argument("--confidence", type=float, default=0.9)
    p.add_argument("--max-antecedents", type=int, default=3)
    p.add_argument("--cost", default="0", help="fallback cost in euros")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--store", required=True, help="store document path")
    p.add_argument("--port", type=int, default=8080)
    p.add_argument("--host", default="127.0.0.1")
    return parser


def _read_price_history(path: str) -> list[int]:
    """Accept either one price per line or a 7-column offer-history TSV."""
    lines = [ln for ln in Path(path).read_text(encoding="utf-8").splitlines() if ln.strip()]
    if not lines:
        raise DomainError(f"{path}: empty history file")
    first = [f.strip() for f in lines[0].split("\t")]
    if any(not _is_number(f) for f in first):
        lines = lines[1:]  # header row
        if not lines:
            raise DomainError(f"{path}: no data rows")
    return [parse_money(ln.split("\t")[-1].strip()) for ln in lines]


def _is_number(text: str) -> bool:
    try:
        float(text)
        return True
    except ValueError:
        return False


def _cmd_optimize_forward(args) -> int:
    auction, bids = load_instance(args.instance)
    model = build_model(auction, bids, args.objective)
    limits = SolveLimits(time_budget=args.time_budget)
    result = run_solver(model, args.solver, limits)
    print(f"status: {result.status}")
    print(f"objective: {format_money(result.solution.objective)}")
    print(f"best_bound: {format_money(result.best_bound)}")
    print(f"nodes: {result.nodes_explored}")
    print(f"wall_time: {result.wall_time:.4f}")
    for cid, arrival in sorted(result.solution.accepted.items()):
        date = auction.horizon.date_at(arrival)
        print(f"accepted bid {cid}: check-in {date.isoformat()}")
    return 0


def _cmd_export_lp(args) -> int:
    auction, bids = load_instance(args.instance)
    text = export_lp(build_model(auction, bids, args.objective))
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_reverse_price(args) -> int:
    prices = _read_price_history(args.history)
    dist = empirical_distribution(prices)
    decision = optimize_price(dist, parse_money(args.cost))
    print(f"π* = {format_money(decision.price)}")
    print(f"E[P] = {float(decision.expected_profit) / 100:.2f}")
    print(f"P(accept) = {float(decision.acceptance_probability):.3f}")
    print(f"abstain = {'yes' if decision.abstain else 'no'}")
    return 0


def _cmd_mine_rules(args) -> int:
    dataset = read_dataset(args.dataset)
    rules = mine_rules(
        dataset, args.support, args.confidence, args.max_antecedents, args.max_bins
    )
    text = rules_to_text(rules)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote {len(rules)} rules to {args.output}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_gen_synthetic(args) -> int:
    records = generate_synthetic(args.n, args.seed)
    if args.output:
        write_dataset(args.output, records)
        print(f"wrote {len(records)} records to {args.output}")
    else:
        sys.stdout.write(dataset_to_text(records))
    return 0


def _cmd_evaluate(args) -> int:
    train = read_dataset(args.train)
    test = read_dataset(args.test)
    report = evaluate_estimator(
        train,
        test,
        args.support,
        args.confidence,
        args.max_antecedents,
        cost=parse_money(args.cost),
    )
    print(f"MAE = {report.mae / 100:.2f}")
    print(f"MAPE = {report.mape * 100:.1f}%")
    for case in report.cases:
        flag = " [conflict]" if case.conflict else ""
        print(f"  {case.render()}{flag}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(args.store)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "optimize-forward": _cmd_optimize_forward,
    "export-lp": _cmd_export_lp,
    "reverse-price": _cmd_reverse_price,
    "mine-rules": _cmd_mine_rules,
    "gen-synthetic": _cmd_gen_synthetic,
    "evaluate": _cmd_evaluate,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except DomainError as exc:
        json.dump({"error": "domain", "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1
    except OSError as exc:
        json.dump({"error": "io", "message": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

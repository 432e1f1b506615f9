"""Seeded random instances and a solver comparison harness.

The generator covers the benchmark shapes used for small-to-medium
hotels (7-45 day horizons, up to 3 room types, 10-20 bids) and the larger
stress shapes (60 days, 50-80 bids), and records how many bids exceed daily
capacity per room type as the instance-difficulty statistic. The harness
reads instance files and emits a delimiter-separated results table.
"""

from __future__ import annotations

import datetime
import random
from dataclasses import dataclass
from pathlib import Path

from .core import Bid, BidLine, DateHorizon, ForwardAuction, RoomType, feasible_arrivals
from .forward import ForwardModel, SolveLimits, bids_above_capacity, build_model
from .mining import format_money
from .solvers import brute_force, solve_exact, solve_fcfs, solve_greedy
from .store import load_instance


def random_instance(
    seed: int,
    n_bids: int,
    days: int,
    capacities: tuple[int, ...],
    max_nights: int = 7,
    price_spread: int = 4000,
    blackout_rate: float = 0.1,
) -> tuple[ForwardAuction, list[Bid]]:
    """One random-but-reproducible forward auction with valid bids.

    Every bid passes validation by construction: prices at or above the room
    type's minimum, stays inside the horizon, and at least one feasible
    arrival even when blackout days are drawn.
    """
    rng = random.Random(seed)
    horizon = DateHorizon(datetime.date(2023, 6, 1), days)
    room_types = tuple(
        RoomType(
            id=f"rt{i + 1}",
            auctioned_count=cap,
            min_price=rng.randrange(4000, 8001, 500),
            operating_cost=rng.randrange(0, 2001, 500),
        )
        for i, cap in enumerate(capacities)
    )
    auction = ForwardAuction(horizon=horizon, room_types=room_types)
    bids = []
    for cid in range(1, n_bids + 1):
        nights = rng.randint(1, max(1, min(max_nights, days)))
        slack = rng.randint(0, min(6, days - nights))
        window_lo = rng.randint(1, days - nights - slack + 1)
        window_hi = window_lo + nights + slack - 1
        n_lines = 2 if len(room_types) > 1 and rng.random() < 0.2 else 1
        chosen = rng.sample(range(len(room_types)), n_lines)
        lines = tuple(
            BidLine(
                room_type=room_types[ti].id,
                rooms_requested=rng.randint(1, max(1, min(3, room_types[ti].auctioned_count))),
                price_per_night=room_types[ti].min_price + rng.randrange(0, price_spread + 1, 100),
            )
            for ti in chosen
        )
        blackout: frozenset[int] = frozenset()
        if slack > 0 and rng.random() < blackout_rate:
            candidate = frozenset({rng.randint(window_lo, window_hi)})
            trial = Bid(
                customer_id=cid,
                lines=lines,
                window_lo=window_lo,
                window_hi=window_hi,
                nights=nights,
                blackout_days=candidate,
            )
            if feasible_arrivals(trial):
                blackout = candidate
        bids.append(
            Bid(
                customer_id=cid,
                lines=lines,
                window_lo=window_lo,
                window_hi=window_hi,
                nights=nights,
                blackout_days=blackout,
            )
        )
    return auction, bids


def micro_instance(seed: int) -> tuple[ForwardAuction, list[Bid]]:
    """Tiny high-contention instance within the brute-force enumeration cap."""
    rng = random.Random(seed)
    days = rng.randint(3, 8)
    n_types = rng.randint(1, 2)
    capacities = tuple(rng.randint(1, 2) for _ in range(n_types))
    n_bids = rng.randint(1, 6)
    return random_instance(
        seed=rng.randrange(1 << 30),
        n_bids=n_bids,
        days=days,
        capacities=capacities,
        max_nights=4,
        blackout_rate=0.3,
    )


@dataclass(frozen=True)
class BenchmarkRow:
    instance: str
    solver: str
    objective: int  # cents
    bound: int  # cents
    nodes: int
    wall_time: float


SOLVER_NAMES = ("exact", "greedy", "fcfs", "brute")


def run_solver(model: ForwardModel, solver: str, limits: SolveLimits | None = None):
    if solver == "exact":
        return solve_exact(model, limits)
    if solver == "greedy":
        return solve_greedy(model)
    if solver == "fcfs":
        return solve_fcfs(model, [b.customer_id for b in model.bids])
    if solver == "brute":
        return brute_force(model)
    raise ValueError(f"unknown solver {solver!r}")


def benchmark_model(
    model: ForwardModel,
    instance_name: str,
    solvers: tuple[str, ...] = ("exact", "greedy", "fcfs"),
    limits: SolveLimits | None = None,
) -> list[BenchmarkRow]:
    rows = []
    for solver in solvers:
        result = run_solver(model, solver, limits)
        rows.append(
            BenchmarkRow(
                instance=instance_name,
                solver=solver,
                objective=result.solution.objective,
                bound=result.best_bound,
                nodes=result.nodes_explored,
                wall_time=result.wall_time,
            )
        )
    return rows


def format_table(rows: list[BenchmarkRow], delimiter: str = "\t") -> str:
    header = delimiter.join(
        ["instance", "solver", "objective", "bound", "nodes", "wall_time"]
    )
    lines = [header]
    for row in rows:
        lines.append(
            delimiter.join(
                [
                    row.instance,
                    row.solver,
                    format_money(row.objective),
                    format_money(row.bound),
                    str(row.nodes),
                    f"{row.wall_time:.4f}",
                ]
            )
        )
    return "\n".join(lines) + "\n"


def run_benchmark(
    instance_paths: list[str | Path],
    solvers: tuple[str, ...] = ("exact", "greedy", "fcfs"),
    objective_mode: str = "income",
    limits: SolveLimits | None = None,
    delimiter: str = "\t",
) -> str:
    """Solve each instance file with each solver; emit the results table."""
    rows: list[BenchmarkRow] = []
    for path in instance_paths:
        auction, bids = load_instance(path)
        model = build_model(auction, bids, objective_mode)
        rows.extend(benchmark_model(model, Path(path).name, solvers, limits))
    return format_table(rows, delimiter)


def difficulty_statistic(model: ForwardModel) -> str:
    """Comma-joined per-type counts of bids above capacity (table reporting)."""
    stats = bids_above_capacity(model)
    return ",".join(str(stats[rt_id]) for rt_id in model.type_ids)

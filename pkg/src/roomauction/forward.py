"""Winner-determination model for forward auctions, plus the solution validator.

The model keeps only the (accept?, arrival) decisions per bid; the per-day
occupancy variables of the full integer program are implied by the contiguous
stay block and are reconstructed where needed (validator, LP export).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    Bid,
    BidViolation,
    ClearingSolution,
    DomainError,
    ForwardAuction,
    feasible_arrivals,
    validate_bid,
)

INCOME = "income"
PROFIT = "profit"


@dataclass(frozen=True)
class CompiledBid:
    """Solver-ready view of one bid: integer indices and precomputed demand."""

    bid: Bid
    coefficient: int  # objective value if accepted, cents
    nights: int
    arrivals: tuple[int, ...]
    type_demand: tuple[tuple[int, int], ...]  # (room type index, rooms)
    group_demand: tuple[tuple[int, int], ...]  # (group index, rooms)

    @property
    def customer_id(self) -> int:
        return self.bid.customer_id


@dataclass(frozen=True)
class ForwardModel:
    """Compiled winner-determination instance over a fixed bid list."""

    auction: ForwardAuction
    bids: tuple[Bid, ...]
    objective_mode: str
    compiled: tuple[CompiledBid, ...] = field(repr=False)
    type_ids: tuple[str, ...] = field(repr=False)
    group_ids: tuple[str, ...] = field(repr=False)
    type_caps: tuple[int | None, ...] = field(repr=False)
    group_caps: tuple[int, ...] = field(repr=False)

    @property
    def days(self) -> int:
        return self.auction.horizon.length

    def compiled_by_customer(self) -> dict[int, CompiledBid]:
        return {cb.customer_id: cb for cb in self.compiled}


def bid_coefficient(bid: Bid, auction: ForwardAuction, objective_mode: str) -> int:
    """Objective contribution of accepting ``bid``, in cents.

    Income mode sums rooms x price x nights per line; profit mode nets out the
    room type's per-night operating cost.
    """
    total = 0
    for line in bid.lines:
        per_night = line.price_per_night
        if objective_mode == PROFIT:
            per_night -= auction.room_type(line.room_type).operating_cost
        total += line.rooms_requested * per_night * bid.nights
    return total


def build_model(
    auction: ForwardAuction, bids: list[Bid], objective_mode: str = INCOME
) -> ForwardModel:
    """Compile an auction and validated bids into a solver-ready model.

    Raises DomainError listing every offending bid if any fails validate_bid.
    """
    if objective_mode not in (INCOME, PROFIT):
        raise DomainError(f"bad objective_mode {objective_mode!r}")
    offenders = []
    for bid in bids:
        report = validate_bid(bid, auction)
        if report:
            offenders.append(f"bid {bid.customer_id}: " + "; ".join(v.message for v in report))
    if offenders:
        raise DomainError("invalid bids: " + " | ".join(offenders))
    ids = [b.customer_id for b in bids]
    if len(set(ids)) != len(ids):
        raise DomainError("duplicate customer ids in bid list")

    type_ids = tuple(rt.id for rt in auction.room_types)
    type_index = {rt_id: i for i, rt_id in enumerate(type_ids)}
    group_ids = tuple(g.id for g in auction.groups)
    group_index = {g_id: i for i, g_id in enumerate(group_ids)}
    compiled = []
    for bid in bids:
        per_group: dict[int, int] = {}
        per_type = []
        for line in bid.lines:
            ti = type_index[line.room_type]
            per_type.append((ti, line.rooms_requested))
            gi = group_index[auction.group_of(line.room_type)]
            per_group[gi] = per_group.get(gi, 0) + line.rooms_requested
        compiled.append(
            CompiledBid(
                bid=bid,
                coefficient=bid_coefficient(bid, auction, objective_mode),
                nights=bid.nights,
                arrivals=tuple(feasible_arrivals(bid)),
                type_demand=tuple(per_type),
                group_demand=tuple(sorted(per_group.items())),
            )
        )
    return ForwardModel(
        auction=auction,
        bids=tuple(bids),
        objective_mode=objective_mode,
        compiled=tuple(compiled),
        type_ids=type_ids,
        group_ids=group_ids,
        type_caps=tuple(rt.auctioned_count for rt in auction.room_types),
        group_caps=tuple(g.capacity for g in auction.groups),
    )


@dataclass(frozen=True)
class SolveLimits:
    """Budgets for the exact solver; heuristics ignore them."""

    time_budget: float = 30.0  # seconds
    node_budget: int | None = None
    gap_tolerance: float = 0.0

    def __post_init__(self):
        if self.time_budget <= 0:
            raise DomainError("time_budget must be > 0")
        if self.gap_tolerance < 0:
            raise DomainError("gap_tolerance must be >= 0")


OPTIMAL = "optimal"
FEASIBLE_WITH_GAP = "feasible-with-gap"
INFEASIBLE_INPUT = "infeasible-input"


@dataclass(frozen=True)
class SolveResult:
    """Solver outcome: best solution found plus a valid upper bound on the optimum."""

    solution: ClearingSolution
    status: str
    nodes_explored: int
    wall_time: float
    best_bound: int  # cents

    def gap(self) -> float:
        """Relative gap between best_bound and the solution objective."""
        denom = max(1, abs(self.solution.objective))
        return (self.best_bound - self.solution.objective) / denom


def classify_status(objective: int, best_bound: int, gap_tolerance: float) -> str:
    if best_bound - objective <= gap_tolerance * max(1, abs(objective)):
        return OPTIMAL
    return FEASIBLE_WITH_GAP


class _Occupancy:
    """Mutable per-day usage counters against type and group capacities."""

    def __init__(self, model: ForwardModel):
        self.days = model.days
        self.type_caps = model.type_caps
        self.group_caps = model.group_caps
        self.type_used = [[0] * (self.days + 2) for _ in model.type_ids]
        self.group_used = [[0] * (self.days + 2) for _ in model.group_ids]

    def fits(self, cb: CompiledBid, arrival: int) -> bool:
        end = arrival + cb.nights
        for ti, n in cb.type_demand:
            cap = self.type_caps[ti]
            if cap is None:
                continue
            used = self.type_used[ti]
            for d in range(arrival, end):
                if used[d] + n > cap:
                    return False
        for gi, n in cb.group_demand:
            cap = self.group_caps[gi]
            used = self.group_used[gi]
            for d in range(arrival, end):
                if used[d] + n > cap:
                    return False
        return True

    def place(self, cb: CompiledBid, arrival: int) -> None:
        end = arrival + cb.nights
        for ti, n in cb.type_demand:
            used = self.type_used[ti]
            for d in range(arrival, end):
                used[d] += n
        for gi, n in cb.group_demand:
            used = self.group_used[gi]
            for d in range(arrival, end):
                used[d] += n

    def remove(self, cb: CompiledBid, arrival: int) -> None:
        end = arrival + cb.nights
        for ti, n in cb.type_demand:
            used = self.type_used[ti]
            for d in range(arrival, end):
                used[d] -= n
        for gi, n in cb.group_demand:
            used = self.group_used[gi]
            for d in range(arrival, end):
                used[d] -= n


def validate_solution(model: ForwardModel, solution: ClearingSolution) -> list[BidViolation]:
    """Independently re-check a clearing solution against every model constraint.

    Reconstructs the implied stay blocks from (accepted, arrival) pairs and
    verifies window bounds, blackout avoidance, per-type and per-group daily
    capacity, and the recomputed objective. Empty list means valid.
    """
    report: list[BidViolation] = []
    by_customer = model.compiled_by_customer()
    days = model.days
    type_usage = {ti: [0] * (days + 2) for ti in range(len(model.type_ids))}
    group_usage = {gi: [0] * (days + 2) for gi in range(len(model.group_ids))}
    objective = 0
    for cid, arrival in sorted(solution.accepted.items()):
        cb = by_customer.get(cid)
        if cb is None:
            report.append(
                BidViolation("unknown-customer", f"accepted customer {cid} has no bid")
            )
            continue
        bid = cb.bid
        objective += cb.coefficient
        if not (bid.window_lo <= arrival <= bid.latest_arrival):
            report.append(
                BidViolation(
                    "window",
                    f"bid {cid}: arrival {arrival} outside "
                    f"[{bid.window_lo}, {bid.latest_arrival}]",
                )
            )
            continue
        stay = range(arrival, arrival + bid.nights)
        hit = sorted(set(stay) & bid.blackout_days)
        if hit:
            report.append(
                BidViolation("blackout", f"bid {cid}: stay covers blackout days {hit}")
            )
            continue
        for ti, n in cb.type_demand:
            for d in stay:
                type_usage[ti][d] += n
        for gi, n in cb.group_demand:
            for d in stay:
                group_usage[gi][d] += n
    for ti, used in type_usage.items():
        cap = model.type_caps[ti]
        if cap is None:
            continue
        for d in range(1, days + 1):
            if used[d] > cap:
                report.append(
                    BidViolation(
                        "capacity",
                        f"room type {model.type_ids[ti]}, day {d}: "
                        f"{used[d]} rooms exceed cap {cap}",
                    )
                )
    for gi, used in group_usage.items():
        cap = model.group_caps[gi]
        for d in range(1, days + 1):
            if used[d] > cap:
                report.append(
                    BidViolation(
                        "group-capacity",
                        f"group {model.group_ids[gi]}, day {d}: "
                        f"{used[d]} rooms exceed cap {cap}",
                    )
                )
    if solution.objective_mode != model.objective_mode:
        report.append(
            BidViolation(
                "objective-mode",
                f"solution mode {solution.objective_mode} != model {model.objective_mode}",
            )
        )
    elif objective != solution.objective:
        report.append(
            BidViolation(
                "objective",
                f"recomputed objective {objective} != stated {solution.objective}",
            )
        )
    return report


def additive_bound(compiled: tuple[CompiledBid, ...]) -> int:
    """Upper bound on any objective: sum of positive bid coefficients."""
    return sum(cb.coefficient for cb in compiled if cb.coefficient > 0)


def bids_above_capacity(model: ForwardModel) -> dict[str, int]:
    """Per room type, how many bids exceed its daily capacity in aggregate.

    Counts bids requesting a type on days where total requested rooms (if all
    bids were accepted at every window day) exceed the cap; the benchmark
    harness records it as an instance-difficulty statistic.
    """
    out = {}
    for ti, rt_id in enumerate(model.type_ids):
        cap = model.type_caps[ti]
        if cap is None:
            cap = model.group_caps[
                model.group_ids.index(model.auction.group_of(rt_id))
            ]
        demand = [0] * (model.days + 2)
        demanders: list[tuple[int, range]] = []
        for cb in model.compiled:
            for t, n in cb.type_demand:
                if t == ti:
                    window = range(cb.bid.window_lo, cb.bid.window_hi + 1)
                    demanders.append((n, window))
                    for d in window:
                        demand[d] += n
        over_days = {d for d in range(1, model.days + 1) if demand[d] > cap}
        count = sum(1 for _, window in demanders if over_days & set(window))
        out[rt_id] = count
    return out



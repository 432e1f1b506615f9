"""Solvers for the forward-auction winner-determination model.

``solve_exact`` is a depth-first branch-and-bound over (accept, arrival)
decisions; ``solve_greedy`` and ``solve_fcfs`` are the first-fit placement
heuristics; ``brute_force`` is a deliberately independent exhaustive
enumerator used as a testing oracle. All solvers are pure functions of their
inputs and deterministic.
"""

from __future__ import annotations

import time

from .core import Bid, ClearingSolution, DomainError, feasible_arrivals
from .forward import (
    CompiledBid,
    ForwardModel,
    SolveLimits,
    SolveResult,
    _Occupancy,
    additive_bound,
    classify_status,
)

DEFAULT_ENUMERATION_CAP = 10_000_000


def _result(
    model: ForwardModel,
    accepted: dict[int, int],
    objective: int,
    best_bound: int,
    nodes: int,
    started: float,
    gap_tolerance: float = 0.0,
) -> SolveResult:
    solution = ClearingSolution(
        accepted=accepted, objective=objective, objective_mode=model.objective_mode
    )
    return SolveResult(
        solution=solution,
        status=classify_status(objective, best_bound, gap_tolerance),
        nodes_explored=nodes,
        wall_time=time.perf_counter() - started,
        best_bound=best_bound,
    )


def _place_first_fit(occ: _Occupancy, cb: CompiledBid) -> int | None:
    """Earliest feasible arrival for ``cb`` given current occupancy, else None."""
    for arrival in cb.arrivals:
        if occ.fits(cb, arrival):
            return arrival
    return None


def _per_night_value(cb: CompiledBid) -> int:
    return sum(line.rooms_requested * line.price_per_night for line in cb.bid.lines)


def _room_nights(cb: CompiledBid) -> int:
    return cb.nights * sum(line.rooms_requested for line in cb.bid.lines)


def _run_placement(model: ForwardModel, order: list[CompiledBid], started: float) -> SolveResult:
    occ = _Occupancy(model)
    accepted: dict[int, int] = {}
    objective = 0
    for cb in order:
        arrival = _place_first_fit(occ, cb)
        if arrival is not None:
            occ.place(cb, arrival)
            accepted[cb.customer_id] = arrival
            objective += cb.coefficient
    return _result(
        model,
        accepted,
        objective,
        best_bound=additive_bound(model.compiled),
        nodes=len(order),
        started=started,
    )


def solve_greedy(model: ForwardModel) -> SolveResult:
    """First-fit placement in descending per-night value order.

    Secondary key: total requested room-nights, descending; final tie-break by
    ascending customer id. Each bid is placed at its earliest feasible arrival
    or rejected outright.
    """
    started = time.perf_counter()
    order = sorted(
        model.compiled,
        key=lambda cb: (-_per_night_value(cb), -_room_nights(cb), cb.customer_id),
    )
    return _run_placement(model, order, started)


def solve_fcfs(model: ForwardModel, arrival_order: list[int]) -> SolveResult:
    """First-fit placement in bid-submission order (the traditional protocol)."""
    started = time.perf_counter()
    by_customer = model.compiled_by_customer()
    if sorted(arrival_order) != sorted(by_customer):
        raise DomainError("arrival_order is not a permutation of bidding customers")
    order = [by_customer[cid] for cid in arrival_order]
    return _run_placement(model, order, started)


class _BranchAndBound:
    """DFS branch-and-bound state; bids ordered by descending coefficient."""

    TIME_CHECK_MASK = 0xFF

    def __init__(self, model: ForwardModel, limits: SolveLimits):
        self.model = model
        self.limits = limits
        self.occ = _Occupancy(model)
        active = [cb for cb in model.compiled if cb.coefficient >= 0]
        self.rejected_negative = len(active) < len(model.compiled)
        active.sort(key=lambda cb: (-cb.coefficient, cb.customer_id))
        self.order = active
        n = len(active)
        self.suffix = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            self.suffix[i] = self.suffix[i + 1] + active[i].coefficient
        self.best_value = -1
        self.best_accepted: dict[int, int] = {}
        self.current: dict[int, int] = {}
        self.nodes = 0
        self.aborted = False
        self.open_bound = 0
        self.deadline = time.perf_counter() + limits.time_budget

    def _budget_exceeded(self) -> bool:
        if self.aborted:
            return True
        if self.limits.node_budget is not None and self.nodes >= self.limits.node_budget:
            self.aborted = True
        elif (self.nodes & self.TIME_CHECK_MASK) == 0 and time.perf_counter() > self.deadline:
            self.aborted = True
        return self.aborted

    def _placeable_bound(self, idx: int, value: int) -> int:
        """Additive bound restricted to unbranched bids that still fit somewhere.

        A bid with no feasible arrival under the current occupancy cannot join
        any completion of this node, so its coefficient never materializes.
        """
        occ = self.occ
        total = value
        for j in range(idx, len(self.order)):
            cb = self.order[j]
            for arrival in cb.arrivals:
                if occ.fits(cb, arrival):
                    total += cb.coefficient
                    break
        return total

    def search(self, idx: int, value: int) -> None:
        self.nodes += 1
        if value > self.best_value:
            self.best_value = value
            self.best_accepted = dict(self.current)
        if idx == len(self.order):
            return
        bound = value + self.suffix[idx]
        if bound <= self.best_value:
            return
        bound = self._placeable_bound(idx, value)
        if bound <= self.best_value:
            return
        if self._budget_exceeded():
            self.open_bound = max(self.open_bound, bound)
            return
        cb = self.order[idx]
        for arrival in cb.arrivals:
            if self.occ.fits(cb, arrival):
                self.occ.place(cb, arrival)
                self.current[cb.customer_id] = arrival
                self.search(idx + 1, value + cb.coefficient)
                del self.current[cb.customer_id]
                self.occ.remove(cb, arrival)
                if self.aborted:
                    self.open_bound = max(self.open_bound, bound)
                    return
        self.search(idx + 1, value)
        if self.aborted:
            self.open_bound = max(self.open_bound, bound)

    def run(self) -> tuple[dict[int, int], int, int, int]:
        self.search(0, 0)
        best_bound = self.best_value
        if self.aborted:
            best_bound = max(self.best_value, self.open_bound)
        return self.best_accepted, self.best_value, best_bound, self.nodes


def solve_exact(model: ForwardModel, limits: SolveLimits | None = None) -> SolveResult:
    """Optimal winner determination by branch-and-bound.

    Branches over bids in descending objective-coefficient order; each bid
    either takes one of its feasible arrivals (earliest first) or is rejected.
    Subtrees are pruned on residual capacity and on the additive bound
    (accumulated value plus the coefficients of all unbranched bids). Bids
    with negative profit coefficients are pre-rejected; they can only lower
    the objective while consuming capacity.

    Within the time and node budgets the result is proven optimal; otherwise
    the best incumbent is returned with a valid upper bound.
    """
    started = time.perf_counter()
    limits = limits or SolveLimits()
    bnb = _BranchAndBound(model, limits)
    accepted, value, best_bound, nodes = bnb.run()
    return _result(
        model,
        accepted,
        value,
        best_bound=best_bound,
        nodes=nodes,
        started=started,
        gap_tolerance=limits.gap_tolerance,
    )


def brute_force(
    model: ForwardModel, enumeration_cap: int = DEFAULT_ENUMERATION_CAP
) -> SolveResult:
    """Exhaustive enumeration over all (accept, arrival) assignments.

    Testing oracle: kept independent of the branch-and-bound machinery, with
    its own bookkeeping built directly from the bids. Refuses instances whose
    assignment-space product exceeds ``enumeration_cap``.
    """
    started = time.perf_counter()
    auction = model.auction
    bids = sorted(model.bids, key=lambda b: b.customer_id)
    space = 1
    options: list[tuple[Bid, list[int]]] = []
    for bid in bids:
        arrivals = feasible_arrivals(bid)
        space *= 1 + len(arrivals)
        if space > enumeration_cap:
            raise DomainError(
                f"assignment space exceeds enumeration cap {enumeration_cap}; "
                "use solve_exact instead"
            )
        options.append((bid, arrivals))

    type_cap = {rt.id: rt.auctioned_count for rt in auction.room_types}
    group_cap = {g.id: g.capacity for g in auction.groups}
    type_used: dict[tuple[str, int], int] = {}
    group_used: dict[tuple[str, int], int] = {}
    coeff = {
        bid.customer_id: sum(
            line.rooms_requested
            * (
                line.price_per_night
                - (
                    auction.room_type(line.room_type).operating_cost
                    if model.objective_mode == "profit"
                    else 0
                )
            )
            * bid.nights
            for line in bid.lines
        )
        for bid in bids
    }

    best = {"value": 0, "accepted": {}, "count": 0}

    def stay_fits(bid: Bid, arrival: int) -> bool:
        for line in bid.lines:
            cap = type_cap[line.room_type]
            group = auction.group_of(line.room_type)
            for d in range(arrival, arrival + bid.nights):
                if cap is not None and type_used.get((line.room_type, d), 0) + line.rooms_requested > cap:
                    return False
                if group_used.get((group, d), 0) + line.rooms_requested > group_cap[group]:
                    return False
        return True

    def apply(bid: Bid, arrival: int, sign: int) -> None:
        for line in bid.lines:
            group = auction.group_of(line.room_type)
            for d in range(arrival, arrival + bid.nights):
                type_used[(line.room_type, d)] = (
                    type_used.get((line.room_type, d), 0) + sign * line.rooms_requested
                )
                group_used[(group, d)] = (
                    group_used.get((group, d), 0) + sign * line.rooms_requested
                )

    accepted: dict[int, int] = {}

    def enumerate_from(i: int, value: int) -> None:
        best["count"] += 1
        if i == len(options):
            if value > best["value"]:
                best["value"] = value
                best["accepted"] = dict(accepted)
            return
        bid, arrivals = options[i]
        enumerate_from(i + 1, value)
        for arrival in arrivals:
            if stay_fits(bid, arrival):
                apply(bid, arrival, +1)
                accepted[bid.customer_id] = arrival
                enumerate_from(i + 1, value + coeff[bid.customer_id])
                del accepted[bid.customer_id]
                apply(bid, arrival, -1)

    enumerate_from(0, 0)
    return SolveResult(
        solution=ClearingSolution(
            accepted=best["accepted"],
            objective=best["value"],
            objective_mode=model.objective_mode,
        ),
        status="optimal",
        nodes_explored=best["count"],
        wall_time=time.perf_counter() - started,
        best_bound=best["value"],
    )

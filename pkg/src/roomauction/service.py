"""HTTP service: the forward-auction clearing endpoint plus reverse-auction
estimation endpoints for the decision console.

GET /api/optimize_auction/{id} keeps its legacy interface exactly, including
the literal response keys ("bidid", "arrival-date (YYYY-mm-dd)"), the
non-zero-padded dates, and being a GET with a side effect (it persists the
solve result). Everything else uses conventional REST shapes and zero-padded
ISO dates.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .core import DomainError
from .forward import OPTIMAL, SolveLimits, build_model
from .mining import (
    RuleConflictError,
    estimate_price,
    filter_feasible,
    mine_rules,
    select_offer,
)
from .pricing import empirical_distribution, expected_profit, profit_curve
from .solvers import solve_exact
from .store import (
    StoredAuction,
    auction_to_doc,
    bid_to_doc,
    load,
    result_to_doc,
    save,
)

DEFAULT_MINING = {"s": 0.15, "c": 0.9, "n_a": 3}


def _unpadded(date) -> str:
    return f"{date.year}-{date.month}-{date.day}"


def _error(status: int, kind: str, message: str, **extra) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": kind, "message": message, **extra})


def create_app(
    store_path: str | Path,
    limits: SolveLimits | None = None,
    mining_params: dict | None = None,
) -> FastAPI:
    """Build the service around the store document at ``store_path``."""
    app = FastAPI(title="roomauction")
    state = {
        "path": Path(store_path),
        "root": load(store_path),
        "limits": limits or SolveLimits(),
        "mining": {**DEFAULT_MINING, **(mining_params or {})},
        "rules": None,
        "write_lock": threading.Lock(),
        "auction_locks": {},
    }
    app.state.roomauction = state

    def auction_lock(auction_id: int) -> threading.Lock:
        with state["write_lock"]:
            return state["auction_locks"].setdefault(auction_id, threading.Lock())

    def mined_rules():
        if state["rules"] is None:
            history = state["root"].reverse_history
            if history:
                params = state["mining"]
                state["rules"] = mine_rules(
                    list(history), params["s"], params["c"], params["n_a"]
                )
            else:
                state["rules"] = []
        return state["rules"]

    def optimize(auction_id: int):
        root = state["root"]
        stored = root.forward_auctions.get(auction_id)
        if stored is None:
            return _error(404, "not-found", f"no forward auction with id {auction_id}")
        with auction_lock(auction_id):
            model = build_model(stored.auction, list(stored.bids), "income")
            result = solve_exact(model, state["limits"])
            if result.status != OPTIMAL and not result.solution.accepted:
                return _error(
                    503,
                    "timeout",
                    "no proven solution within the solve budget",
                    best_bound_cents=result.best_bound,
                    objective_cents=result.solution.objective,
                )
            root.forward_auctions[auction_id] = StoredAuction(
                auction=stored.auction, bids=stored.bids, latest_result=result
            )
            with state["write_lock"]:
                save(root, state["path"])
        horizon = stored.auction.horizon
        body = [
            {
                "bidid": cid,
                "arrival-date (YYYY-mm-dd)": _unpadded(horizon.date_at(arrival)),
            }
            for cid, arrival in sorted(result.solution.accepted.items())
        ]
        return JSONResponse(content=body)

    @app.get("/api/optimize_auction/{auction_id}")
    def optimize_auction(auction_id: int):
        return optimize(auction_id)

    @app.post("/api/auctions/{auction_id}/optimize")
    def optimize_auction_alias(auction_id: int):
        return optimize(auction_id)

    @app.get("/api/auctions/{auction_id}")
    def read_auction(auction_id: int):
        stored = state["root"].forward_auctions.get(auction_id)
        if stored is None:
            return _error(404, "not-found", f"no forward auction with id {auction_id}")
        horizon = stored.auction.horizon
        return {
            "id": auction_id,
            "auction": auction_to_doc(stored.auction),
            "bids": [bid_to_doc(b) for b in stored.bids],
            "latest_result": (
                None if stored.latest_result is None else result_to_doc(stored.latest_result)
            ),
            "dates": [horizon.date_at(i).isoformat() for i in range(1, horizon.length + 1)],
        }

    @app.get("/api/reverse/profit_curve")
    def reverse_profit_curve(cost: int):
        history = state["root"].reverse_history
        if not history:
            return _error(404, "no-history", "store has no reverse-auction history")
        if cost < 0:
            return _error(422, "bad-request", "cost must be >= 0 cents")
        dist = empirical_distribution([r.accepted_price for r in history])
        return [
            {
                "price_cents": price,
                "expected_profit_cents": float(profit),
                "acceptance_probability": float(prob),
            }
            for price, profit, prob in profit_curve(dist, cost)
        ]

    @app.post("/api/reverse/estimate")
    def reverse_estimate(body: dict):
        root = state["root"]
        profile_id = body.get("profile_id")
        if profile_id not in root.hotel_profiles:
            return _error(404, "not-found", f"no hotel profile {profile_id!r}")
        profile = root.hotel_profiles[profile_id]
        cost = body.get("cost_cents")
        if not isinstance(cost, int) or cost < 0:
            return _error(422, "bad-request", "cost_cents must be a non-negative integer")
        request = {k: v for k, v in (body.get("request") or {}).items() if v is not None}
        if not root.reverse_history:
            return _error(404, "no-history", "store has no reverse-auction history")
        dist = empirical_distribution([r.accepted_price for r in root.reverse_history])
        rules = filter_feasible(mined_rules(), profile)
        try:
            estimate = estimate_price(rules, request, dist, cost)
        except RuleConflictError as exc:
            return _error(
                409,
                "rule-conflict",
                str(exc),
                lower_rules=[r.render() for r in exc.lower_rules],
                upper_rules=[r.render() for r in exc.upper_rules],
            )
        except DomainError as exc:
            return _error(422, "bad-request", str(exc))
        offer = select_offer(list(estimate.applicable), estimate.price, profile)
        profit = expected_profit(dist, cost, estimate.price)
        return {
            "price_cents": estimate.price,
            "expected_profit_cents": float(profit),
            "acceptance_probability": float(dist.survival(estimate.price)),
            "abstain": profit <= 0,
            "used_fallback": estimate.used_fallback,
            "amenities": offer.amenities,
            "amenities_defaulted": offer.defaulted,
            "applicable_rules": [r.render() for r in estimate.applicable],
        }

    return app

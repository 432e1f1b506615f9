"""Auction clearing and pricing engine for hotel-room markets.

Forward auctions: exact, greedy, and FCFS winner determination over flexible
arrival windows under room-type and real-room capacity. Reverse auctions:
expected-profit-optimal offer prices from empirical accepted-price
distributions, and rule-mined price estimation when history only partially
matches the request.
"""

from .core import (
    Bid,
    BidLine,
    BidViolation,
    ClearingSolution,
    DateHorizon,
    DomainError,
    ForwardAuction,
    RealRoomGroup,
    RoomType,
    date_index,
    feasible_arrivals,
    validate_bid,
)
from .forward import (
    ForwardModel,
    SolveLimits,
    SolveResult,
    build_model,
    validate_solution,
)
from .lp import export_lp
from .mining import (
    Condition,
    HotelProfile,
    OfferRecord,
    PriceEstimate,
    PriceRule,
    RuleConflictError,
    estimate_price,
    filter_feasible,
    mine_rules,
    select_offer,
)
from .pricing import (
    AcceptedPriceDistribution,
    PricingDecision,
    empirical_distribution,
    expected_profit,
    optimize_price,
    profit_curve,
)
from .solvers import brute_force, solve_exact, solve_fcfs, solve_greedy
from .store import StoreRoot, StoredAuction, load, save
from .synthetic import evaluate_estimator, generate_synthetic

__version__ = "0.1.0"

__all__ = [
    "AcceptedPriceDistribution",
    "Bid",
    "BidLine",
    "BidViolation",
    "ClearingSolution",
    "Condition",
    "DateHorizon",
    "DomainError",
    "ForwardAuction",
    "ForwardModel",
    "HotelProfile",
    "OfferRecord",
    "PriceEstimate",
    "PriceRule",
    "PricingDecision",
    "RealRoomGroup",
    "RoomType",
    "RuleConflictError",
    "SolveLimits",
    "SolveResult",
    "StoreRoot",
    "StoredAuction",
    "brute_force",
    "build_model",
    "date_index",
    "empirical_distribution",
    "estimate_price",
    "evaluate_estimator",
    "expected_profit",
    "export_lp",
    "feasible_arrivals",
    "filter_feasible",
    "generate_synthetic",
    "load",
    "mine_rules",
    "optimize_price",
    "profit_curve",
    "save",
    "select_offer",
    "solve_exact",
    "solve_fcfs",
    "solve_greedy",
    "validate_bid",
    "validate_solution",
]

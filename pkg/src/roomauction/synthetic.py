"""Synthetic reverse-auction history and estimator evaluation.

Generated prices follow a deterministic score that rises with season, rating,
beds, breakfast class and nearby sites, peaks at a mid-range distance to the
sea (hump shape), and carries bounded noise so that offers for identical
requests can never differ by more than 30 euros per night. Everything is
reproducible from the seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from statistics import fmean

from .core import DomainError
from .mining import (
    HotelProfile,
    OfferRecord,
    PriceRule,
    RuleConflictError,
    estimate_price,
    filter_feasible,
    mine_rules,
)
from .pricing import empirical_distribution, optimize_price

NOISE_HALF_RANGE = 1500  # cents; keeps same-attribute price spread within 30 euros
PRICE_FLOOR = 1000
PRICE_CEIL = 25000


def base_price(
    period_visiting: int,
    hotel_rating: float,
    distance_to_sea: float,
    beds_requested: int,
    breakfast_type: int,
    sites_within_10km: int,
) -> int:
    """Noise-free score in cents: monotone in every attribute except distance."""
    hump = 3000 - round((distance_to_sea - 4000) ** 2 * 3000 / 36_000_000)
    return round(
        2000
        + 1200 * period_visiting
        + 1000 * hotel_rating
        + 1800 * (beds_requested - 1)
        + 800 * breakfast_type
        + 400 * sites_within_10km
        + hump
    )


def priced_record(attrs: dict, noise: int) -> OfferRecord:
    """Record for ``attrs`` with an explicit noise draw (cents), clamped."""
    if abs(noise) > NOISE_HALF_RANGE:
        raise DomainError(f"noise {noise} outside ±{NOISE_HALF_RANGE}")
    price = base_price(**attrs) + noise
    price = min(max(price, PRICE_FLOOR), PRICE_CEIL)
    return OfferRecord(accepted_price=price, **attrs)


def random_attributes(rng: random.Random) -> dict:
    return {
        "period_visiting": rng.randint(1, 3),
        "hotel_rating": rng.randint(1, 5),
        "distance_to_sea": rng.randint(0, 10000),
        "beds_requested": rng.randint(1, 3),
        "breakfast_type": rng.randint(0, 2),
        "sites_within_10km": rng.randint(0, 10),
    }


def generate_synthetic(n: int, seed: int) -> list[OfferRecord]:
    """``n`` accepted-offer records, reproducible byte-for-byte from ``seed``."""
    if n < 1:
        raise DomainError("n must be >= 1")
    rng = random.Random(seed)
    records = []
    for _ in range(n):
        attrs = random_attributes(rng)
        noise = rng.randint(-NOISE_HALF_RANGE, NOISE_HALF_RANGE)
        records.append(priced_record(attrs, noise))
    return records


@dataclass(frozen=True)
class EvalCase:
    """One evaluated request: the estimate with its ground truth."""

    request: dict
    estimated: int  # cents
    truth: int  # cents
    conflict: bool

    def render(self) -> str:
        return f"{self.estimated / 100:g}({self.truth / 100:g})"


@dataclass(frozen=True)
class EvaluationReport:
    mae: float  # cents
    mape: float  # fraction
    cases: tuple[EvalCase, ...]


def evaluate_estimator(
    train: list[OfferRecord],
    test: list[OfferRecord],
    s,
    c,
    n_a: int,
    profile: HotelProfile | None = None,
    cost: int = 0,
) -> EvaluationReport:
    """Mine on ``train``, estimate each test record's price, report MAE and MAPE.

    ``profile`` optionally filters the mined rules for hotelier feasibility
    before estimation. Rule-interval conflicts resolve to the midpoint of the
    conflicting bounds and are flagged on the case row.
    """
    if not train or not test:
        raise DomainError("train and test must both be non-empty")
    rules: list[PriceRule] = mine_rules(train, s, c, n_a)
    if profile is not None:
        rules = filter_feasible(rules, profile)
    fallback = empirical_distribution([r.accepted_price for r in train])
    cases = []
    for rec in test:
        request = rec.as_request()
        conflict = False
        try:
            estimated = estimate_price(rules, request, fallback, cost).price
        except RuleConflictError as exc:
            lo = max(r.bound for r in exc.lower_rules)
            hi = min(r.bound for r in exc.upper_rules)
            estimated = (lo + hi) // 2
            conflict = True
        cases.append(
            EvalCase(
                request=request,
                estimated=estimated,
                truth=rec.accepted_price,
                conflict=conflict,
            )
        )
    mae = fmean(abs(case.estimated - case.truth) for case in cases)
    mape = fmean(abs(case.estimated - case.truth) / case.truth for case in cases)
    return EvaluationReport(mae=mae, mape=mape, cases=tuple(cases))


def fallback_only_mae(train: list[OfferRecord], test: list[OfferRecord], cost: int = 0) -> float:
    """Baseline MAE (cents): one global distribution-optimal price for all requests."""
    price = optimize_price(
        empirical_distribution([r.accepted_price for r in train]), cost
    ).price
    return fmean(abs(price - rec.accepted_price) for rec in test)

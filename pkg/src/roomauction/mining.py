"""Quantitative association rules over historical accepted offers.

Rules have interval or category antecedents over the six request attributes
and a price-bound consequent (p >= v or p <= v), qualified by support and
confidence. Numeric antecedent intervals come from an equal-frequency bin
lattice computed on the training data, so a brute-force enumerator can cover
the identical candidate space. Record sets are kept as integer bitmasks;
support pruning makes the antecedent search tractable at dataset sizes far
beyond the ~100-record target scale.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .core import DomainError

ATTRIBUTES = (
    "period_visiting",
    "hotel_rating",
    "distance_to_sea",
    "beds_requested",
    "breakfast_type",
    "sites_within_10km",
)
CATEGORICAL = frozenset({"period_visiting", "breakfast_type"})
ATTRIBUTE_DOMAINS = {
    "period_visiting": (1, 3),
    "hotel_rating": (1, 5),
    "distance_to_sea": (0, 10000),
    "beds_requested": (1, 3),
    "breakfast_type": (0, 2),
    "sites_within_10km": (0, 10),
}
PRICE_RANGE = (1000, 25000)  # cents per night
DEFAULT_MAX_BINS = 8

GE = ">="
LE = "<="


@dataclass(frozen=True)
class OfferRecord:
    """One historical accepted reverse-auction offer."""

    period_visiting: int
    hotel_rating: float
    distance_to_sea: float
    beds_requested: int
    breakfast_type: int
    sites_within_10km: int
    accepted_price: int  # cents per night

    def __post_init__(self):
        for name in ATTRIBUTES:
            lo, hi = ATTRIBUTE_DOMAINS[name]
            value = getattr(self, name)
            if not lo <= value <= hi:
                raise DomainError(f"{name}={value} outside [{lo}, {hi}]")
        if self.period_visiting not in (1, 2, 3):
            raise DomainError(f"period_visiting={self.period_visiting} not in 1..3")
        if self.breakfast_type not in (0, 1, 2):
            raise DomainError(f"breakfast_type={self.breakfast_type} not in 0..2")
        if not PRICE_RANGE[0] <= self.accepted_price <= PRICE_RANGE[1]:
            raise DomainError(
                f"accepted_price={self.accepted_price} outside {PRICE_RANGE}"
            )

    def attribute(self, name: str):
        return getattr(self, name)

    def as_request(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in ATTRIBUTES}


@dataclass(frozen=True)
class Condition:
    """One antecedent: category equality or a closed numeric interval."""

    attribute: str
    category: int | None = None
    lo: float | None = None
    hi: float | None = None

    def __post_init__(self):
        if self.attribute not in ATTRIBUTES:
            raise DomainError(f"unknown attribute {self.attribute}")
        if (self.category is None) == (self.lo is None or self.hi is None):
            raise DomainError("condition needs a category or an interval")

    def matches(self, value) -> bool:
        if self.category is not None:
            return value == self.category
        return self.lo <= value <= self.hi

    def render(self) -> str:
        if self.category is not None:
            return f"{self.attribute} = {self.category}"
        return f"{self.attribute} ∈ [{_fmt_num(self.lo)}, {_fmt_num(self.hi)}]"


def _fmt_num(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else f"{x:g}"


@dataclass(frozen=True)
class PriceRule:
    """Quantitative association rule with a price-bound consequent."""

    antecedents: tuple[Condition, ...]
    direction: str  # GE or LE
    bound: int  # cents
    support: Fraction
    confidence: Fraction

    def __post_init__(self):
        if not self.antecedents:
            raise DomainError("empty antecedent set is not allowed")
        attrs = [c.attribute for c in self.antecedents]
        if len(set(attrs)) != len(attrs):
            raise DomainError("antecedent attributes must be distinct")
        if self.direction not in (GE, LE):
            raise DomainError(f"bad direction {self.direction!r}")

    def applies_to(self, request: dict) -> bool:
        """Antecedents on unassigned attributes count as satisfiable."""
        for cond in self.antecedents:
            if cond.attribute in request and request[cond.attribute] is not None:
                if not cond.matches(request[cond.attribute]):
                    return False
        return True

    def admits(self, price: int) -> bool:
        return price >= self.bound if self.direction == GE else price <= self.bound

    def render(self) -> str:
        body = " ∧ ".join(c.render() for c in self.antecedents)
        arrow = "≥" if self.direction == GE else "≤"
        return (
            f"{body} → p {arrow} {self.bound / 100:.2f} "
            f"(sup={float(self.support):.3f}, conf={float(self.confidence):.3f})"
        )


def _as_fraction(x) -> Fraction:
    """Thresholds given as floats are read at decimal precision (0.15 -> 3/20)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x))


def equal_frequency_bins(values: list[float], max_bins: int) -> list[tuple[float, float]]:
    """Partition observed values into at most ``max_bins`` equal-count bins.

    Bins are closed intervals over distinct observed values. Fewer bins are
    returned when the data has fewer distinct values. Deterministic in the
    multiset of values.
    """
    if not values:
        raise DomainError("no values to bin")
    if max_bins < 1:
        raise DomainError("max_bins must be >= 1")
    counts = Counter(values)
    distinct = sorted(counts)
    if len(distinct) <= max_bins:
        return [(v, v) for v in distinct]
    n = len(values)
    bins: list[tuple[float, float]] = []
    start: float | None = None
    cum = 0
    for i, v in enumerate(distinct):
        if start is None:
            start = v
        cum += counts[v]
        last = i == len(distinct) - 1
        target = n * (len(bins) + 1) / max_bins
        if last or (cum >= target and len(bins) < max_bins - 1):
            bins.append((start, v))
            start = None
    return bins


def interval_lattice(values: list[float], max_bins: int) -> list[tuple[float, float]]:
    """All unions of consecutive equal-frequency bins (the candidate intervals)."""
    bins = equal_frequency_bins(values, max_bins)
    return [
        (bins[i][0], bins[j][1])
        for i in range(len(bins))
        for j in range(i, len(bins))
    ]


def candidate_conditions(
    dataset: list[OfferRecord], max_bins: int = DEFAULT_MAX_BINS
) -> dict[str, list[Condition]]:
    """Per attribute, every candidate antecedent condition over the dataset."""
    out: dict[str, list[Condition]] = {}
    for attr in ATTRIBUTES:
        values = [rec.attribute(attr) for rec in dataset]
        if attr in CATEGORICAL:
            out[attr] = [Condition(attr, category=v) for v in sorted(set(values))]
        else:
            out[attr] = [
                Condition(attr, lo=lo, hi=hi)
                for lo, hi in interval_lattice(values, max_bins)
            ]
    return out


def mine_rules(
    dataset: list[OfferRecord],
    s,
    c,
    n_a: int,
    max_bins: int = DEFAULT_MAX_BINS,
) -> list[PriceRule]:
    """All rules meeting the support/confidence thresholds, tightest bound first.

    For every antecedent combination (1..n_a distinct attributes, conditions
    from the candidate lattice) the tightest representable bound is emitted
    for each consequent direction; looser bounds over the same antecedents are
    dominated and never produced. Support counts records satisfying antecedent
    and consequent over all records; confidence is the same count over the
    antecedent-satisfying records.
    """
    if not dataset:
        raise DomainError("empty dataset")
    s = _as_fraction(s)
    c = _as_fraction(c)
    if not (0 < s <= 1 and 0 < c <= 1):
        raise DomainError("thresholds must lie in (0, 1]")
    if n_a < 1:
        raise DomainError("n_a must be >= 1")

    n = len(dataset)
    min_sup_count = math.ceil(s * n)
    conditions = candidate_conditions(dataset, max_bins)
    masks: dict[str, list[tuple[Condition, int]]] = {}
    for attr, conds in conditions.items():
        rows = []
        for cond in conds:
            mask = 0
            for i, rec in enumerate(dataset):
                if cond.matches(rec.attribute(attr)):
                    mask |= 1 << i
            rows.append((cond, mask))
        masks[attr] = rows
    prices = [rec.accepted_price for rec in dataset]

    rules: list[PriceRule] = []

    def emit(antecedents: tuple[Condition, ...], mask: int) -> None:
        cnt = mask.bit_count()
        t = max(min_sup_count, math.ceil(c * cnt))
        if t > cnt:
            return
        selected = sorted(
            prices[i] for i in range(n) if mask >> i & 1
        )
        v_le = selected[t - 1]
        v_ge = selected[cnt - t]
        for direction, bound in ((GE, v_ge), (LE, v_le)):
            if direction == GE:
                hits = sum(1 for p in selected if p >= bound)
            else:
                hits = sum(1 for p in selected if p <= bound)
            rules.append(
                PriceRule(
                    antecedents=antecedents,
                    direction=direction,
                    bound=bound,
                    support=Fraction(hits, n),
                    confidence=Fraction(hits, cnt),
                )
            )

    def extend(attr_index: int, chosen: tuple[Condition, ...], mask: int) -> None:
        for ai in range(attr_index, len(ATTRIBUTES)):
            for cond, cmask in masks[ATTRIBUTES[ai]]:
                merged = mask & cmask
                if merged.bit_count() < min_sup_count:
                    continue
                antecedents = chosen + (cond,)
                emit(antecedents, merged)
                if len(antecedents) < n_a:
                    extend(ai + 1, antecedents, merged)

    extend(0, (), (1 << n) - 1)
    return rules


@dataclass(frozen=True)
class HotelProfile:
    """What a hotelier can actually offer: fixed attributes plus amenities.

    ``breakfast_costs`` lists the offerable breakfast types with their
    per-night incremental cost; absent types cannot be offered.
    """

    hotel_rating: float
    distance_to_sea: float
    breakfast_costs: dict[int, int] = field(default_factory=lambda: {0: 0})
    base_cost: int = 0  # cents per night

    def __post_init__(self):
        if not self.breakfast_costs:
            raise DomainError("profile must offer at least one breakfast type")
        if any(v < 0 for v in self.breakfast_costs.values()) or self.base_cost < 0:
            raise DomainError("costs must be >= 0")
        object.__setattr__(self, "breakfast_costs", dict(self.breakfast_costs))


def filter_feasible(rules: list[PriceRule], profile: HotelProfile) -> list[PriceRule]:
    """Drop rules the hotelier cannot satisfy (fixed attributes, amenities)."""

    def feasible(rule: PriceRule) -> bool:
        for cond in rule.antecedents:
            if cond.attribute == "hotel_rating" and not cond.matches(profile.hotel_rating):
                return False
            if cond.attribute == "distance_to_sea" and not cond.matches(
                profile.distance_to_sea
            ):
                return False
            if cond.attribute == "breakfast_type":
                offered = set(profile.breakfast_costs)
                if cond.category is not None:
                    if cond.category not in offered:
                        return False
                elif not any(cond.matches(b) for b in offered):
                    return False
        return True

    return [r for r in rules if feasible(r)]


class RuleConflictError(DomainError):
    """Applicable lower bounds exceed applicable upper bounds."""

    def __init__(self, lower_rules: list[PriceRule], upper_rules: list[PriceRule]):
        self.lower_rules = lower_rules
        self.upper_rules = upper_rules
        lo = max(r.bound for r in lower_rules)
        hi = min(r.bound for r in upper_rules)
        super().__init__(
            f"rule intervals conflict: lower bound {lo / 100:.2f} exceeds "
            f"upper bound {hi / 100:.2f}"
        )


@dataclass(frozen=True)
class PriceEstimate:
    """Rule-combined price suggestion plus its explainability payload."""

    price: int  # cents
    applicable: tuple[PriceRule, ...]
    used_fallback: bool


def estimate_price(
    rules: list[PriceRule],
    request: dict,
    fallback,
    cost: int,
) -> PriceEstimate:
    """Combine applicable rules into an offer price for one request.

    The price is the strongest applicable lower bound, clamped by the
    strongest applicable upper bound; with no applicable lower-bound rule the
    expected-profit optimum over ``fallback`` seeds the price instead. A
    lower bound above an upper bound raises RuleConflictError carrying both
    rule sets.
    """
    from .pricing import optimize_price

    unknown = set(request) - set(ATTRIBUTES)
    if unknown:
        raise DomainError(f"unknown request attributes {sorted(unknown)}")
    applicable = [r for r in rules if r.applies_to(request)]
    lower = [r for r in applicable if r.direction == GE]
    upper = [r for r in applicable if r.direction == LE]
    upper_min = min((r.bound for r in upper), default=None)
    if lower:
        price = max(r.bound for r in lower)
        if upper_min is not None and price > upper_min:
            raise RuleConflictError(
                [r for r in lower if r.bound > upper_min],
                [r for r in upper if r.bound < price],
            )
        return PriceEstimate(price, tuple(applicable), used_fallback=False)
    price = optimize_price(fallback, cost).price
    if upper_min is not None and price > upper_min:
        price = upper_min
    return PriceEstimate(price, tuple(applicable), used_fallback=True)


@dataclass(frozen=True)
class OfferSelection:
    """Chosen amenity configuration for the offered price."""

    price: int  # cents
    amenities: dict[str, int]
    rule: PriceRule | None
    defaulted: bool


def select_offer(
    applicable: list[PriceRule], price: int, profile: HotelProfile
) -> OfferSelection:
    """Pick the cheapest amenity configuration among rules admitting ``price``.

    The amenity cost of a rule sums the profile's incremental costs of its
    amenity antecedents; ties break on fewer antecedents, then lexicographic
    attribute order. With no admitting rule the hotel's defaults are returned
    with ``defaulted`` set.
    """

    def amenity_cost(rule: PriceRule) -> int | None:
        total = 0
        for cond in rule.antecedents:
            if cond.attribute == "breakfast_type":
                if cond.category is not None:
                    if cond.category not in profile.breakfast_costs:
                        return None
                    total += profile.breakfast_costs[cond.category]
                else:
                    offered = [
                        profile.breakfast_costs[b]
                        for b in profile.breakfast_costs
                        if cond.matches(b)
                    ]
                    if not offered:
                        return None
                    total += min(offered)
        return total

    candidates = []
    for rule in applicable:
        if not rule.admits(price):
            continue
        cost = amenity_cost(rule)
        if cost is None:
            continue
        key = (
            cost,
            len(rule.antecedents),
            tuple(c.attribute for c in rule.antecedents),
            rule.direction,
            rule.bound,
            rule.render(),
        )
        candidates.append((key, rule, cost))
    if not candidates:
        return OfferSelection(price=price, amenities={}, rule=None, defaulted=True)
    _, rule, _ = min(candidates, key=lambda item: item[0])
    amenities: dict[str, int] = {}
    for cond in rule.antecedents:
        if cond.attribute == "breakfast_type":
            if cond.category is not None:
                amenities["breakfast_type"] = cond.category
            else:
                offered = sorted(
                    (b for b in profile.breakfast_costs if cond.matches(b)),
                    key=lambda b: (profile.breakfast_costs[b], b),
                )
                amenities["breakfast_type"] = offered[0]
    return OfferSelection(price=price, amenities=amenities, rule=rule, defaulted=False)


def rules_to_text(rules: list[PriceRule]) -> str:
    """One rendered rule per line, mirroring the UI's rule-list display."""
    return "\n".join(rule.render() for rule in rules) + ("\n" if rules else "")


def read_dataset(path: str | Path) -> list[OfferRecord]:
    """Read a tab-separated offer-history file (header row required).

    Columns follow the OfferRecord field order; prices are euros with at most
    two decimals.
    """
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise DomainError(f"{path}: empty dataset file")
    header = [h.strip() for h in lines[0].split("\t")]
    expected = list(ATTRIBUTES) + ["accepted_price"]
    if header != expected:
        raise DomainError(f"{path}: header must be {expected}, got {header}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = [p.strip() for p in line.split("\t")]
        if len(parts) != 7:
            raise DomainError(f"{path}:{lineno}: expected 7 columns, got {len(parts)}")
        try:
            records.append(
                OfferRecord(
                    period_visiting=int(parts[0]),
                    hotel_rating=_parse_number(parts[1]),
                    distance_to_sea=_parse_number(parts[2]),
                    beds_requested=int(parts[3]),
                    breakfast_type=int(parts[4]),
                    sites_within_10km=int(parts[5]),
                    accepted_price=parse_money(parts[6]),
                )
            )
        except (ValueError, DomainError) as exc:
            raise DomainError(f"{path}:{lineno}: {exc}") from exc
    if not records:
        raise DomainError(f"{path}: no records")
    return records


def dataset_to_text(records: list[OfferRecord]) -> str:
    header = "\t".join(list(ATTRIBUTES) + ["accepted_price"])
    rows = [
        "\t".join(
            [
                str(rec.period_visiting),
                _fmt_num(rec.hotel_rating),
                _fmt_num(rec.distance_to_sea),
                str(rec.beds_requested),
                str(rec.breakfast_type),
                str(rec.sites_within_10km),
                format_money(rec.accepted_price),
            ]
        )
        for rec in records
    ]
    return "\n".join([header] + rows) + "\n"


def write_dataset(path: str | Path, records: list[OfferRecord]) -> None:
    Path(path).write_text(dataset_to_text(records), encoding="utf-8")


def _parse_number(text: str) -> float:
    value = float(text)
    return int(value) if value.is_integer() else value


def parse_money(text: str) -> int:
    """Euros (decimal, at most two places) to integer cents, exactly."""
    amount = Fraction(text)
    cents = amount * 100
    if cents.denominator != 1:
        raise DomainError(f"money {text!r} has sub-cent precision")
    return int(cents)


def format_money(cents: int) -> str:
    sign = "-" if cents < 0 else ""
    cents = abs(cents)
    if cents % 100 == 0:
        return f"{sign}{cents // 100}"
    return f"{sign}{cents // 100}.{cents % 100:02d}"

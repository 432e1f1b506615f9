"""Reverse-auction price optimization from historical accepted offers.

The accepted-price distribution is the empirical step distribution over past
winning offers; the optimal offer maximizes (price - cost) times the
probability that the accepted price is at least the offered price. Money is
integer cents; probabilities and expected profits are exact fractions, so
argmax ties are decided exactly rather than by float luck.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import DomainError


@dataclass(frozen=True)
class AcceptedPriceDistribution:
    """Discrete distribution of winning offer prices.

    ``breakpoints`` are the distinct observed prices in ascending order;
    ``masses[i]`` is the fraction of samples equal to ``breakpoints[i]``.
    """

    breakpoints: tuple[int, ...]  # cents, ascending, distinct
    masses: tuple[Fraction, ...]
    sample_size: int

    def __post_init__(self):
        if not self.breakpoints:
            raise DomainError("distribution needs at least one breakpoint")
        if len(self.breakpoints) != len(self.masses):
            raise DomainError("breakpoints and masses differ in length")
        if list(self.breakpoints) != sorted(set(self.breakpoints)):
            raise DomainError("breakpoints must be ascending and distinct")
        if any(m <= 0 for m in self.masses):
            raise DomainError("masses must be positive (drop zero-mass breakpoints)")
        if sum(self.masses) != 1:
            raise DomainError("masses must sum to 1")

    def cdf(self, price: int) -> Fraction:
        """P(accepted price <= price)."""
        total = Fraction(0)
        for bp, m in zip(self.breakpoints, self.masses):
            if bp <= price:
                total += m
        return total

    def survival(self, price: int) -> Fraction:
        """P(accepted price >= price), the acceptance probability of an offer."""
        total = Fraction(0)
        for bp, m in zip(self.breakpoints, self.masses):
            if bp >= price:
                total += m
        return total


def empirical_distribution(accepted_prices: list[int]) -> AcceptedPriceDistribution:
    """Build the step distribution from a multiset of accepted prices (cents).

    The cumulative value at each distinct price equals its last 1-based index
    in the ascending sorted sample divided by the sample size; masses are the
    per-price sample counts over the sample size.
    """
    if not accepted_prices:
        raise DomainError("no accepted prices")
    if any(p <= 0 for p in accepted_prices):
        raise DomainError("accepted prices must be positive")
    n = len(accepted_prices)
    counts: dict[int, int] = {}
    for p in sorted(accepted_prices):
        counts[p] = counts.get(p, 0) + 1
    breakpoints = tuple(counts)
    masses = tuple(Fraction(counts[bp], n) for bp in breakpoints)
    return AcceptedPriceDistribution(breakpoints, masses, n)


def expected_profit(dist: AcceptedPriceDistribution, cost: int, price: int) -> Fraction:
    """Expected profit of offering ``price`` with unit cost ``cost``, in cents."""
    if price <= 0:
        raise DomainError("price must be positive")
    return (price - cost) * dist.survival(price)


@dataclass(frozen=True)
class PricingDecision:
    """Outcome of the offer-price optimization."""

    price: int  # cents
    expected_profit: Fraction  # cents
    acceptance_probability: Fraction
    abstain: bool

    def __post_init__(self):
        if self.abstain != (self.expected_profit <= 0):
            raise DomainError("abstain flag inconsistent with expected profit")


def optimize_price(dist: AcceptedPriceDistribution, cost: int) -> PricingDecision:
    """Profit-maximizing offer price for a hotelier with unit cost ``cost``.

    Between breakpoints the expected profit is linear and increasing in the
    price, so an optimum always sits on a breakpoint; a single ascending scan
    suffices. Ties go to the lower price (higher acceptance probability).
    The hotelier should abstain when even the best price cannot yield a
    positive expected profit.
    """
    if cost < 0:
        raise DomainError("cost must be >= 0")
    best_price = None
    best_profit: Fraction | None = None
    for bp in dist.breakpoints:
        profit = expected_profit(dist, cost, bp)
        if best_profit is None or profit > best_profit:
            best_price, best_profit = bp, profit
    assert best_price is not None and best_profit is not None
    return PricingDecision(
        price=best_price,
        expected_profit=best_profit,
        acceptance_probability=dist.survival(best_price),
        abstain=best_profit <= 0,
    )


def profit_curve(
    dist: AcceptedPriceDistribution, cost: int
) -> list[tuple[int, Fraction, Fraction]]:
    """(price, expected profit, acceptance probability) rows for plotting.

    Sampled at every breakpoint plus the midpoints between consecutive
    breakpoints, ascending, so the sawtooth shape renders faithfully.
    """
    prices = set(dist.breakpoints)
    for lo, hi in zip(dist.breakpoints, dist.breakpoints[1:]):
        mid = (lo + hi) // 2
        if mid not in (lo, hi):
            prices.add(mid)
    return [
        (p, expected_profit(dist, cost, p), dist.survival(p))
        for p in sorted(prices)
    ]

"""Synthetic offer-history generation contract and estimator evaluation."""

import random
import time
from collections import defaultdict

import pytest

from roomauction.core import DomainError
from roomauction.mining import mine_rules, estimate_price
from roomauction.pricing import empirical_distribution
from roomauction.synthetic import (
    NOISE_HALF_RANGE,
    base_price,
    evaluate_estimator,
    fallback_only_mae,
    generate_synthetic,
    priced_record,
    random_attributes,
)

NUMERIC_UPWARD = {
    "hotel_rating": 5,
    "beds_requested": 3,
    "sites_within_10km": 10,
}


class TestGeneration:
    def test_sizes_and_price_interval(self):
        records = generate_synthetic(100, seed=6)
        assert len(records) == 100
        assert all(1000 <= r.accepted_price <= 25000 for r in records)

    def test_reproducible_from_seed(self):
        assert generate_synthetic(50, seed=9) == generate_synthetic(50, seed=9)
        assert generate_synthetic(50, seed=9) != generate_synthetic(50, seed=10)

    def test_identical_attributes_differ_at_most_30_euros(self):
        # The extreme noise draws bound every achievable pair difference.
        rng = random.Random(123)
        for _ in range(200):
            attrs = random_attributes(rng)
            low = priced_record(attrs, -NOISE_HALF_RANGE).accepted_price
            high = priced_record(attrs, NOISE_HALF_RANGE).accepted_price
            assert high - low <= 3000

    def test_identical_attribute_pairs_in_generated_data(self):
        by_attrs = defaultdict(list)
        for rec in generate_synthetic(5000, seed=11):
            key = tuple(rec.attribute(a) for a in NUMERIC_UPWARD)
            by_attrs[key].append(rec.accepted_price)

    def test_monotone_in_each_numeric_attribute(self):
        rng = random.Random(77)
        for _ in range(300):
            attrs = random_attributes(rng)
            noise = rng.randint(-NOISE_HALF_RANGE, NOISE_HALF_RANGE)
            base = priced_record(attrs, noise).accepted_price
            for attr, top in NUMERIC_UPWARD.items():
                bumped = dict(attrs)
                if attrs[attr] >= top:
                    continue
                bumped[attr] = attrs[attr] + 1
                assert priced_record(bumped, noise).accepted_price >= base

    def test_rating_bump_non_decreasing(self):
        rng = random.Random(5)
        attrs = random_attributes(rng)
        attrs["hotel_rating"] = 2
        noise = 250
        low = priced_record(attrs, noise).accepted_price
        attrs["hotel_rating"] = 4
        assert priced_record(attrs, noise).accepted_price >= low

    def test_distance_is_hump_shaped(self):
        fixed = {
            "period_visiting": 2,
            "hotel_rating": 3,
            "beds_requested": 2,
            "breakfast_type": 1,
            "sites_within_10km": 5,
        }
        prices = [
            base_price(distance_to_sea=d, **fixed) for d in (0, 2000, 4000, 7000, 10000)
        ]
        peak = max(range(len(prices)), key=prices.__getitem__)
        assert 0 < peak < len(prices) - 1  # rises then falls
        assert prices[0] < prices[peak]
        assert prices[-1] < prices[peak]

    def test_rejects_bad_arguments(self):
        with pytest.raises(DomainError):
            generate_synthetic(0, seed=1)
        with pytest.raises(DomainError):
            priced_record(random_attributes(random.Random(1)), NOISE_HALF_RANGE + 1)


class TestEvaluation:
    def split(self, n=100, seed=29):
        records = generate_synthetic(n, seed=seed)
        cut = int(n * 0.8)
        return records[:cut], records[cut:]

    def test_beats_fallback_baseline(self):
        train, test = self.split()
        report = evaluate_estimator(train, test, s=0.15, c=0.9, n_a=3)
        assert report.mae <= fallback_only_mae(train, test)

    def test_case_rows_render_truth_in_parens(self):
        train, test = self.split(n=60, seed=31)
        report = evaluate_estimator(train, test, s=0.2, c=0.9, n_a=2)
        assert len(report.cases) == len(test)
        sample = report.cases[0]
        assert f"({sample.truth / 100:g})" in sample.render()

    def test_exact_match_rule_gives_zero_error(self):
        # Single train segment with one price; the test record repeats it.
        train = [
            priced_record(
                {
                    "period_visiting": 2,
                    "hotel_rating": 4,
                    "distance_to_sea": 100,
                    "beds_requested": 2,
                    "breakfast_type": 1,
                    "sites_within_10km": 3,
                },
                0,
            )
        ] * 4
        report = evaluate_estimator(train, [train[0]], s=0.25, c=1.0, n_a=1)
        assert report.mae == 0
        assert report.cases[0].estimated == train[0].accepted_price

    def test_estimate_latency_under_100ms(self):
        from roomauction.mining import RuleConflictError

        train, test = self.split(n=100, seed=37)
        rules = mine_rules(train, 0.15, 0.9, 3)
        fallback = empirical_distribution([r.accepted_price for r in train])
        started = time.perf_counter()
        for rec in test:
            try:
                estimate_price(rules, rec.as_request(), fallback, 1000)
            except RuleConflictError:
                pass  # conflicts are a legal outcome; latency is what matters here
        elapsed = (time.perf_counter() - started) / len(test)
        assert elapsed < 0.1, f"estimate took {elapsed * 1000:.1f} ms per request"

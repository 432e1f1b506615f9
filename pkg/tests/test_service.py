"""HTTP API: the clearing endpoint's exact shape plus the reverse endpoints."""

import json

import pytest
from fastapi.testclient import TestClient

from roomauction.mining import HotelProfile, OfferRecord
from roomauction.service import create_app
from roomauction.store import StoredAuction, StoreRoot, load, save

from conftest import showcase_auction, history_records

ARRIVAL_KEY = "arrival-date (YYYY-mm-dd)"


def seaside_profile() -> HotelProfile:
    return HotelProfile(
        hotel_rating=4,
        distance_to_sea=100,
        breakfast_costs={0: 0, 1: 300, 2: 500},
        base_cost=2000,
    )


@pytest.fixture
def store_path(tmp_path):
    auction, bids = showcase_auction()
    root = StoreRoot(
        forward_auctions={1: StoredAuction(auction=auction, bids=tuple(bids))},
        reverse_history=tuple(history_records()),
        hotel_profiles={"seaside": seaside_profile()},
    )
    path = tmp_path / "store.json"
    save(root, path)
    return path


@pytest.fixture
def client(store_path):
    return TestClient(create_app(store_path))


# A request whose every attribute differs from the stored history, so no
# mined rule can apply and the estimate falls back to the distribution.
UNMATCHED_REQUEST = {
    "period_visiting": 2,
    "hotel_rating": 1,
    "distance_to_sea": 9000,
    "beds_requested": 2,
    "breakfast_type": 1,
    "sites_within_10km": 0,
}


class TestOptimizeAuction:
    def test_golden_response(self, client):
        response = client.get("/api/optimize_auction/1")
        assert response.status_code == 200
        expected = [
            {"bidid": 1, ARRIVAL_KEY: "2023-6-2"},
            {"bidid": 2, ARRIVAL_KEY: "2023-6-2"},
            {"bidid": 3, ARRIVAL_KEY: "2023-6-11"},
        ]
        assert json.dumps(response.json(), sort_keys=True) == json.dumps(
            expected, sort_keys=True
        )

    def test_idempotent(self, client):
        first = client.get("/api/optimize_auction/1")
        second = client.get("/api/optimize_auction/1")
        assert first.content == second.content

    def test_result_persisted(self, client, store_path):
        client.get("/api/optimize_auction/1")
        root = load(store_path)
        stored = root.forward_auctions[1].latest_result
        assert stored is not None
        assert stored.status == "optimal"
        assert stored.solution.accepted == {1: 2, 2: 2, 3: 11}

    def test_unknown_auction_404(self, client):
        response = client.get("/api/optimize_auction/99")
        assert response.status_code == 404
        assert response.json()["error"] == "not-found"

    def test_post_alias_matches_get(self, client):
        get_body = client.get("/api/optimize_auction/1").json()
        post_body = client.post("/api/auctions/1/optimize").json()
        assert get_body == post_body

    def test_empty_auction_returns_empty_list(self, tmp_path):
        auction, _ = showcase_auction()
        root = StoreRoot(
            forward_auctions={7: StoredAuction(auction=auction, bids=())}
        )
        path = tmp_path / "empty.json"
        save(root, path)
        client = TestClient(create_app(path))
        response = client.get("/api/optimize_auction/7")
        assert response.status_code == 200
        assert response.json() == []

    def test_arrivals_are_feasible(self, client):
        from roomauction.core import feasible_arrivals

        auction, bids = showcase_auction()
        body = client.get("/api/optimize_auction/1").json()
        by_id = {b.customer_id: b for b in bids}
        for entry in body:
            bid = by_id[entry["bidid"]]
            year, month, day = (int(p) for p in entry[ARRIVAL_KEY].split("-"))
            import datetime

            from roomauction.core import date_index

            arrival = date_index(auction.horizon, datetime.date(year, month, day))
            assert arrival in feasible_arrivals(bid)


class TestReadAuction:
    def test_exposes_bids_and_result(self, client):
        client.get("/api/optimize_auction/1")
        body = client.get("/api/auctions/1").json()
        assert body["id"] == 1
        assert len(body["bids"]) == 3
        assert body["latest_result"]["status"] == "optimal"
        assert body["dates"][0] == "2023-06-01"

    def test_unknown_404(self, client):
        assert client.get("/api/auctions/42").status_code == 404


class TestReverseEstimate:
    def test_fallback_path_matches_worked_example(self, client):
        response = client.post(
            "/api/reverse/estimate",
            json={
                "profile_id": "seaside",
                "cost_cents": 1000,
                "request": UNMATCHED_REQUEST,
            },
        )
        assert response.status_code == 200
        body = response.json()
        assert body["price_cents"] == 4000
        assert body["expected_profit_cents"] == 2700.0
        assert body["acceptance_probability"] == 0.9
        assert body["abstain"] is False
        assert body["used_fallback"] is True
        assert body["applicable_rules"] == []

    def test_high_cost_abstains(self, client):
        response = client.post(
            "/api/reverse/estimate",
            json={
                "profile_id": "seaside",
                "cost_cents": 6000,
                "request": UNMATCHED_REQUEST,
            },
        )
        body = response.json()
        assert body["abstain"] is True
        assert body["expected_profit_cents"] <= 0

    def test_unknown_profile_404(self, client):
        response = client.post(
            "/api/reverse/estimate",
            json={"profile_id": "nope", "cost_cents": 1000, "request": {}},
        )
        assert response.status_code == 404

    def test_rule_conflict_409_carries_both_sides(self, tmp_path):
        low = [
            OfferRecord(1, 2, 5000, 1, 0, 1, 3000),
            OfferRecord(1, 2, 5000, 1, 0, 1, 3000),
            OfferRecord(1, 2, 5000, 1, 0, 1, 3000),
            OfferRecord(1, 2, 5000, 1, 0, 1, 3000),
            OfferRecord(1, 2, 5000, 1, 0, 1, 3000),
        ]
        high = [
            OfferRecord(3, 5, 10, 3, 2, 9, 10000),
            OfferRecord(3, 5, 10, 3, 2, 9, 10000),
            OfferRecord(3, 5, 10, 3, 2, 9, 10000),
            OfferRecord(3, 5, 10, 3, 2, 9, 10000),
            OfferRecord(3, 5, 10, 3, 2, 9, 10000),
        ]
        root = StoreRoot(
            reverse_history=tuple(low + high),
            hotel_profiles={"any": HotelProfile(hotel_rating=3, distance_to_sea=500,
                                                breakfast_costs={0: 0, 1: 0, 2: 0})},
        )
        path = tmp_path / "conflict.json"
        save(root, path)
        client = TestClient(create_app(path))
        response = client.post(
            "/api/reverse/estimate",
            json={"profile_id": "any", "cost_cents": 1000, "request": {}},
        )
        assert response.status_code == 409
        body = response.json()
        assert body["error"] == "rule-conflict"
        assert body["lower_rules"] and body["upper_rules"]

    def test_bad_cost_422(self, client):
        response = client.post(
            "/api/reverse/estimate",
            json={"profile_id": "seaside", "cost_cents": -5, "request": {}},
        )
        assert response.status_code == 422


class TestProfitCurve:
    def test_curve_peaks_at_worked_optimum(self, client):
        response = client.get("/api/reverse/profit_curve", params={"cost": 1000})
        assert response.status_code == 200
        rows = response.json()
        peak = max(rows, key=lambda r: r["expected_profit_cents"])
        assert peak["price_cents"] == 4000
        assert peak["expected_profit_cents"] == 2700.0
        prices = [r["price_cents"] for r in rows]
        assert prices == sorted(prices)

    def test_empty_history_404(self, tmp_path):
        path = tmp_path / "empty.json"
        save(StoreRoot(), path)
        client = TestClient(create_app(path))
        assert client.get("/api/reverse/profit_curve", params={"cost": 0}).status_code == 404

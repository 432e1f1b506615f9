"""Shared fixtures: the worked reverse-auction history and the three-bid
forward-auction showcase used across unit, service, and acceptance tests."""

import datetime

import pytest

from roomauction.core import Bid, BidLine, DateHorizon, ForwardAuction, RoomType
from roomauction.mining import OfferRecord

# Accepted-offer column of the ten historical reverse auctions (euros):
# 30, 40, 40, 40, 45, 45, 48, 50, 50, 50.
TEN_AUCTION_HISTORY_CENTS = [3000, 4000, 4000, 4000, 4500, 4500, 4800, 5000, 5000, 5000]


@pytest.fixture
def history_prices() -> list[int]:
    return list(TEN_AUCTION_HISTORY_CENTS)


def make_bid(
    cid: int,
    room_type: str = "double",
    price: int = 6500,
    lo: int = 1,
    hi: int = 1,
    nights: int = 1,
    rooms: int = 1,
    blackout=(),
) -> Bid:
    return Bid(
        customer_id=cid,
        lines=(BidLine(room_type=room_type, rooms_requested=rooms, price_per_night=price),),
        window_lo=lo,
        window_hi=hi,
        nights=nights,
        blackout_days=frozenset(blackout),
    )


def single_type_auction(
    capacity: int = 1, days: int = 7, min_price: int = 100, operating_cost: int = 0
) -> ForwardAuction:
    return ForwardAuction(
        horizon=DateHorizon(datetime.date(2023, 6, 1), days),
        room_types=(
            RoomType(
                id="double",
                auctioned_count=capacity,
                min_price=min_price,
                operating_cost=operating_cost,
            ),
        ),
    )


def showcase_auction() -> tuple[ForwardAuction, list[Bid]]:
    """Three-bid clearing scenario: all bids fit, check-ins June 2, 2, and 11."""
    auction = ForwardAuction(
        horizon=DateHorizon(datetime.date(2023, 6, 1), 15),
        room_types=(
            RoomType(id="double", auctioned_count=5, min_price=6500),
        ),
    )
    bids = [
        make_bid(1, price=7000, lo=2, hi=8, nights=3),
        make_bid(2, price=6500, lo=2, hi=5, nights=2, rooms=2),
        make_bid(3, price=8000, lo=11, hi=15, nights=4),
    ]
    return auction, bids


def history_records() -> list[OfferRecord]:
    """The worked price history as offer records with one shared request shape."""
    return [
        OfferRecord(
            period_visiting=1,
            hotel_rating=3,
            distance_to_sea=1000,
            beds_requested=1,
            breakfast_type=0,
            sites_within_10km=2,
            accepted_price=price,
        )
        for price in TEN_AUCTION_HISTORY_CENTS
    ]


def ab_counterexample() -> tuple[ForwardAuction, list[Bid]]:
    """Two-bid instance where greedy (100) is strictly below exact (120)."""
    auction = single_type_auction(capacity=1, days=2)
    bids = [
        make_bid(1, price=10000, lo=1, hi=1, nights=1),
        make_bid(2, price=6000, lo=1, hi=2, nights=2),
    ]
    return auction, bids

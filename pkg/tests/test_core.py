"""Date indexing, feasible arrivals, and bid validation."""

import datetime

import pytest

from roomauction.core import (
    Bid,
    BidLine,
    DateHorizon,
    DomainError,
    ForwardAuction,
    RealRoomGroup,
    RoomType,
    date_index,
    feasible_arrivals,
    validate_bid,
)

from conftest import make_bid, single_type_auction


class TestDateIndex:
    def test_first_date_is_one(self):
        horizon = DateHorizon(datetime.date(2023, 6, 1), 15)
        assert date_index(horizon, datetime.date(2023, 6, 1)) == 1

    def test_offset_arithmetic(self):
        horizon = DateHorizon(datetime.date(2023, 6, 1), 15)
        assert date_index(horizon, datetime.date(2023, 6, 3)) == 3

    def test_one_past_end_rejected(self):
        horizon = DateHorizon(datetime.date(2023, 6, 1), 15)
        with pytest.raises(DomainError):
            date_index(horizon, datetime.date(2023, 6, 16))

    def test_bijection_over_horizon(self):
        horizon = DateHorizon(datetime.date(2024, 2, 27), 10)
        seen = set()
        for k in range(1, 11):
            d = horizon.date_at(k)
            assert date_index(horizon, d) == k
            seen.add(d)
        assert len(seen) == 10

    def test_length_must_be_positive(self):
        with pytest.raises(DomainError):
            DateHorizon(datetime.date(2023, 6, 1), 0)


class TestFeasibleArrivals:
    def test_window_arithmetic_no_blackout(self):
        bid = make_bid(1, lo=1, hi=4, nights=2)
        assert feasible_arrivals(bid) == [1, 2, 3]

    def test_weeklong_window_blackout_tail(self):
        # Enumerated by hand: l in 1..6, stay {l, l+1} must avoid {3,4,5,6,7}.
        bid = make_bid(1, lo=1, hi=7, nights=2, blackout={3, 4, 5, 6, 7})
        assert feasible_arrivals(bid) == [1]

    def test_blackout_blocks_everything(self):
        # Both candidate stays {1,2} and {2,3} contain day 2.
        bid = make_bid(1, lo=1, hi=3, nights=2, blackout={2})
        assert feasible_arrivals(bid) == []

    def test_blackout_free_count(self):
        for lo, hi, nights in [(1, 10, 3), (2, 5, 4), (4, 4, 1), (1, 7, 7)]:
            bid = make_bid(1, lo=lo, hi=hi, nights=nights)
            assert len(feasible_arrivals(bid)) == hi - lo + 2 - nights

    def test_stays_inside_window(self):
        bid = make_bid(1, lo=3, hi=9, nights=3, blackout={5})
        for l in feasible_arrivals(bid):
            assert bid.window_lo <= l
            assert l + bid.nights - 1 <= bid.window_hi


class TestValidateBid:
    def test_below_minimum_price(self):
        auction = single_type_auction(min_price=6500, days=15)
        bid = make_bid(1, price=6000, lo=1, hi=5, nights=2)
        kinds = [v.kind for v in validate_bid(bid, auction)]
        assert kinds == ["below-min-price"]

    def test_well_formed_showcase_bid(self):
        # Three nights at the 65-euro minimum inside a 15-day window.
        auction = single_type_auction(capacity=5, min_price=6500, days=15)
        bid = make_bid(1, price=6500, lo=1, hi=15, nights=3)
        assert validate_bid(bid, auction) == []

    def test_duplicate_room_type_lines(self):
        auction = single_type_auction(min_price=100, days=7)
        bid = Bid(
            customer_id=1,
            lines=(
                BidLine("double", 1, 200),
                BidLine("double", 1, 300),
            ),
            window_lo=1,
            window_hi=3,
            nights=2,
        )
        assert "duplicate-room-type" in [v.kind for v in validate_bid(bid, auction)]

    def test_unknown_room_type(self):
        auction = single_type_auction()
        bid = make_bid(1, room_type="suite", price=200, lo=1, hi=2)
        assert "unknown-room-type" in [v.kind for v in validate_bid(bid, auction)]

    def test_window_outside_horizon(self):
        auction = single_type_auction(days=5)
        bid = make_bid(1, price=200, lo=4, hi=9, nights=2)
        assert "window-outside-horizon" in [v.kind for v in validate_bid(bid, auction)]

    def test_nights_exceed_window(self):
        auction = single_type_auction(days=10)
        bid = make_bid(1, price=200, lo=2, hi=4, nights=5)
        assert "nights-exceed-window" in [v.kind for v in validate_bid(bid, auction)]

    def test_blackout_starves_arrivals(self):
        auction = single_type_auction(days=10)
        bid = make_bid(1, price=200, lo=1, hi=3, nights=2, blackout={2})
        assert "no-feasible-arrival" in [v.kind for v in validate_bid(bid, auction)]


class TestAuctionComposition:
    def test_virtual_groups_example(self):
        # 5 one-bed and 10 two-bed rooms, each sold with 3 breakfast variants.
        one_bed = [f"one-bed-{b}" for b in ("american", "continental", "none")]
        two_bed = [f"two-bed-{b}" for b in ("american", "continental", "none")]
        auction = ForwardAuction(
            horizon=DateHorizon(datetime.date(2023, 6, 1), 7),
            room_types=tuple(
                RoomType(id=rt, auctioned_count=None, min_price=5000, real_group=g)
                for rts, g in ((one_bed, "one-bed"), (two_bed, "two-bed"))
                for rt in rts
            ),
            groups=(
                RealRoomGroup("one-bed", 5, frozenset(one_bed)),
                RealRoomGroup("two-bed", 10, frozenset(two_bed)),
            ),
        )
        assert len(auction.room_types) == 6
        assert auction.group_of("one-bed-american") == "one-bed"
        assert auction.group_of("two-bed-none") == "two-bed"

    def test_room_type_in_two_groups_rejected(self):
        with pytest.raises(DomainError):
            ForwardAuction(
                horizon=DateHorizon(datetime.date(2023, 6, 1), 7),
                room_types=(RoomType(id="a", auctioned_count=1, min_price=100),),
                groups=(
                    RealRoomGroup("g1", 1, frozenset({"a"})),
                    RealRoomGroup("g2", 1, frozenset({"a"})),
                ),
            )

    def test_singleton_group_synthesized(self):
        auction = single_type_auction(capacity=3)
        assert auction.group_of("double") == "double"
        assert auction.groups[0].capacity == 3

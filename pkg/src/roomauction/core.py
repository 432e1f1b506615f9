"""Domain types shared by all modules: auctions, bids, date indexing, validation.

All dates are carried externally as ISO-8601 calendar dates and internally as
1-based indices into the auction horizon; solver math never touches calendar
arithmetic. All money values are integer cents.
"""

from __future__ import annotations

import datetime
from dataclasses import dataclass, field, replace


class DomainError(ValueError):
    """Invalid input that violates a documented precondition or invariant."""


@dataclass(frozen=True)
class DateHorizon:
    """Contiguous booking period: start date plus number of nights."""

    start_date: datetime.date
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise DomainError(f"horizon length must be >= 1, got {self.length}")

    @property
    def end_date(self) -> datetime.date:
        return self.start_date + datetime.timedelta(days=self.length - 1)

    def date_at(self, index: int) -> datetime.date:
        """Calendar date of the ``index``-th night (1-based)."""
        if not 1 <= index <= self.length:
            raise DomainError(f"date index {index} outside 1..{self.length}")
        return self.start_date + datetime.timedelta(days=index - 1)

    def contains(self, d: datetime.date) -> bool:
        return self.start_date <= d <= self.end_date


def date_index(horizon: DateHorizon, d: datetime.date) -> int:
    """1-based position of calendar date ``d`` within ``horizon``.

    Raises DomainError if ``d`` falls outside the horizon.
    """
    if not horizon.contains(d):
        raise DomainError(
            f"date {d.isoformat()} outside horizon "
            f"{horizon.start_date.isoformat()}..{horizon.end_date.isoformat()}"
        )
    return (d - horizon.start_date).days + 1


@dataclass(frozen=True)
class RoomType:
    """A (possibly virtual) room type offered in a forward auction.

    ``auctioned_count`` of None means the type has no per-type cap and is
    limited only by its real-room group's capacity.
    """

    id: str
    auctioned_count: int | None
    min_price: int  # cents per night
    operating_cost: int = 0  # cents per night
    real_group: str | None = None  # defaults to a singleton group

    def __post_init__(self):
        if self.auctioned_count is not None and self.auctioned_count < 0:
            raise DomainError(f"room type {self.id}: auctioned_count < 0")
        if self.min_price <= 0:
            raise DomainError(f"room type {self.id}: min_price must be > 0")
        if self.operating_cost < 0:
            raise DomainError(f"room type {self.id}: operating_cost < 0")


@dataclass(frozen=True)
class RealRoomGroup:
    """A physical room pool shared by one or more virtual room types."""

    id: str
    capacity: int
    member_room_types: frozenset[str]

    def __post_init__(self):
        if self.capacity < 1:
            raise DomainError(f"group {self.id}: capacity must be >= 1")
        if not self.member_room_types:
            raise DomainError(f"group {self.id}: no member room types")
        object.__setattr__(self, "member_room_types", frozenset(self.member_room_types))


@dataclass(frozen=True)
class BidLine:
    """One room-type request inside a bid: how many rooms at what per-night price."""

    room_type: str
    rooms_requested: int
    price_per_night: int  # cents

    def __post_init__(self):
        if self.rooms_requested < 1:
            raise DomainError(f"line on {self.room_type}: rooms_requested < 1")
        if self.price_per_night < 0:
            raise DomainError(f"line on {self.room_type}: negative price")


@dataclass(frozen=True)
class Bid:
    """A customer's sealed offer: room lines plus a flexible arrival window.

    The customer stays exactly ``nights`` consecutive nights, arriving no
    earlier than index ``window_lo`` and departing no later than ``window_hi``.
    All lines share the window; acceptance is all-or-nothing across lines.
    ``blackout_days`` are window indices on which the customer will not stay.
    """

    customer_id: int
    lines: tuple[BidLine, ...]
    window_lo: int
    window_hi: int
    nights: int
    blackout_days: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "lines", tuple(self.lines))
        object.__setattr__(self, "blackout_days", frozenset(self.blackout_days))
        if not self.lines:
            raise DomainError(f"bid {self.customer_id}: no lines")
        if self.window_lo < 1:
            raise DomainError(f"bid {self.customer_id}: window_lo < 1")
        if self.window_hi < self.window_lo:
            raise DomainError(f"bid {self.customer_id}: window_hi < window_lo")
        if self.nights < 1:
            raise DomainError(f"bid {self.customer_id}: nights < 1")

    @property
    def latest_arrival(self) -> int:
        """Largest arrival index keeping the whole stay inside the window."""
        return self.window_hi + 1 - self.nights


def feasible_arrivals(bid: Bid) -> list[int]:
    """All arrival indices whose stay block fits the window and avoids blackouts.

    Ascending; may be empty. For a blackout-free bid the list has exactly
    ``window_hi - window_lo + 2 - nights`` entries.
    """
    out = []
    for l in range(bid.window_lo, bid.latest_arrival + 1):
        if all(d not in bid.blackout_days for d in range(l, l + bid.nights)):
            out.append(l)
    return out


@dataclass(frozen=True)
class ForwardAuction:
    """A hotelier's forward auction: horizon, room types, and real-room groups.

    Room types without an explicit ``real_group`` get a synthesized singleton
    group (id equal to the room type id, capacity equal to auctioned_count).
    """

    horizon: DateHorizon
    room_types: tuple[RoomType, ...]
    groups: tuple[RealRoomGroup, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "room_types", tuple(self.room_types))
        ids = [rt.id for rt in self.room_types]
        if len(set(ids)) != len(ids):
            raise DomainError("duplicate room type ids")
        groups = list(self.groups)
        grouped = {m for g in groups for m in g.member_room_types}
        for g in groups:
            unknown = g.member_room_types - set(ids)
            if unknown:
                raise DomainError(f"group {g.id}: unknown room types {sorted(unknown)}")
        for rt in self.room_types:
            if rt.real_group is None:
                if rt.id in grouped:
                    continue
                if rt.auctioned_count is None:
                    raise DomainError(
                        f"room type {rt.id}: uncapped type needs an explicit group"
                    )
                groups.append(
                    RealRoomGroup(rt.id, max(rt.auctioned_count, 1), frozenset({rt.id}))
                )
        object.__setattr__(self, "groups", tuple(groups))
        seen: dict[str, str] = {}
        for g in self.groups:
            for m in g.member_room_types:
                if m in seen:
                    raise DomainError(
                        f"room type {m} in both groups {seen[m]} and {g.id}"
                    )
                seen[m] = g.id
        for rt in self.room_types:
            if rt.id not in seen:
                raise DomainError(f"room type {rt.id} not in any group")
            if rt.real_group is not None and seen[rt.id] != rt.real_group:
                raise DomainError(
                    f"room type {rt.id}: real_group {rt.real_group} does not match "
                    f"group membership {seen[rt.id]}"
                )
        # canonical form: every room type names its resolved group
        normalized = tuple(
            rt if rt.real_group == seen[rt.id] else replace(rt, real_group=seen[rt.id])
            for rt in self.room_types
        )
        object.__setattr__(self, "room_types", normalized)
        object.__setattr__(self, "_group_of", seen)
        object.__setattr__(self, "_room_type_by_id", {rt.id: rt for rt in normalized})

    def room_type(self, rt_id: str) -> RoomType:
        return self._room_type_by_id[rt_id]

    def group_of(self, rt_id: str) -> str:
        return self._group_of[rt_id]


@dataclass(frozen=True)
class BidViolation:
    """One validation finding; ``kind`` is a stable machine-readable code."""

    kind: str
    message: str


def validate_bid(bid: Bid, auction: ForwardAuction) -> list[BidViolation]:
    """Check a bid against an auction; empty list means the bid is acceptable.

    Reported kinds: unknown-room-type, duplicate-room-type, below-min-price,
    nights-exceed-window, window-outside-horizon, blackout-outside-window,
    no-feasible-arrival.
    """
    report: list[BidViolation] = []
    seen_types: set[str] = set()
    for line in bid.lines:
        if line.room_type in seen_types:
            report.append(
                BidViolation(
                    "duplicate-room-type",
                    f"bid {bid.customer_id}: two lines on room type {line.room_type}",
                )
            )
        seen_types.add(line.room_type)
        try:
            rt = auction.room_type(line.room_type)
        except KeyError:
            report.append(
                BidViolation(
                    "unknown-room-type",
                    f"bid {bid.customer_id}: unknown room type {line.room_type}",
                )
            )
            continue
        if line.price_per_night < rt.min_price:
            report.append(
                BidViolation(
                    "below-min-price",
                    f"bid {bid.customer_id}: {line.price_per_night} below minimum "
                    f"price {rt.min_price} for room type {rt.id}",
                )
            )
    if bid.window_hi > auction.horizon.length:
        report.append(
            BidViolation(
                "window-outside-horizon",
                f"bid {bid.customer_id}: window_hi {bid.window_hi} exceeds "
                f"horizon length {auction.horizon.length}",
            )
        )
    if bid.nights > bid.window_hi - bid.window_lo + 1:
        report.append(
            BidViolation(
                "nights-exceed-window",
                f"bid {bid.customer_id}: {bid.nights} nights do not fit window "
                f"[{bid.window_lo}, {bid.window_hi}]",
            )
        )
    stray = {d for d in bid.blackout_days if not bid.window_lo <= d <= bid.window_hi}
    if stray:
        report.append(
            BidViolation(
                "blackout-outside-window",
                f"bid {bid.customer_id}: blackout days {sorted(stray)} outside window",
            )
        )
    if not report and not feasible_arrivals(bid):
        report.append(
            BidViolation(
                "no-feasible-arrival",
                f"bid {bid.customer_id}: no arrival avoids the blackout days",
            )
        )
    return report


@dataclass(frozen=True)
class ClearingSolution:
    """Accepted bids with assigned arrival indices and the objective value."""

    accepted: dict[int, int]  # customer id -> arrival index
    objective: int  # cents
    objective_mode: str  # "income" | "profit"

    def __post_init__(self):
        if self.objective_mode not in ("income", "profit"):
            raise DomainError(f"bad objective_mode {self.objective_mode!r}")
        object.__setattr__(self, "accepted", dict(self.accepted))

"""File-backed persistence for auctions, bids, offer history, and results.

One JSON document per store root, written atomically (temp file + rename) so
readers never observe a torn state. Money is serialized as integer cents with
a currency tag; dates are zero-padded ISO-8601. Loading validates the whole
snapshot: every bid against its auction, every stored result against a model
rebuilt from the stored inputs.
"""

from __future__ import annotations

import datetime
import json
import os
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .core import (
    Bid,
    BidLine,
    ClearingSolution,
    DateHorizon,
    DomainError,
    ForwardAuction,
    RealRoomGroup,
    RoomType,
    validate_bid,
)
from .forward import SolveResult, build_model, validate_solution
from .mining import ATTRIBUTES, HotelProfile, OfferRecord

SCHEMA_VERSION = 1
DEFAULT_CURRENCY = "EUR"


class StoreLoadError(DomainError):
    """Document cannot be parsed or decoded at all."""


class StoreValidationError(DomainError):
    """Document parses but violates a store invariant."""


@dataclass(frozen=True)
class StoredAuction:
    auction: ForwardAuction
    bids: tuple[Bid, ...]
    latest_result: SolveResult | None = None


@dataclass(frozen=True)
class StoreRoot:
    forward_auctions: dict[int, StoredAuction] = field(default_factory=dict)
    reverse_history: tuple[OfferRecord, ...] = ()
    hotel_profiles: dict[str, HotelProfile] = field(default_factory=dict)


def money_to_doc(cents: int, currency: str = DEFAULT_CURRENCY) -> dict:
    return {"cents": cents, "currency": currency}


def money_from_doc(doc, where: str, currencies: set[str]) -> int:
    if not isinstance(doc, dict) or "cents" not in doc:
        raise StoreLoadError(f"{where}: money must be an object with 'cents'")
    cents = doc["cents"]
    if not isinstance(cents, int):
        raise StoreLoadError(f"{where}: cents must be an integer, got {cents!r}")
    currencies.add(doc.get("currency", DEFAULT_CURRENCY))
    return cents


def _date_from_doc(text, where: str) -> datetime.date:
    try:
        return datetime.date.fromisoformat(text)
    except (TypeError, ValueError) as exc:
        raise StoreLoadError(f"{where}: bad date {text!r}") from exc


def auction_to_doc(auction: ForwardAuction) -> dict:
    return {
        "horizon": {
            "start_date": auction.horizon.start_date.isoformat(),
            "length": auction.horizon.length,
        },
        "room_types": [
            {
                "id": rt.id,
                "auctioned_count": rt.auctioned_count,
                "min_price": money_to_doc(rt.min_price),
                "operating_cost": money_to_doc(rt.operating_cost),
                "real_group": auction.group_of(rt.id),
            }
            for rt in auction.room_types
        ],
        "groups": [
            {
                "id": g.id,
                "capacity": g.capacity,
                "member_room_types": sorted(g.member_room_types),
            }
            for g in auction.groups
        ],
    }


def auction_from_doc(doc: dict, where: str, currencies: set[str]) -> ForwardAuction:
    try:
        horizon_doc = doc["horizon"]
        horizon = DateHorizon(
            start_date=_date_from_doc(horizon_doc["start_date"], f"{where}.horizon"),
            length=int(horizon_doc["length"]),
        )
        room_types = tuple(
            RoomType(
                id=str(rt["id"]),
                auctioned_count=(
                    None if rt.get("auctioned_count") is None else int(rt["auctioned_count"])
                ),
                min_price=money_from_doc(
                    rt["min_price"], f"{where}.room_types[{i}].min_price", currencies
                ),
                operating_cost=money_from_doc(
                    rt.get("operating_cost", money_to_doc(0)),
                    f"{where}.room_types[{i}].operating_cost",
                    currencies,
                ),
                real_group=rt.get("real_group"),
            )
            for i, rt in enumerate(doc.get("room_types", []))
        )
        groups = tuple(
            RealRoomGroup(
                id=str(g["id"]),
                capacity=int(g["capacity"]),
                member_room_types=frozenset(str(m) for m in g["member_room_types"]),
            )
            for g in doc.get("groups", [])
        )
        return ForwardAuction(horizon=horizon, room_types=room_types, groups=groups)
    except KeyError as exc:
        raise StoreLoadError(f"{where}: missing field {exc}") from exc


def bid_to_doc(bid: Bid) -> dict:
    return {
        "customer_id": bid.customer_id,
        "lines": [
            {
                "room_type": line.room_type,
                "rooms_requested": line.rooms_requested,
                "price_per_night": money_to_doc(line.price_per_night),
            }
            for line in bid.lines
        ],
        "window_lo": bid.window_lo,
        "window_hi": bid.window_hi,
        "nights": bid.nights,
        "blackout_days": sorted(bid.blackout_days),
    }


def bid_from_doc(doc: dict, where: str, currencies: set[str]) -> Bid:
    try:
        return Bid(
            customer_id=int(doc["customer_id"]),
            lines=tuple(
                BidLine(
                    room_type=str(line["room_type"]),
                    rooms_requested=int(line["rooms_requested"]),
                    price_per_night=money_from_doc(
                        line["price_per_night"],
                        f"{where}.lines[{i}].price_per_night",
                        currencies,
                    ),
                )
                for i, line in enumerate(doc["lines"])
            ),
            window_lo=int(doc["window_lo"]),
            window_hi=int(doc["window_hi"]),
            nights=int(doc["nights"]),
            blackout_days=frozenset(int(d) for d in doc.get("blackout_days", [])),
        )
    except KeyError as exc:
        raise StoreLoadError(f"{where}: missing field {exc}") from exc


def result_to_doc(result: SolveResult) -> dict:
    solution = result.solution
    return {
        "status": result.status,
        "objective_mode": solution.objective_mode,
        "objective": money_to_doc(solution.objective),
        "best_bound": money_to_doc(result.best_bound),
        "nodes_explored": result.nodes_explored,
        "wall_time": result.wall_time,
        "accepted": [
            {"customer_id": cid, "arrival": arrival}
            for cid, arrival in sorted(solution.accepted.items())
        ],
    }


def result_from_doc(doc: dict, where: str, currencies: set[str]) -> SolveResult:
    try:
        solution = ClearingSolution(
            accepted={
                int(entry["customer_id"]): int(entry["arrival"])
                for entry in doc["accepted"]
            },
            objective=money_from_doc(doc["objective"], f"{where}.objective", currencies),
            objective_mode=str(doc["objective_mode"]),
        )
        return SolveResult(
            solution=solution,
            status=str(doc["status"]),
            nodes_explored=int(doc["nodes_explored"]),
            wall_time=float(doc["wall_time"]),
            best_bound=money_from_doc(doc["best_bound"], f"{where}.best_bound", currencies),
        )
    except KeyError as exc:
        raise StoreLoadError(f"{where}: missing field {exc}") from exc


def offer_record_to_doc(rec: OfferRecord) -> dict:
    doc = {name: getattr(rec, name) for name in ATTRIBUTES}
    doc["accepted_price"] = money_to_doc(rec.accepted_price)
    return doc


def offer_record_from_doc(doc: dict, where: str, currencies: set[str]) -> OfferRecord:
    try:
        return OfferRecord(
            period_visiting=int(doc["period_visiting"]),
            hotel_rating=doc["hotel_rating"],
            distance_to_sea=doc["distance_to_sea"],
            beds_requested=int(doc["beds_requested"]),
            breakfast_type=int(doc["breakfast_type"]),
            sites_within_10km=int(doc["sites_within_10km"]),
            accepted_price=money_from_doc(
                doc["accepted_price"], f"{where}.accepted_price", currencies
            ),
        )
    except KeyError as exc:
        raise StoreLoadError(f"{where}: missing field {exc}") from exc


def profile_to_doc(profile: HotelProfile) -> dict:
    return {
        "hotel_rating": profile.hotel_rating,
        "distance_to_sea": profile.distance_to_sea,
        "breakfast_costs": {
            str(k): money_to_doc(v) for k, v in sorted(profile.breakfast_costs.items())
        },
        "base_cost": money_to_doc(profile.base_cost),
    }


def profile_from_doc(doc: dict, where: str, currencies: set[str]) -> HotelProfile:
    try:
        return HotelProfile(
            hotel_rating=doc["hotel_rating"],
            distance_to_sea=doc["distance_to_sea"],
            breakfast_costs={
                int(k): money_from_doc(v, f"{where}.breakfast_costs[{k}]", currencies)
                for k, v in doc["breakfast_costs"].items()
            },
            base_cost=money_from_doc(
                doc.get("base_cost", money_to_doc(0)), f"{where}.base_cost", currencies
            ),
        )
    except KeyError as exc:
        raise StoreLoadError(f"{where}: missing field {exc}") from exc


def root_to_doc(root: StoreRoot) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "forward_auctions": {
            str(aid): {
                "auction": auction_to_doc(stored.auction),
                "bids": [bid_to_doc(b) for b in stored.bids],
                "latest_result": (
                    None
                    if stored.latest_result is None
                    else result_to_doc(stored.latest_result)
                ),
            }
            for aid, stored in sorted(root.forward_auctions.items())
        },
        "reverse_history": [offer_record_to_doc(r) for r in root.reverse_history],
        "hotel_profiles": {
            pid: profile_to_doc(p) for pid, p in sorted(root.hotel_profiles.items())
        },
    }


def validate_root(root: StoreRoot) -> list[str]:
    """All invariant violations in a snapshot, with record coordinates."""
    problems = []
    for aid, stored in sorted(root.forward_auctions.items()):
        where = f"forward_auctions[{aid}]"
        seen_customers = set()
        for bid in stored.bids:
            if bid.customer_id in seen_customers:
                problems.append(f"{where}: duplicate customer id {bid.customer_id}")
            seen_customers.add(bid.customer_id)
            for violation in validate_bid(bid, stored.auction):
                problems.append(f"{where}.bids[{bid.customer_id}]: {violation.message}")
        if stored.latest_result is not None and not problems:
            model = build_model(
                stored.auction,
                list(stored.bids),
                stored.latest_result.solution.objective_mode,
            )
            for violation in validate_solution(model, stored.latest_result.solution):
                problems.append(f"{where}.latest_result: {violation.message}")
    return problems


def root_from_doc(doc: dict, where: str = "store") -> StoreRoot:
    if not isinstance(doc, dict):
        raise StoreLoadError(f"{where}: document root must be an object")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise StoreLoadError(f"{where}: unsupported schema_version {version!r}")
    currencies: set[str] = set()
    auctions: dict[int, StoredAuction] = {}
    for key, adoc in doc.get("forward_auctions", {}).items():
        aid = int(key)
        awhere = f"{where}.forward_auctions[{key}]"
        auction = auction_from_doc(adoc["auction"], awhere, currencies)
        bids = tuple(
            bid_from_doc(b, f"{awhere}.bids[{i}]", currencies)
            for i, b in enumerate(adoc.get("bids", []))
        )
        result_doc = adoc.get("latest_result")
        result = (
            None
            if result_doc is None
            else result_from_doc(result_doc, f"{awhere}.latest_result", currencies)
        )
        auctions[aid] = StoredAuction(auction=auction, bids=bids, latest_result=result)
    history = tuple(
        offer_record_from_doc(r, f"{where}.reverse_history[{i}]", currencies)
        for i, r in enumerate(doc.get("reverse_history", []))
    )
    profiles = {
        str(pid): profile_from_doc(p, f"{where}.hotel_profiles[{pid}]", currencies)
        for pid, p in doc.get("hotel_profiles", {}).items()
    }
    if len(currencies) > 1:
        raise StoreValidationError(f"{where}: mixed currencies {sorted(currencies)}")
    root = StoreRoot(
        forward_auctions=auctions, reverse_history=history, hotel_profiles=profiles
    )
    problems = validate_root(root)
    if problems:
        raise StoreValidationError(f"{where}: " + "; ".join(problems))
    return root


def load(root_path: str | Path) -> StoreRoot:
    """Parse and fully validate the store document at ``root_path``."""
    path = Path(root_path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StoreLoadError(f"{path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StoreLoadError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return root_from_doc(doc, where=str(path))


def save(root: StoreRoot, root_path: str | Path) -> None:
    """Atomically replace the document at ``root_path`` with ``root``.

    Validates first, writes to a unique temp file in the same directory,
    fsyncs, then renames over the target; a crash mid-save leaves the
    previous document intact.
    """
    problems = validate_root(root)
    if problems:
        raise StoreValidationError("; ".join(problems))
    path = Path(root_path)
    payload = json.dumps(root_to_doc(root), indent=2, sort_keys=True) + "\n"
    tmp = path.with_name(f".{path.name}.{uuid.uuid4().hex}.tmp")
    try:
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(payload)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    finally:
        if tmp.exists():
            tmp.unlink()


def instance_to_doc(auction: ForwardAuction, bids: list[Bid]) -> dict:
    doc = auction_to_doc(auction)
    doc["bids"] = [bid_to_doc(b) for b in bids]
    return doc


def instance_from_doc(doc: dict, where: str = "instance") -> tuple[ForwardAuction, list[Bid]]:
    currencies: set[str] = set()
    auction = auction_from_doc(doc, where, currencies)
    bids = [
        bid_from_doc(b, f"{where}.bids[{i}]", currencies)
        for i, b in enumerate(doc.get("bids", []))
    ]
    if len(currencies) > 1:
        raise StoreValidationError(f"{where}: mixed currencies {sorted(currencies)}")
    return auction, bids


def load_instance(path: str | Path) -> tuple[ForwardAuction, list[Bid]]:
    """Read a standalone auction-instance document (auction plus bids)."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise StoreLoadError(f"{path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise StoreLoadError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return instance_from_doc(doc, where=str(path))


def save_instance(auction: ForwardAuction, bids: list[Bid], path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(instance_to_doc(auction, bids), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )

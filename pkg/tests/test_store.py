"""Persistence: round-trips, validation on load, and atomic replacement."""

import json
import threading

import pytest

from roomauction.forward import build_model
from roomauction.mining import HotelProfile
from roomauction.solvers import solve_exact
from roomauction.store import (
    StoredAuction,
    StoreLoadError,
    StoreRoot,
    StoreValidationError,
    instance_to_doc,
    load,
    load_instance,
    root_to_doc,
    save,
    save_instance,
)

from conftest import make_bid, showcase_auction, single_type_auction, history_records


def showcase_root(with_result=False) -> StoreRoot:
    auction, bids = showcase_auction()
    result = None
    if with_result:
        result = solve_exact(build_model(auction, bids, "income"))
    return StoreRoot(
        forward_auctions={1: StoredAuction(auction=auction, bids=tuple(bids), latest_result=result)},
        reverse_history=tuple(history_records()),
        hotel_profiles={
            "seaside": HotelProfile(
                hotel_rating=4,
                distance_to_sea=100,
                breakfast_costs={0: 0, 1: 300, 2: 500},
                base_cost=2000,
            )
        },
    )


class TestRoundTrip:
    def test_load_after_save_is_identity(self, tmp_path):
        path = tmp_path / "store.json"
        root = showcase_root(with_result=True)
        save(root, path)
        assert load(path) == root

    def test_empty_document(self, tmp_path):
        path = tmp_path / "store.json"
        path.write_text(json.dumps({"schema_version": 1}))
        root = load(path)
        assert root.forward_auctions == {}
        assert root.reverse_history == ()
        assert root.hotel_profiles == {}

    def test_showcase_fixture_exposes_auction_one(self, tmp_path):
        path = tmp_path / "store.json"
        save(showcase_root(), path)
        root = load(path)
        assert set(root.forward_auctions) == {1}
        assert len(root.forward_auctions[1].bids) == 3

    def test_instance_file_round_trip(self, tmp_path):
        auction, bids = showcase_auction()
        path = tmp_path / "instance.json"
        save_instance(auction, bids, path)
        loaded_auction, loaded_bids = load_instance(path)
        assert loaded_auction == auction
        assert loaded_bids == bids


class TestValidationOnLoad:
    def test_bid_below_minimum_rejected(self, tmp_path):
        auction, bids = showcase_auction()
        bids.append(make_bid(9, price=6000, lo=1, hi=5, nights=2))  # below 65 euros
        doc = {
            "schema_version": 1,
            "forward_auctions": {
                "1": {"auction": instance_to_doc(auction, []), "bids": [], "latest_result": None}
            },
        }
        doc["forward_auctions"]["1"]["bids"] = instance_to_doc(auction, bids)["bids"]
        path = tmp_path / "store.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(StoreValidationError, match="below minimum"):
            load(path)

    def test_result_must_validate_against_model(self, tmp_path):
        root = showcase_root(with_result=True)
        doc = root_to_doc(root)
        doc["forward_auctions"]["1"]["latest_result"]["objective"]["cents"] += 1
        path = tmp_path / "store.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(StoreValidationError, match="objective"):
            load(path)

    def test_wrong_schema_version(self, tmp_path):
        path = tmp_path / "store.json"
        path.write_text(json.dumps({"schema_version": 2}))
        with pytest.raises(StoreLoadError, match="schema_version"):
            load(path)

    def test_parse_error_reports_location(self, tmp_path):
        path = tmp_path / "store.json"
        path.write_text('{"schema_version": 1,,}')
        with pytest.raises(StoreLoadError, match=str(path)):
            load(path)

    def test_mixed_currencies_rejected(self, tmp_path):
        root = showcase_root()
        doc = root_to_doc(root)
        doc["reverse_history"][0]["accepted_price"]["currency"] = "USD"
        path = tmp_path / "store.json"
        path.write_text(json.dumps(doc))
        with pytest.raises(StoreValidationError, match="currencies"):
            load(path)


class TestAtomicity:
    def test_failed_replace_leaves_previous_state(self, tmp_path, monkeypatch):
        path = tmp_path / "store.json"
        first = showcase_root()
        save(first, path)

        import os as os_module

        def boom(src, dst):
            raise OSError("simulated crash before rename")

        monkeypatch.setattr(os_module, "replace", boom)
        with pytest.raises(OSError):
            save(showcase_root(with_result=True), path)
        monkeypatch.undo()
        assert load(path) == first
        assert list(tmp_path.iterdir()) == [path]  # temp file cleaned up

    def test_invalid_root_never_touches_file(self, tmp_path):
        path = tmp_path / "store.json"
        good = showcase_root()
        save(good, path)
        auction, bids = showcase_auction()
        bids[0] = make_bid(1, price=100, lo=1, hi=3, nights=1)  # below minimum
        bad = StoreRoot(
            forward_auctions={1: StoredAuction(auction=auction, bids=tuple(bids))}
        )
        with pytest.raises(StoreValidationError):
            save(bad, path)
        assert load(path) == good

    def test_concurrent_saves_leave_consistent_file(self, tmp_path):
        path = tmp_path / "store.json"
        roots = [showcase_root(), showcase_root(with_result=True)]
        save(roots[0], path)
        threads = [
            threading.Thread(target=save, args=(root, path)) for root in roots * 3
        ]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert load(path) in roots  # one writer won; the file is never torn

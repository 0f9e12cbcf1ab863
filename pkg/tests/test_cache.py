import json
import logging

import pytest

from forbconf.cache import ForbCache, family_digest
from forbconf.matrix import RMatrix, make_I, make_K, make_T


def test_digest_ignores_order_and_presentation():
    a = family_digest(3, 2, [make_K(2), make_T(2)])
    b = family_digest(3, 2, [make_T(2), make_K(2), make_T(2)])
    assert a == b
    swapped = RMatrix.from_rows([[0, 1], [1, 1]], 2)  # T_2 with rows swapped
    assert family_digest(3, 2, [make_K(2), swapped]) == a
    assert family_digest(3, 2, [make_K(2)]) != a
    assert family_digest(3, 3, [make_K(2), make_T(2)]) != a


def test_digest_drops_members_too_tall():
    assert family_digest(1, 2, [make_K(2), make_I(1)]) == family_digest(1, 2, [make_I(1)])


def test_round_trip(tmp_path):
    path = tmp_path / "c.jsonl"
    c = ForbCache(path, timestamps=False)
    c.record(3, 2, [make_K(2)], 4, "exact", make_I(3))
    c.record(4, 2, [make_K(2)], 5, "formula")
    c.save()
    assert ForbCache(path).entries == c.entries


def test_disjoint_runs_merge(tmp_path):
    path = tmp_path / "c.jsonl"
    first, second = ForbCache(path), ForbCache(path)
    first.record(3, 2, [make_K(2)], 4)
    second.record(3, 2, [make_T(2)], 7)
    first.save()
    second.save()
    merged = ForbCache(path)
    assert len(merged) == 2
    assert merged.lookup(3, 2, [make_K(2)])["value"] == 4
    assert merged.lookup(3, 2, [make_T(2)])["value"] == 7


def test_exact_not_downgraded(tmp_path):
    path = tmp_path / "c.jsonl"
    c = ForbCache(path)
    c.record(3, 2, [make_K(2)], 4, "exact")
    kept = c.record(3, 2, [make_K(2)], 9, "formula")
    assert kept["method"] == "exact" and kept["value"] == 4
    c.save()
    late = ForbCache(tmp_path / "other.jsonl")
    late.record(3, 2, [make_K(2)], 9, "formula")
    late.save(path)
    assert ForbCache(path).lookup(3, 2, [make_K(2)])["method"] == "exact"


def test_corrupt_line_skipped(tmp_path, caplog):
    path = tmp_path / "c.jsonl"
    c = ForbCache(path)
    c.record(3, 2, [make_K(2)], 4)
    c.save()
    with open(path, "a") as fh:
        fh.write("{not json\n")
        fh.write(json.dumps({"m": 1, "r": 2, "digest": "x", "value": "four", "method": "exact"}) + "\n")
    with caplog.at_level(logging.WARNING):
        again = ForbCache(path)
    assert len(again) == 1
    assert sum("corrupt" in rec.message for rec in caplog.records) == 2


def test_unknown_method_rejected(tmp_path):
    with pytest.raises(ValueError):
        ForbCache(tmp_path / "c").record(1, 2, [make_K(2)], 1, "guess")

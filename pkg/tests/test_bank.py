import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from seqprofile import (BankCatalog, BankEntry, IngestReport, IntegrityError, ParameterError,
                        PeakParams, TimeSeries, UsageError, box_stats, load_catalog, profile,
                        rank_bank, save_catalog)
from seqprofile.bank import dumps_catalog, loads_catalog
from seqprofile.synthetic import sine, spiked_sine

STAMP = "2026-01-01T00:00:00+00:00"


def entry(series, **kw):
    return BankEntry(series.source or series.id, IngestReport(len(series), len(series), 0, {}),
                     profile(series, profiled_at=STAMP, **kw))


def test_constant_profile():
    p = profile(TimeSeries.from_values([3.0] * 40, id="flat"))
    assert (p.outlier_count, p.peak_count, p.period_cv) == (0, 0, 0)
    assert p.ippd.tuned


def test_profile_fields_consistent():
    s, spikes = spiked_sine(800, 4, seed=2, id="sp")
    p = profile(s, 1.5, PeakParams(0.3, 5), profiled_at=STAMP)
    assert p.n == 800 and p.outlier_count == 4 and p.outlier_fraction == 4 / 800
    assert p.box == box_stats(s) and list(p.box.outlier_indices) == spikes
    assert p.peak_count == p.ippd.peak_count and not p.ippd.tuned


def test_profile_idempotent_and_digest():
    s = sine(300, 30, noise=0.2, seed=1)
    a = profile(s, 1.5, [2, 5, 10], delta=0.4)
    b = profile(s, 1.5, [2, 5, 10], delta=0.4)
    assert a.to_dict() | {"profiled_at": None} == b.to_dict() | {"profiled_at": None}
    assert profile(s, 2.0, [2, 5, 10], delta=0.4).params_digest != a.params_digest
    assert profile(s, 1.5, [2, 5, 10], delta=0.4, quantile_rule="tukey_hinge").params_digest != a.params_digest


def test_profile_error_carries_id():
    with pytest.raises(ParameterError, match=r"^\[short\] "):
        profile(TimeSeries.from_values([1.0, 2.0], id="short"), 1.5, PeakParams(1.0, 5))
    with pytest.raises(ParameterError, match=r"\[x\] fence_k"):
        profile(TimeSeries.from_values([1.0, 2.0, 3.0], id="x"), -1)


def test_source_date_epoch(monkeypatch):
    monkeypatch.setenv("SOURCE_DATE_EPOCH", "0")
    assert profile(sine(100, 20)).profiled_at == "1970-01-01T00:00:00+00:00"


def _bank(counts):
    """Series with a known number of +-10 spikes on a unit sine."""
    cat = BankCatalog()
    for name, (n, k) in counts.items():
        s, _ = spiked_sine(n, k, seed=len(name), id=name)
        cat.add(entry(s))
    return cat


def test_rank_single():
    assert rank_bank(_bank({"solo": (400, 3)})) == ["solo"]


def test_rank_empty():
    with pytest.raises(UsageError):
        rank_bank(BankCatalog())
    with pytest.raises(UsageError):
        rank_bank(_bank({"a": (100, 1)}), key="bogus")


def test_rank_spike_bank():
    cat = _bank({"s0": (1000, 0), "s3": (1000, 3), "tenA": (1000, 10), "tenB": (500, 10), "s50": (1000, 50)})
    got = {k: e.profile.outlier_count for k, e in cat.entries.items()}
    assert got == {"s0": 0, "s3": 3, "tenA": 10, "tenB": 10, "s50": 50}
    # the two 10-spike sets tie on count; the shorter one has the larger fraction
    assert rank_bank(cat) == ["s50", "tenB", "tenA", "s3", "s0"]


def test_rank_two_fixture_bank_by_reported_counts():
    cat = BankCatalog()
    for name, n, k in (("GBP/USD", 6135, 639), ("JPY/USD", 5000, 24)):
        s, _ = spiked_sine(n, k, seed=5, id=name)
        cat.add(entry(s, peaks=PeakParams(0.5, 5)))
    assert [cat.entries[i].profile.outlier_count for i in ("GBP/USD", "JPY/USD")] == [639, 24]
    assert rank_bank(cat, "outlier_count") == ["GBP/USD", "JPY/USD"]
    assert rank_bank(cat, "outlier_fraction") == ["GBP/USD", "JPY/USD"]


@given(st.permutations(["a", "b", "c", "d"]))
def test_rank_insertion_order_irrelevant(order):
    base = _bank({"a": (300, 2), "b": (300, 2), "c": (600, 2), "d": (300, 7)})
    cat = BankCatalog()
    for k in order:
        cat.add(base.entries[k])
    for key in ("outlier_count", "outlier_fraction", "peak_count", "period_cv"):
        assert rank_bank(cat, key) == rank_bank(base, key)


def test_catalog_roundtrip(tmp_path):
    empty = BankCatalog()
    save_catalog(empty, tmp_path / "e.json")
    assert load_catalog(tmp_path / "e.json") == empty
    cat = _bank({"a": (300, 2), "b": (400, 0), "c": (500, 9)})
    save_catalog(cat, tmp_path / "c.json")
    assert load_catalog(tmp_path / "c.json") == cat


def test_catalog_integrity(tmp_path):
    cat = _bank({"a": (300, 2), "b": (400, 1)})
    text = dumps_catalog(cat)
    path = tmp_path / "t.json"
    path.write_text(text[: len(text) // 2])
    with pytest.raises(IntegrityError, match="truncated"):
        load_catalog(path)
    doc = json.loads(text)
    doc["entries"]["a"]["profile"]["outlier_count"] = 99
    with pytest.raises(IntegrityError, match="digest"):
        loads_catalog(json.dumps(doc))
    doc = json.loads(text)
    doc["version"] = "bank-v0"
    with pytest.raises(IntegrityError, match="version"):
        loads_catalog(json.dumps(doc))
    with pytest.raises(IntegrityError, match="not found"):
        load_catalog(tmp_path / "missing.json")


def test_catalog_digest_is_sha256_of_canonical_entries():
    import hashlib
    cat = _bank({"a": (200, 1)})
    doc = json.loads(dumps_catalog(cat))
    canon = json.dumps(doc["entries"], sort_keys=True, separators=(",", ":")).encode()
    assert doc["digest"] == hashlib.sha256(canon).hexdigest()
    assert doc["version"] == "bank-v1"

import json

import pytest

import kgbasis


def test_catalog_lists_families():
    names = [e["name"] for e in kgbasis.catalog()]
    assert "G5" in names and "miech" in names


def test_group_structure():
    g = kgbasis.group("Q8xC2")
    assert g["order"] == 16
    assert g["center_order"] == 4
    assert not g["abelian"]
    assert kgbasis.group("G5", m=4)["order"] == 16


def test_jennings_series_agree():
    j = kgbasis.jennings("G13", field=(2, 2), m=5)
    assert j["series_agree"]


def test_construct_then_verify_round_trip():
    report, text = kgbasis.construct("C9xC3", "abelian", field=3)
    assert report["ok"]
    assert json.loads(text)["field"]["p"] == 3
    assert kgbasis.verify(text)["pass"]
    assert kgbasis.verify(json.loads(text))["pass"]


def test_certify_powerful_group():
    r = kgbasis.certify("M16")
    assert r["verdict"] == "OBSTRUCTED"
    assert r["survivor_count"] == 0
    assert "tags" not in r


def test_certify_matches_across_workers():
    one = kgbasis.certify("G5", degree=3, workers=1, tags=True, m=4)
    two = kgbasis.certify("G5", degree=3, workers=3, tags=True, m=4)
    assert one == two
    assert one["verdict"] == "INCONCLUSIVE"


def test_search():
    found, text = kgbasis.search("Q8", field=(2, 2))
    assert found["outcome"] == "found"
    assert kgbasis.verify(text)["pass"]
    none, text = kgbasis.search("Q8", field=2)
    assert none["outcome"] == "exhausted" and text is None


def test_errors_carry_codes():
    with pytest.raises(kgbasis.KgbError, match="UNKNOWN_GROUP"):
        kgbasis.group("G99")
    with pytest.raises(kgbasis.KgbError, match="PARAMETER_OUT_OF_RANGE"):
        kgbasis.group("G5", m=2)
    with pytest.raises(kgbasis.KgbError, match="INVALID_ARGUMENT"):
        kgbasis.certify("C4xC2")

import json
import os
from pathlib import Path

import pytest

import agsdiff

FIXTURES = Path(os.environ.get("AGSDIFF_FIXTURES", Path(__file__).resolve().parents[1] / "fixtures"))


def fixture(name):
    return (FIXTURES / name).read_text()


def test_jaro_winkler():
    assert agsdiff.jaro_winkler("login", "signin") == pytest.approx(0.5888888888888889, abs=1e-12)
    assert agsdiff.jaro_winkler("MARTHA", "MARHTA") == pytest.approx(0.9611111111111111, abs=1e-12)
    assert agsdiff.jaro_winkler("", "") == 1.0
    assert agsdiff.jaro("ab", "ba") == 0.0


def test_canonical_and_errors():
    doc = {"attributes": {"b": "2", "a": "1"}, "children": []}
    text = agsdiff.canonical(json.dumps({"roots": [doc]}))
    assert json.loads(agsdiff.canonical(text)) == json.loads(text)
    assert list(json.loads(text)["roots"][0]["attributes"]) == ["a", "b"]
    with pytest.raises(agsdiff.ParseError):
        agsdiff.canonical("[")
    with pytest.raises(agsdiff.Error):
        agsdiff.canonical('{"roots": [{"attributes": {}, "style": 1}]}')


def test_login_report():
    report = agsdiff.execute(
        fixture("login_before.ags.json"), fixture("login_after.ags.json"), rules=fixture("login.ignore")
    )
    assert report["status"] == "differences"
    assert len(report["changed"]) == 1
    changed = report["changed"][0]
    assert {d["key"] for d in changed["attribute_diffs"]} == {"background-color", "text", "type"}
    assert {a["key"] for a in changed["only_expected"]} == {"href"}
    assert {a["key"] for a in changed["only_actual"]} == {"onclick"}


def test_snapshot_input_and_identify():
    ags = json.loads(agsdiff.construct_ags(fixture("page.snap.json")))
    assert ags["roots"][0]["attributes"]["type"] == "html"
    result = agsdiff.identify(fixture("page.snap.json"), fixture("page.snap.json"), strategy="strong-weak")
    assert result["deleted"] == [] and result["created"] == []
    assert len(result["maintained"]) == 4
    with pytest.raises(agsdiff.ConfigError):
        agsdiff.identify(fixture("page.snap.json"), fixture("page.snap.json"), strategy="fuzzy")
    with pytest.raises(agsdiff.ConfigError):
        agsdiff.execute(fixture("page.snap.json"), fixture("page.snap.json"), u=2.0)


def test_checkpoint_groups_and_cli(tmp_path):
    suite = tmp_path / "suite"
    suite.mkdir()
    (suite / "recheck.ignore").write_text(fixture("login.ignore"))
    first = agsdiff.checkpoint(suite, "login", "submit", fixture("login_before.ags.json"))
    assert first["status"] == "golden-master-created"
    second = agsdiff.checkpoint(suite, "login", "submit", fixture("login_after.ags.json"))
    assert second["status"] == "differences"
    assert len(agsdiff.groups(suite)) == 5

    code, out, err = agsdiff.run_cli(["accept", "--suite", str(suite), "--all"])
    assert code == 0, err
    assert agsdiff.groups(suite) == []
    code, _, _ = agsdiff.run_cli(["frobnicate"])
    assert code == 3


def test_bench():
    result = agsdiff.bench(pages=1, sizes=[150], strategies=["matching"])
    assert len(result["rows"]) == 1
    aggregate = result["aggregate"][0]
    assert aggregate["strategy"] == "matching"
    assert aggregate["tp"] + aggregate["fn"] == 8

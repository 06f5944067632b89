import json

import pytest

import cechctx


def test_examples_are_bundled():
    assert cechctx.example_names() == [
        "hardy", "prbox", "ghz", "triangle", "ks18", "peres-mermin", "ks-false-positive",
    ]


def test_hardy_false_positive():
    m = cechctx.load_example("hardy")
    assert sum(len(s) for s in m.support) == 13
    assert m.classify()["verdict"] == "contextual"
    entry = m.obstruction(0, "0,0", ring="z")
    assert entry["vanishes"] and not entry["extendable"]
    assert "-1" in entry["witness"][1].values()
    assert m.false_positives("z")["entries"] == [(0, "0,0")]


def test_prbox_strongly_contextual():
    m = cechctx.load_example("prbox")
    assert m.classify() == {"verdict": "strongly_contextual", "global_sections": []}
    for ring in ("z", "z2"):
        assert not any(e["vanishes"] for e in m.all_obstructions(ring))


def test_gcd_and_counterexample():
    tri = cechctx.load_example("triangle").gcd()
    assert (tri["gcd"], tri["cover_size"], tri["holds"]) == (2, 3, False)
    fp = cechctx.load_example("ks-false-positive").false_positives("z")
    assert fp["strongly_contextual"] and fp["strong_contextuality_false_positive"]


def test_report_json_is_deterministic():
    m = cechctx.load_example("ghz")
    a = m.report_json("z2")
    assert a == m.report_json("z2")
    ring = json.loads(a)["rings"][0]
    assert ring["ring"] == "z2" and ring["vanishing"] == 0 and len(ring["obstructions"]) == 16


def test_validation_errors():
    bad = {"measurements": ["A"], "outcomes": [0, 1], "contexts": [["A"]],
           "model": {"distribution": [{"0": "1/2", "1": "49/100"}]}}
    with pytest.raises(cechctx.ValidationError, match="context 0"):
        cechctx.load(json.dumps(bad))
    with pytest.raises(ValueError):
        cechctx.load_example("hardy").obstruction(1, "0,0")
    with pytest.raises(ValueError):
        cechctx.load_example("hardy").obstruction(0, "0,0", ring="q")


def test_run_command():
    code, out, err = cechctx.run(["examples", "run", "ghz", "--ring", "z2"])
    assert code == 0
    assert "16/16 support sections non-vanishing" in out
    assert cechctx.run(["obstruction"])[0] == 1

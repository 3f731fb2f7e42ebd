import json
import os
import pathlib

import numpy as np
import pytest

import dirac_gbdt as dg

DATA = pathlib.Path(os.environ.get("DGBDT_TEST_DATA", pathlib.Path(__file__).parents[2] / "tests" / "data"))


def load(name):
    return dg.ParameterTriple.from_json((DATA / name).read_text())


def test_fixture_potential():
    seq = dg.GbdtSequence.build(load("t1.json"), 2)
    expected = np.array([[233, 208], [208, 233]]) / 105
    np.testing.assert_allclose(seq.c(0), expected, atol=1e-12)


def test_three_routes_agree():
    t1 = load("t1.json")
    seq = dg.GbdtSequence.build(t1, 60)
    want = (-80 - 24j) / 109
    assert abs(dg.reflection_closed(t1, 1.0)[0, 0] - want) < 1e-12
    assert abs(dg.weyl_value(seq, 1.0)[0, 0] - want) < 1e-12
    assert abs(dg.reflection_oracle(seq, 1.0, 60, 1e-9)[0, 0] - want) < 1e-7


def test_skew_rules_differ_off_one():
    t2 = load("t2.json")
    corrected = dg.reflection_closed(t2, 0.5)
    printed = dg.reflection_closed(t2, 0.5, dg.SkewRule.PRINTED)
    assert np.linalg.norm(corrected - printed) > 1e-3


def test_generated_triple_verifies():
    t = dg.generate(dg.SystemKind.SKEW, 3, 2, 1, 5)
    assert dg.validate(t)["strongly_admissible"]
    report = json.loads(dg.verify(t))
    assert report["pass"], [c for c in report["checks"] if not c["pass"]]


def test_json_round_trip():
    t = dg.generate(dg.SystemKind.SELF_ADJOINT, 4, 1, 2, 3)
    text = t.to_json()
    assert dg.ParameterTriple.from_json(text).to_json() == text


def test_errors_are_typed():
    seq = dg.GbdtSequence.build(load("t1.json"), 2)
    with pytest.raises(dg.PoleError):
        dg.transfer_eval(seq, 0, 2j)
    with pytest.raises(dg.Error):
        dg.generate(dg.SystemKind.SELF_ADJOINT, 0, 1, 1, 1)

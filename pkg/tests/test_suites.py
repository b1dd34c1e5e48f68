from __future__ import annotations

import json

import pytest

from endocalc import corpus
from endocalc.errors import UnknownSuite
from endocalc.relations import add, compose
from endocalc.suites import SUITES, SuiteReport, available_suites, emit_report, relation_from_json, run_suite, ser


def test_suite_ids():
    for name in ["L1-distributivity", "L2-ring", "L3-csharp", "L4-propagation", "L5/6-restriction-kat", "L7-rank",
                 "Q6-nearring", "L13-cflat", "L14/15-global", "L19-quotient", "L10-projection", "Z11-field"]:
        assert name in available_suites()


def test_unknown_suite_lists_available():
    with pytest.raises(UnknownSuite) as e:
        run_suite("L99", 1, 1)
    assert "L7-rank" in str(e.value)


def test_rank_suite_small():
    r = run_suite("L7-rank", 1, 50)
    assert r.failures == [] and r.exit_code == 0 and r.checks == 100


def test_right_distributivity_equality_is_expected_failure():
    r = run_suite("L1-right-distributivity-equality", 1)
    assert r.failures == [] and len(r.expected_failures) == 1
    w = r.expected_failures[0]["witness"]
    left, right = relation_from_json(w["left"]), relation_from_json(w["right"])
    phi, psi, delta = corpus.right_distributivity_counterexample()
    assert left.graph == compose(add(phi, psi), delta).graph and left.graph != right.graph


@pytest.mark.parametrize("name", sorted(SUITES))
def test_every_suite_runs_clean(name):
    trials = 3 if SUITES[name][1] > 11 else None
    r = run_suite(name, 7, trials)
    assert r.failures == [], r.failures[:2]


def test_determinism():
    a = emit_report(run_suite("L2-ring", 3, 10))
    b = emit_report(run_suite("L2-ring", 3, 10))
    assert a == b
    assert emit_report(run_suite("L2-ring", 4, 10)) == emit_report(run_suite("L2-ring", 4, 10))


def test_trials_are_independent_of_count():
    short = run_suite("Q6-nearring", 5, 3)
    long = run_suite("Q6-nearring", 5, 6)
    assert short.checks <= long.checks
    firsts = [f for f in long.expected_failures if f["trial"] < 3]
    assert firsts == short.expected_failures


def test_report_schema():
    text = emit_report(SuiteReport("L7-rank", 1, 0))
    d = json.loads(text)
    assert list(d) == ["schema_version", "suite_name", "seed", "trials", "checks", "failures", "expected_failures", "claims"]
    assert d["schema_version"] == "1" and '"failures": []' in text


def test_witness_round_trip():
    delta, gamma = corpus.flat_clause1_counterexample()
    again = relation_from_json(json.loads(json.dumps(ser(delta))))
    assert again.ambient == delta.ambient and again.graph == delta.graph
    r = run_suite("L13-cflat", 1, 1)
    (rec,) = r.expected_failures
    assert tuple(map(tuple, rec["witness"])) == ((2, 0), (1, 0))


def test_failures_are_recorded(monkeypatch):
    import endocalc.suites as S

    def broken(ctx, rng, caps):
        ctx.check("always fails", False, {"n": rng.randint(0, 9)}, [1, 2])

    monkeypatch.setitem(S.SUITES, "broken", (broken, 2))
    r = run_suite("broken", 1)
    assert r.exit_code == 1 and [f["trial"] for f in r.failures] == [0, 1]
    assert r.failures == run_suite("broken", 1).failures

import json

import pytest

from whtorsion import tlx
from whtorsion.fuzz import SUITES, TrialResult, _echo, run_suite, run_trial, summarise, trial_rng
from whtorsion.doubles import lens_complex
from whtorsion.chains import identity_map


def test_trial_rng_depends_on_all_three_keys():
    draws = {trial_rng(s, suite, i).random() for s in (1, 2) for suite in ("split", "parity") for i in (0, 1)}
    assert len(draws) == 8
    assert trial_rng(3, "split", 4).random() == trial_rng(3, "split", 4).random()


@pytest.mark.parametrize("suite", SUITES)
def test_small_suites_pass(suite):
    summary = run_suite(suite, 6, seed=2)
    assert summary["passed"] == 6, summary["first_counterexample"]
    assert summary["failed"] == 0 and summary["first_counterexample"] is None


def test_suite_reports_are_deterministic():
    a = json.dumps(run_suite("theoremB", 5, seed=9), sort_keys=True)
    b = json.dumps(run_suite("theoremB", 5, seed=9), sort_keys=True)
    assert a == b
    assert a != json.dumps(run_suite("theoremB", 5, seed=10), sort_keys=True)


def test_worker_count_does_not_change_the_report():
    one = run_suite("parity", 6, seed=4, workers=1)
    two = run_suite("parity", 6, seed=4, workers=2)
    assert one == two


def test_single_trial_matches_suite_entry():
    r = run_trial("doubles", 3, 2, range(2, 10), None)
    assert r.index == 2 and r.passed


def test_failure_carries_a_parseable_counterexample():
    C = lens_complex(5, 2)
    echo = _echo(C.group, K=C, f=identity_map(C))
    bad = TrialResult(1, False, {"x": "Nontrivial"}, {"group": "C5"}, echo)
    good = TrialResult(0, True, {"x": "Trivial"}, {"group": "C5"})
    s = summarise("calculus", 2, 0, range(2, 10), None, [good, bad])
    assert s["passed"] == 1 and s["failed"] == 1
    assert s["checks"]["x"] == {"Trivial": 1, "Nontrivial": 1, "Unknown": 0}
    doc = tlx.parse(s["first_counterexample"]["counterexample"])
    assert doc.complexes["K"] == C


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope", 1, 0)

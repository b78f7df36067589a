import json

import pytest

import rickartlab.suite as suite
from rickartlab import Status, Verdict
from rickartlab.corpus import Corpus
from rickartlab.suite import CONSISTENT, REGISTRY, REGISTRY_IDS, VIOLATION, run_suite

REQUIRED_IDS = {"prop-2.2", "thm-2.3", "thm-2.5", "cor-2.6", "prop-3.1", "prop-3.3", "thm-3.4",
                "prop-3.5-fwd", "prop-3.5-rev", "chart", "lemma-3.10", "thm-qi-equiv", "thm-small",
                "cor-ring-small"}


@pytest.fixture(scope="module")
def report(corpus):
    return run_suite(corpus, threads=1)


def test_registry_ids_unique_and_complete():
    assert len(REGISTRY_IDS) == len(set(REGISTRY_IDS))
    assert REQUIRED_IDS <= set(REGISTRY_IDS)
    assert all(e.anchor and e.scope in {"module", "pair", "ring", "zmodule"} for e in REGISTRY)


def test_builtin_suite_is_consistent(report, corpus):
    assert report.ok, [(t.id, r.instance, r.detail) for t in report.theorems for r in t.violations]
    assert [t.id for t in report.theorems] == list(REGISTRY_IDS)
    assert report.by_id("prop-2.2").checked >= 12
    assert len(corpus.ring_specs) >= 10 and len(corpus.module_specs) >= 10


def test_suite_exercises_both_sides(report):
    """The corpus contains instances on both sides of the main hypotheses."""
    for tid in ("prop-2.2", "thm-2.3", "prop-3.3", "thm-qi-equiv", "chart"):
        b = report.by_id(tid).breakdown
        assert b.get("HOLDS", 0) > 0 and b.get("FAILS", 0) > 0, (tid, b)


def test_qi_equivalence_instances(report):
    res = {r.instance: r for r in report.by_id("thm-qi-equiv").results}
    assert set(res["reg_z4"].detail["conditions"].values()) == {False}
    assert set(res["reg_z6"].detail["conditions"].values()) == {True}


def test_threaded_run_matches_serial(corpus, report):
    threaded = run_suite(corpus, threads=4)
    assert json.dumps(threaded.to_json(), sort_keys=True) == json.dumps(report.to_json(), sort_keys=True)


def test_env_thread_count(monkeypatch):
    monkeypatch.setenv("RICKARTLAB_THREADS", "3")
    assert suite.worker_count() == 3
    monkeypatch.setenv("RICKARTLAB_THREADS", "junk")
    assert suite.worker_count() == 1


def test_errors(corpus):
    with pytest.raises(ValueError):
        run_suite(Corpus())
    with pytest.raises(KeyError):
        run_suite(corpus, ["nope"])


def test_mutant_decider_is_caught(corpus, monkeypatch):
    """A decider that calls every module Rickart must trip a theorem check."""
    real = suite.decide_module_property

    def mutant(M, prop, *args, **kw):
        if prop == "rickart":
            return Verdict(prop, Status.HOLDS)
        return real(M, prop, *args, **kw)

    monkeypatch.setattr(suite, "decide_module_property", mutant)
    rep = run_suite(corpus, ["prop-3.1", "thm-3.4"], threads=1)
    assert rep.violation_count > 0
    bad = {r.instance for r in rep.by_id("prop-3.1").violations}
    assert "reg_z4" in bad
    assert all(r.status == VIOLATION for t in rep.theorems for r in t.violations)


def test_filtered_run(corpus):
    rep = run_suite(corpus, ["ex-2.4", "ex-klr-z4"])
    assert [t.id for t in rep.theorems] == ["ex-2.4", "ex-klr-z4"]
    assert rep.ok
    statuses = {r.status for t in rep.theorems for r in t.results}
    assert CONSISTENT in statuses

import dataclasses

import pytest

from realforms import classify as cl
from realforms import verify as vf

SMALL = vf.Options(seed=3, max_n=4, samples=8)


@pytest.mark.parametrize("name", sorted(vf.SUITES))
def test_suite_passes(name):
    result = vf.SUITES[name](SMALL)
    assert result.cases > 0
    assert result.failed == 0, result.counterexample
    assert result.passed == result.cases


def test_report_sorted_and_deterministic():
    a = vf.run(["twist-identities", "counts", "embedding"], SMALL).to_json()
    b = vf.run(["embedding", "twist-identities", "counts"], SMALL).to_json()
    assert a == b
    assert [s["suite"] for s in a["suites"]] == ["counts", "embedding", "twist-identities"]
    assert a["all_passed"]


def test_all_suites_by_default():
    report = vf.run(None, vf.Options(seed=0, max_n=2, samples=4))
    assert [r.suite for r in report.results] == sorted(vf.SUITES)


@pytest.mark.parametrize(
    "suites, opts",
    [
        (["nope"], SMALL),
        (None, vf.Options(max_n=11)),
        (None, vf.Options(max_n=0)),
        (None, vf.Options(samples=0)),
    ],
)
def test_bad_arguments(suites, opts):
    with pytest.raises(ValueError):
        vf.run(suites, opts)


def test_count_oracles_agree():
    for g in cl.all_descriptors(10):
        assert vf.theorem_count(g) == vf.enumerated_count(g)


def test_failure_is_reported(monkeypatch):
    real = cl.classify

    def broken(g):
        r = real(g)
        if g.variant is cl.Variant.SU and g.n == 3:
            return dataclasses.replace(r, classes=r.classes[:1])
        return r

    monkeypatch.setattr(cl, "classify", broken)
    result = vf.suite_counts(SMALL)
    assert result.failed > 0
    assert result.counterexample.startswith("SU(n=3")
    assert not result.ok


def test_first_counterexample_kept():
    r = vf.SuiteResult("x")
    r.check(True, "a")
    r.check(False, "b")
    r.check(False, "c")
    assert (r.cases, r.passed, r.failed, r.counterexample) == (3, 1, 2, "b")

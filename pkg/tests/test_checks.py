import json

import pytest

from partheta.checks import CLAIM_IDS, PrecisionBudget, run_suite
from partheta.report import STATUSES, CheckReport, Witness, status_from

FAST = ["identity-functional", "identity-split", "phi-bounds", "sign-at-negative-powers",
        "value-at-minus-inverse-q", "sign-at-half-powers-small-v", "sign-zones", "odd-part-small"]


def test_reports_sorted_and_cited():
    reps = run_suite(FAST, PrecisionBudget(n_random=40))
    assert [r.claim_id for r in reps] == sorted(FAST)
    for r in reps:
        assert r.status in STATUSES
        assert r.citations and r.witnesses


def test_deterministic_output():
    b = PrecisionBudget(n_random=30, seed=5)
    a = json.dumps([r.as_dict() for r in run_suite(["identity-fourfold", "phi-monotone-in-k"], b)])
    c = json.dumps([r.as_dict() for r in run_suite(["identity-fourfold", "phi-monotone-in-k"], b)])
    assert a == c


def test_seed_changes_points():
    a = run_suite(["identity-functional"], PrecisionBudget(n_random=10, seed=1))[0]
    b = run_suite(["identity-functional"], PrecisionBudget(n_random=10, seed=2))[0]
    assert a.witnesses[0].input != b.witnesses[0].input


def test_small_v_probe_records_failure_without_failing():
    r = run_suite(["sign-at-half-powers-small-v"])[0]
    assert r.status in ("conjecture_pass", "conjecture_violation")
    if r.status == "conjecture_violation":
        assert "first failure" in r.notes


def test_odd_part_bound_is_hard_pass():
    assert run_suite(["odd-part-small"])[0].status == "pass"


def test_unknown_claim():
    with pytest.raises(ValueError):
        run_suite(["no-such-claim"])


def test_skipped_on_numerical_error(monkeypatch):
    from partheta import checks
    from partheta.errors import NoConvergence

    def boom(budget):
        raise NoConvergence("forced")

    monkeypatch.setitem(checks.CHECKS, "jacobi-psi", boom)
    r = run_suite(["jacobi-psi"])[0]
    assert r.status == "skipped" and "forced" in r.notes


def test_status_rules():
    good, bad = Witness("a", "1", "0", True), Witness("b", "1", "0", False)
    assert status_from([good]) == "pass"
    assert status_from([good, bad]) == "fail"
    assert status_from([bad], proven=False) == "conjecture_violation"
    assert status_from([]) == "skipped"
    assert not CheckReport("x", "fail").ok


def test_claim_ids_stable():
    assert "limit-at-minus-one" in CLAIM_IDS and "spectrum-table" in CLAIM_IDS
    assert CLAIM_IDS == sorted(CLAIM_IDS)

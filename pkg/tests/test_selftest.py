"""Selftest harness: green on a fresh tree, deterministic, mutation-sensitive."""

from mucut import DEFAULT_SEED, run_selftest, selftest_rows
from mucut import symbols


def row_status(report):
    return {row["id"]: row["passed"] for row in report["rows"]}


def test_fresh_tree_is_green():
    report = run_selftest()
    assert report["passed"]
    assert report["schema"] == "mucut/1"
    assert report["seed"] == DEFAULT_SEED
    assert all(row_status(report).values())


def test_row_catalog_is_stable():
    ids = [row.row_id for row in selftest_rows()]
    assert len(ids) == len(set(ids))
    assert ids[0] == "raise-power-identity"
    assert "commutation-criterion" in ids
    assert "cone-normal-form-invariance" in ids
    with_diag = [row.row_id for row in selftest_rows(True)]
    assert "commutation-criterion-uniform-range" in with_diag
    assert len(with_diag) == len(ids) + 1


def test_deterministic_across_runs():
    assert run_selftest(seed=5) == run_selftest(seed=5)


def test_seed_changes_samples_not_verdict():
    for seed in (1, 99):
        assert run_selftest(seed=seed)["passed"]


def test_uniform_range_diagnostic_fails_by_design():
    report = run_selftest(include_uniform_range_diagnostic=True)
    status = row_status(report)
    assert not report["passed"]
    assert not status["commutation-criterion-uniform-range"]
    assert status["commutation-criterion"]
    failures = [rid for rid, ok in status.items() if not ok]
    assert failures == ["commutation-criterion-uniform-range"]


def test_bracket_sign_flip_is_caught(monkeypatch):
    original = symbols.poisson_bracket
    monkeypatch.setattr(symbols, "poisson_bracket",
                        lambda f, g: -original(f, g))
    status = row_status(run_selftest())
    assert not status["symbol-homomorphism"]
    assert status["raise-power-identity"]

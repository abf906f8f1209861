import effham.checks as checks


def test_run_all_passes_and_is_seeded():
    results = checks.run_all(seed=checks.DEFAULT_SEED)
    assert len(results) == len(checks.CHECKS)
    assert all(r.passed for r in results), [(r.name, r.detail) for r in results if not r.passed]


def test_crashing_check_counts_as_failure(monkeypatch):
    def boom(rng):
        raise RuntimeError("kaboom")

    monkeypatch.setattr(checks, "CHECKS", [("boom", boom), ("ok", lambda rng: (True, "fine"))])
    res = checks.run_all(seed=1)
    assert [r.passed for r in res] == [False, True]
    assert "RuntimeError: kaboom" in res[0].detail


def test_seed_from_env(monkeypatch):
    monkeypatch.setenv("EFFHAM_SEED", "42")
    assert checks.seed_from_env() == 42
    monkeypatch.delenv("EFFHAM_SEED")
    assert checks.seed_from_env() == checks.DEFAULT_SEED

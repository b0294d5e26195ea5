"""Basic app construction smoke test."""

import pytest

from epistemic_workbench.app import Settings, create_app

TRACKED = [
    "EPISTEMIC_CLOSURE_CAP",
    "EPISTEMIC_HORIZON_FACTOR",
    "EPISTEMIC_DEFAULT_TRIALS",
    "EPISTEMIC_DEFAULT_INSTANCES",
    "EPISTEMIC_COVER_DOUBLINGS",
    "EPISTEMIC_EXHAUSTIVE_LIMIT",
    "EPISTEMIC_LOG_LEVEL",
]


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in TRACKED:
        monkeypatch.delenv(name, raising=False)


def test_app_constructs():
    app = create_app()
    assert app["settings"] == Settings()
    assert "fixture_nl_prime" in app["registry"]["fixtures"]
    assert app["registry"]["axiom_sets"]
    assert app["version"]


def test_settings_read_from_environment(monkeypatch):
    monkeypatch.setenv("EPISTEMIC_CLOSURE_CAP", "4096")
    monkeypatch.setenv("EPISTEMIC_HORIZON_FACTOR", " 5 ")
    monkeypatch.setenv("EPISTEMIC_LOG_LEVEL", "debug")

    settings = create_app()["settings"]
    assert settings.closure_cap == 4096
    assert settings.horizon_factor == 5
    assert settings.log_level == "DEBUG"
    assert settings.default_trials == 200


def test_blank_values_fall_back_to_defaults(monkeypatch):
    monkeypatch.setenv("EPISTEMIC_DEFAULT_TRIALS", "   ")
    assert create_app()["settings"].default_trials == 200


def test_non_integer_setting_is_rejected(monkeypatch):
    monkeypatch.setenv("EPISTEMIC_CLOSURE_CAP", "lots")
    with pytest.raises(RuntimeError, match="`EPISTEMIC_CLOSURE_CAP` must be an integer"):
        create_app()


def test_non_positive_setting_is_rejected(monkeypatch):
    monkeypatch.setenv("EPISTEMIC_COVER_DOUBLINGS", "0")
    with pytest.raises(RuntimeError, match="must be positive, got 0"):
        create_app()


def test_unknown_log_level_is_rejected(monkeypatch):
    monkeypatch.setenv("EPISTEMIC_LOG_LEVEL", "chatty")
    with pytest.raises(RuntimeError, match="not a logging level"):
        create_app()

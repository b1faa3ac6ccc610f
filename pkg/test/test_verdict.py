import importlib

import pytest

import hoopacity.settings
from hoopacity.serializers import ValidationError
from hoopacity.verdict import Method, Property, Verdict


def test_violation_needs_a_witness():
    with pytest.raises(ValidationError, match="without a witness"):
        Verdict(opaque=False, method=Method.PAIR)


def test_oracle_violation_may_omit_the_state():
    verdict = Verdict(opaque=False, method=Method.ORACLE, witness=(1,), witness_text="g", bound=2)
    assert verdict.describe() == "not high-order opaque; witness: g"


def test_describe_current_state():
    verdict = Verdict(
        opaque=False, method=Method.CSO, property=Property.CURRENT_STATE,
        witness=(), witness_text="ε", violating_state="{0,2}",
    )
    assert verdict.describe() == "not current-state opaque; witness: ε; state: {0,2}"


def test_verdicts_are_frozen():
    verdict = Verdict(opaque=True, method=Method.DOUBLE)
    with pytest.raises(ValidationError):
        verdict.opaque = False


def test_json_round_trip():
    verdict = Verdict(opaque=False, method=Method.DOUBLE, witness=(1, 0), witness_text="gr")
    assert Verdict.model_validate_json(verdict.model_dump_json()) == verdict


@pytest.fixture
def reload_settings(monkeypatch):
    yield lambda: importlib.reload(hoopacity.settings)
    monkeypatch.undo()
    importlib.reload(hoopacity.settings)


def test_settings_from_environment(monkeypatch, reload_settings):
    monkeypatch.setenv("HOOPACITY_MAX_STATES", "17")
    monkeypatch.setenv("HOOPACITY_LOG_LEVEL", "info")
    monkeypatch.setenv("HOOPACITY_DEBUG", "yes")
    module = reload_settings()
    assert module.settings.MAX_STATES == 17
    assert module.settings.LOG_LEVEL == "INFO"
    assert module.settings.DEBUG is True
    assert module.settings.ORACLE_MAX_LEN == 6

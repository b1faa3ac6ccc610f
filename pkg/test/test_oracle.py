import pytest

from hoopacity.automaton import Automaton
from hoopacity.double import build_double_observer
from hoopacity.exceptions import UsageError
from hoopacity.knowledge import DisambiguationTask, know
from hoopacity.observer import build_observer, estimate
from hoopacity.oracle import (
    OracleConfig,
    cso_oracle,
    estimate_oracle,
    hoo_oracle,
    know_oracle,
    pair_set_oracle,
    user_estimates_oracle,
)
from hoopacity.pair import build_state_pair_observer, verify_hoo_pair
from hoopacity.serializers import ValidationError
from hoopacity.verdict import Method, Property

from strategies import observations


def square(*xs):
    return frozenset((x, y) for x in xs for y in xs)


# --- Estimates ---

def test_estimate_oracle_g1(g1):
    a = g1.automaton
    assert estimate_oracle(a, a.user_observable, a.parse_string("bb")) == frozenset({5, 7})
    assert estimate_oracle(a, a.user_observable, a.parse_string("bbd")) == frozenset({7})
    assert estimate_oracle(a, a.intruder_observable, a.parse_string("abba")) == frozenset({7})


def test_full_alphabet_estimate_is_the_run(g1):
    a = g1.automaton
    for s, x in a.iter_strings(4):
        assert estimate_oracle(a, a.events, s) == frozenset({x})


def test_estimate_oracle_matches_observers_on_fixtures(g1, robot):
    cfg = OracleConfig(max_len=4)
    for model in (g1, robot):
        a = model.automaton
        for alphabet in (a.user_observable, a.intruder_observable):
            obs = build_observer(a, alphabet)
            for alpha in observations(a, alphabet, 5):
                if len(alpha) <= cfg.max_len:
                    assert estimate_oracle(a, alphabet, alpha, cfg) == estimate(obs, alpha)


def test_observation_longer_than_bound_is_rejected(g1):
    a = g1.automaton
    with pytest.raises(UsageError, match="exceeds the oracle bound 1"):
        estimate_oracle(a, a.user_observable, a.parse_string("bb"), OracleConfig(max_len=1))


def test_observation_outside_alphabet_is_rejected(g1):
    a = g1.automaton
    with pytest.raises(UsageError):
        estimate_oracle(a, a.user_observable, a.parse_string("a"))


def test_config_bounds_are_validated():
    with pytest.raises(ValidationError):
        OracleConfig(max_len=-1)
    with pytest.raises(ValidationError):
        OracleConfig(tail_slack=-1)


def test_tail_slack_defaults_to_state_count(g1):
    assert OracleConfig().gap(g1.automaton) == 8
    assert OracleConfig(tail_slack=2).gap(g1.automaton) == 2


# --- Knowledge ---

@pytest.mark.parametrize("observation, expected", [("b", False), ("bd", True), ("bbd", True)])
def test_know_oracle_g1(g1, observation, expected):
    a = g1.automaton
    assert know_oracle(a, g1.task, a.parse_string(observation)) is expected


def test_know_oracle_with_empty_task(g1):
    a = g1.automaton
    assert know_oracle(a, DisambiguationTask(), a.parse_string("b"))


def test_know_oracle_matches_know(g1, robot):
    for model in (g1, robot):
        a = model.automaton
        obs = build_observer(a, a.user_observable)
        for alpha in observations(a, a.user_observable, 5):
            if len(alpha) <= 6:
                assert know_oracle(a, model.task, alpha) == know(obs, model.task, alpha)


# --- Pair sets ---

@pytest.mark.parametrize(
    "observation, expected",
    [
        ("ε", square(0, 1, 2)),
        ("b", frozenset({(3, 3), (3, 4), (4, 3), (4, 4), (6, 6)})),
        ("ab", square(3, 4)),
        ("abb", square(5, 7)),
        ("bb", frozenset()),
    ],
)
def test_pair_set_oracle_g1(g1, observation, expected):
    a = g1.automaton
    assert pair_set_oracle(a, a.parse_string(observation)) == expected


def test_pair_set_oracle_matches_tracked_labels_on_fixtures(g1, robot):
    # both fixtures have short or periodic unobservable runs, so the default
    # slack saturates every pair set
    for model in (g1, robot):
        a = model.automaton
        observer = build_state_pair_observer(a)
        for alpha in observations(a, a.intruder_observable, 5):
            if len(alpha) <= 4:
                assert pair_set_oracle(a, alpha, OracleConfig(max_len=4)) == observer.pair_set(alpha)


# --- Bounded verdicts ---

def test_hoo_oracle_g1_finds_nothing(g1):
    verdict = hoo_oracle(g1.automaton, g1.task, OracleConfig(max_len=8))
    assert verdict.opaque
    assert verdict.method is Method.ORACLE
    assert verdict.bound == 8
    assert verdict.describe() == (
        "no violation of 'high-order opaque' up to length 8 (bounded check, not a proof)"
    )


def test_hoo_oracle_robot(robot):
    verdict = hoo_oracle(robot.automaton, robot.task, OracleConfig(max_len=2))
    assert not verdict.opaque
    assert verdict.witness_text == "g"


def test_hoo_oracle_full_task_never_violates(robot):
    a = robot.automaton
    assert hoo_oracle(a, DisambiguationTask.full(a), OracleConfig(max_len=4)).opaque


def test_cso_oracle_robot(robot):
    verdict = cso_oracle(robot.automaton, robot.secrets, OracleConfig(max_len=3))
    assert not verdict.opaque
    assert verdict.property is Property.CURRENT_STATE
    assert verdict.witness == ()


def test_cso_oracle_g1_without_secrets(g1):
    from hoopacity.knowledge import SecretStates

    assert cso_oracle(g1.automaton, SecretStates(), OracleConfig(max_len=3)).opaque


# --- Long hidden runs ---

@pytest.fixture
def coprime_cycles():
    """
    After a hidden choice u or v the user watches an a-cycle of length 3 or
    4. The intruder sees nothing. The user is unsure between A2 and B0 only
    after eight a's, which is a longer hidden run than there are states.
    """
    cycle_a = [(f"A{i}", "a", f"A{(i + 1) % 3}") for i in range(3)]
    cycle_b = [(f"B{i}", "a", f"B{(i + 1) % 4}") for i in range(4)]
    return Automaton.from_names(
        states=["0", "A0", "A1", "A2", "B0", "B1", "B2", "B3"],
        events=["u", "v", "a"],
        initial="0",
        transitions=[("0", "u", "A0"), ("0", "v", "B0")] + cycle_a + cycle_b,
        user_observable=["a"],
        intruder_observable=[],
    )


def test_pair_set_oracle_follows_hidden_runs_of_any_length(coprime_cycles):
    a = coprime_cycles
    pairs = pair_set_oracle(a, ())
    assert (a.state_id("A2"), a.state_id("B0")) in pairs
    assert pairs == build_state_pair_observer(a).pair_set(())


def test_hoo_oracle_agrees_with_the_verifiers_on_long_hidden_runs(coprime_cycles):
    a = coprime_cycles
    t = DisambiguationTask(frozenset({(a.state_id("A2"), a.state_id("B0"))}))
    assert verify_hoo_pair(a, t).opaque
    assert hoo_oracle(a, t, OracleConfig(max_len=6)).opaque


def test_user_estimates_oracle_matches_double_observer(g1, robot, coprime_cycles):
    for a in (g1.automaton, robot.automaton, coprime_cycles):
        double = build_double_observer(a)
        for alpha in observations(a, a.intruder_observable, 4):
            i = double.run(alpha)
            assert user_estimates_oracle(a, alpha, OracleConfig(max_len=4)) == double.estimate_sets(i)

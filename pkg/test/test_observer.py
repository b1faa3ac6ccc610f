import pytest

from hoopacity.double import build_double_observer
from hoopacity.exceptions import StateLimitExceeded, UsageError
from hoopacity.observer import build_observer, estimate, explore, shortest_words, unobservable_reach
from hoopacity.pair import build_state_pair_observer


def sets_of(a, *groups):
    return {frozenset(a.state_id(x) for x in group) for group in groups}


def labelled_edges(obs):
    a = obs.plant
    return {
        (obs.render(i), a.event_names[e], obs.render(j)) for (i, e), j in obs.transitions.items()
    }


def test_g1_user_observer_states(g1):
    a = g1.automaton
    obs = build_observer(a, a.user_observable)
    assert set(obs.states) == sets_of(a, "012", "34", "6", "57", "4", "7")
    assert obs.states[obs.initial] == frozenset({0, 1, 2})


def test_g1_user_observer_transitions(g1):
    a = g1.automaton
    obs = build_observer(a, a.user_observable)
    assert labelled_edges(obs) == {
        ("{0,1,2}", "a", "{0,1,2}"),
        ("{0,1,2}", "c", "{0,1,2}"),
        ("{0,1,2}", "b", "{3,4}"),
        ("{3,4}", "b", "{5,7}"),
        ("{3,4}", "d", "{6}"),
        ("{5,7}", "a", "{5,7}"),
        ("{5,7}", "d", "{7}"),
        ("{6}", "d", "{4}"),
        ("{4}", "d", "{6}"),
        ("{7}", "d", "{7}"),
    }


def test_g1_estimates(g1):
    a = g1.automaton
    user = build_observer(a, a.user_observable)
    intruder = build_observer(a, a.intruder_observable)
    assert estimate(user, a.parse_string("bb")) == frozenset({5, 7})
    assert estimate(user, a.parse_string("bbd")) == frozenset({7})
    assert estimate(intruder, ()) == frozenset({0, 2})
    assert estimate(intruder, a.parse_string("b")) == frozenset({4, 6})
    assert estimate(intruder, a.parse_string("abba")) == frozenset({7})


def test_estimate_of_impossible_observation_is_none(g1):
    a = g1.automaton
    user = build_observer(a, a.user_observable)
    assert estimate(user, a.parse_string("bbb")) is None


def test_estimate_rejects_unobserved_events(g1):
    a = g1.automaton
    user = build_observer(a, a.user_observable)
    with pytest.raises(UsageError, match="outside the observed alphabet: a"):
        estimate(user, a.parse_string("ab"))


def test_full_alphabet_estimate_is_the_run(robot):
    a = robot.automaton
    obs = build_observer(a, a.events)
    for s, x in a.iter_strings(4):
        assert estimate(obs, s) == frozenset({x})


@pytest.mark.parametrize("viewer", ["user", "intruder"])
def test_observers_accept_every_plant_string(g1, robot, viewer):
    for model in (g1, robot):
        a = model.automaton
        alphabet = a.user_observable if viewer == "user" else a.intruder_observable
        obs = build_observer(a, alphabet)
        assert all(obs.accepts(s) for s in a.generated_strings(6))


def test_unobservable_reach(g1):
    a = g1.automaton
    assert unobservable_reach(a, [0], a.intruder_observable) == frozenset({0, 2})
    assert unobservable_reach(a, [4], a.intruder_observable) == frozenset({4, 6})
    assert unobservable_reach(a, [4], a.events) == frozenset({4})


def test_state_limit(g1):
    a = g1.automaton
    with pytest.raises(StateLimitExceeded, match="exceeded 2 states"):
        build_observer(a, a.user_observable, max_states=2)


def test_zero_state_limit_is_not_the_default(g1):
    a = g1.automaton
    with pytest.raises(StateLimitExceeded, match="exceeded 0 states"):
        build_observer(a, a.user_observable, max_states=0)
    with pytest.raises(StateLimitExceeded, match="exceeded 0 states"):
        build_double_observer(a, max_states=0)
    with pytest.raises(StateLimitExceeded, match="exceeded 0 states"):
        build_state_pair_observer(a, max_states=0)


def test_explore_interns_in_discovery_order():
    def successors(n):
        if n < 3:
            yield 0, n + 1
        yield 1, 0

    nodes, transitions = explore(0, successors, limit=10, what="counter")
    assert nodes == [0, 1, 2, 3]
    assert transitions[(3, 1)] == 0
    assert transitions[(0, 0)] == 1


def test_shortest_words_respects_event_order():
    transitions = {(0, 1): 1, (0, 0): 2, (2, 0): 3, (1, 1): 3}
    words = shortest_words(0, transitions, [0, 1])
    assert words[3] == (0, 0)
    words = shortest_words(0, transitions, [1, 0])
    assert words[3] == (1, 1)
    assert shortest_words(0, transitions, [1])[3] == (1, 1)

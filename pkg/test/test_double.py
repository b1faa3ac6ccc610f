import pytest

from hoopacity.double import build_double_observer, observer_as_plant, synchronous_product, verify_hoo_double
from hoopacity.exceptions import ConstructionError
from hoopacity.knowledge import DisambiguationTask, knowing_indices
from hoopacity.observer import ObserverAutomaton, build_observer
from hoopacity.verdict import Method


def estimate_sets(double):
    return {double.estimate_sets(i) for i in range(len(double.estimates))}


def fs(*groups):
    return frozenset(frozenset(g) for g in groups)


def test_g1_literal_double_observer(g1):
    double = build_double_observer(g1.automaton, tracked=False)
    assert not double.tracked
    assert len(double.estimates) == 3
    assert estimate_sets(double) == {
        fs({0, 1, 2}),
        fs({3, 4}, {6}, {4}),
        fs({5, 7}, {7}),
    }


def test_g1_literal_double_observer_edges(g1):
    a = g1.automaton
    double = build_double_observer(a, tracked=False)
    edges = {
        (double.render(i), a.event_names[e], double.render(j))
        for (i, e), j in double.outer.transitions.items()
    }
    assert edges == {
        ("{{0,1,2}}", "a", "{{0,1,2}}"),
        ("{{0,1,2}}", "c", "{{0,1,2}}"),
        ("{{0,1,2}}", "b", "{{3,4},{4},{6}}"),
        ("{{3,4},{4},{6}}", "d", "{{3,4},{4},{6}}"),
        ("{{3,4},{4},{6}}", "b", "{{5,7},{7}}"),
        ("{{5,7},{7}}", "a", "{{5,7},{7}}"),
        ("{{5,7},{7}}", "d", "{{5,7},{7}}"),
    }


def test_g1_tracked_double_observer(g1):
    double = build_double_observer(g1.automaton)
    user = double.user_observer
    expected = [
        {"{0,1,2}"},
        {"{3,4}", "{6}", "{4}"},
        {"{3,4}"},
        {"{5,7}"},
        {"{5,7}", "{7}"},
    ]
    reached = [{user.render(j) for j in inner} for inner in double.estimates]
    assert len(reached) == 6
    for group in expected:
        assert group in reached


def test_g1_is_high_order_opaque(g1):
    verdict = verify_hoo_double(g1.automaton, g1.task)
    assert verdict.opaque
    assert verdict.method is Method.DOUBLE
    assert verdict.witness is None
    assert verdict.describe() == "high-order opaque"


def test_robot_is_not_high_order_opaque(robot):
    a = robot.automaton
    verdict = verify_hoo_double(a, robot.task)
    assert not verdict.opaque
    assert verdict.witness == a.parse_string("g")
    assert verdict.witness_text == "g"
    assert verdict.violating_state == "{{7}}"
    assert verdict.describe() == "not high-order opaque; witness: g; state: {{7}}"


def test_run_follows_intruder_observation(robot):
    a = robot.automaton
    double = build_double_observer(a)
    i = double.run(a.parse_string("g"))
    assert double.estimate_sets(i) == fs({7})
    assert double.run(a.parse_string("gb")) is None


def test_tracked_construction_sees_what_the_intruder_sees(hidden_step):
    # The intruder sees nothing yet, so the plant must still be at 0 and
    # the user must still be at {0,1}.
    a = hidden_step
    t = DisambiguationTask.diagonal([2])
    verdict = verify_hoo_double(a, t)
    assert not verdict.opaque
    assert verdict.witness == ()

    # Observing the user observer instead admits strings the plant cannot
    # generate, and the violation disappears.
    literal = build_double_observer(a, tracked=False)
    knowing = knowing_indices(literal.user_observer, t)
    assert not any(inner <= knowing for inner in literal.estimates)


def test_product_pairs_plant_and_observer(g1):
    a = g1.automaton
    user = build_observer(a, a.user_observable)
    product, pairs = synchronous_product(a, user)
    assert pairs[0] == (0, user.initial)
    assert product.num_states == len(pairs)
    assert {x for x, _ in pairs} == set(a.reachable_states())
    for x, q in pairs:
        assert x in user.states[q]


def test_product_rejects_observer_that_cannot_follow(g1):
    a = g1.automaton
    user = build_observer(a, a.user_observable)
    crippled = ObserverAutomaton(
        plant=a,
        states=user.states,
        observed=user.observed,
        transitions={k: v for k, v in user.transitions.items() if k[1] != a.event_id("c")},
    )
    with pytest.raises(ConstructionError, match="cannot follow plant move 0 -c-> 2"):
        synchronous_product(a, crippled)


def test_observer_as_plant_keeps_the_observer_graph(g1):
    a = g1.automaton
    user = build_observer(a, a.user_observable)
    plant = observer_as_plant(user)
    assert plant.num_states == len(user.states)
    assert plant.state_names[plant.initial] == "{0,1,2}"
    assert plant.transitions == dict(user.transitions)

import pytest

from hoopacity.automaton import Automaton
from hoopacity.fixtures import load_fixture


@pytest.fixture
def g1():
    return load_fixture("g1")


@pytest.fixture
def robot():
    return load_fixture("robot")


@pytest.fixture
def hidden_step():
    """
    0 -s-> 1 -o-> 2 -z-> 2 with the intruder seeing only s and the user only o.
    The user knows at the start; the intruder, seeing nothing, can tell.
    """
    return Automaton.from_names(
        states=["0", "1", "2"],
        events=["s", "o", "z"],
        initial="0",
        transitions=[("0", "s", "1"), ("1", "o", "2"), ("2", "z", "2")],
        user_observable=["o"],
        intruder_observable=["s"],
    )


@pytest.fixture
def phantom_diagonal():
    """
    0 -u-> 1 -s-> 2, with e self-loops on 0 and 2. The user sees u, the
    intruder sees s; after s the user can no longer be at 0.
    """
    return Automaton.from_names(
        states=["0", "1", "2"],
        events=["u", "s", "e"],
        initial="0",
        transitions=[("0", "u", "1"), ("1", "s", "2"), ("0", "e", "0"), ("2", "e", "2")],
        user_observable=["u"],
        intruder_observable=["s"],
    )

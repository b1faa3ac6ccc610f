"""Random instances for cross-checking and scale tests. Every automaton produced is live."""
import random
import string
from typing import Optional

from hoopacity.automaton import Automaton
from hoopacity.exceptions import UsageError
from hoopacity.knowledge import DisambiguationTask, SecretStates


def random_automaton(
    rng: random.Random,
    n_states: int,
    n_events: int,
    density: float = 0.4,
    p_user: float = 0.5,
    p_intruder: float = 0.5,
    user_within_intruder: bool = False,
) -> Automaton:
    """
    Each state gets each event with probability ``density`` (at least one
    event, so the result is live). With ``user_within_intruder`` every
    user-observable event is also intruder-observable.
    """
    if n_states < 1:
        raise UsageError("n_states must be at least 1")
    if not 1 <= n_events <= len(string.ascii_lowercase):
        raise UsageError(f"n_events must be between 1 and {len(string.ascii_lowercase)}")

    transitions = {}
    for x in range(n_states):
        events = [e for e in range(n_events) if rng.random() < density]
        if not events:
            events = [rng.randrange(n_events)]
        for e in events:
            transitions[(x, e)] = rng.randrange(n_states)

    intruder = {e for e in range(n_events) if rng.random() < p_intruder}
    user = {e for e in range(n_events) if rng.random() < p_user}
    if user_within_intruder:
        user &= intruder

    return Automaton(
        state_names=tuple(str(x) for x in range(n_states)),
        event_names=tuple(string.ascii_lowercase[:n_events]),
        initial=0,
        transitions=transitions,
        user_observable=user,
        intruder_observable=intruder,
    )


def random_task(rng: random.Random, a: Automaton, density: float = 0.2) -> DisambiguationTask:
    n = a.num_states
    return DisambiguationTask(
        frozenset((x, y) for x in range(n) for y in range(n) if rng.random() < density)
    )


def random_secrets(
    rng: random.Random, a: Automaton, density: float = 0.4, size: Optional[int] = None
) -> SecretStates:
    if size is not None:
        return SecretStates(frozenset(rng.sample(range(a.num_states), min(size, a.num_states))))
    return SecretStates(frozenset(x for x in range(a.num_states) if rng.random() < density))

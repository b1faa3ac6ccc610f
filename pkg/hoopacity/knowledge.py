"""
What the user knows: the disambiguation task, the knowledge predicate over the
user's observer, and classical current-state opacity against the intruder.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple

from hoopacity.automaton import Automaton, EventId, StateId
from hoopacity.exceptions import UsageError
from hoopacity.observer import ObserverAutomaton, StateSet, build_observer, first_violation
from hoopacity.verdict import Method, Property, Verdict

logger = logging.getLogger(__name__)

StatePair = Tuple[StateId, StateId]


@dataclass(frozen=True)
class DisambiguationTask:
    """T_spec: ordered state pairs the user wants to tell apart. Stored as given."""

    pairs: FrozenSet[StatePair] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "pairs", frozenset((int(x), int(y)) for x, y in self.pairs))

    @classmethod
    def all_distinct(cls, a: Automaton) -> "DisambiguationTask":
        n = a.num_states
        return cls(frozenset((x, y) for x in range(n) for y in range(n) if x != y))

    @classmethod
    def full(cls, a: Automaton) -> "DisambiguationTask":
        n = a.num_states
        return cls(frozenset((x, y) for x in range(n) for y in range(n)))

    @classmethod
    def diagonal(cls, states: Iterable[StateId]) -> "DisambiguationTask":
        return cls(frozenset((x, x) for x in states))

    def symmetrized(self) -> "DisambiguationTask":
        return DisambiguationTask(self.pairs | {(y, x) for x, y in self.pairs})

    def validate(self, a: Automaton) -> "DisambiguationTask":
        for x, y in self.pairs:
            if not (0 <= x < a.num_states and 0 <= y < a.num_states):
                raise UsageError(f"disambiguation pair ({x}, {y}) references an unknown state")
        return self

    def confuses(self, q: Iterable[StateId]) -> bool:
        """True when (q × q) ∩ T_spec is non-empty."""
        q = q if isinstance(q, frozenset) else frozenset(q)
        return any(x in q and y in q for x, y in self.pairs)

    def meets(self, pair_set: Iterable[StatePair]) -> bool:
        """True when the pair set intersects T_spec."""
        return not self.pairs.isdisjoint(pair_set)


@dataclass(frozen=True)
class SecretStates:
    states: FrozenSet[StateId] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "states", frozenset(int(x) for x in self.states))

    def validate(self, a: Automaton) -> "SecretStates":
        stray = [x for x in self.states if not 0 <= x < a.num_states]
        if stray:
            raise UsageError(f"secret states reference unknown handles {sorted(stray)}")
        return self

    def non_secret(self, a: Automaton) -> FrozenSet[StateId]:
        return frozenset(range(a.num_states)) - self.states


def know(user_obs: ObserverAutomaton, t: DisambiguationTask, alpha: Sequence[EventId]) -> bool:
    i = user_obs.estimate_index(alpha)
    if i is None:
        raise UsageError(
            f"observation {user_obs.plant.format_string(alpha)} cannot be produced by the system"
        )
    return not t.confuses(user_obs.states[i])


def knowing_indices(user_obs: ObserverAutomaton, t: DisambiguationTask) -> FrozenSet[int]:
    return frozenset(i for i, q in enumerate(user_obs.states) if not t.confuses(q))


def knowing_states(user_obs: ObserverAutomaton, t: DisambiguationTask) -> FrozenSet[StateSet]:
    """Q_{o,S}: the observer states at which the knowledge predicate holds."""
    return frozenset(user_obs.states[i] for i in knowing_indices(user_obs, t))


def verify_cso(a: Automaton, xs: SecretStates, max_states: Optional[int] = None) -> Verdict:
    xs.validate(a)
    intruder = build_observer(a, a.intruder_observable, max_states=max_states)
    revealing = [i for i, q in enumerate(intruder.states) if q <= xs.states]
    found = first_violation(a, intruder.initial, intruder.transitions, revealing)
    if found is None:
        verdict = Verdict(
            opaque=True,
            method=Method.CSO,
            property=Property.CURRENT_STATE,
            explored_states=len(intruder.states),
        )
    else:
        i, word = found
        verdict = Verdict(
            opaque=False,
            method=Method.CSO,
            property=Property.CURRENT_STATE,
            witness=word,
            witness_text=a.format_string(word),
            violating_state=intruder.render(i),
            explored_states=len(intruder.states),
        )
    logger.info("cso: %s", verdict.describe())
    return verdict


def cso_as_high_order(a: Automaton, xs: SecretStates) -> Tuple[Automaton, DisambiguationTask]:
    """
    Current-state opacity as an instance of high-order opacity: the user sees
    every event and must tell each non-secret state from itself.
    """
    return (
        a.with_observability(user=a.events),
        DisambiguationTask.diagonal(xs.validate(a).non_secret(a)),
    )

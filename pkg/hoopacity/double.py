"""
High-order opacity through the double-observer: the intruder's estimate of the
user's estimate.

The tracked construction (the default, and the only one used for verdicts)
runs the intruder's subset construction over the synchronous product of the
plant with the user observer, so every user estimate in an outer state stays
tied to a plant state that actually explains the intruder's observation. The
literal construction observes the user observer directly, self-loops and all;
its language can be larger than the plant's, so it over-approximates and is
only drawn, never verified against.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from hoopacity.automaton import Automaton, StateId
from hoopacity.exceptions import ConstructionError, StateLimitExceeded
from hoopacity.knowledge import DisambiguationTask, knowing_indices
from hoopacity.observer import ObserverAutomaton, build_observer, first_violation
from hoopacity.settings import settings
from hoopacity.verdict import Method, Verdict

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DoubleObserver:
    user_observer: ObserverAutomaton
    outer: ObserverAutomaton
    # per outer state: the user-observer state indices it contains
    estimates: Tuple[FrozenSet[int], ...]
    tracked: bool = True

    @property
    def plant(self) -> Automaton:
        return self.user_observer.plant

    def run(self, alpha) -> Optional[int]:
        return self.outer.estimate_index(alpha)

    def estimate_sets(self, i: int) -> FrozenSet[FrozenSet[StateId]]:
        return frozenset(self.user_observer.states[j] for j in self.estimates[i])

    def render(self, i: int) -> str:
        inner = sorted(self.estimates[i], key=lambda j: sorted(self.user_observer.states[j]))
        return "{" + ",".join(self.user_observer.render(j) for j in inner) + "}"


def observer_as_plant(obs: ObserverAutomaton) -> Automaton:
    a = obs.plant
    return Automaton(
        state_names=tuple(obs.render(i) for i in range(len(obs.states))),
        event_names=a.event_names,
        initial=obs.initial,
        transitions=obs.transitions,
        user_observable=a.user_observable,
        intruder_observable=a.intruder_observable,
    )


def synchronous_product(
    a: Automaton, obs: ObserverAutomaton, max_states: Optional[int] = None
) -> Tuple[Automaton, List[Tuple[StateId, int]]]:
    """
    G ‖ Obs: reachable pairs (plant state, observer state). Raises
    ConstructionError if the observer cannot follow a plant move, i.e. if
    L(G) ⊄ L(Obs).
    """
    limit = settings.MAX_STATES if max_states is None else max_states
    if limit < 1:
        raise StateLimitExceeded("plant/observer product", limit)
    start = (a.initial, obs.initial)
    index: Dict[Tuple[StateId, int], int] = {start: 0}
    pairs = [start]
    delta = {}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x, q = pairs[i]
        for e, y in a.successors(x):
            r = obs.transitions.get((q, e))
            if r is None:
                raise ConstructionError(
                    f"observer state {obs.render(q)} cannot follow plant move "
                    f"{a.state_names[x]} -{a.event_names[e]}-> {a.state_names[y]}"
                )
            j = index.get((y, r))
            if j is None:
                if len(pairs) >= limit:
                    raise StateLimitExceeded("plant/observer product", limit)
                j = index[(y, r)] = len(pairs)
                pairs.append((y, r))
                queue.append(j)
            delta[(i, e)] = j
    product = Automaton(
        state_names=tuple(f"{a.state_names[x]}|{obs.render(q)}" for x, q in pairs),
        event_names=a.event_names,
        initial=0,
        transitions=delta,
        user_observable=a.user_observable,
        intruder_observable=a.intruder_observable,
    )
    return product, pairs


def build_double_observer(
    a: Automaton, tracked: bool = True, max_states: Optional[int] = None
) -> DoubleObserver:
    user = build_observer(a, a.user_observable, max_states=max_states)
    product, pairs = synchronous_product(a, user, max_states=max_states)
    if tracked:
        outer = build_observer(product, a.intruder_observable, max_states=max_states)
        estimates = tuple(frozenset(pairs[k][1] for k in q) for q in outer.states)
    else:
        outer = build_observer(observer_as_plant(user), a.intruder_observable, max_states=max_states)
        estimates = tuple(outer.states)
    logger.debug(
        "double observer (%s): %d user states, %d outer states",
        "tracked" if tracked else "literal",
        len(user.states),
        len(outer.states),
    )
    return DoubleObserver(user_observer=user, outer=outer, estimates=estimates, tracked=tracked)


def verify_hoo_double(
    a: Automaton, t: DisambiguationTask, max_states: Optional[int] = None
) -> Verdict:
    t.validate(a)
    double = build_double_observer(a, max_states=max_states)
    knowing = knowing_indices(double.user_observer, t)
    revealing = [i for i, inner in enumerate(double.estimates) if inner <= knowing]
    found = first_violation(a, double.outer.initial, double.outer.transitions, revealing)
    if found is None:
        verdict = Verdict(opaque=True, method=Method.DOUBLE, explored_states=len(double.estimates))
    else:
        i, word = found
        verdict = Verdict(
            opaque=False,
            method=Method.DOUBLE,
            witness=word,
            witness_text=a.format_string(word),
            violating_state=double.render(i),
            explored_states=len(double.estimates),
        )
    logger.info("double observer: %s", verdict.describe())
    return verdict

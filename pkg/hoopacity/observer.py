"""
Observer (powerset) construction over an arbitrary observation alphabet.

Following the convention the double-observer relies on, the observer keeps the
plant's full event set: an event outside the observed alphabet is a self-loop
at every observer state from which it is feasible, so every string of the plant
is also a string of the observer.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple, TypeVar

from hoopacity.automaton import Automaton, EventId, EventString, StateId
from hoopacity.exceptions import StateLimitExceeded, UsageError
from hoopacity.settings import settings

logger = logging.getLogger(__name__)

StateSet = FrozenSet[StateId]
Node = TypeVar("Node", bound=Hashable)


@dataclass(frozen=True, eq=False)
class ObserverAutomaton:
    plant: Automaton
    states: Tuple[StateSet, ...]
    observed: FrozenSet[EventId]
    transitions: Mapping[Tuple[int, EventId], int]
    initial: int = 0

    @property
    def alphabet_full(self) -> FrozenSet[EventId]:
        return self.plant.events

    def run(self, s: Sequence[EventId], start: Optional[int] = None) -> Optional[int]:
        """Run any plant string (observed or not) from ``start``; None if it falls off."""
        i = self.initial if start is None else start
        for e in s:
            i = self.transitions.get((i, e))
            if i is None:
                return None
        return i

    def accepts(self, s: Sequence[EventId]) -> bool:
        return self.run(s) is not None

    def estimate_index(self, alpha: Sequence[EventId]) -> Optional[int]:
        stray = [e for e in alpha if e not in self.observed]
        if stray:
            names = ", ".join(self.plant.event_names[e] for e in stray)
            raise UsageError(f"observation contains events outside the observed alphabet: {names}")
        return self.run(alpha)

    def render(self, i: int) -> str:
        return self.plant.format_states(self.states[i])


def unobservable_reach(
    a: Automaton, start: Iterable[StateId], alphabet: Iterable[EventId]
) -> StateSet:
    """Close ``start`` under the events outside ``alphabet``."""
    observed = frozenset(alphabet)
    reached = set(start)
    stack = list(reached)
    while stack:
        x = stack.pop()
        for e, y in a.successors(x):
            if e not in observed and y not in reached:
                reached.add(y)
                stack.append(y)
    return frozenset(reached)


def build_observer(
    a: Automaton, alphabet: Iterable[EventId], max_states: Optional[int] = None
) -> ObserverAutomaton:
    observed = frozenset(alphabet)
    stray = [e for e in observed if not 0 <= e < a.num_events]
    if stray:
        raise UsageError(f"observer alphabet references unknown event handles {sorted(stray)}")
    limit = settings.MAX_STATES if max_states is None else max_states

    def successors(q: StateSet) -> Iterable[Tuple[EventId, StateSet]]:
        for e in range(a.num_events):
            targets = {a.transitions[(x, e)] for x in q if (x, e) in a.transitions}
            if not targets:
                continue
            if e in observed:
                yield e, unobservable_reach(a, targets, observed)
            else:
                yield e, q

    initial = unobservable_reach(a, [a.initial], observed)
    states, transitions = explore(initial, successors, limit, "observer")
    logger.debug(
        "observer over {%s}: %d states, %d transitions",
        ",".join(a.event_names[e] for e in sorted(observed)),
        len(states),
        len(transitions),
    )
    return ObserverAutomaton(
        plant=a, states=tuple(states), observed=observed, transitions=transitions
    )


def estimate(obs: ObserverAutomaton, alpha: Sequence[EventId]) -> Optional[StateSet]:
    """Current-state estimate after observing ``alpha``; None if unobservable."""
    i = obs.estimate_index(alpha)
    return None if i is None else obs.states[i]


def explore(
    initial: Node,
    successors: Callable[[Node], Iterable[Tuple[EventId, Node]]],
    limit: int,
    what: str,
) -> Tuple[List[Node], Dict[Tuple[int, EventId], int]]:
    """
    Breadth-first determinised exploration shared by every construction.
    Nodes are interned in discovery order, so numbering is reproducible.
    """
    if limit < 1:
        raise StateLimitExceeded(what, limit)
    index: Dict[Node, int] = {initial: 0}
    nodes: List[Node] = [initial]
    transitions: Dict[Tuple[int, EventId], int] = {}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for e, target in successors(nodes[i]):
            j = index.get(target)
            if j is None:
                if len(nodes) >= limit:
                    raise StateLimitExceeded(what, limit)
                j = index[target] = len(nodes)
                nodes.append(target)
                queue.append(j)
            transitions[(i, e)] = j
    return nodes, transitions


def shortest_words(
    initial: int,
    transitions: Mapping[Tuple[int, EventId], int],
    events: Sequence[EventId],
) -> Dict[int, EventString]:
    """
    Shortlex-least word reaching every node, using only ``events`` (in the
    given order) as edge labels.
    """
    by_source: Dict[int, Dict[EventId, int]] = {}
    for (i, e), j in transitions.items():
        by_source.setdefault(i, {})[e] = j
    words: Dict[int, EventString] = {initial: ()}
    queue = deque([initial])
    while queue:
        i = queue.popleft()
        out = by_source.get(i, {})
        for e in events:
            j = out.get(e)
            if j is not None and j not in words:
                words[j] = words[i] + (e,)
                queue.append(j)
    return words


def first_violation(
    a: Automaton,
    initial: int,
    transitions: Mapping[Tuple[int, EventId], int],
    violating: Iterable[int],
) -> Optional[Tuple[int, EventString]]:
    """
    Among ``violating`` nodes, the one reached by the shortest intruder
    observation (ties broken by event name), with that observation.
    """
    order = sorted(a.intruder_observable, key=lambda e: a.event_names[e])
    words = shortest_words(initial, transitions, order)
    candidates = [(words[i], i) for i in violating if i in words]
    if not candidates:
        return None
    word, i = min(
        candidates,
        key=lambda item: (len(item[0]), [a.event_names[e] for e in item[0]]),
    )
    return i, word

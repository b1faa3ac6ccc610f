"""
High-order opacity through the state-pair-observer: the intruder estimates the
set of state pairs the user cannot tell apart, in space single-exponential in
the plant.

Every transition is computed as finite reachability over triples
(x, x1, x2). Component 0 (the leader) replays σw with w ∈ Σ_ua*. Components 1
and 2 (the followers) replay w1', w2' with the same user projection as σw.
Followers move freely on user-unobservable events. When the leader emits a
user-observable letter, both followers owe that letter and the leader may not
emit another one until both have matched it. A triple whose obligations are
discharged contributes (x1, x2) to the successor. This is the string
quantification of the pair-observer definition, including the possibly
infinite set of unobservable tails, folded into a finite search.

Two constructions share that engine:

* tracked (default): states are sets of triples (actual state, x1, x2) and
  seeds come from the triples themselves, so each pair stays attached to a
  plant state that explains the intruder's observation. Its PairSet labels
  satisfy the exact characterisation of the reached pair set, and verdicts
  are computed on it.
* literal: states are PairSets and any diagonal pair (x, x) seeds actual
  behaviour. Its diagrams are smaller, but it may over-approximate and it is
  never used for verdicts.
"""
from __future__ import annotations

import logging
import weakref
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from hoopacity.automaton import Automaton, EventId, StateId
from hoopacity.exceptions import UsageError
from hoopacity.knowledge import DisambiguationTask
from hoopacity.observer import explore, first_violation
from hoopacity.settings import settings
from hoopacity.verdict import Method, Verdict

logger = logging.getLogger(__name__)

Pair = Tuple[StateId, StateId]
Triple = Tuple[StateId, StateId, StateId]
PairSet = FrozenSet[Pair]
TripleSet = FrozenSet[Triple]

_NONE = -1


class _Moves:
    """Per-automaton move tables for the synchronized triple reach."""

    def __init__(self, a: Automaton):
        user = a.user_observable
        intruder = a.intruder_observable
        n = a.num_states
        # leader: intruder-unobservable moves, split by user observability
        self.lead_silent: List[List[StateId]] = [[] for _ in range(n)]
        self.lead_loud: List[List[Tuple[EventId, StateId]]] = [[] for _ in range(n)]
        # followers: user-unobservable moves, and user-observable moves by letter
        self.follow_silent: List[List[StateId]] = [[] for _ in range(n)]
        self.follow_loud: List[Dict[EventId, StateId]] = [{} for _ in range(n)]
        for (x, e), y in a.transitions.items():
            if e not in user:
                self.follow_silent[x].append(y)
                if e not in intruder:
                    self.lead_silent[x].append(y)
            else:
                self.follow_loud[x][e] = y
                if e not in intruder:
                    self.lead_loud[x].append((e, y))

    @classmethod
    def of(cls, a: Automaton) -> "_Moves":
        moves = _MOVES.get(a)
        if moves is None:
            moves = _MOVES[a] = cls(a)
        return moves


_MOVES: "weakref.WeakKeyDictionary[Automaton, _Moves]" = weakref.WeakKeyDictionary()


def _synchronized_reach(
    a: Automaton, seeds: Iterable[Tuple[StateId, StateId, StateId, int]]
) -> Set[Triple]:
    """
    Seeds are (leader, follower1, follower2, owed letter or _NONE); returns the
    discharged triples reachable from them.
    """
    moves = _Moves.of(a)
    seen: Set[Tuple[int, int, int, int, int]] = set()
    stack: List[Tuple[int, int, int, int, int]] = []
    for x0, x1, x2, owed in seeds:
        node = (x0, x1, x2, owed, owed)
        if node not in seen:
            seen.add(node)
            stack.append(node)

    done: Set[Triple] = set()
    while stack:
        x0, x1, x2, p1, p2 = stack.pop()
        successors = []
        if p1 == _NONE and p2 == _NONE:
            done.add((x0, x1, x2))
            for e, y in moves.lead_loud[x0]:
                successors.append((y, x1, x2, e, e))
        for y in moves.lead_silent[x0]:
            successors.append((y, x1, x2, p1, p2))
        for y in moves.follow_silent[x1]:
            successors.append((x0, y, x2, p1, p2))
        if p1 != _NONE:
            y = moves.follow_loud[x1].get(p1)
            if y is not None:
                successors.append((x0, y, x2, _NONE, p2))
        for y in moves.follow_silent[x2]:
            successors.append((x0, x1, y, p1, p2))
        if p2 != _NONE:
            y = moves.follow_loud[x2].get(p2)
            if y is not None:
                successors.append((x0, x1, y, p1, _NONE))
        for node in successors:
            if node not in seen:
                seen.add(node)
                stack.append(node)
    return done


def _owed(a: Automaton, e: EventId) -> int:
    return e if e in a.user_observable else _NONE


def _check_intruder_event(a: Automaton, e: EventId) -> None:
    if e not in a.intruder_observable:
        name = a.event_names[e] if 0 <= e < a.num_events else str(e)
        raise UsageError(f"event '{name}' is not observable by the intruder")


def project_pairs(triples: Iterable[Triple]) -> PairSet:
    return frozenset((x1, x2) for _, x1, x2 in triples)


def initial_tracked_state(a: Automaton) -> TripleSet:
    x0 = a.initial
    return frozenset(_synchronized_reach(a, [(x0, x0, x0, _NONE)]))


def initial_pair_state(a: Automaton) -> PairSet:
    """q_{0,V}: pairs reached by user-projection-equal strings alongside w ∈ Σ_ua*."""
    return project_pairs(initial_tracked_state(a))


def pair_transition(a: Automaton, q: PairSet, e: EventId) -> Optional[PairSet]:
    """f_V(q, e) as defined over PairSets: every diagonal pair may carry actual behaviour."""
    _check_intruder_event(a, e)
    owed = _owed(a, e)
    seeds = []
    for x, y in q:
        if x != y:
            continue
        target = a.transitions.get((x, e))
        if target is not None:
            seeds.extend((target, x1, x2, owed) for x1, x2 in q)
    if not seeds:
        return None
    return project_pairs(_synchronized_reach(a, seeds))


def tracked_transition(a: Automaton, triples: TripleSet, e: EventId) -> Optional[TripleSet]:
    """Exact successor: only the actual component of each triple replays e·w."""
    _check_intruder_event(a, e)
    owed = _owed(a, e)
    seeds = []
    for x, x1, x2 in triples:
        target = a.transitions.get((x, e))
        if target is not None:
            seeds.append((target, x1, x2, owed))
    if not seeds:
        return None
    return frozenset(_synchronized_reach(a, seeds))


@dataclass(frozen=True, eq=False)
class StatePairObserver:
    plant: Automaton
    states: Tuple[PairSet, ...]
    transitions: Mapping[Tuple[int, EventId], int]
    # tracked construction only: the triple set behind each PairSet label
    triples: Optional[Tuple[TripleSet, ...]] = None
    initial: int = 0

    @property
    def alphabet(self) -> FrozenSet[EventId]:
        return self.plant.intruder_observable

    @property
    def tracked(self) -> bool:
        return self.triples is not None

    def run(self, alpha: Sequence[EventId]) -> Optional[int]:
        i = self.initial
        for e in alpha:
            _check_intruder_event(self.plant, e)
            i = self.transitions.get((i, e))
            if i is None:
                return None
        return i

    def pair_set(self, alpha: Sequence[EventId]) -> Optional[PairSet]:
        i = self.run(alpha)
        return None if i is None else self.states[i]

    def render(self, i: int) -> str:
        names = self.plant.state_names
        return "{" + ",".join(f"({names[x]},{names[y]})" for x, y in sorted(self.states[i])) + "}"


def build_state_pair_observer(
    a: Automaton, tracked: bool = True, max_states: Optional[int] = None
) -> StatePairObserver:
    limit = settings.MAX_STATES if max_states is None else max_states
    alphabet = sorted(a.intruder_observable)

    if tracked:
        def successors(node: TripleSet):
            for e in alphabet:
                target = tracked_transition(a, node, e)
                if target is not None:
                    yield e, target

        nodes, transitions = explore(initial_tracked_state(a), successors, limit, "state-pair observer")
        observer = StatePairObserver(
            plant=a,
            states=tuple(project_pairs(node) for node in nodes),
            transitions=transitions,
            triples=tuple(nodes),
        )
    else:
        def successors(node: PairSet):
            for e in alphabet:
                target = pair_transition(a, node, e)
                if target is not None:
                    yield e, target

        nodes, transitions = explore(initial_pair_state(a), successors, limit, "state-pair observer")
        observer = StatePairObserver(plant=a, states=tuple(nodes), transitions=transitions)

    logger.debug(
        "state-pair observer (%s): %d states, %d transitions",
        "tracked" if tracked else "literal",
        len(observer.states),
        len(observer.transitions),
    )
    return observer


def verify_hoo_pair(
    a: Automaton, t: DisambiguationTask, max_states: Optional[int] = None
) -> Verdict:
    t.validate(a)
    observer = build_state_pair_observer(a, max_states=max_states)
    revealing = [i for i, q in enumerate(observer.states) if not t.meets(q)]
    found = first_violation(a, observer.initial, observer.transitions, revealing)
    if found is None:
        verdict = Verdict(opaque=True, method=Method.PAIR, explored_states=len(observer.states))
    else:
        i, word = found
        verdict = Verdict(
            opaque=False,
            method=Method.PAIR,
            witness=word,
            witness_text=a.format_string(word),
            violating_state=observer.render(i),
            explored_states=len(observer.states),
        )
    logger.info("state-pair observer: %s", verdict.describe())
    return verdict

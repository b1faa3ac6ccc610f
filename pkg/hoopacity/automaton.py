"""
The plant model: a deterministic finite automaton with two observation masks.

States and events are dense integer handles into name tables, so that sets of
states (and sets of state pairs) can be hashed and sorted cheaply by the
powerset constructions built on top of it.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from hoopacity.exceptions import ModelValidationError, UsageError

logger = logging.getLogger(__name__)

StateId = int
EventId = int
EventString = Tuple[EventId, ...]

EPSILON = "ε"


@dataclass(frozen=True, eq=False)
class Automaton:
    """
    G = (X, Σ, δ, x0) together with the user's observable events Σ_o and the
    intruder's observable events Σ_a. Immutable once built.
    """

    state_names: Tuple[str, ...]
    event_names: Tuple[str, ...]
    initial: StateId
    transitions: Mapping[Tuple[StateId, EventId], StateId]
    user_observable: FrozenSet[EventId] = frozenset()
    intruder_observable: FrozenSet[EventId] = frozenset()
    _successors: Tuple[Tuple[Tuple[EventId, StateId], ...], ...] = field(
        init=False, repr=False
    )

    def __post_init__(self):
        object.__setattr__(self, "state_names", tuple(self.state_names))
        object.__setattr__(self, "event_names", tuple(self.event_names))
        object.__setattr__(self, "transitions", dict(self.transitions))
        object.__setattr__(self, "user_observable", frozenset(self.user_observable))
        object.__setattr__(self, "intruder_observable", frozenset(self.intruder_observable))

        n, m = len(self.state_names), len(self.event_names)
        if n == 0:
            raise ModelValidationError("automaton has no states")
        _check_unique(self.state_names, "state")
        _check_unique(self.event_names, "event")
        if not 0 <= self.initial < n:
            raise ModelValidationError(f"initial state handle {self.initial} is out of range")
        for label, events in (("user", self.user_observable), ("intruder", self.intruder_observable)):
            stray = [e for e in events if not 0 <= e < m]
            if stray:
                raise ModelValidationError(f"{label}-observable set references unknown event handles {sorted(stray)}")

        successors: List[List[Tuple[EventId, StateId]]] = [[] for _ in range(n)]
        for (src, event), dst in self.transitions.items():
            if not (0 <= src < n and 0 <= dst < n and 0 <= event < m):
                raise ModelValidationError(f"transition ({src}, {event}) -> {dst} references an unknown handle")
            successors[src].append((event, dst))
        object.__setattr__(
            self, "_successors", tuple(tuple(sorted(out)) for out in successors)
        )

    # ---- construction -------------------------------------------------

    @classmethod
    def from_names(
        cls,
        states: Sequence[str],
        events: Sequence[str],
        initial: str,
        transitions: Iterable[Tuple[str, str, str]],
        user_observable: Iterable[str] = (),
        intruder_observable: Iterable[str] = (),
    ) -> "Automaton":
        state_index = {name: i for i, name in enumerate(states)}
        event_index = {name: i for i, name in enumerate(events)}
        _check_unique(states, "state")
        _check_unique(events, "event")

        def lookup(table: Dict[str, int], name: str, kind: str) -> int:
            if name not in table:
                raise ModelValidationError(f"undeclared {kind} '{name}'")
            return table[name]

        delta: Dict[Tuple[StateId, EventId], StateId] = {}
        for src, event, dst in transitions:
            key = (lookup(state_index, src, "state"), lookup(event_index, event, "event"))
            if key in delta:
                raise ModelValidationError(
                    f"state '{src}' has two transitions on event '{event}' (automaton must be deterministic)"
                )
            delta[key] = lookup(state_index, dst, "state")

        return cls(
            state_names=tuple(states),
            event_names=tuple(events),
            initial=lookup(state_index, initial, "state"),
            transitions=delta,
            user_observable=frozenset(lookup(event_index, e, "event") for e in user_observable),
            intruder_observable=frozenset(lookup(event_index, e, "event") for e in intruder_observable),
        )

    def with_observability(
        self,
        user: Optional[Iterable[EventId]] = None,
        intruder: Optional[Iterable[EventId]] = None,
    ) -> "Automaton":
        """Copy of this automaton with one or both observation masks replaced."""
        return replace(
            self,
            user_observable=self.user_observable if user is None else frozenset(user),
            intruder_observable=self.intruder_observable if intruder is None else frozenset(intruder),
        )

    # ---- tables -------------------------------------------------------

    @property
    def num_states(self) -> int:
        return len(self.state_names)

    @property
    def num_events(self) -> int:
        return len(self.event_names)

    @property
    def events(self) -> FrozenSet[EventId]:
        return frozenset(range(len(self.event_names)))

    @property
    def user_unobservable(self) -> FrozenSet[EventId]:
        return self.events - self.user_observable

    @property
    def intruder_unobservable(self) -> FrozenSet[EventId]:
        return self.events - self.intruder_observable

    def state_id(self, name: str) -> StateId:
        try:
            return self.state_names.index(name)
        except ValueError:
            raise UsageError(f"unknown state '{name}'") from None

    def event_id(self, name: str) -> EventId:
        try:
            return self.event_names.index(name)
        except ValueError:
            raise UsageError(f"unknown event '{name}'") from None

    def events_named(self, names: Iterable[str]) -> FrozenSet[EventId]:
        return frozenset(self.event_id(name) for name in names)

    def parse_string(self, text: str) -> EventString:
        """
        Parse a whitespace-separated event string. When every event name is a
        single character the separators may be omitted ("abba").
        """
        text = text.strip()
        if text in ("", EPSILON):
            return ()
        if " " not in text and all(len(name) == 1 for name in self.event_names):
            return tuple(self.event_id(ch) for ch in text)
        return tuple(self.event_id(token) for token in text.split())

    def format_string(self, s: Sequence[EventId]) -> str:
        if not s:
            return EPSILON
        names = [self.event_names[e] for e in s]
        if all(len(name) == 1 for name in self.event_names):
            return "".join(names)
        return " ".join(names)

    def format_states(self, states: Iterable[StateId]) -> str:
        return "{" + ",".join(self.state_names[x] for x in sorted(states)) + "}"

    # ---- semantics ----------------------------------------------------

    def _check_state(self, x: StateId) -> None:
        if not 0 <= x < len(self.state_names):
            raise UsageError(f"invalid state handle {x}")

    def _check_event(self, e: EventId) -> None:
        if not 0 <= e < len(self.event_names):
            raise UsageError(f"invalid event handle {e}")

    def successors(self, x: StateId) -> Tuple[Tuple[EventId, StateId], ...]:
        """Outgoing (event, target) pairs of ``x`` in event-handle order."""
        self._check_state(x)
        return self._successors[x]

    def step(self, x: StateId, e: EventId) -> Optional[StateId]:
        self._check_state(x)
        self._check_event(e)
        return self.transitions.get((x, e))

    def run(self, x: StateId, s: Sequence[EventId]) -> Optional[StateId]:
        self._check_state(x)
        for e in s:
            self._check_event(e)
            x = self.transitions.get((x, e))
            if x is None:
                return None
        return x

    def accepts(self, s: Sequence[EventId]) -> bool:
        return self.run(self.initial, s) is not None

    def reachable_states(self) -> List[StateId]:
        seen = {self.initial}
        order = [self.initial]
        queue = deque(order)
        while queue:
            x = queue.popleft()
            for _, y in self._successors[x]:
                if y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
        return order

    def check_liveness(self) -> List[StateId]:
        """Reachable states without any outgoing transition; empty means live."""
        return sorted(x for x in self.reachable_states() if not self._successors[x])

    def project(self, s: Sequence[EventId], alphabet: Iterable[EventId]) -> EventString:
        keep = frozenset(alphabet)
        for e in keep:
            self._check_event(e)
        return tuple(e for e in s if e in keep)

    def generated_strings(self, max_len: int) -> Set[EventString]:
        """All strings of L(G) with length at most ``max_len``."""
        if max_len < 0:
            raise UsageError("max_len must be non-negative")
        return {s for s, _ in self.iter_strings(max_len)}

    def iter_strings(self, max_len: int) -> Iterable[Tuple[EventString, StateId]]:
        """Yield (s, δ(s)) for s ∈ L(G), |s| <= max_len, in shortlex order."""
        layer = [((), self.initial)]
        for _ in range(max_len + 1):
            yield from layer
            layer = [
                (s + (e,), y)
                for s, x in layer
                for e, y in self._successors[x]
            ]


def _check_unique(names: Sequence[str], kind: str) -> None:
    seen: Set[str] = set()
    for name in names:
        if name in seen:
            raise ModelValidationError(f"duplicate {kind} name '{name}'")
        seen.add(name)

"""
Brute-force reference semantics.

Everything here evaluates the string-quantified definitions directly by
enumerating plant strings, and shares no code with the observer constructions
it is used to check. Two bounds keep the enumeration finite:

* ``max_len`` bounds the outer quantifier: the strings s ∈ L(G) whose
  observations are checked (and the observations accepted as input).
* ``tail_slack`` bounds every maximal run of events the viewer does not
  observe, including the trailing one. It defaults to |X|. With
  ``tail_slack >= |X| - 1`` estimates are exact, since a longer unobservable
  run between two states can always be replaced by a shorter one.

Pair sets quantify over every intruder-consistent string t, with no bound on
its intruder-unobservable runs. Two partial strings that reach the same plant
state at the same observation position, with the same user estimate so far,
have the same completions, so the search only expands the first. That keeps it
finite and exact for any pair of observation masks.

A bounded "no violation" is not a proof of opacity.
"""
from __future__ import annotations

import logging
from typing import Dict, FrozenSet, Iterator, Optional, Sequence, Set, Tuple

from hoopacity.automaton import Automaton, EventId, EventString, StateId
from hoopacity.exceptions import UsageError
from hoopacity.knowledge import DisambiguationTask, SecretStates
from hoopacity.serializers import BaseModel, ConfigDict, Field
from hoopacity.settings import settings
from hoopacity.verdict import Method, Property, Verdict

logger = logging.getLogger(__name__)

PairSet = FrozenSet[Tuple[StateId, StateId]]


class OracleConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    max_len: int = Field(default_factory=lambda: settings.ORACLE_MAX_LEN, ge=0)
    # None means |X|
    tail_slack: Optional[int] = Field(default=None, ge=0)

    def gap(self, a: Automaton) -> int:
        return a.num_states if self.tail_slack is None else self.tail_slack


def _consistent_strings(
    a: Automaton,
    alphabet: FrozenSet[EventId],
    alpha: Sequence[EventId],
    gap: int,
) -> Iterator[Tuple[EventString, StateId]]:
    """
    Depth-first enumeration of s ∈ L(G) with P_alphabet(s) = alpha whose
    unobservable runs are at most ``gap`` long. Yields (s, δ(s)). Partial
    strings that meet at the same (state, position, run length) have the same
    completions, so only the first one is expanded.
    """
    seen: Set[Tuple[StateId, int, int]] = set()
    stack = [((), a.initial, 0, 0)]
    while stack:
        s, x, pos, run = stack.pop()
        node = (x, pos, run)
        if node in seen:
            continue
        seen.add(node)
        if pos == len(alpha):
            yield s, x
        for e, y in reversed(a.successors(x)):
            if e in alphabet:
                if pos < len(alpha) and alpha[pos] == e:
                    stack.append((s + (e,), y, pos + 1, 0))
            elif run < gap:
                stack.append((s + (e,), y, pos, run + 1))


def _check_observation(
    a: Automaton, alphabet: FrozenSet[EventId], alpha: Sequence[EventId], cfg: OracleConfig
) -> None:
    if len(alpha) > cfg.max_len:
        raise UsageError(f"observation length {len(alpha)} exceeds the oracle bound {cfg.max_len}")
    stray = [e for e in alpha if e not in alphabet]
    if stray:
        names = ", ".join(a.event_names[e] if 0 <= e < a.num_events else str(e) for e in stray)
        raise UsageError(f"observation contains events outside the observed alphabet: {names}")


def estimate_oracle(
    a: Automaton,
    alphabet,
    alpha: Sequence[EventId],
    cfg: Optional[OracleConfig] = None,
) -> FrozenSet[StateId]:
    cfg = cfg or OracleConfig()
    alphabet = frozenset(alphabet)
    _check_observation(a, alphabet, alpha, cfg)
    return frozenset(x for _, x in _consistent_strings(a, alphabet, alpha, cfg.gap(a)))


def know_oracle(
    a: Automaton,
    t: DisambiguationTask,
    alpha: Sequence[EventId],
    cfg: Optional[OracleConfig] = None,
) -> bool:
    """Vacuously true when no string produces ``alpha``."""
    estimate = estimate_oracle(a, a.user_observable, alpha, cfg)
    return not t.confuses(estimate)


class _PairSets:
    """Caches user estimates and pair sets while one oracle call walks many strings."""

    def __init__(self, a: Automaton, cfg: OracleConfig):
        self.a = a
        self.gap = cfg.gap(a)
        self._estimates: Dict[EventString, FrozenSet[StateId]] = {}
        self._pairs: Dict[EventString, PairSet] = {}

    def user_estimate(self, beta: EventString) -> FrozenSet[StateId]:
        found = self._estimates.get(beta)
        if found is None:
            found = frozenset(
                x for _, x in _consistent_strings(self.a, self.a.user_observable, beta, self.gap)
            )
            self._estimates[beta] = found
        return found

    def user_estimates(self, alpha: EventString) -> Set[FrozenSet[StateId]]:
        """The user estimate after P_o(t), for every t ∈ L(G) with P_a(t) = alpha."""
        a = self.a
        seen: Set[Tuple[StateId, int, FrozenSet[StateId]]] = set()
        found: Set[FrozenSet[StateId]] = set()
        stack = [((), a.initial, 0)]
        while stack:
            beta, x, pos = stack.pop()
            estimate = self.user_estimate(beta)
            node = (x, pos, estimate)
            if node in seen:
                continue
            seen.add(node)
            if pos == len(alpha):
                found.add(estimate)
            for e, y in a.successors(x):
                step = pos
                if e in a.intruder_observable:
                    if pos == len(alpha) or alpha[pos] != e:
                        continue
                    step = pos + 1
                stack.append((beta + (e,) if e in a.user_observable else beta, y, step))
        return found

    def pair_set(self, alpha: EventString) -> PairSet:
        found = self._pairs.get(alpha)
        if found is None:
            pairs = set()
            for estimate in self.user_estimates(alpha):
                pairs.update((x1, x2) for x1 in estimate for x2 in estimate)
            found = self._pairs[alpha] = frozenset(pairs)
        return found


def pair_set_oracle(
    a: Automaton, alpha: Sequence[EventId], cfg: Optional[OracleConfig] = None
) -> PairSet:
    """
    {(δ(w1'), δ(w2')) : ∃t, P_a(t) = alpha, P_o(w1') = P_o(w2') = P_o(t)}.
    Empty when alpha is not an intruder observation of the plant.
    """
    cfg = cfg or OracleConfig()
    _check_observation(a, a.intruder_observable, alpha, cfg)
    return _PairSets(a, cfg).pair_set(tuple(alpha))


def user_estimates_oracle(
    a: Automaton, alpha: Sequence[EventId], cfg: Optional[OracleConfig] = None
) -> Set[FrozenSet[StateId]]:
    """{user estimate after P_o(t) : t ∈ L(G), P_a(t) = alpha}."""
    cfg = cfg or OracleConfig()
    _check_observation(a, a.intruder_observable, alpha, cfg)
    return _PairSets(a, cfg).user_estimates(tuple(alpha))


def _sort_key(a: Automaton, word: EventString):
    return len(word), [a.event_names[e] for e in word]


def hoo_oracle(
    a: Automaton, t: DisambiguationTask, cfg: Optional[OracleConfig] = None
) -> Verdict:
    """
    Checks every s ∈ L(G) with |s| <= max_len: when the user knows after s,
    some t with the same intruder observation must leave the user confused.
    The witness is the shortest violating observation.
    """
    cfg = cfg or OracleConfig()
    t.validate(a)
    cache = _PairSets(a, cfg)
    violations: Dict[EventString, EventString] = {}
    checked = 0
    for s, _ in a.iter_strings(cfg.max_len):
        checked += 1
        alpha = a.project(s, a.intruder_observable)
        if alpha in violations:
            continue
        if t.confuses(cache.user_estimate(a.project(s, a.user_observable))):
            continue
        if not t.meets(cache.pair_set(alpha)):
            violations[alpha] = s
    return _bounded_verdict(a, violations, Property.HIGH_ORDER, checked, cfg)


def cso_oracle(
    a: Automaton, xs: SecretStates, cfg: Optional[OracleConfig] = None
) -> Verdict:
    """Current-state opacity by enumeration: no observation may pin the intruder inside X_S."""
    cfg = cfg or OracleConfig()
    xs.validate(a)
    gap = cfg.gap(a)
    estimates: Dict[EventString, FrozenSet[StateId]] = {}
    violations: Dict[EventString, EventString] = {}
    checked = 0
    for s, _ in a.iter_strings(cfg.max_len):
        checked += 1
        alpha = a.project(s, a.intruder_observable)
        if alpha not in estimates:
            estimates[alpha] = frozenset(
                x for _, x in _consistent_strings(a, a.intruder_observable, alpha, gap)
            )
            if estimates[alpha] <= xs.states:
                violations[alpha] = s
    return _bounded_verdict(a, violations, Property.CURRENT_STATE, checked, cfg)


def _bounded_verdict(
    a: Automaton,
    violations: Dict[EventString, EventString],
    prop: Property,
    checked: int,
    cfg: OracleConfig,
) -> Verdict:
    if not violations:
        verdict = Verdict(
            opaque=True, method=Method.ORACLE, property=prop, explored_states=checked, bound=cfg.max_len
        )
    else:
        alpha = min(violations, key=lambda word: _sort_key(a, word))
        logger.info(
            "oracle: string %s violates %s", a.format_string(violations[alpha]), prop.value
        )
        verdict = Verdict(
            opaque=False,
            method=Method.ORACLE,
            property=prop,
            witness=alpha,
            witness_text=a.format_string(alpha),
            explored_states=checked,
            bound=cfg.max_len,
        )
    logger.info("oracle: %s", verdict.describe())
    return verdict

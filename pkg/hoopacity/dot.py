"""
Graphviz export for the plant and for every observer construction.

Output is a pure function of the input: nodes in index order, edges sorted by
(source, target), and parallel edges merged into one label ("a,c").
"""
from functools import singledispatch
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple

from hoopacity.automaton import Automaton, EventId
from hoopacity.double import DoubleObserver
from hoopacity.exceptions import UsageError
from hoopacity.observer import ObserverAutomaton
from hoopacity.pair import StatePairObserver


def _gvquote(s: str) -> str:
    return '"{}"'.format(s.replace("\\", "\\\\").replace('"', r"\""))


def _merged_edges(
    transitions: Mapping[Tuple[int, EventId], int], event_names: Sequence[str]
) -> List[Tuple[int, int, str]]:
    labels: Dict[Tuple[int, int], List[str]] = {}
    for (i, e), j in transitions.items():
        labels.setdefault((i, j), []).append(event_names[e])
    return [(i, j, ",".join(sorted(names))) for (i, j), names in sorted(labels.items())]


def _graph_body(
    prefix: str,
    labels: Sequence[str],
    initial: int,
    transitions: Mapping[Tuple[int, EventId], int],
    event_names: Sequence[str],
    highlight: Iterable[int] = (),
    indent: str = "  ",
) -> Iterator[str]:
    marked = frozenset(highlight)
    yield f'{indent}{prefix}_start [shape=point label=""];\n'
    for i, label in enumerate(labels):
        attrs = [f"label={_gvquote(label)}", 'shape="ellipse"']
        if i in marked:
            attrs.append('style="filled" fillcolor="lightcoral"')
        yield f"{indent}{prefix}{i} [{' '.join(attrs)}];\n"
    yield f"{indent}{prefix}_start -> {prefix}{initial};\n"
    for i, j, label in _merged_edges(transitions, event_names):
        yield f"{indent}{prefix}{i} -> {prefix}{j} [label={_gvquote(label)}];\n"


def _digraph(name: str, body: Iterable[str]) -> str:
    return "".join(["digraph ", _gvquote(name), " {\n", "  rankdir=LR;\n", *body, "}\n"])


@singledispatch
def export_dot(value, highlight: Iterable[int] = ()) -> str:
    raise UsageError(f"cannot export {type(value).__name__} as DOT")


@export_dot.register
def _(value: Automaton, highlight: Iterable[int] = ()) -> str:
    return _digraph(
        "plant",
        _graph_body("x", value.state_names, value.initial, value.transitions, value.event_names, highlight),
    )


@export_dot.register
def _(value: ObserverAutomaton, highlight: Iterable[int] = ()) -> str:
    labels = [value.render(i) for i in range(len(value.states))]
    return _digraph(
        "observer",
        _graph_body("q", labels, value.initial, value.transitions, value.plant.event_names, highlight),
    )


@export_dot.register
def _(value: DoubleObserver, highlight: Iterable[int] = ()) -> str:
    """Two clusters: the user observer, and the intruder's observer of it."""
    user = value.user_observer
    events = value.plant.event_names

    def body() -> Iterator[str]:
        yield '  subgraph cluster_user {\n    label="user observer";\n'
        yield from _graph_body(
            "u", [user.render(i) for i in range(len(user.states))], user.initial, user.transitions, events,
            indent="    ",
        )
        yield "  }\n"
        yield '  subgraph cluster_outer {\n    label="double observer";\n'
        yield from _graph_body(
            "d", [value.render(i) for i in range(len(value.estimates))], value.outer.initial,
            value.outer.transitions, events, highlight, indent="    ",
        )
        yield "  }\n"

    return _digraph("double_observer", body())


@export_dot.register
def _(value: StatePairObserver, highlight: Iterable[int] = ()) -> str:
    labels = [value.render(i) for i in range(len(value.states))]
    return _digraph(
        "state_pair_observer",
        _graph_body("v", labels, value.initial, value.transitions, value.plant.event_names, highlight),
    )

"""
JSON model documents: one file carries the plant, both observation masks, the
disambiguation task and the secret states.

    {
      "name": "robot",
      "states": ["0", "1", "2"],
      "initial": "0",
      "events": [{"name": "a", "user": false, "intruder": true}],
      "transitions": [["0", "a", "1"]],
      "t_spec": [["0", "0"]] | "all-distinct" | "non-secret-diagonal",
      "secret_states": ["0"],
      "allow_nonlive": false
    }

Automata are deterministic; a second transition on the same (state, event) is
rejected. A non-deterministic choice x -e-> {y, z} can still be modelled by
routing it through fresh intermediate states reached by events neither viewer
observes, e.g. x -e-> m, m -τ1-> y, m -τ2-> z.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Literal, Optional, Tuple, Union

from hoopacity.automaton import Automaton, StateId
from hoopacity.exceptions import ModelParseError, ModelValidationError, UsageError
from hoopacity.knowledge import DisambiguationTask, SecretStates
from hoopacity.serializers import BaseModel, ConfigDict, Field, ValidationError

logger = logging.getLogger(__name__)

ALL_DISTINCT = "all-distinct"
NON_SECRET_DIAGONAL = "non-secret-diagonal"


class EventDecl(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    user: bool = False
    intruder: bool = False


class ModelDocument(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "model"
    states: List[str] = Field(min_length=1)
    initial: str
    events: List[EventDecl] = []
    transitions: List[Tuple[str, str, str]] = []
    t_spec: Optional[Union[Literal["all-distinct", "non-secret-diagonal"], List[Tuple[str, str]]]] = None
    secret_states: Optional[List[str]] = None
    allow_nonlive: bool = False


@dataclass(frozen=True)
class ParsedModel:
    automaton: Automaton
    task: Optional[DisambiguationTask] = None
    secrets: Optional[SecretStates] = None
    name: str = "model"
    allow_nonlive: bool = False


def _state(a: Automaton, name: str, where: str) -> StateId:
    try:
        return a.state_id(name)
    except UsageError:
        raise ModelValidationError(f"{where} references undeclared state '{name}'") from None


def _build_task(doc: ModelDocument, a: Automaton, secrets: Optional[SecretStates]) -> Optional[DisambiguationTask]:
    if doc.t_spec is None:
        return None
    if doc.t_spec == ALL_DISTINCT:
        return DisambiguationTask.all_distinct(a)
    if doc.t_spec == NON_SECRET_DIAGONAL:
        if secrets is None:
            raise ModelValidationError("t_spec 'non-secret-diagonal' requires secret_states")
        return DisambiguationTask.diagonal(secrets.non_secret(a))
    return DisambiguationTask(
        frozenset((_state(a, x, "t_spec"), _state(a, y, "t_spec")) for x, y in doc.t_spec)
    )


def parse_model(text: str, allow_nonlive: Optional[bool] = None) -> ParsedModel:
    """
    Parse and validate a model document. ``allow_nonlive`` overrides the
    document's own flag when given.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ModelParseError(e.msg, line=e.lineno, column=e.colno) from None
    if not isinstance(data, dict):
        raise ModelParseError("model document must be a JSON object")
    try:
        doc = ModelDocument.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        raise ModelParseError(first["msg"], location=first["loc"]) from None

    a = Automaton.from_names(
        states=doc.states,
        events=[event.name for event in doc.events],
        initial=doc.initial,
        transitions=doc.transitions,
        user_observable=[event.name for event in doc.events if event.user],
        intruder_observable=[event.name for event in doc.events if event.intruder],
    )

    secrets = None
    if doc.secret_states is not None:
        secrets = SecretStates(frozenset(_state(a, x, "secret_states") for x in doc.secret_states))
    task = _build_task(doc, a, secrets)

    allow = doc.allow_nonlive if allow_nonlive is None else allow_nonlive
    dead = a.check_liveness()
    if dead and not allow:
        raise ModelValidationError(
            f"state '{a.state_names[dead[0]]}' has no outgoing transition; the model is not live "
            "(set allow_nonlive to accept it)"
        )
    logger.debug(
        "parsed model '%s': %d states, %d events, %d transitions",
        doc.name,
        a.num_states,
        a.num_events,
        len(a.transitions),
    )
    return ParsedModel(automaton=a, task=task, secrets=secrets, name=doc.name, allow_nonlive=doc.allow_nonlive)


def render_model(model: ParsedModel) -> str:
    """Canonical JSON: handle order throughout, the task as an explicit pair list."""
    a = model.automaton
    names = a.state_names
    doc = {
        "name": model.name,
        "states": list(names),
        "initial": names[a.initial],
        "events": [
            {"name": name, "user": e in a.user_observable, "intruder": e in a.intruder_observable}
            for e, name in enumerate(a.event_names)
        ],
        "transitions": [
            [names[x], a.event_names[e], names[y]] for (x, e), y in sorted(a.transitions.items())
        ],
    }
    if model.task is not None:
        doc["t_spec"] = [[names[x], names[y]] for x, y in sorted(model.task.pairs)]
    if model.secrets is not None:
        doc["secret_states"] = [names[x] for x in sorted(model.secrets.states)]
    doc["allow_nonlive"] = model.allow_nonlive
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_model(path: Union[str, Path], allow_nonlive: Optional[bool] = None) -> ParsedModel:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read model file {path}: {e.strerror}") from None
    return parse_model(text, allow_nonlive=allow_nonlive)

"""High-order and current-state opacity verification for partially observed automata."""
from hoopacity.automaton import Automaton
from hoopacity.double import DoubleObserver, build_double_observer, verify_hoo_double
from hoopacity.exceptions import (
    ConstructionError,
    MethodDisagreement,
    ModelParseError,
    ModelValidationError,
    OpacityError,
    StateLimitExceeded,
    UsageError,
)
from hoopacity.knowledge import DisambiguationTask, SecretStates, cso_as_high_order, know, verify_cso
from hoopacity.model_file import ParsedModel, load_model, parse_model, render_model
from hoopacity.observer import ObserverAutomaton, build_observer, estimate
from hoopacity.pair import StatePairObserver, build_state_pair_observer, verify_hoo_pair
from hoopacity.verdict import Method, Property, Verdict

__version__ = "0.1.0"

__all__ = [
    "Automaton",
    "ConstructionError",
    "DisambiguationTask",
    "DoubleObserver",
    "Method",
    "MethodDisagreement",
    "ModelParseError",
    "ModelValidationError",
    "ObserverAutomaton",
    "OpacityError",
    "ParsedModel",
    "Property",
    "SecretStates",
    "StateLimitExceeded",
    "StatePairObserver",
    "UsageError",
    "Verdict",
    "build_double_observer",
    "build_observer",
    "build_state_pair_observer",
    "cso_as_high_order",
    "estimate",
    "know",
    "load_model",
    "parse_model",
    "render_model",
    "verify_cso",
    "verify_hoo_double",
    "verify_hoo_pair",
]

"""
Command-line interface.

    hoopacity verify hoo --model FILE [--method double|pair|both] [--task T] [--dot OUT] [--json]
    hoopacity verify cso --model FILE [--dot OUT] [--json]
    hoopacity observer --model FILE --viewer user|intruder [--dot OUT]
    hoopacity double-observer --model FILE [--literal] [--dot OUT]
    hoopacity pair-observer --model FILE [--literal] [--dot OUT]
    hoopacity oracle --model FILE --max-len K [--tail-slack N] [--property hoo|cso] [--observe ALPHA]
    hoopacity crosscheck [--count N] [--seed S] [--max-states N] [--max-events M]

``--fixture NAME`` may replace ``--model FILE`` to use a packaged model.

Exit codes: 0 the property holds, 1 it is violated, 2 usage, parse or
validation error, 3 internal error (including disagreeing verifiers).
"""
import argparse
import asyncio
import json
import logging
import sys
import traceback
from typing import Iterable, List, Mapping, Optional, Sequence, Tuple

from hoopacity.automaton import EventId
from hoopacity.dot import export_dot
from hoopacity.double import build_double_observer, verify_hoo_double
from hoopacity.exceptions import OpacityError, UsageError
from hoopacity.fixtures import model_text
from hoopacity.knowledge import DisambiguationTask, knowing_indices, verify_cso
from hoopacity.model_file import ALL_DISTINCT, NON_SECRET_DIAGONAL, ParsedModel, load_model, parse_model
from hoopacity.observer import build_observer
from hoopacity.oracle import OracleConfig, cso_oracle, hoo_oracle, pair_set_oracle
from hoopacity.pair import build_state_pair_observer, verify_hoo_pair
from hoopacity.runner import crosscheck, verify_both
from hoopacity.serializers import ValidationError
from hoopacity.settings import settings
from hoopacity.verdict import Verdict

logger = logging.getLogger(__name__)

EXIT_HOLDS = 0
EXIT_VIOLATED = 1
EXIT_INTERNAL = 3


# ---- shared helpers ---------------------------------------------------


def _load(args) -> ParsedModel:
    allow = True if args.allow_nonlive else None
    if args.fixture:
        return parse_model(model_text(args.fixture), allow_nonlive=allow)
    return load_model(args.model, allow_nonlive=allow)


def _secrets(model: ParsedModel):
    if model.secrets is None:
        raise UsageError("the model declares no secret_states")
    return model.secrets


def _task(model: ParsedModel, text: Optional[str]) -> DisambiguationTask:
    a = model.automaton
    if text is None:
        if model.task is None:
            raise UsageError("the model declares no t_spec; pass --task")
        return model.task
    if text == ALL_DISTINCT:
        return DisambiguationTask.all_distinct(a)
    if text == "full":
        return DisambiguationTask.full(a)
    if text == NON_SECRET_DIAGONAL:
        return DisambiguationTask.diagonal(_secrets(model).non_secret(a))
    pairs = []
    for item in text.split(","):
        x, sep, y = item.partition(":")
        if not sep:
            raise UsageError(f"bad --task pair '{item}' (expected x:y)")
        pairs.append((a.state_id(x.strip()), a.state_id(y.strip())))
    return DisambiguationTask(frozenset(pairs))


def _write_dot(path: Optional[str], text: str) -> None:
    if path is None:
        return
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as f:
            f.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None
    logger.info("wrote %s", path)


def _print_graph(
    labels: Sequence[str], transitions: Mapping[Tuple[int, EventId], int], event_names: Sequence[str]
) -> None:
    outgoing = {}
    for (src, e), dst in transitions.items():
        outgoing.setdefault(src, []).append((event_names[e], dst))
    for i, label in enumerate(labels):
        print(f"{i}: {label}")
        for name, dst in sorted(outgoing.get(i, ())):
            print(f"    -{name}-> {dst}")


def _report(verdicts: Iterable[Verdict], as_json: bool, labelled: bool = False) -> int:
    verdicts = list(verdicts)
    if as_json:
        payload = [v.model_dump(mode="json") for v in verdicts]
        print(json.dumps(payload if labelled else payload[0], indent=2, ensure_ascii=False))
    else:
        for v in verdicts:
            print(f"{v.method.value}: {v.describe()}" if labelled else v.describe())
    return EXIT_HOLDS if all(v.opaque for v in verdicts) else EXIT_VIOLATED


# ---- commands ---------------------------------------------------------


def cmd_verify_hoo(args) -> int:
    model = _load(args)
    a, t = model.automaton, _task(model, args.task)
    if args.method == "both":
        verdicts = asyncio.run(verify_both(a, t))
    elif args.method == "double":
        verdicts = (verify_hoo_double(a, t),)
    else:
        verdicts = (verify_hoo_pair(a, t),)

    if args.dot:
        if args.method == "double":
            double = build_double_observer(a)
            knowing = knowing_indices(double.user_observer, t)
            revealing = [i for i, inner in enumerate(double.estimates) if inner <= knowing]
            _write_dot(args.dot, export_dot(double, highlight=revealing))
        else:
            pair = build_state_pair_observer(a)
            revealing = [i for i, q in enumerate(pair.states) if not t.meets(q)]
            _write_dot(args.dot, export_dot(pair, highlight=revealing))
    return _report(verdicts, args.json, labelled=args.method == "both")


def cmd_verify_cso(args) -> int:
    model = _load(args)
    a, xs = model.automaton, _secrets(model)
    verdict = verify_cso(a, xs)
    if args.dot:
        intruder = build_observer(a, a.intruder_observable)
        revealing = [i for i, q in enumerate(intruder.states) if q <= xs.states]
        _write_dot(args.dot, export_dot(intruder, highlight=revealing))
    return _report([verdict], args.json)


def cmd_observer(args) -> int:
    a = _load(args).automaton
    alphabet = a.user_observable if args.viewer == "user" else a.intruder_observable
    obs = build_observer(a, alphabet)
    names = ",".join(sorted(a.event_names[e] for e in alphabet))
    print(f"{args.viewer} observer over {{{names}}}: {len(obs.states)} states")
    _print_graph([obs.render(i) for i in range(len(obs.states))], obs.transitions, a.event_names)
    _write_dot(args.dot, export_dot(obs))
    return EXIT_HOLDS


def cmd_double_observer(args) -> int:
    a = _load(args).automaton
    double = build_double_observer(a, tracked=not args.literal)
    print(f"double observer ({'literal' if args.literal else 'tracked'}): {len(double.estimates)} states")
    _print_graph([double.render(i) for i in range(len(double.estimates))], double.outer.transitions, a.event_names)
    _write_dot(args.dot, export_dot(double))
    return EXIT_HOLDS


def cmd_pair_observer(args) -> int:
    a = _load(args).automaton
    pair = build_state_pair_observer(a, tracked=not args.literal)
    print(f"state-pair observer ({'literal' if args.literal else 'tracked'}): {len(pair.states)} states")
    _print_graph([pair.render(i) for i in range(len(pair.states))], pair.transitions, a.event_names)
    _write_dot(args.dot, export_dot(pair))
    return EXIT_HOLDS


def cmd_oracle(args) -> int:
    model = _load(args)
    a = model.automaton
    try:
        cfg = OracleConfig(max_len=args.max_len, tail_slack=args.tail_slack)
    except ValidationError as e:
        raise UsageError(f"invalid oracle bounds: {e.errors()[0]['msg']}") from None

    if args.observe is not None:
        alpha = a.parse_string(args.observe)
        pairs = pair_set_oracle(a, alpha, cfg)
        print("{" + ",".join(f"({a.state_names[x]},{a.state_names[y]})" for x, y in sorted(pairs)) + "}")
        return EXIT_HOLDS

    if args.property == "cso":
        verdict = cso_oracle(a, _secrets(model), cfg)
    else:
        verdict = hoo_oracle(a, _task(model, args.task), cfg)
    return _report([verdict], args.json)


def cmd_crosscheck(args) -> int:
    report = asyncio.run(
        crosscheck(
            args.count,
            seed=args.seed,
            max_states=args.max_states,
            max_events=args.max_events,
            limit=args.limit,
        )
    )
    if args.json:
        print(report.model_dump_json(indent=2))
    else:
        print(f"{report.instances} instances, {len(report.mismatches)} mismatches (seed {report.seed})")
        for m in report.mismatches:
            print(f"#{m.index} {m.check}: {m.detail}")
    return EXIT_HOLDS if report.ok else EXIT_INTERNAL


# ---- parser -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hoopacity", description="Verify high-order and current-state opacity of finite automata."
    )
    parser.add_argument(
        "--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], type=str.upper, default=None
    )

    source = argparse.ArgumentParser(add_help=False)
    group = source.add_mutually_exclusive_group(required=True)
    group.add_argument("--model", metavar="FILE", help="JSON model file")
    group.add_argument("--fixture", metavar="NAME", help="packaged model (g1, robot)")
    source.add_argument("--allow-nonlive", action="store_true", help="accept models with dead states")

    dot = argparse.ArgumentParser(add_help=False)
    dot.add_argument("--dot", metavar="OUT", help="write Graphviz DOT to OUT ('-' for stdout)")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--json", action="store_true", help="print verdicts as JSON")

    task = argparse.ArgumentParser(add_help=False)
    task.add_argument(
        "--task",
        help="override t_spec: all-distinct, full, non-secret-diagonal, or pairs 'x:y,x:y'",
    )

    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", help="decide an opacity property")
    properties = verify.add_subparsers(dest="property", required=True)
    hoo = properties.add_parser("hoo", parents=[source, dot, output, task], help="high-order opacity")
    hoo.add_argument("--method", choices=["double", "pair", "both"], default="pair")
    hoo.set_defaults(handler=cmd_verify_hoo)
    cso = properties.add_parser("cso", parents=[source, dot, output], help="current-state opacity")
    cso.set_defaults(handler=cmd_verify_cso)

    observer = commands.add_parser("observer", parents=[source, dot], help="user or intruder observer")
    observer.add_argument("--viewer", choices=["user", "intruder"], required=True)
    observer.set_defaults(handler=cmd_observer)

    for name, handler in (("double-observer", cmd_double_observer), ("pair-observer", cmd_pair_observer)):
        sub = commands.add_parser(name, parents=[source, dot])
        sub.add_argument("--literal", action="store_true", help="use the untracked construction (diagrams only)")
        sub.set_defaults(handler=handler)

    oracle = commands.add_parser("oracle", parents=[source, output, task], help="bounded brute-force check")
    oracle.add_argument("--max-len", type=int, default=settings.ORACLE_MAX_LEN)
    oracle.add_argument("--tail-slack", type=int, default=None)
    oracle.add_argument("--property", choices=["hoo", "cso"], default="hoo")
    oracle.add_argument("--observe", metavar="ALPHA", help="print the pair set reached by this intruder observation")
    oracle.set_defaults(handler=cmd_oracle)

    cross = commands.add_parser("crosscheck", parents=[output], help="randomized agreement check")
    cross.add_argument("--count", type=int, default=500)
    cross.add_argument("--seed", type=int, default=0)
    cross.add_argument("--max-states", type=int, default=6)
    cross.add_argument("--max-events", type=int, default=4)
    cross.add_argument("--limit", type=int, default=None)
    cross.set_defaults(handler=cmd_crosscheck)
    return parser


def _configure_logging(level: Optional[str]) -> None:
    if settings.DEBUG:
        level = "DEBUG"
    logging.basicConfig(
        level=level or settings.LOG_LEVEL,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    _configure_logging(args.log_level)

    try:
        return args.handler(args)
    except OpacityError as e:
        print(f"error: {e.detail}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        print(f"internal error: {e}", file=sys.stderr)
        if settings.DEBUG:
            traceback.print_exc()
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

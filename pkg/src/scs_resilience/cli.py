"""Command-line front end.

Each invocation runs one subcommand and prints a single JSON document.
Exit status is 0 on success, 1 for bad input and 2 when a search budget,
event cap or horizon cap is exceeded.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import io as docs
from .errors import LimitExceeded, SCSError
from .generators import KINDS, generate
from .geometry import ANGLE_TOL
from .meeting import build_meeting_graph
from .reduction import CirculantGraph, build_caterpillar_scs, circulant_mis, knn_augmentation, verify_reduction
from .resilience import (
    default_budget,
    k_resilience_general,
    one_resilience_fast,
    starvation_number,
    tree_resilience,
)
from .rings import SLOT_TOL, decompose
from .simulate import AUTO, DEFAULT_EVENT_CAP, SimConfig, events_to_jsonl, simulate

EXIT_OK, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--angle-tol", type=float, default=ANGLE_TOL, help="synchronization tolerance (radians)")
    p.add_argument("--slot-tol", type=float, default=SLOT_TOL, help="integrality tolerance for slot lengths")
    p.add_argument("--budget", type=int, default=None, help="search node budget (default: RESILIENCE_BUDGET or 1e8)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="scs", description="Resilience analysis of synchronized robot communication systems")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_instance(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("instance", help="instance JSON file, or - for stdin")
        return p

    with_instance("validate", "validate an instance and print it with defaults applied")
    with_instance("rings", "ring decomposition, crossings and robot placement")
    with_instance("ties", "ties and distinct tie lengths per ring")
    with_instance("meeting-graph", "meeting graph with adjacency certificates")
    p = with_instance("resilience", "k-resilience")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", choices=("general", "tree", "fast1"), default="general")
    p.add_argument("--cross-check", action="store_true", help="also run the general search and compare")
    with_instance("starvation", "starvation number with a witness set")
    p = with_instance("simulate", "run the shifting protocol")
    p.add_argument("--remove", default="", help="comma-separated robot ids to remove")
    p.add_argument("--horizon", default=AUTO, help="horizon in slots, or 'auto' for the ring period")
    p.add_argument("--event-cap", type=int, default=DEFAULT_EVENT_CAP)
    p.add_argument("--events-jsonl", default=None, help="write the event log as JSON lines to this file")
    p.add_argument("--events", action="store_true", help="include the event list in the report")
    for name, help_text in (
        ("reduce", "caterpillar system for a circulant graph, with verification"),
        ("augment", "K_{n,n}-augmentation of a circulant graph"),
        ("mis", "maximum independent set of a circulant graph"),
    ):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("--circulant", required=True, help="circulant graph 'n;d1,d2,...'")
    p = sub.add_parser("gen", parents=[common], help="generate an instance document")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("params", nargs="*")
    p.add_argument("--seed", type=int, default=None, help="seed for random kinds")
    p.add_argument("--drop", type=float, default=0.0, help="edge drop probability for random lattices")
    return parser


def _read_instance(args):
    if args.instance == "-":
        text = sys.stdin.read()
    else:
        try:
            text = Path(args.instance).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.instance}: {exc.strerror}") from None
    return docs.parse_instance(text, args.angle_tol)


def _parse_ids(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"--remove expects comma-separated integers, got {text!r}") from None


def _resilience(args, inst, budget):
    k = args.k
    if k < 1:
        raise UsageError("--k must be at least 1")
    if args.method == "fast1":
        if k != 1:
            raise UsageError("--method fast1 only computes k = 1")
        result = one_resilience_fast(inst)
    elif args.method == "tree":
        result = tree_resilience(inst, k, budget)
    else:
        result = k_resilience_general(build_meeting_graph(inst, args.slot_tol), k, budget)
    payload = docs.resilience_payload(result)
    if args.cross_check and args.method != "general":
        ref = k_resilience_general(build_meeting_graph(inst, args.slot_tol), k, budget)
        payload["cross_check"] = {"general": ref.value, "agree": ref.value == result.value}
        if ref.value != result.value:
            raise SCSError(f"{args.method} gives {result.value!r}, general search gives {ref.value!r}")
    return payload


def _dispatch(args, budget):
    cmd = args.command
    if cmd == "gen":
        inst = generate(args.kind, args.params, args.seed, args.drop)
        return docs.instance_to_document(inst), True
    if cmd in ("reduce", "augment", "mis"):
        g = CirculantGraph.parse(args.circulant)
        if cmd == "mis":
            return {"circulant": str(g), **docs.independent_set_payload(circulant_mis(g, budget))}, False
        aug = knn_augmentation(g)
        if cmd == "augment":
            return {"original": str(g), "augmented": str(aug), "jumps": aug.sorted_jumps(), "n": aug.n}, False
        inst = build_caterpillar_scs(aug)
        rep = verify_reduction(g, inst, budget)
        return {
            "original": str(g),
            "augmented": str(aug),
            "instance": docs.instance_to_document(inst),
            "verification": {
                "tie_set": list(rep.tie_set),
                "tie_set_matches": True,
                "starvation_number": rep.starvation_number,
                "mis": rep.mis,
                "mis_witness": list(rep.mis_witness),
                "starvation_witness": list(rep.starvation_witness),
            },
        }, False

    inst = _read_instance(args)
    if cmd == "validate":
        return {"valid": True, "n": inst.n, "instance": docs.instance_to_document(inst)}, False
    if cmd == "rings":
        return docs.rings_payload(decompose(inst, args.slot_tol)), False
    if cmd == "ties":
        return docs.ties_payload(decompose(inst, args.slot_tol)), False
    if cmd == "meeting-graph":
        return docs.graph_payload(build_meeting_graph(inst, args.slot_tol)), False
    if cmd == "resilience":
        return _resilience(args, inst, budget), False
    if cmd == "starvation":
        return docs.independent_set_payload(starvation_number(build_meeting_graph(inst, args.slot_tol), budget)), False
    if cmd == "simulate":
        horizon = args.horizon
        if horizon != AUTO:
            try:
                horizon = float(horizon)
            except ValueError:
                raise UsageError(f"--horizon expects a number or 'auto', got {horizon!r}") from None
        config = SimConfig(frozenset(_parse_ids(args.remove)), horizon, args.event_cap)
        report = simulate(inst, config)
        if args.events_jsonl:
            Path(args.events_jsonl).write_text(events_to_jsonl(report.events))
        return docs.simulation_payload(report, args.events), False
    raise UsageError(f"unknown command {cmd!r}")


def _echo(args) -> dict:
    skip = {"angle_tol", "slot_tol", "budget", "verbose", "seed"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def run_command(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=err)
    budget = args.budget if args.budget is not None else default_budget()
    try:
        result, bare = _dispatch(args, budget)
    except LimitExceeded as exc:
        print(f"error: {exc}", file=err)
        return EXIT_LIMIT
    except (SCSError, UsageError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return EXIT_INPUT
    if bare:
        out.write(docs.dumps(result))
        return EXIT_OK
    doc = {
        "command": args.command,
        "args": _echo(args),
        "result": result,
        "provenance": {
            "angle_tol": args.angle_tol,
            "slot_tol": args.slot_tol,
            "budget": budget,
            "seed": getattr(args, "seed", None),
        },
    }
    out.write(docs.dumps(doc))
    return EXIT_OK


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()

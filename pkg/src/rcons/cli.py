"""Command-line front end.

Subcommands: type-validate, type-check, zoo-make, simulate, verify,
valency, critical.  Exit codes: 0 for ok / witness found, 1 for a
violation or a "none" result, 2 for usage or input errors.  With
--json every report is machine-readable JSON on stdout.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys

from .characterize import (SearchSpaceError, is_n_discerning, is_n_recording)
from .explore import (ExploreBounds, check_consensus, find_critical, valency)
from .model import (BudgetSpec, ModelError, format_schedule, parse_schedule,
                    trace_json, trace_lines)
from .objtypes import (TypeError_, builtin_type, is_readable, type_from_json,
                       type_to_json)
from .protocols import PROTOCOLS, make_protocol

OK, FAIL, USAGE = 0, 1, 2


def _load_type(args):
    if getattr(args, "builtin", None):
        return builtin_type(args.builtin)
    with open(args.file) as fh:
        return type_from_json(fh.read())


def _make_system(args):
    n, n_prime = (int(p) for p in args.tnn.split(","))
    procs = args.procs
    if args.inputs is not None:
        if len(args.inputs) != procs or set(args.inputs) - {"0", "1"}:
            raise ModelError(
                f"--inputs must be {procs} binary digits, got {args.inputs!r}")
        vectors = [tuple(args.inputs)]
    else:
        vectors = [tuple(map(str, bits))
                   for bits in itertools.product((0, 1), repeat=procs)]
    return [(make_protocol(args.protocol, n, n_prime, v), v) for v in vectors]


def _bounds(args) -> ExploreBounds:
    return ExploreBounds(
        max_events=args.max_events,
        max_crashes_per_process=args.crashes,
        budget=BudgetSpec(z=args.z),
    )


def cmd_type_validate(args):
    try:
        obj_type = _load_type(args)
    except TypeError_ as exc:
        print(f"invalid: {exc}")
        return USAGE
    print(json.dumps({"status": "valid", "name": obj_type.name,
                      "values": len(obj_type.values),
                      "operations": len(obj_type.operations)},
                     sort_keys=True) if args.json
          else f"valid: {obj_type.name} ({len(obj_type.values)} values, "
               f"{len(obj_type.operations)} operations)")
    return OK


def cmd_type_check(args):
    obj_type = _load_type(args)
    if args.property == "readable":
        op = is_readable(obj_type)
        if args.json:
            print(json.dumps({"property": "readable", "result": op},
                             sort_keys=True))
        else:
            print(f"readable via {op}" if op else "not readable")
        return OK if op else FAIL
    decider = is_n_discerning if args.property == "discerning" \
        else is_n_recording
    try:
        witness = decider(obj_type, args.n, cap=args.cap)
    except SearchSpaceError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return USAGE
    if witness is None:
        print(json.dumps({"property": args.property, "n": args.n,
                          "result": None}, sort_keys=True)
              if args.json else "none")
        return FAIL
    if args.json:
        doc = json.loads(witness.to_json())
        doc.update({"property": args.property, "n": args.n})
        print(json.dumps(doc, sort_keys=True))
    else:
        print(f"{args.n}-{args.property} witness: u={witness.u} "
              f"team0={sorted(witness.team0)} team1={sorted(witness.team1)} "
              f"ops={list(witness.ops)}")
    return OK


def cmd_zoo_make(args):
    obj_type = builtin_type(args.name)
    text = type_to_json(obj_type)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        if not args.json:
            print(f"wrote {obj_type.name} to {args.out}")
    else:
        print(text)
    return OK


def cmd_simulate(args):
    systems = _make_system(args)
    if len(systems) != 1:
        raise ModelError("simulate requires --inputs")
    system, _ = systems[0]
    schedule = parse_schedule(args.schedule, system.n)
    execution = system.run(system.initial_configuration(), schedule)
    names = [t.name for t in system.obj_types]
    if args.json:
        print(trace_json(execution, names))
    else:
        for line in trace_lines(execution, names):
            print(line)
        for _k, p, v in execution.decisions:
            print(f"decided {p} -> {v}")
        print(f"final values: {list(execution.final.obj_values)}")
    return OK


def cmd_verify(args):
    bounds = _bounds(args)
    for system, vector in _make_system(args):
        verdict = check_consensus(system, bounds)
        if verdict.status != "ok":
            if args.json:
                doc = json.loads(verdict.to_json())
                doc["inputs"] = "".join(vector)
                print(json.dumps(doc, sort_keys=True))
            else:
                print(f"inputs {''.join(vector)}: {verdict.status}"
                      + (f" ({verdict.kind}) trace "
                         f"{format_schedule(verdict.trace)}"
                         if verdict.trace is not None else ""))
            return FAIL
    print(json.dumps({"status": "ok"}, sort_keys=True) if args.json else "ok")
    return OK


def cmd_valency(args):
    systems = _make_system(args)
    if len(systems) != 1:
        raise ModelError("valency requires --inputs")
    system, _ = systems[0]
    prefix = parse_schedule(args.prefix, system.n) if args.prefix else ()
    execution = system.run(system.initial_configuration(), prefix)
    report = valency(system, execution.final, execution.decided_values(),
                     _bounds(args))
    if args.json:
        print(report.to_json())
    else:
        print(report.verdict if report.value is None
              else f"{report.verdict}({report.value})")
    return OK if report.verdict != "unknown" else FAIL


def cmd_critical(args):
    systems = _make_system(args)
    if len(systems) != 1:
        raise ModelError("critical requires --inputs")
    system, _ = systems[0]
    try:
        report = find_critical(system, _bounds(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    if report is None:
        print(json.dumps({"result": None}, sort_keys=True)
              if args.json else "none")
        return FAIL
    if args.json:
        print(report.to_json())
    else:
        print(f"critical schedule: {format_schedule(report.events) or '<empty>'}"
              f"  team0={sorted(report.teams[0])}"
              f"  team1={sorted(report.teams[1])}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rcons",
        description="Finite object types, crash-recovery executions, "
                    "consensus characterization, and bounded exploration.")
    parser.add_argument("--json", action="store_true",
                        help="machine-readable JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_type_source(p):
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--file", help="JSON type-definition file")
        src.add_argument("--builtin",
                         help="builtin spec: tnn:n,n' | register:k | "
                              "tas | cas:k")

    p = sub.add_parser("type-validate", help="validate a type definition")
    p.add_argument("file")
    p.set_defaults(func=cmd_type_validate, builtin=None)

    p = sub.add_parser("type-check", help="decide a type property")
    add_type_source(p)
    p.add_argument("--property", required=True,
                   choices=["discerning", "recording", "readable"])
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--cap", type=int, default=10**9,
                   help="search-space guard (elementary applications)")
    p.set_defaults(func=cmd_type_check)

    p = sub.add_parser("zoo-make", help="emit a builtin type as JSON")
    p.add_argument("name", help="builtin spec, e.g. tnn:5,2")
    p.add_argument("--out", help="output file (stdout if omitted)")
    p.set_defaults(func=cmd_zoo_make)

    def add_protocol_args(p, with_inputs_default=None):
        p.add_argument("--protocol", required=True,
                       choices=sorted(PROTOCOLS))
        p.add_argument("--tnn", required=True, metavar="N,N'",
                       help="shared-object parameters, e.g. 5,2")
        p.add_argument("--procs", type=int, required=True)
        p.add_argument("--inputs", default=with_inputs_default,
                       help="binary string, one digit per process")
        p.add_argument("--z", type=int, default=1)
        p.add_argument("--crashes", type=int, default=2,
                       help="per-process crash cap")
        p.add_argument("--max-events", type=int, default=24)
        p.add_argument("--workers", type=int, default=1,
                       help="reserved; exploration currently runs "
                            "sequentially")

    p = sub.add_parser("simulate", help="run one schedule and print a trace")
    add_protocol_args(p)
    p.add_argument("--schedule", required=True,
                   help="comma-separated tokens, e.g. p0,p1,c1,p0")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify",
                       help="exhaustively check agreement/validity/liveness")
    add_protocol_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("valency", help="classify a configuration's valency")
    add_protocol_args(p)
    p.add_argument("--prefix", default="",
                   help="schedule prefix leading to the configuration")
    p.set_defaults(func=cmd_valency)

    p = sub.add_parser("critical", help="search for a critical execution")
    add_protocol_args(p)
    p.set_defaults(func=cmd_critical)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (TypeError_, ModelError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())

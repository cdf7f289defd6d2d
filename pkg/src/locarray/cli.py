"""Command line entry point: ``locarray {find,verify,locate,encode,bounds,report}``.

Exit codes: 0 success, 1 property fails / nothing found, 2 usage or input
error, 3 localization guarantee unavailable.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from pathlib import Path

from .backend import BUILTIN, EXTERNAL, BackendConfig
from .encoder import EncodingConfig, EncodingError, Scheme, encode, write_dimacs
from .model import (
    Inconsistent,
    Located,
    ModelError,
    NoFault,
    SutModel,
    indistinguishable_pairs,
    is_covering,
    is_locating_1t,
    locate_fault,
    parse_array,
    parse_outcomes,
    rho,
    uncovered_interactions,
)
from .search import NoArrayFound, SearchConfig, SearchOutcome, find_minimum, lower_bound_with_source

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NO_GUARANTEE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _model_args(p):
    p.add_argument("--k", type=int, required=True, help="number of factors")
    p.add_argument("--v", type=int, required=True, help="levels per factor")
    p.add_argument("--t", type=int, default=2, help="strength (default 2)")


def _encoding_args(p):
    p.add_argument("--scheme", choices=[s.value for s in Scheme], default="alt")
    p.add_argument("--sb", action=argparse.BooleanOptionalAction, default=True,
                   help="row/column lexicographic symmetry breaking")
    p.add_argument("--fix-first-row", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--skip-conflicting-pairs", action=argparse.BooleanOptionalAction, default=True,
                   help="omit distinguishing constraints already implied by covering")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="locarray", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("find", help="search for a minimum locating array")
    _model_args(p)
    _encoding_args(p)
    p.add_argument("--solver", choices=[BUILTIN, EXTERNAL], default=BUILTIN)
    p.add_argument("--solver-cmd", help="external solver command; {input} is the DIMACS path")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--timeout-secs", type=float, default=3600.0)
    p.add_argument("--n-start", type=int, help="override the starting size")
    p.add_argument("--n-max", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="also write the outcome JSON here")
    p.add_argument("--log-csv", help="dump the per-N log as CSV")

    p = sub.add_parser("verify", help="check covering / locating properties of an array file")
    p.add_argument("array")
    p.add_argument("--t", type=int, help="override the strength in the file header")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("locate", help="locate a faulty interaction from test outcomes")
    p.add_argument("array")
    p.add_argument("outcomes", help="file with one line of P/F characters")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("encode", help="write the DIMACS instance for a fixed size")
    _model_args(p)
    p.add_argument("--n", type=int, required=True)
    _encoding_args(p)
    p.add_argument("--out", help="DIMACS path (default: stdout)")
    p.add_argument("--map", help="variable map path (default: <out>.map)")

    p = sub.add_parser("bounds", help="print the starting lower bound")
    _model_args(p)

    p = sub.add_parser("report", help="tabulate saved find results")
    p.add_argument("results", nargs="+")
    return parser


def _model(args) -> SutModel:
    try:
        return SutModel(args.k, args.v, args.t)
    except ModelError as exc:
        raise UsageError(str(exc)) from None


def _encoding(args) -> EncodingConfig:
    return EncodingConfig(Scheme(args.scheme), args.sb, args.fix_first_row, args.skip_conflicting_pairs)


def _read_array(path, t=None):
    try:
        text = Path(path).read_text()
        array = parse_array(text)
        if t is not None and t != array.model.t:
            lines = text.splitlines()
            n, k, v, _ = lines[0].split()
            array = parse_array("\n".join([f"{n} {k} {v} {t}"] + lines[1:]))
        return array
    except (OSError, ModelError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_find(args, out) -> int:
    model = _model(args)
    try:
        backend = BackendConfig(args.solver, args.timeout_secs, args.solver_cmd, args.threads, args.seed)
        config = SearchConfig(model, _encoding(args), backend, args.n_start, args.n_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        result = find_minimum(config)
    except EncodingError as exc:
        raise UsageError(str(exc)) from None
    except NoArrayFound as exc:
        print(json.dumps({"error": str(exc), "log": [vars(e) for e in exc.log]}), file=out)
        return EXIT_FAIL
    print(result.to_json(), file=out)
    if args.out:
        result.save(args.out)
    if args.log_csv:
        with open(args.log_csv, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "outcome", "seconds"])
            for e in result.log:
                writer.writerow([e.n, e.outcome, f"{e.seconds:.6f}"])
    return EXIT_OK


def cmd_verify(args, out) -> int:
    array = _read_array(args.array, args.t)
    covering = is_covering(array)
    locating = is_locating_1t(array)
    report = {"rows": array.n_rows, "k": array.model.k, "v": array.model.v, "t": array.model.t,
              "covering": covering, "locating_1t": locating, "locating_bar1t": covering and locating}
    witness = None
    if not covering:
        T = uncovered_interactions(array)[0]
        witness = {"kind": "uncovered", "interaction": T.entries}
    elif not locating:
        T1, T2 = indistinguishable_pairs(array)[0]
        witness = {"kind": "indistinguishable", "pair": [T1.entries, T2.entries],
                   "rows": sorted(rho(array, T1))}
    report["witness"] = witness
    if args.json:
        print(json.dumps(report), file=out)
    else:
        for key in ("covering", "locating_1t", "locating_bar1t"):
            print(f"{key:16s} {'yes' if report[key] else 'no'}", file=out)
        if witness and witness["kind"] == "uncovered":
            print(f"uncovered        {uncovered_interactions(array)[0]}", file=out)
        elif witness:
            T1, T2 = indistinguishable_pairs(array)[0]
            print(f"indistinguishable {T1} {T2} rows={witness['rows']}", file=out)
    return EXIT_OK if report["locating_bar1t"] else EXIT_FAIL


def cmd_locate(args, out) -> int:
    array = _read_array(args.array)
    try:
        outcomes = parse_outcomes(Path(args.outcomes).read_text())
    except (OSError, ModelError) as exc:
        raise UsageError(f"{args.outcomes}: {exc}") from None
    if len(outcomes) != array.n_rows:
        raise UsageError(f"{len(outcomes)} outcomes for an array with {array.n_rows} rows")
    if not (is_covering(array) and is_locating_1t(array)):
        print("array is not (1-bar, t)-locating; localization is not guaranteed", file=sys.stderr)
        return EXIT_NO_GUARANTEE
    result = locate_fault(array, outcomes)
    if args.json:
        payload = {"result": type(result).__name__}
        if isinstance(result, Located):
            payload["interaction"] = result.interaction.entries
        if isinstance(result, Inconsistent):
            payload["reason"] = result.reason
        print(json.dumps(payload), file=out)
    elif isinstance(result, Located):
        print("Located " + " ".join(f"F{f}={l}" for f, l in result.interaction.entries), file=out)
    else:
        print(str(result), file=out)
    return EXIT_OK


def cmd_encode(args, out) -> int:
    model = _model(args)
    try:
        cnf = encode(model, args.n, _encoding(args))
    except EncodingError as exc:
        raise UsageError(str(exc)) from None
    data = write_dimacs(cnf)
    mapping = ("\n".join(cnf.variable_map.lines()) + "\n").encode()
    if args.out:
        Path(args.out).write_bytes(data)
        Path(args.map or args.out + ".map").write_bytes(mapping)
    else:
        out.write(data.decode())
        if args.map:
            Path(args.map).write_bytes(mapping)
    return EXIT_OK


def cmd_bounds(args, out) -> int:
    bound, source = lower_bound_with_source(_model(args))
    print(f"{bound} ({source})", file=out)
    return EXIT_OK


def cmd_report(args, out) -> int:
    print(f"{'instance':10s} {'size':>5s} {'time':>10s} {'min?':>5s}  log", file=out)
    for path in args.results:
        try:
            res = SearchOutcome.load(path)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"{path}: {exc}") from None
        m = res.model
        seconds = res.log[-1].seconds if res.log else 0.0
        trail = " ".join(f"{e.n}:{e.outcome}" for e in res.log)
        print(f"{m.v}^{m.k:<8d} {res.n:5d} {seconds:10.2f} {'Yes' if res.is_minimum else '?':>5s}  {trail}",
              file=out)
    return EXIT_OK


COMMANDS = {"find": cmd_find, "verify": cmd_verify, "locate": cmd_locate,
            "encode": cmd_encode, "bounds": cmd_bounds, "report": cmd_report}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr)
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"locarray: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""``cubesum`` command-line interface.

Exit codes: 0 success or verified, 1 verification failed, 2 usage or input
error, 3 search budget exceeded or no family match within bounds.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import catalog
from .derive import DERIVATIONS, derive
from .errors import (
    BudgetExceeded,
    CubesumError,
    NoFourCubeFamilyMatch,
    UnknownFamily,
)
from .poly import parse
from .representation import Representation
from .search import SearchSpace, default_budget, search_parallel, search_shard
from .verify import verifier_check

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3
FORMATS = ("text", "json", "latex")


def render(rep: Representation, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rep.to_json(), indent=2)
    if fmt == "latex":
        return rep.to_latex()
    label = f"{rep.id}: " if rep.id else ""
    params = ", ".join(f"{k}={v}" for k, v in rep.params.items())
    return f"{label}{rep.to_text()}" + (f"    [{params}]" if params else "")


def cmd_represent(n: int, cubes: int = 5, fmt: str = "text") -> tuple[Representation, str]:
    rep = catalog.represent(n, cubes)
    report = verifier_check(rep)
    if not report.ok:
        raise RuntimeError(f"constructed representation of {n} failed verification: {report.residual}")
    return rep, render(rep, fmt)


def _load_representations(path: str) -> list[Representation]:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        from .errors import ParseError

        raise ParseError(f"invalid JSON in {path}: {exc.msg}", exc.lineno, exc.colno) from exc
    if isinstance(data, dict) and "found" in data:
        data = data["found"]
    if isinstance(data, dict) and "representation" in data:
        data = data["representation"]
    items = data if isinstance(data, list) else [data]
    return [Representation.from_json(item) for item in items]


def cmd_verify(path: str, fmt: str = "text") -> tuple[int, str]:
    reps = _load_representations(path)
    reports = [verifier_check(r) for r in reps]
    ok = all(r.ok for r in reports)
    if fmt == "json":
        out = json.dumps([{"id": rep.id, **rpt.to_json()} for rep, rpt in zip(reps, reports)], indent=2)
    else:
        lines = []
        for rep, rpt in zip(reps, reports):
            name = rep.id or "representation"
            if rpt.ok:
                lines.append(f"OK   {name}: sum of {rep.arity} cubes equals {rep.target}")
            else:
                lines.append(
                    f"FAIL {name}: residual {rpt.residual}; first bad term {rpt.describe_bad_term()}"
                )
        out = "\n".join(lines)
    return (EXIT_OK if ok else EXIT_FAILED), out


def cmd_derive(family: str, explain: bool = False, fmt: str = "text", **kwargs) -> str:
    if family not in DERIVATIONS:
        raise UnknownFamily(family, DERIVATIONS)
    rep, trace = derive(family, **kwargs)
    if fmt == "json":
        data = rep.to_json()
        if explain:
            data["trace"] = trace.to_json()
        return json.dumps(data, indent=2)
    out = render(rep, fmt)
    if explain:
        out = trace.explain() + "\n\n" + out
    return out


def cmd_catalog(action: str, identity: str | None = None, fmt: str = "text", params=None) -> str:
    if action == "list":
        entries = catalog.catalog_entries()
        if fmt == "json":
            return json.dumps([e.to_json() for e in entries], indent=2)
        width = max(len(e.id) for e in entries)
        lines = []
        for e in entries:
            kind = f"family({', '.join(e.symbolic_params)})" if e.is_family else "fixed"
            lines.append(f"{e.id:<{width}}  {e.arity} cubes  {kind:<16} {e.description}")
        return "\n".join(lines)
    rep = catalog.build(identity, **(params or {}))
    return render(rep, fmt)


def _parse_bindings(items: Sequence[str]) -> dict[str, int | str]:
    out: dict[str, int | str] = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep or not name:
            raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {item!r}")
        try:
            out[name] = int(value)
        except ValueError:
            out[name] = value
    return out


def _parse_shard(text: str) -> tuple[int, int]:
    try:
        i, k = (int(x) for x in text.split("/"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"shard must look like i/k, got {text!r}") from None
    if k < 1 or not 0 <= i < k:
        raise argparse.ArgumentTypeError(f"shard index must satisfy 0 <= i < k, got {text!r}")
    return i, k


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="accepted for interface stability; enumeration order is fixed")

    ap = argparse.ArgumentParser(
        prog="cubesum",
        description="Build, derive, verify and search for sums of cubes of integer polynomials.",
        parents=[common],
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("represent", parents=[common], help="write an integer as 4 or 5 cubes")
    p.add_argument("n", type=int)
    p.add_argument("--cubes", type=int, choices=(4, 5), default=5)

    p = sub.add_parser("verify", parents=[common], help="verify a JSON representation ('-' for stdin)")
    p.add_argument("path")

    p = sub.add_parser("derive", parents=[common], help="re-derive an identity family")
    p.add_argument("family")
    p.add_argument("--explain", action="store_true")
    p.add_argument("--j", type=int, help="residue for five_residue")
    p.add_argument("--shift", type=int, help="shift for five_residue (must equal j mod 6)")

    p = sub.add_parser("catalog", parents=[common], help="list or show catalog identities")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("id", nargs="?")
    p.add_argument("--param", action="append", default=[], metavar="NAME=VALUE",
                   help="bind a family parameter (int value) or rename it (symbol value)")

    p = sub.add_parser("search", parents=[common], help="bounded exhaustive search")
    p.add_argument("n", type=int)
    p.add_argument("--cubes", type=int, choices=(3, 4, 5), default=4)
    p.add_argument("--max-degree", type=int, default=2)
    p.add_argument("--coeff-bound", type=int, default=2)
    p.add_argument("--mode", choices=("none", "pair_cancellation"), default="none")
    p.add_argument("--shard", type=_parse_shard, default=(0, 1), metavar="i/k")
    p.add_argument("--shards", type=int, help="split into this many shards and run them all in parallel")
    p.add_argument("--jobs", type=int, help="worker processes for --shards")
    p.add_argument("--budget", type=int, help="max candidate states (default: $CUBESUM_BUDGET or 1e8)")
    p.add_argument("--checkpoint", help="resumable checkpoint file for a single shard")
    p.add_argument("--out", help="write JSON results here")
    p.add_argument("--all", action="store_true", help="also print reducible results in text mode")

    p = sub.add_parser("eval", parents=[common], help="evaluate a polynomial at an integer point")
    p.add_argument("expr")
    p.add_argument("bindings", nargs="*", metavar="NAME=VALUE")
    return ap


def _run(args) -> int:
    fmt = getattr(args, "format", "text")
    if args.command == "represent":
        _, out = cmd_represent(args.n, args.cubes, fmt)
        print(out)
        return EXIT_OK
    if args.command == "verify":
        code, out = cmd_verify(args.path, fmt)
        print(out)
        return code
    if args.command == "derive":
        kwargs = {}
        if args.family == "five_residue":
            kwargs["j"] = args.j if args.j is not None else 0
            kwargs["shift"] = args.shift
        elif args.j is not None or args.shift is not None:
            raise CubesumError("--j and --shift apply only to five_residue")
        print(cmd_derive(args.family, args.explain, fmt, **kwargs))
        return EXIT_OK
    if args.command == "catalog":
        if args.action == "show" and not args.id:
            raise CubesumError("catalog show needs an identity id")
        print(cmd_catalog(args.action, args.id, fmt, _parse_bindings(args.param)))
        return EXIT_OK
    if args.command == "search":
        space = SearchSpace(args.n, args.cubes, args.max_degree, args.coeff_bound, args.mode)
        budget = args.budget if args.budget is not None else default_budget()
        if args.shards:
            result = search_parallel(space, args.shards, args.jobs, budget)
        else:
            result = search_shard(space, args.shard, budget, args.checkpoint)
        if args.out:
            Path(args.out).write_text(json.dumps(result.to_json(), indent=2))
        if fmt == "json":
            print(json.dumps(result.to_json(), indent=2))
        else:
            shown = [
                (rep, red) for rep, red in zip(result.found, result.reducible) if args.all or not red
            ]
            print(
                f"{len(result.found)} classes ({sum(not r for r in result.reducible)} irreducible), "
                f"{result.states_examined} states, {result.elapsed:.2f}s"
            )
            for rep, red in shown:
                print(("  [reducible] " if red else "  ") + render(rep, fmt if fmt != "text" else "text"))
        return EXIT_OK
    if args.command == "eval":
        poly = parse(args.expr)
        point = _parse_bindings(args.bindings)
        bad = [k for k, v in point.items() if not isinstance(v, int)]
        if bad:
            raise CubesumError(f"values for {bad} must be integers")
        print(poly.evaluate(point))
        return EXIT_OK
    raise CubesumError(f"unknown command {args.command}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except (BudgetExceeded, NoFourCubeFamilyMatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (CubesumError, argparse.ArgumentTypeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

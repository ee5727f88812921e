"""Command line around the census, the invariants and the reducer.

Three subcommands:

* ``census --max-crossings N``: run the census and write two files into
  the output directory — ``counts`` (survivor totals per crossing
  number) and ``knots`` (order, crossing count and name text of every
  survivor, in preference order) — plus the resumable state journal.
* ``invariants``: read survivors from a state journal (``--state``) or
  from a previously written knots file and emit one row per knot with
  its characteristic and its responses to the linear tests up to
  ``--linear-max`` and, unless disabled, the built-in color tables.
* ``reduce NAME``: print the irreducible names reachable from NAME.

The ``csv`` format separates cells with ``|`` so that name cells, which
contain commas, stay unquoted and files can be diffed directly against
published tables; ``json`` carries the same data as
``{"columns": [...], "rows": [...]}``.  Outputs are deterministic:
identical configurations produce byte-identical files.

Exit status: 0 success, 1 usage error, 2 data error (unreadable input,
malformed name, corrupt journal), 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .census import CensusError, replay_journal, run_census
from .characteristic import characteristic_of, format_characteristic
from .codes import Name, NameError_, format_name, parse_name
from .colorings import builtin_tables, linear_tests, response
from .moves import reduce_name

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_INTERNAL = 3


@dataclass(frozen=True)
class RunConfig:
    """Resolved command-line configuration for one invocation."""

    command: str
    max_crossings: int | None = None
    linear_max: int = 7
    tables: str = "builtin"
    out: str = "."
    format: str = "csv"
    workers: int = 1
    resume: bool = False
    state: str | None = None
    name_text: str | None = None


class _Parser(argparse.ArgumentParser):
    """ArgumentParser whose usage failures exit with status 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="knotcensus",
                     description="Knot census, invariants and reduction.")
    sub = parser.add_subparsers(dest="command", required=True)

    cen = sub.add_parser("census", help="enumerate and classify knots")
    cen.add_argument("--max-crossings", type=int, required=True,
                     metavar="N", help="crossing cutoff (>= 0)")
    cen.add_argument("--format", choices=("csv", "json"), default="csv")
    cen.add_argument("--out", default=".", metavar="DIR")
    cen.add_argument("--state", default=None, metavar="FILE",
                     help="state journal path (default: DIR/state.journal)")
    cen.add_argument("--resume", action="store_true",
                     help="replay the journal and continue the run")
    cen.add_argument("--workers", type=int, default=1, metavar="W")

    inv = sub.add_parser("invariants", help="characteristics and responses")
    inv.add_argument("--linear-max", type=int, default=7, metavar="K",
                     help="largest linear-test modulus (odd, >= 3)")
    inv.add_argument("--tables", choices=("builtin", "none"),
                     default="builtin")
    inv.add_argument("--format", choices=("csv", "json"), default="csv")
    inv.add_argument("--out", default=".", metavar="DIR")
    inv.add_argument("--state", default=None, metavar="FILE",
                     help="read survivors from this journal instead of "
                          "DIR's knots file")

    red = sub.add_parser("reduce", help="reduce one name")
    red.add_argument("name", help="name text, e.g. '{(1,4),(3,6),(5,2)}'")

    return parser


def _config_from(parser: _Parser, args: argparse.Namespace) -> RunConfig:
    if args.command == "census":
        if args.max_crossings < 0:
            parser.error("--max-crossings must be >= 0")
        if args.workers < 1:
            parser.error("--workers must be >= 1")
        return RunConfig(command="census", max_crossings=args.max_crossings,
                         out=args.out, format=args.format, state=args.state,
                         resume=args.resume, workers=args.workers)
    if args.command == "invariants":
        if args.linear_max < 3 or args.linear_max % 2 == 0:
            parser.error("--linear-max must be odd and >= 3")
        return RunConfig(command="invariants", linear_max=args.linear_max,
                         tables=args.tables, out=args.out,
                         format=args.format, state=args.state)
    return RunConfig(command="reduce", name_text=args.name)


# ----------------------------------------------------------------------
# emission
# ----------------------------------------------------------------------

def _emit(cfg: RunConfig, stem: str, columns: tuple[str, ...], rows) -> str:
    """Write one table in the configured format; return the path."""
    path = os.path.join(cfg.out, f"{stem}.{cfg.format}")
    with open(path, "w", encoding="ascii") as fh:
        if cfg.format == "csv":
            fh.write("|".join(columns) + "\n")
            for row in rows:
                fh.write("|".join(str(c) for c in row) + "\n")
        else:
            payload = {"columns": list(columns),
                       "rows": [list(row) for row in rows]}
            json.dump(payload, fh, separators=(",", ":"))
            fh.write("\n")
    return path


def _read_knots(path: str) -> list[Name]:
    """Names from a knots file written by either format."""
    with open(path, encoding="ascii") as fh:
        if path.endswith(".json"):
            payload = json.load(fh)
            idx = payload["columns"].index("name")
            return [parse_name(row[idx]) for row in payload["rows"]]
        header = fh.readline().rstrip("\n").split("|")
        idx = header.index("name")
        return [parse_name(line.rstrip("\n").split("|")[idx]) for line in fh]


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_census(cfg: RunConfig) -> int:
    os.makedirs(cfg.out, exist_ok=True)
    state_path = cfg.state or os.path.join(cfg.out, "state.journal")
    st = run_census(cfg.max_crossings, journal=state_path,
                    resume=cfg.resume, workers=cfg.workers)
    counts = st.survivor_counts()
    count_rows = [(c, counts.get(c, 0))
                  for c in range(cfg.max_crossings + 1)]
    knot_rows = [(i, nm.n, format_name(nm))
                 for i, nm in enumerate(st.survivor_names())]
    _emit(cfg, "counts", ("crossings", "count"), count_rows)
    _emit(cfg, "knots", ("order", "crossings", "name"), knot_rows)
    return EXIT_OK


def cmd_invariants(cfg: RunConfig) -> int:
    if cfg.state is not None:
        names = replay_journal(cfg.state).survivor_names()
    else:
        path = os.path.join(cfg.out, f"knots.{cfg.format}")
        if not os.path.exists(path):
            raise CensusError(f"no input: neither --state nor {path}")
        names = _read_knots(path)
    tests = linear_tests(cfg.linear_max)
    tabs = builtin_tables() if cfg.tables == "builtin" else ()
    columns = (("order", "crossings", "name", "characteristic")
               + tuple(t.label for t in tests)
               + tuple(t.label for t in tabs))
    rows = []
    for i, nm in enumerate(names):
        row = [i, nm.n, format_name(nm),
               format_characteristic(characteristic_of(nm))]
        row += [int(response(nm, t)) for t in tests]
        row += [int(response(nm, t)) for t in tabs]
        rows.append(row)
    os.makedirs(cfg.out, exist_ok=True)
    _emit(cfg, "invariants", columns, rows)
    return EXIT_OK


def cmd_reduce(cfg: RunConfig) -> int:
    nm = parse_name(cfg.name_text)
    for res in sorted(reduce_name(nm), key=Name.key):
        print(format_name(res))
    return EXIT_OK


_DISPATCH = {"census": cmd_census,
             "invariants": cmd_invariants,
             "reduce": cmd_reduce}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = _config_from(parser, args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _DISPATCH[cfg.command](cfg)
    except (CensusError, NameError_) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover - invariant breach escape
        print(f"internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    raise SystemExit(main())

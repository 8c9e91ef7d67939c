"""Command-line entry point.

Every subcommand is deterministic: identical arguments give identical
bytes, whatever the worker count.  Progress goes to stderr through
``logging``; data goes to stdout or to the file named by ``--out``.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import bounds, degree, grid, primes, series

log = logging.getLogger("fillings")

OUT_ENV = "FILLINGS_OUT"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_NOT_EXACT = 3


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    out: str | None = None
    format: str = "csv"
    budget: int | None = None
    workers: int = 1
    seed: int = 0


class _Parser(argparse.ArgumentParser):
    """Raise instead of exiting so ``run`` can map errors to exit codes."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


class _UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _modulus_list(text: str) -> list:
    out = []
    for x in text.split(","):
        x = x.strip()
        if x.lower() in ("inf", "infinite"):
            out.append(grid.INFINITE)
        elif x:
            out.append(int(x))
    return out


def _digits(text: str) -> list[int]:
    if "," in text:
        return _int_list(text)
    if not text.isdigit():
        raise argparse.ArgumentTypeError(f"bad digit string {text!r}")
    return [int(c) for c in text]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):
        return x.item()
    return x


def _table(header: Sequence[str], rows, fmt: str) -> str:
    rows = [list(r) for r in rows]
    if fmt == "json":
        return json.dumps([dict(zip(header, map(_jsonable, r))) for r in rows], indent=1) + "\n"
    return primes._csv(header, ([str(_jsonable(v)) for v in r] for r in rows))


def _record(obj: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_jsonable(obj), indent=1) + "\n"
    return _table(list(obj), [list(obj.values())], "csv")


def _emit(text: str, cfg: RunConfig, default_name: str | None = None) -> None:
    target = cfg.out
    if target is None and default_name is not None:
        target = str(Path(os.environ.get(OUT_ENV, ".")) / default_name)
    if target is None or target == "-":
        sys.stdout.write(text)
        return
    path = Path(target)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    log.info("wrote %s", path)


def _filling(args) -> grid.Filling:
    return grid.Filling.from_moduli(args.moduli, args.shifts)


# ----------------------------------------------------------- subcommands

def cmd_show(args, cfg):
    f = _filling(args)
    lo, hi = args.lo, args.hi
    if args.mode == "bits":
        text = f.window(lo, hi)
    elif args.mode == "multiplicity":
        text = grid.multiplicity_string(f, lo, hi)
    else:
        cap = None if args.mode == "complete" else args.cap
        text = grid.imaging(f, lo, hi, cap)
    _emit(text + "\n", cfg)
    return EXIT_OK


def cmd_profile(args, cfg):
    f = _filling(args)
    prof = grid.profile(f)
    rec = {
        "moduli": ",".join(map(str, f.moduli)),
        "shifts": ",".join(map(str, f.shifts)),
        "PZ": prof.period, "E": prof.units, "H": prof.zeroes, "H_star": prof.total_zeroes,
        "gamma": prof.gamma, "gamma_star": prof.gamma_star,
        "is_filling": grid.is_filling(f), "saturated": prof.units <= 1,
    }
    _emit(_record(rec, cfg.format), cfg)
    return EXIT_OK


def cmd_series(args, cfg):
    recs = series.enumerate_series(_filling(args), args.q)
    _emit(_table(["start", "length"], ((r.start, r.length) for r in recs), cfg.format), cfg)
    return EXIT_OK


def cmd_msr(args, cfg):
    out = series.msr_search(args.moduli, args.q, cfg.budget, cfg.workers)
    if args.witness:
        Path(args.witness).write_text(out.witness_json() + "\n", encoding="utf-8")
    if cfg.format == "json":
        _emit(out.witness_json() + "\n", cfg)
    else:
        _emit(f"{out.length}\n{out.certification.value}\n", cfg)
    if args.require_exact and not out.exact:
        return EXIT_NOT_EXACT
    return EXIT_OK


def cmd_degree(args, cfg):
    if args.random:
        return _degree_oracle(args, cfg)
    if args.k is None and args.n is None:
        raise _UsageError("degree: one of --k or --n is required")
    if args.k is not None:
        digits = args.digits if args.gamma is None else degree.density_digits(Fraction(args.gamma), args.base, 64)
        tr = degree.degree_trace(args.base, digits, args.k, 0, args.normalize)
    else:
        tr = degree.degree_trace(args.base, args.digits, args.n, args.q, args.normalize)
    if cfg.format == "json":
        _emit(json.dumps(_jsonable(asdict(tr)), indent=1) + "\n", cfg)
    else:
        _emit(f"{tr.value}\n{tr.describe()}\n", cfg)
    return EXIT_OK


def _degree_oracle(args, cfg):
    """Random correct specs, closed form against the covering search."""
    rng = random.Random(cfg.seed)
    rows = []
    mismatches = 0
    for _ in range(args.random):
        d = rng.choice((2, 3))
        levels = 1
        while d ** (levels + 1) <= 10**4 and rng.random() < 0.7:
            levels += 1
        digits = [rng.randrange(d) for _ in range(levels)]
        if not any(digits):
            digits[-1] = 1
        spec = degree.DegreeSpec(d, tuple(digits))
        n = rng.randint(1, spec.grid_count)
        q = rng.randint(0, 2)
        closed = degree.msr_degree(d, digits, n, q)
        budget = cfg.budget if cfg.budget is not None else 10**9
        found = series.msr_search(spec.moduli(n), q, budget, cfg.workers, canonical=False)
        ok = found.length == closed and found.exact
        mismatches += not ok
        rows.append((d, "".join(map(str, digits)), n, q, closed, found.length, found.certification.value, int(ok)))
    header = ["base", "digits", "n", "q", "closed_form", "search", "certification", "agree"]
    _emit(_table(header, rows, cfg.format), cfg)
    return EXIT_OK if mismatches == 0 else EXIT_ERROR


def cmd_bound(args, cfg):
    if args.corpus:
        spec = bounds.CorpusSpec(tuple(args.pool), args.max_grids, args.period_limit)
        res = bounds.bound_corpus_check(spec, cfg.workers)
        log.info("violations: complete %d, two-sided %d",
                 res.violations_complete, res.violations_two_sided)
        if cfg.format == "json":
            text = json.dumps({
                "systems": len(res.reports), "fillings": res.fillings,
                "violations_complete": res.violations_complete,
                "violations_two_sided": res.violations_two_sided,
                "tightest": [dict(zip(bounds.CSV_HEADER, r.row())) for r in res.reports],
            }, indent=1) + "\n"
        else:
            text = res.to_csv()
        _emit(text, cfg, "bound_corpus." + cfg.format)
        bad = res.violations_complete + res.violations_two_sided
        return EXIT_OK if bad == 0 else EXIT_ERROR
    if args.moduli is None:
        raise _UsageError("bound: --moduli is required without --corpus")
    rep = bounds.report(_filling(args), args.q)
    _emit(_table(bounds.CSV_HEADER, [rep.row()], cfg.format), cfg)
    return EXIT_OK


def cmd_primes(args, cfg):
    what = args.what
    fmt = cfg.format
    if what == "gaps":
        gap, pair, rows = primes.gap_scan(args.N)
        log.info("largest gap %d between %d and %d", gap, *pair)
        header = ["m", "p_m", "lo", "hi", "max_gap", "max_ratio", "first_series_ratio", "interval_ratio"]
        body = ((r.m, r.p_m, r.lo, r.hi, r.max_gap, primes._fmt(r.max_ratio),
                 primes._fmt(r.first_series_ratio), primes._fmt(r.interval_ratio)) for r in rows)
        text = _table(header, body, fmt)
    elif what in ("twins", "kinsfolk"):
        rank = 1 if what == "twins" else args.rank
        seniors = primes.kinsfolk(rank, args.lo, args.N)
        text = _table(["junior", "senior"], ((int(s) - 2 * rank, int(s)) for s in seniors), fmt)
    elif what == "smith":
        text = _table(["p", "half"], ((p, (p - 1) // 2) for p in primes.smith_numbers(args.N)), fmt)
    elif what == "goldbach":
        if args.two_j is not None:
            rec = {"twoJ": args.two_j, "G": primes.goldbach_count(args.two_j),
                   "construction": primes.goldbach_by_construction(args.two_j),
                   "n": primes.goldbach_n(args.two_j)}
            text = _record(rec, fmt)
        else:
            table = primes.goldbach_table(args.N)
            text = _table(["twoJ", "G"], ((x, int(table[x])) for x in range(4, args.N + 1, 2)), fmt)
    else:
        scan = primes.configurations(primes.ConfigurationPattern(tuple(args.ranks)), args.N)
        log.info("%d runs, largest spacing %s", scan.count, scan.max_spacing)
        text = _table(["start"], ((s,) for s in scan.starts), fmt)
    _emit(text, cfg)
    return EXIT_OK


def cmd_figure(args, cfg):
    text = primes.figure_data(args.id, args.n_max, args.N, args.step)
    if cfg.format == "json":
        lines = text.splitlines()
        header = lines[0].split(",")
        text = _table(header, (line.split(",") for line in lines[1:]), "json")
    _emit(text, cfg, f"fig{args.id}.{cfg.format}")
    return EXIT_OK


def cmd_table(args, cfg):
    rows = primes.n_m_table(range(args.m_min, args.m_max + 1))
    _emit(_table(["m", "n", "p_n", "p_n1"], rows, cfg.format), cfg, f"table_nm.{cfg.format}")
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", help="output file, '-' for stdout")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--budget", type=int, help="node budget of the covering search")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="fillings", description="Periodic grid products and their zero series.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def filling_args(sp, required=True):
        sp.add_argument("--moduli", type=_modulus_list, required=required)
        sp.add_argument("--shifts", type=_int_list)

    sp = sub.add_parser("show", parents=[common], help="render a window of a filling")
    filling_args(sp)
    sp.add_argument("--lo", type=int, default=0)
    sp.add_argument("--hi", type=int, default=60)
    sp.add_argument("--mode", choices=("bits", "imaging", "complete", "multiplicity"), default="bits")
    sp.add_argument("--cap", type=int, default=1)
    sp.set_defaults(func=cmd_show)

    sp = sub.add_parser("profile", parents=[common], help="period census and densities")
    filling_args(sp)
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("series", parents=[common], help="all q-series of one period")
    filling_args(sp)
    sp.add_argument("--q", type=int, default=0)
    sp.set_defaults(func=cmd_series)

    sp = sub.add_parser("msr", parents=[common], help="maximum series over all shifts")
    sp.add_argument("--moduli", type=_int_list, required=True)
    sp.add_argument("--q", type=int, default=0)
    sp.add_argument("--witness", help="write the witness JSON here")
    sp.add_argument("--require-exact", action="store_true")
    sp.set_defaults(func=cmd_msr)

    sp = sub.add_parser("degree", parents=[common], help="closed-form msr of a degree system")
    sp.add_argument("--base", type=int, default=2)
    sp.add_argument("--digits", type=_digits, default=[])
    sp.add_argument("--gamma", help="density as a fraction, instead of --digits")
    sp.add_argument("--k", type=int, help="grid count, q = 0")
    sp.add_argument("--n", type=int, help="grid count, used with --q")
    sp.add_argument("--q", type=int, default=0)
    sp.add_argument("--normalize", action="store_true", help="carry oversized digits")
    sp.add_argument("--random", type=int, default=0, metavar="COUNT",
                    help="check COUNT seeded random specs against the search")
    sp.set_defaults(func=cmd_degree)

    sp = sub.add_parser("bound", parents=[common], help="bound report or corpus check")
    filling_args(sp, required=False)
    sp.add_argument("--q", type=int, default=0)
    sp.add_argument("--corpus", action="store_true")
    sp.add_argument("--pool", type=_int_list, default=list(range(2, 13)))
    sp.add_argument("--max-grids", type=int, default=4)
    sp.add_argument("--period-limit", type=int, default=10**4)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("primes", parents=[common], help="prime applications")
    sp.add_argument("what", choices=("gaps", "twins", "kinsfolk", "smith", "goldbach", "config"))
    sp.add_argument("--N", type=int, default=10**4, help="upper limit")
    sp.add_argument("--lo", type=int, default=2)
    sp.add_argument("--rank", type=int, default=1)
    sp.add_argument("--ranks", type=_int_list, default=[1])
    sp.add_argument("--two-j", type=int)
    sp.set_defaults(func=cmd_primes)

    sp = sub.add_parser("figure", parents=[common], help="data table of one figure")
    sp.add_argument("id", type=int, choices=primes.FIGURES)
    sp.add_argument("--n-max", type=int, default=50)
    sp.add_argument("--N", type=int, default=50000)
    sp.add_argument("--step", type=int, default=1000)
    sp.set_defaults(func=cmd_figure)

    sp = sub.add_parser("table", parents=[common], help="tabulated constants")
    sp.add_argument("name", choices=("nm",))
    sp.add_argument("--m-min", type=int, default=2)
    sp.add_argument("--m-max", type=int, default=12)
    sp.set_defaults(func=cmd_table)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(asctime)s %(name)s %(message)s", stream=sys.stderr)
    if args.workers < 1:
        print("fillings: error: --workers must be positive", file=sys.stderr)
        return EXIT_USAGE
    params = {k: v for k, v in vars(args).items()
              if k not in ("func", "command", "out", "format", "budget", "workers", "seed", "verbose")}
    cfg = RunConfig(args.command, params, args.out, args.format, args.budget, args.workers, args.seed)
    try:
        return args.func(args, cfg)
    except _UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"fillings: error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

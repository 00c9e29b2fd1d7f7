"""Command-line interface.

Exit status is 0 on success, 1 when input data is rejected and 2 for usage
errors. A mismatch with published figures is a finding reported in the
output, not a failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import asdict

from . import __version__, ingest
from .display import fmt
from .distributions import IncomeDistribution
from .errors import (
    HearthError,
    InfiniteEpsilonUnsupported,
    InvalidEpsilon,
    NegativeTolerance,
)
from .inequality import (
    DEFAULT_EPSILONS,
    InequalityResult,
    atkinson,
    atkinson_ratio,
    decompose,
    ede,
    epsilon_sweep,
    gini,
    utility,
)
from .model import DEFAULT_TOLERANCE, Mode, audit_report, run_two_stage
from .national_accounts import impute, impute_housewife_labor


class UsageError(Exception):
    pass


_USAGE_ERRORS = (UsageError, InvalidEpsilon, InfiniteEpsilonUnsupported, NegativeTolerance)


def _epsilons(text: str) -> list[float]:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if part.lower() in ("inf", "infinity"):
            out.append(math.inf)
            continue
        try:
            v = float(part)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {part!r}") from None
        if math.isnan(v) or v < 0:
            raise argparse.ArgumentTypeError(f"epsilon must be >= 0, got {part!r}")
        out.append(v)
    return out


def _tolerance(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v >= 0:
        raise argparse.ArgumentTypeError(f"tolerance must be >= 0, got {text!r}")
    return v


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"must be a positive number, got {text!r}")
    return v


def _count(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {text!r}")
    return v


def _eps_str(eps: float):
    return "INFINITY" if math.isinf(eps) else eps


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("global options")
    g.add_argument("--format", choices=("text", "csv", "json"), default=None)
    g.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    g.add_argument("--tolerance", type=_tolerance, default=DEFAULT_TOLERANCE)
    g.add_argument("--epsilon", type=_epsilons, action="append", metavar="EPS",
                   help="inequality aversion; repeatable, comma lists and 'inf' accepted")
    g.add_argument("--annualize", action="store_true",
                   help="multiply imputed housewife labor by 12 (not the published convention)")
    g.add_argument("--mode", choices=("ratio", "distribution"), default="ratio")

    parser = argparse.ArgumentParser(prog="hearthledger", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def source_args(p, ratio=True):
        p.add_argument("--input", metavar="CSV", help="income,weight distribution file")
        if ratio:
            p.add_argument("--income", type=_positive, help="representative income (ratio mode)")
            p.add_argument("--mean", type=_positive, help="reference mean (ratio mode)")

    p = sub.add_parser("atkinson", parents=[common], help="Atkinson index")
    source_args(p)
    p.set_defaults(func=cmd_atkinson)

    p = sub.add_parser("ede", parents=[common], help="equally distributed equivalent income")
    source_args(p, ratio=False)
    p.set_defaults(func=cmd_ede)

    p = sub.add_parser("gini", parents=[common], help="Gini coefficient")
    source_args(p, ratio=False)
    p.set_defaults(func=cmd_gini)

    p = sub.add_parser("impute", parents=[common], help="housewife labor imputation")
    p.add_argument("--accounts", metavar="CSV")
    p.add_argument("--housewives", type=_count)
    p.add_argument("--min-wage", type=_count)
    p.set_defaults(func=cmd_impute)

    p = sub.add_parser("model", parents=[common], help="two-stage comparison and audit report")
    p.add_argument("--accounts", metavar="CSV", required=True,
                   help="accounts file, or bundled:turkey2014")
    p.add_argument("--year", type=int)
    p.add_argument("--include-zero-as-epsilon", action="store_true",
                   help="distribution mode: give zero-income persons a 1 TL floor")
    p.add_argument("--sweep-output", metavar="PATH",
                   help="also write epsilon,i1,i2 rows over the default epsilon list")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("sweep", parents=[common], help="index over a list of epsilons")
    source_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("decompose", parents=[common], help="between/within decomposition")
    p.add_argument("--input", metavar="CSV", required=True, help="income,weight,group file")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("validate", parents=[common], help="check input files")
    p.add_argument("--accounts", metavar="CSV", action="append", default=[])
    p.add_argument("--input", metavar="CSV", action="append", default=[])
    p.add_argument("--labeled", metavar="CSV", action="append", default=[])
    p.add_argument("--participation", metavar="CSV", action="append", default=[])
    p.set_defaults(func=cmd_validate)
    return parser


# helpers

def _flat_eps(args, default):
    if args.epsilon is None:
        return list(default)
    return [e for group in args.epsilon for e in group]


def _single_eps(args, default=2.0) -> float:
    eps = _flat_eps(args, [default])
    if len(eps) != 1:
        raise UsageError(f"expected exactly one epsilon, got {len(eps)}")
    return eps[0]


def _source(args, allow_ratio=True):
    ratio = allow_ratio and (args.income is not None or args.mean is not None)
    if ratio and args.input:
        raise UsageError("give either --input or --income/--mean, not both")
    if ratio:
        if args.income is None or args.mean is None:
            raise UsageError("ratio mode needs both --income and --mean")
        return (args.income, args.mean)
    if not args.input:
        raise UsageError("--input is required" + (" (or --income and --mean)" if allow_ratio else ""))
    return ingest.load_distribution(args.input)


def _render_rows(fmt_name: str, header: list[str], rows: list[list], places: int = 4) -> str:
    if fmt_name == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"
    if fmt_name == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([v if isinstance(v, str) else repr(v) for v in r])
        return buf.getvalue()
    widths = [max([len(h), 12] + [len(str(r[i])) for r in rows if isinstance(r[i], str)])
              for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(n) for h, n in zip(header, widths))]
    for r in rows:
        cells = [v if isinstance(v, str) else str(v) if isinstance(v, int) else fmt(v, places)
                 for v in r]
        lines.append("  ".join(c.rjust(n) for c, n in zip(cells, widths)))
    return "\n".join(lines) + "\n"


def _render_record(fmt_name: str, record: dict, places: int = 4) -> str:
    if fmt_name == "json":
        return json.dumps(record, indent=2) + "\n"
    if fmt_name == "csv":
        return _render_rows("csv", list(record), [list(record.values())])
    width = max(len(k) for k in record)
    lines = []
    for k, v in record.items():
        if isinstance(v, bool) or isinstance(v, (str, list)) or v is None:
            shown = json.dumps(v) if isinstance(v, list) else str(v)
        elif isinstance(v, int):
            shown = str(v)
        else:
            shown = fmt(v, places)
        lines.append(f"{k.ljust(width)}  {shown}")
    return "\n".join(lines) + "\n"


def _result_record(r: InequalityResult) -> dict:
    d = asdict(r)
    d["epsilon"] = _eps_str(r.epsilon)
    return d


def _emit(args, text: str) -> None:
    if args.output:
        ingest._atomic_write(args.output, text)
    else:
        sys.stdout.write(text)


# commands

def cmd_atkinson(args) -> str:
    eps = _single_eps(args)
    src = _source(args)
    if isinstance(src, IncomeDistribution):
        result = atkinson(src, eps)
    else:
        y, mu = src
        result = InequalityResult(index=atkinson_ratio(y, mu, eps), ede=y, mean=mu,
                                  epsilon=eps, welfare=utility(y, eps))
    return _render_record(args.format or "text", _result_record(result))


def cmd_ede(args) -> str:
    eps = _single_eps(args)
    dist = _source(args, allow_ratio=False)
    return _render_record(args.format or "text", {"epsilon": _eps_str(eps), "ede": ede(dist, eps)})


def cmd_gini(args) -> str:
    dist = _source(args, allow_ratio=False)
    return _render_record(args.format or "text", {"gini": gini(dist)})


def cmd_impute(args) -> str:
    flags = ["NON_PAPER:annualized"] if args.annualize else []
    if args.accounts:
        snap = ingest.load_accounts(args.accounts)
        record = asdict(impute(snap, annualize=args.annualize))
    elif args.housewives is not None and args.min_wage is not None:
        record = {"l_kev": impute_housewife_labor(args.housewives, args.min_wage,
                                                  annualize=args.annualize),
                  "annualized": args.annualize}
    else:
        raise UsageError("impute needs --accounts, or --housewives and --min-wage")
    record["flags"] = flags
    return _render_record(args.format or "text", record)


def cmd_model(args) -> str:
    eps = _single_eps(args)
    snap = ingest.load_accounts(args.accounts, year=args.year)
    mode = Mode(args.mode.upper())
    kw = dict(tolerance=args.tolerance, annualize=args.annualize,
              include_zero_floor=args.include_zero_as_epsilon)
    report = audit_report(run_two_stage(snap, eps, mode, **kw))
    if args.sweep_output:
        rows = []
        for e in DEFAULT_EPSILONS:
            r = run_two_stage(snap, e, mode, **kw)
            rows.append([e, r.i1, r.i2])
        ingest._atomic_write(args.sweep_output, _render_rows("csv", ["epsilon", "i1", "i2"], rows))
    fmt_name = args.format or "text"
    if fmt_name == "json":
        return report.to_json()
    if fmt_name == "csv":
        return report.to_csv()
    return report.to_text()


def cmd_sweep(args) -> str:
    eps_list = _flat_eps(args, DEFAULT_EPSILONS)
    if not eps_list:
        raise UsageError("epsilon list is empty")
    rows = [[_eps_str(e), idx] for e, idx in epsilon_sweep(_source(args), eps_list)]
    return _render_rows(args.format or "csv", ["epsilon", "index"], rows)


def cmd_decompose(args) -> str:
    eps = _single_eps(args)
    dist, labels = ingest.load_labeled_distribution(args.input)
    record = {"epsilon": _eps_str(eps), **asdict(decompose(dist, labels, eps))}
    return _render_record(args.format or "text", record)


def cmd_validate(args) -> str:
    jobs = ([("accounts", p, lambda p: len(ingest.load_accounts_table(p))) for p in args.accounts]
            + [("distribution", p, lambda p: len(ingest.load_distribution(p))) for p in args.input]
            + [("labeled", p, lambda p: len(ingest.load_labeled_distribution(p)[1]))
               for p in args.labeled]
            + [("participation", p, lambda p: len(ingest.load_participation(p)))
               for p in args.participation])
    if not jobs:
        raise UsageError("nothing to validate")
    rows = [[kind, path, "ok", load(path)] for kind, path, load in jobs]
    return _render_rows(args.format or "text", ["kind", "path", "status", "rows"], rows)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = _warn_to_stderr
        try:
            out = args.func(args)
        except _USAGE_ERRORS as exc:
            print(f"{parser.prog} {args.command}: usage error: {exc}", file=sys.stderr)
            return 2
        except (HearthError, OSError) as exc:
            print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
            return 1
    try:
        _emit(args, out)
    except OSError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return 1
    return 0


def _warn_to_stderr(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {category.__name__}: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())

"""Strict CSV loading and saving for accounts, distributions and participation rates.

Headers must match exactly. Numbers use ``.`` as the decimal point and no
thousands separators, since silently guessing a locale is the failure this
module exists to prevent. Every rejection names the file row (the header is
row 1) and the column. Nothing is returned until the whole file validates.
"""

from __future__ import annotations

import codecs
import io
import os
import re
import tempfile
import warnings
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Sequence

import numpy as np
import polars as pl

from .distributions import IncomeDistribution, from_samples
from .errors import (
    DuplicateCountryWarning,
    EmptyInput,
    HearthError,
    InvariantViolation,
    MissingColumn,
    NonNumericCell,
    NonPositiveIncome,
    PlausibilityWarning,
    RateOutOfRange,
)
from .national_accounts import AccountsSnapshot

ACCOUNTS_HEADER = ("year", "gdp_total_tl", "population_persons", "employed_persons",
                   "housewives_persons", "gross_min_wage_tl_month")
DISTRIBUTION_HEADER = ("income", "weight")
LABELED_HEADER = ("income", "weight", "group")
PARTICIPATION_HEADER = ("country", "lfp_female", "lfp_male", "emp_female", "emp_male",
                        "unemp_female", "unemp_male")

_ACCOUNT_FIELDS = ("year", "gdp_annual", "population", "employed", "housewives",
                   "min_wage_monthly")

_INT = re.compile(r"-?[0-9]+")
_NUM = r"[+-]?(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?"
_FLOAT = re.compile(_NUM)
_NOT_NUMERIC = re.compile(rb"[^0-9eE+\-.,\n]")
_DIST_SCHEMA = {"income": pl.Float64, "weight": pl.Float64}

DATA_DIR_ENV = "HEARTHLEDGER_DATA_DIR"
BUNDLED_PREFIX = "bundled:"


def data_dir() -> Path:
    override = os.environ.get(DATA_DIR_ENV)
    if override:
        return Path(override)
    return Path(__file__).resolve().parent / "data"


def resolve(path: str | os.PathLike) -> Path:
    """Map ``bundled:NAME`` to ``<data dir>/NAME.csv``; other paths pass through."""
    s = os.fspath(path)
    if s.startswith(BUNDLED_PREFIX):
        return data_dir() / f"{s[len(BUNDLED_PREFIX):]}.csv"
    return Path(s)


def _read_bytes(path) -> bytes:
    with open(resolve(path), "rb") as fh:
        raw = fh.read()
    if raw.startswith(codecs.BOM_UTF8):
        raw = raw[len(codecs.BOM_UTF8):]
    return raw.replace(b"\r\n", b"\n")


def _decode(raw: bytes, path) -> str:
    try:
        return raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise NonNumericCell(f"{os.fspath(path)} is not valid UTF-8: {exc}") from None


def _read_text(path) -> str:
    return _decode(_read_bytes(path), path)


def _split(text: str, header: Sequence[str]) -> tuple[list[str], int]:
    """Check the header and return the body lines plus the first body row number."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] == "":
        raise MissingColumn(f"no header; expected {','.join(header)}", row=1)
    got = lines[0].split(",")
    if tuple(got) != tuple(header):
        missing = [h for h in header if h not in got]
        col = missing[0] if missing else next(
            (h for h, g in zip(header, got) if h != g), header[-1])
        raise MissingColumn(
            f"header {lines[0]!r} does not match {','.join(header)}", row=1, column=col)
    return lines[1:], 2


def _cells(line: str, header: Sequence[str], row: int) -> list[str]:
    cells = line.split(",")
    if len(cells) < len(header):
        raise MissingColumn(f"row has {len(cells)} of {len(header)} cells",
                            row=row, column=header[len(cells)])
    if len(cells) > len(header):
        raise NonNumericCell(
            f"row has {len(cells)} cells, expected {len(header)} "
            "(thousands separators are not accepted)", row=row)
    return cells


def _int(cell: str, row: int, column: str) -> int:
    if not _INT.fullmatch(cell):
        raise NonNumericCell(f"{cell!r} is not a plain integer", row=row, column=column)
    return int(cell)


def _float(cell: str, row: int, column: str) -> float:
    if not _FLOAT.fullmatch(cell):
        raise NonNumericCell(f"{cell!r} is not a plain decimal number", row=row, column=column)
    return float(cell)


def _atomic_write(path, text: str) -> None:
    p = Path(path)
    fd, tmp = tempfile.mkstemp(dir=p.parent or ".", prefix=f".{p.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, p)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# accounts

def load_accounts_table(path) -> list[AccountsSnapshot]:
    lines, first = _split(_read_text(path), ACCOUNTS_HEADER)
    snapshots = []
    for row, line in enumerate(lines, start=first):
        cells = _cells(line, ACCOUNTS_HEADER, row)
        values = [_int(c, row, col) for c, col in zip(cells, ACCOUNTS_HEADER)]
        try:
            snapshots.append(AccountsSnapshot(*values))
        except InvariantViolation as exc:
            col = ACCOUNTS_HEADER[_ACCOUNT_FIELDS.index(exc.column)] if exc.column else None
            raise InvariantViolation(exc.detail, row=row, column=col) from None
    if not snapshots:
        raise EmptyInput("accounts file has no data rows", row=first)
    return snapshots


def load_accounts(path, year: int | None = None) -> AccountsSnapshot:
    """Load one snapshot; ``year`` picks a row when the file holds several."""
    table = load_accounts_table(path)
    if year is None:
        if len(table) > 1:
            raise InvariantViolation(
                f"file holds {len(table)} years; pass year= to choose one", column="year")
        return table[0]
    for snap in table:
        if snap.year == year:
            return snap
    raise InvariantViolation(f"no row for year {year}", column="year")


def save_accounts(snapshots: AccountsSnapshot | Sequence[AccountsSnapshot], path) -> None:
    if isinstance(snapshots, AccountsSnapshot):
        snapshots = [snapshots]
    out = [",".join(ACCOUNTS_HEADER)]
    for s in snapshots:
        out.append(",".join(str(getattr(s, f.name)) for f in fields(s)))
    _atomic_write(path, "\n".join(out) + "\n")


# distributions

def _parse_distribution_slow(lines: list[str], first: int) -> tuple[list[float], list[float]]:
    ys, ws = [], []
    for row, line in enumerate(lines, start=first):
        cells = _cells(line, DISTRIBUTION_HEADER, row)
        ys.append(_float(cells[0], row, "income"))
        ws.append(_float(cells[1], row, "weight"))
    return ys, ws


def _validated(ys, ws, first: int) -> IncomeDistribution:
    if len(ys) == 0:
        raise EmptyInput("distribution file has no data rows", row=first)
    try:
        return from_samples(ys, ws)
    except HearthError as exc:
        if exc.index is None:
            raise
        col = "income" if isinstance(exc, NonPositiveIncome) else "weight"
        raise type(exc)(exc.detail, row=first + exc.index, column=col) from None


def _fast_distribution(body: bytes) -> tuple[np.ndarray, np.ndarray] | None:
    """Vectorized parse of a well-formed body, or None to fall back to the strict scan."""
    if not body or _NOT_NUMERIC.search(body):
        return None
    if body.count(b",") != body.count(b"\n") or b"\n\n" in body or body.startswith(b"\n"):
        return None
    try:
        df = pl.read_csv(io.BytesIO(body), has_header=False, new_columns=list(DISTRIBUTION_HEADER),
                         schema_overrides=_DIST_SCHEMA)
    except pl.exceptions.PolarsError:
        return None
    if df.null_count().sum_horizontal().item():
        return None
    return df["income"].to_numpy(), df["weight"].to_numpy()


def load_distribution(path) -> IncomeDistribution:
    """Load an ``income,weight`` file.

    Clean files take a vectorized path. If the cheap checks reject a file, it
    is rescanned line by line so the error can name the bad cell.
    """
    raw = _read_bytes(path)
    head, _, body = raw.partition(b"\n")
    _split(head.decode("utf-8", errors="replace") + "\n", DISTRIBUTION_HEADER)
    if body and not body.endswith(b"\n"):
        body += b"\n"
    parsed = _fast_distribution(body)
    if parsed is not None:
        return _validated(*parsed, 2)
    lines, first = _split(_decode(raw, path), DISTRIBUTION_HEADER)
    ys, ws = _parse_distribution_slow(lines, first)
    return _validated(ys, ws, first)


def save_distribution(dist: IncomeDistribution, path) -> None:
    out = [",".join(DISTRIBUTION_HEADER)]
    out.extend(f"{y!r},{w!r}" for y, w in dist)
    _atomic_write(path, "\n".join(out) + "\n")


def load_labeled_distribution(path) -> tuple[IncomeDistribution, list[str]]:
    """Load an ``income,weight,group`` file for decomposition."""
    lines, first = _split(_read_text(path), LABELED_HEADER)
    ys, ws, labels = [], [], []
    for row, line in enumerate(lines, start=first):
        cells = _cells(line, LABELED_HEADER, row)
        ys.append(_float(cells[0], row, "income"))
        ws.append(_float(cells[1], row, "weight"))
        if cells[2] == "":
            raise MissingColumn("empty group label", row=row, column="group")
        labels.append(cells[2])
    return _validated(ys, ws, first), labels


# participation

@dataclass(frozen=True)
class ParticipationRow:
    """Labor-market rates for one country, in percent, as printed."""

    country: str
    lfp_female: float
    lfp_male: float
    emp_female: float
    emp_male: float
    unemp_female: float
    unemp_male: float


def load_participation(path) -> list[ParticipationRow]:
    """Load participation rates.

    Rates outside [0, 100] are rejected. Duplicate countries and rows where a
    female rate exceeds the male one are accepted, but each raises a warning.
    The bundled table keeps the source's printed column order and does not
    correct it.
    """
    lines, first = _split(_read_text(path), PARTICIPATION_HEADER)
    rows: list[ParticipationRow] = []
    seen: set[str] = set()
    pending: list[tuple[str, type]] = []
    implausible: list[str] = []
    for row, line in enumerate(lines, start=first):
        cells = _cells(line, PARTICIPATION_HEADER, row)
        country = cells[0].strip()
        if not country:
            raise MissingColumn("empty country name", row=row, column="country")
        rates = []
        for cell, col in zip(cells[1:], PARTICIPATION_HEADER[1:]):
            v = _float(cell, row, col)
            if not 0 <= v <= 100:
                raise RateOutOfRange(f"rate {v!r} outside [0, 100]", row=row, column=col)
            rates.append(v)
        rec = ParticipationRow(country, *rates)
        if country in seen:
            pending.append((f"duplicate country {country!r} at row {row}",
                            DuplicateCountryWarning))
        seen.add(country)
        if rec.lfp_female > rec.lfp_male or rec.emp_female > rec.emp_male:
            implausible.append(f"{country} (row {row})")
        rows.append(rec)
    if not rows:
        raise EmptyInput("participation file has no data rows", row=first)
    if implausible:
        pending.append((f"female rate exceeds male rate for {len(implausible)} of {len(rows)} "
                        f"rows, column alignment may be shifted: {', '.join(implausible)}",
                        PlausibilityWarning))
    for message, category in pending:
        warnings.warn(message, category, stacklevel=2)
    return rows


def save_participation(rows: Sequence[ParticipationRow], path) -> None:
    out = [",".join(PARTICIPATION_HEADER)]
    for r in rows:
        out.append(",".join([r.country] + [repr(getattr(r, f)) for f in PARTICIPATION_HEADER[1:]]))
    _atomic_write(path, "\n".join(out) + "\n")

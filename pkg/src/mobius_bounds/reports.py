"""Report rows and serialization shared by all verification suites.

One row per checked instance.  Columns are fixed (documented in the README
and relied on by the CLI tests): theorem_id,X,q,param,lhs,bound,margin,
verdict.  Floats are written with repr (shortest round-trip form) so that
identical runs byte-reproduce their outputs.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence

from .util import cert_le

COLUMNS = ("theorem_id", "X", "q", "param", "lhs", "bound", "margin", "verdict")


@dataclass(frozen=True)
class BoundRow:
    """One verified instance of a named estimate."""

    theorem_id: str
    X: float
    q: int
    param: str
    lhs: float
    bound: float
    margin: float
    verdict: str

    def key(self) -> tuple:
        return (self.theorem_id, self.X, self.q, self.param)


def bound_row(
    theorem_id: str,
    X: float,
    q: int,
    param: str,
    lhs: float,
    bound: float,
    lhs_err: float = 0.0,
    bound_err: float = 0.0,
    strict: bool = False,
) -> BoundRow:
    """Assemble a row, deriving margin and the three-way verdict."""
    from .util import Approx

    verdict = cert_le(Approx(lhs, lhs_err), Approx(bound, bound_err), strict=strict)
    return BoundRow(
        theorem_id=theorem_id,
        X=float(X),
        q=int(q),
        param=param,
        lhs=float(lhs),
        bound=float(bound),
        margin=float(bound) - float(lhs),
        verdict=verdict,
    )


def _cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def rows_to_csv(rows: Sequence[BoundRow], header_lines: Sequence[str] = ()) -> str:
    buf = io.StringIO()
    for line in header_lines:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for r in rows:
        writer.writerow([_cell(getattr(r, c)) for c in COLUMNS])
    return buf.getvalue()


def rows_to_jsonl(rows: Sequence[BoundRow]) -> str:
    out = []
    for r in rows:
        d = asdict(r)
        out.append(json.dumps(d, sort_keys=True))
    return "\n".join(out) + ("\n" if out else "")


def write_rows(path: str, rows: Sequence[BoundRow], fmt: str = "csv",
               header_lines: Sequence[str] = ()) -> None:
    if fmt == "csv":
        text = rows_to_csv(rows, header_lines)
    elif fmt == "jsonl":
        text = rows_to_jsonl(rows)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def verdict_counts(rows: Iterable[BoundRow]) -> dict[str, int]:
    counts: dict[str, int] = {}
    for r in rows:
        counts[r.verdict] = counts.get(r.verdict, 0) + 1
    return counts


def worst_margin(rows: Iterable[BoundRow]) -> float:
    margins = [r.margin for r in rows]
    return min(margins) if margins else float("inf")

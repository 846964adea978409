"""Per-(graph, q) rate records and their CSV form."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, fields
from os import PathLike

HEADER = ["graph", "N", "q", "emp_rate", "emp_std", "b_general", "b_symmetric", "b_transitive", "b_eta", "flags"]
FLOAT_COLUMNS = ("q", "emp_rate", "emp_std", "b_general", "b_symmetric", "b_transitive", "b_eta")


def sig10(x: float | None) -> float | None:
    """Round to the 10 significant digits the CSV carries."""
    if x is None or not math.isfinite(x):
        return x
    return float(f"{x:.10g}")


def _fmt(x: float | None) -> str:
    if x is None:
        return ""
    return f"{x:.10g}"


def _parse(s: str) -> float | None:
    return None if s == "" else float(s)


@dataclass(frozen=True)
class RateReport:
    """One CSV row. Missing estimates or bounds are ``None``."""

    graph: str
    N: int
    q: float
    emp_rate: float | None = None
    emp_std: float | None = None
    b_general: float | None = None
    b_symmetric: float | None = None
    b_transitive: float | None = None
    b_eta: float | None = None
    flags: tuple[str, ...] = ()

    def rounded(self) -> "RateReport":
        vals = {f.name: getattr(self, f.name) for f in fields(self)}
        for name in FLOAT_COLUMNS:
            vals[name] = sig10(vals[name])
        return RateReport(**vals)

    def bounds(self) -> dict[str, float]:
        out = {
            "general": self.b_general,
            "symmetric": self.b_symmetric,
            "transitive": self.b_transitive,
            "eta": self.b_eta,
        }
        return {k: v for k, v in out.items() if v is not None}

    def to_row(self) -> list[str]:
        return [
            self.graph,
            str(self.N),
            *(_fmt(getattr(self, name)) for name in FLOAT_COLUMNS),
            ";".join(self.flags),
        ]

    @classmethod
    def from_row(cls, row: list[str]) -> "RateReport":
        if len(row) != len(HEADER):
            raise ValueError(f"expected {len(HEADER)} fields, got {len(row)}")
        graph, n, *floats, flags = row
        return cls(graph, int(n), *(_parse(s) for s in floats), flags=tuple(f for f in flags.split(";") if f))


def format_reports(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(HEADER)
    for r in reports:
        w.writerow(r.to_row())
    return buf.getvalue()


def parse_reports(text: str) -> list[RateReport]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != HEADER:
        raise ValueError("missing or unexpected CSV header")
    return [RateReport.from_row(r) for r in rows[1:]]


def write_reports(reports, path: str | PathLike) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(format_reports(reports))


def read_reports(path: str | PathLike) -> list[RateReport]:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_reports(fh.read())

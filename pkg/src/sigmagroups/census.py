"""Census ingestion and predicted-versus-observed comparison.

The census lists, per IPAD, how many real quadratic fields in nested
discriminant windows have that IPAD. Observed proportions are rendered with
round-half-even to 4 places; predictions come from an IPAD measure table.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Iterable, Sequence

from .explorer import IpadMeasureEntry, format_decimal
from .ipad import Ipad

WINDOWS = ("i1", "i3_2", "i10", "i32", "i100")
OTHER = "OTHER"
TOTAL = "TOTAL"


class CensusError(ValueError):
    pass


@dataclass
class CensusRecord:
    ipad: str
    counts: tuple[int, ...]
    total: tuple[int, ...] = field(default=(), repr=False)

    @property
    def is_other(self) -> bool:
        return self.ipad == OTHER

    def proportions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, t) for c, t in zip(self.counts, self.total))


def default_census_text() -> str:
    return resources.files("sigmagroups").joinpath("data/census.csv").read_text()


def ingest_census(source: str | io.TextIOBase | None = None, p: int = 3) -> list[CensusRecord]:
    """Parse and validate a census CSV (text or file object; default: the
    bundled fixture). Returns the IPAD rows and the OTHER row, in file order."""
    if source is None:
        source = default_census_text()
    fh = io.StringIO(source) if isinstance(source, str) else source
    reader = csv.reader(fh)
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != ["ipad", *WINDOWS]:
        raise CensusError(f"bad census header {header!r}")
    records: list[CensusRecord] = []
    total = None
    for lineno, row in enumerate(reader, start=2):
        if not row or not "".join(row).strip():
            continue
        if len(row) != 1 + len(WINDOWS):
            raise CensusError(f"line {lineno}: expected {1 + len(WINDOWS)} fields")
        name = row[0].strip()
        try:
            counts = tuple(int(x) for x in row[1:])
        except ValueError as e:
            raise CensusError(f"line {lineno}: non-integer count") from e
        if any(c < 0 for c in counts):
            raise CensusError(f"line {lineno}: negative count")
        if any(a > b for a, b in zip(counts, counts[1:])):
            raise CensusError(f"line {lineno}: counts decrease across nested windows")
        if name == TOTAL:
            total = counts
            continue
        if name != OTHER:
            try:
                name = str(Ipad.parse(name, p))
            except ValueError as e:
                raise CensusError(f"line {lineno}: {e}") from e
        records.append(CensusRecord(name, counts))
    if total is None:
        raise CensusError("missing TOTAL row")
    if not any(r.is_other for r in records):
        raise CensusError("missing OTHER row")
    sums = tuple(sum(r.counts[i] for r in records) for i in range(len(WINDOWS)))
    if sums != total:
        raise CensusError(f"column sums {sums} do not match TOTAL {total}")
    names = [r.ipad for r in records]
    if len(set(names)) != len(names):
        raise CensusError("duplicate IPAD rows")
    for r in records:
        r.total = total
    return records


@dataclass
class ComparisonRow:
    ipad: str
    observed: tuple[Fraction, ...]
    predicted: Fraction | None
    status: str

    @property
    def gap(self) -> Fraction | None:
        """|observed - predicted| in the widest window."""
        if self.predicted is None:
            return None
        return abs(self.observed[-1] - self.predicted)

    def to_dict(self) -> dict:
        out = {"ipad": self.ipad,
               "observed": {w: format_decimal(x) for w, x in zip(WINDOWS, self.observed)},
               "status": self.status}
        if self.predicted is not None:
            out["predicted"] = {"num": self.predicted.numerator, "den": self.predicted.denominator,
                                "decimal": format_decimal(self.predicted)}
            out["gap"] = format_decimal(self.gap)
        return out


@dataclass
class ComparisonReport:
    rows: list[ComparisonRow]

    def to_dicts(self) -> list[dict]:
        return [r.to_dict() for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["ipad", *WINDOWS, "predicted", "status"])
        for r in self.rows:
            pred = format_decimal(r.predicted) if r.predicted is not None else ""
            w.writerow([r.ipad, *(format_decimal(x) for x in r.observed), pred, r.status])
        return buf.getvalue()


def compare(census: Sequence[CensusRecord], predictions: Iterable[IpadMeasureEntry]) -> ComparisonReport:
    """Observed proportions next to predicted measures. The OTHER row is
    predicted as 1 minus the predictions of the listed IPADs; a prediction
    that is not exact is flagged in the row status."""
    pred = {str(e.ipad): e for e in predictions}
    rows = []
    listed = Fraction(0)
    listed_exact = True
    for rec in census:
        if rec.is_other:
            continue
        e = pred.get(rec.ipad)
        if e is None:
            rows.append(ComparisonRow(rec.ipad, rec.proportions(), None, "missing"))
            listed_exact = False
            continue
        listed += e.measure
        listed_exact &= e.status == "exact"
        rows.append(ComparisonRow(rec.ipad, rec.proportions(), e.measure, e.status))
    for rec in census:
        if rec.is_other:
            rows.append(ComparisonRow(OTHER, rec.proportions(), 1 - listed,
                                      "exact" if listed_exact else "upper-bound"))
    return ComparisonReport(rows)

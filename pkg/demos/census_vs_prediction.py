"""Observed IPAD proportions of real quadratic fields next to the predicted measures."""
from sigmagroups.census import WINDOWS, compare, ingest_census
from sigmagroups.explorer import Budget, format_decimal, ipad_measure_table
from sigmagroups.ipad import Ipad

records = ingest_census()
targets = [Ipad.parse(r.ipad) for r in records if not r.is_other]
report = compare(records, ipad_measure_table(3, 2, Budget(max_order=8), targets))

print(f"{'ipad':<36}" + "".join(f"{w:>8}" for w in WINDOWS) + f"{'pred':>8}")
for row in report.rows:
    obs = "".join(f"{format_decimal(x):>8}" for x in row.observed)
    print(f"{row.ipad:<36}{obs}{format_decimal(row.predicted):>8}")

# the largest gap sits on the top IPAD, and it shrinks as the window grows
top = report.rows[0]
print([format_decimal(abs(x - top.predicted)) for x in top.observed])

"""Table of code parameters next to the lower bounds, plus fixed reference rows."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .bounds import drf_access_bound, family_metrics, nondrf_bounds
from .codes import C1, C2, build_c1, build_c2
from .errors import BadParameters
from .gf import binary_field
from .repair import ACCESS, BANDWIDTH, average_metrics

# Published values for earlier codes with two parities and two symbols per
# node.  Quoted, never computed here.
REFERENCE_ROWS = [
    ("product-matrix MSR", "5", "2/3", "4/3", ">=10", "rashmi2011optimal"),
    ("long MDS", "6", "3/4", "23/24", ">=4", "wang2016explicit"),
    ("GKW", "5", "2/3", "7/6", ">=4", "guan2017construction"),
    ("GKWX", "6", "5/8", "47/48", ">=4", "guan2017new"),
    ("WHLBZZW", "any", ">0.72", ">0.72", "sufficiently large", "wu2021achievable"),
    ("non-DRF code 1", "any", "(k+floor(n/4)+(n mod 4)*ceil(n/4)/n)/(2k)", "n/a", ">n+2",
     "zhang2025optimal"),
    ("non-DRF code 2", "any", "n/a", "(k+floor(n/3)+(n mod 3)*ceil(n/3)/n)/(2k)", ">n",
     "zhang2025optimal"),
]

COLUMNS = ("code", "n", "gamma", "Gamma", "gamma_dec", "Gamma_dec",
           "bw_bound", "drf_access_bound", "field", "source")


@dataclass(frozen=True)
class Row:
    code: str
    n: int
    gamma: Fraction
    access: Fraction
    bw_bound: Fraction
    drf_bound: Fraction | None
    field: str
    measured: bool = False


def smallest_c1_field(m: int):
    e = 2
    while 2 ** e < 3 * m + 1:
        e += 2
    return binary_field(e)


def smallest_c2_field(m: int):
    e = 1
    while 2 ** e < 2 * m:
        e += 1
    return binary_field(e)


def family_rows(nmax: int, measure: bool = False) -> list[Row]:
    """Rows for every admissible n in [4, nmax], sorted by n."""
    if nmax < 4:
        raise BadParameters(f"nmax must be >= 4, got {nmax}")
    rows = []
    for n in range(4, nmax + 1):
        bw_bound, _ = nondrf_bounds(n - 2)
        drf = drf_access_bound(n).bound_delta3
        if n % 4 == 0:
            g, a = family_metrics(C1, n)
            fld = smallest_c1_field(n // 4)
            if measure and average_metrics(build_c1(n // 4, fld)) != (g, a):
                raise AssertionError(f"c1 n={n}: measured averages differ from the closed form")
            rows.append(Row("c1", n, g, a, bw_bound, drf, fld.ident, measure))
        if n % 3 == 0:
            fld = smallest_c2_field(n // 3)
            code = build_c2(n // 3, fld) if measure else None
            for label, strat in (("c2_bw", BANDWIDTH), ("c2_access", ACCESS)):
                g, a = family_metrics(C2, n, strat)
                if code is not None and average_metrics(code, strat) != (g, a):
                    raise AssertionError(f"{label} n={n}: measured averages differ from the closed form")
                rows.append(Row(label, n, g, a, bw_bound, drf, fld.ident, measure))
    return rows


def _frac(v: Fraction | None) -> str:
    return "" if v is None else f"{v.numerator}/{v.denominator}"


def _dec(v: Fraction | None) -> str:
    return "" if v is None else f"{float(v):.4f}"


def table_records(rows: list[Row], references: bool = True) -> list[tuple[str, ...]]:
    recs = []
    for r in rows:
        src = "measured+closed form" if r.measured else "closed form"
        recs.append((r.code, str(r.n), _frac(r.gamma), _frac(r.access), _dec(r.gamma), _dec(r.access),
                     _frac(r.bw_bound), _frac(r.drf_bound), r.field, src))
    if references:
        for name, n, g, a, q, cite in REFERENCE_ROWS:
            recs.append((name, n, g, a, "", "", "", "", q, f"reference, not computed ({cite})"))
    return recs


def render(recs: list[tuple[str, ...]], fmt: str = "table") -> str:
    if fmt in ("csv", "tsv"):
        buf = io.StringIO()
        w = csv.writer(buf, delimiter="," if fmt == "csv" else "\t", lineterminator="\n")
        w.writerow(COLUMNS)
        w.writerows(recs)
        return buf.getvalue()
    widths = [max(len(COLUMNS[i]), *(len(r[i]) for r in recs)) for i in range(len(COLUMNS))]
    # the formula strings are long; do not let them widen every row
    widths = [min(w, 24) for w in widths]
    lines = ["  ".join(c.ljust(w) for c, w in zip(COLUMNS, widths)).rstrip()]
    lines.append("-" * len(lines[0]))
    for r in recs:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def plot_series(rows: list[Row], nmax: int) -> dict[str, dict[str, dict[str, list]]]:
    series: dict[str, dict[str, dict[str, list]]] = {"bandwidth": {}, "access": {}}
    for r in rows:
        for metric, val in (("bandwidth", r.gamma), ("access", r.access)):
            pts = series[metric].setdefault(r.code, {"n": [], "y": []})
            pts["n"].append(r.n)
            pts["y"].append(float(val))
    ns = list(range(4, nmax + 1))
    series["bandwidth"]["bound_5_8"] = {"n": ns, "y": [0.625] * len(ns)}
    series["access"]["bound_delta3"] = {
        "n": ns, "y": [float(drf_access_bound(n).bound_delta3) for n in ns]}
    series["access"]["bound_nondrf_access"] = {
        "n": ns, "y": [float(nondrf_bounds(n - 2)[1]) for n in ns]}
    return series

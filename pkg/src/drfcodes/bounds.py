"""Lower bounds and closed-form metrics for (k+2, k) codes with two symbols per node.

All values are exact :class:`fractions.Fraction`.  The minimisations over
integer compositions are brute force; ``n`` stays small enough (a few
hundred at most) that this is instant for the three-part scans and fine for
the four-part scan up to n of about 100.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .codes import C1, C2
from .errors import BadLength, BadParameters
from .repair import ACCESS, BANDWIDTH, normalize_strategy


def compositions(n: int, parts: int, allow_empty: bool = False) -> Iterator[tuple[int, ...]]:
    """All ordered tuples of ``parts`` integers summing to ``n``, lexicographic."""
    lo = 0 if allow_empty else 1
    if parts == 1:
        if n >= lo:
            yield (n,)
        return
    for first in range(lo, n - lo * (parts - 1) + 1):
        for rest in compositions(n - first, parts - 1, allow_empty):
            yield (first,) + rest


def cutset_bound(n: int, k: int, d: int, N: int) -> Fraction:
    """Minimum repair bandwidth (symbols) of an MDS array code with d helpers."""
    if not (1 <= k <= d < n) or N < 1:
        raise BadParameters(f"need 1 <= k <= d < n and N >= 1, got n={n} k={k} d={d} N={N}")
    if N == 1:
        return Fraction(k)
    return Fraction(d * N, d - k + 1)


def delta3_value(n: int, l1: int, l2: int, l3: int) -> int:
    return 2 * n * (n - 1) - n * n + l1 * l1 + l2 * l2 + l3 * l3 + l1 * (l3 - 1)


def delta4_value(n: int, l1: int, l2: int, l3: int, l4: int) -> int:
    # Transcribed as printed; it goes negative for every n >= 4.
    return l1 * (l2 + 1) - l2 * (n - l2) - l3 * (l4 + 1) - l4 * (n - l4)


def _argmin(values):
    """(min value, lexicographically smallest argument achieving it)."""
    best = None
    for arg, val in values:
        if best is None or val < best[1] or (val == best[1] and arg < best[0]):
            best = (arg, val)
    if best is None:
        raise BadParameters("empty search space")
    return best[1], best[0]


def delta3(n: int, allow_empty: bool = False) -> tuple[int, tuple[int, int, int]]:
    return _argmin(
        (c, delta3_value(n, *c)) for c in compositions(n, 3, allow_empty) if c[0] <= c[1]
    )


def delta4(n: int, allow_empty: bool = False) -> tuple[int, tuple[int, int, int, int]]:
    return _argmin(
        (c, delta4_value(n, *c))
        for c in compositions(n, 4, allow_empty)
        if c[0] <= c[1] and c[2] <= c[3]
    )


@dataclass(frozen=True)
class DRFAccessBound:
    n: int
    k: int
    delta3: int
    argmin3: tuple[int, int, int]
    delta4: int
    argmin4: tuple[int, int, int, int]

    @property
    def bound(self) -> Fraction:
        """min(delta3, delta4) / (2nk)."""
        return Fraction(min(self.delta3, self.delta4), 2 * self.n * self.k)

    @property
    def bound_delta3(self) -> Fraction:
        return Fraction(self.delta3, 2 * self.n * self.k)

    @property
    def delta4_suspect(self) -> bool:
        return self.delta4 < 0


def drf_access_bound(n: int, k: int | None = None, allow_empty: bool = False) -> DRFAccessBound:
    if k is None:
        k = n - 2
    if n < 4 or k != n - 2:
        raise BadParameters(f"need n >= 4 and k = n - 2, got n={n} k={k}")
    d3, a3 = delta3(n, allow_empty)
    d4, a4 = delta4(n, allow_empty)
    return DRFAccessBound(n, k, d3, a3, d4, a4)


def nondrf_bounds(k: int) -> tuple[Fraction, Fraction]:
    """(bandwidth bound, access bound) for codes without the degraded-read row."""
    if k < 2:
        raise BadParameters(f"need k >= 2, got {k}")
    return Fraction(5, 8), Fraction(4 * k + 1, 6 * k)


def family_metrics(family: str, n: int, strategy: str = BANDWIDTH) -> tuple[Fraction, Fraction]:
    """Closed-form (average normalized bandwidth, average normalized access)."""
    if family == C1:
        if n < 4 or n % 4:
            raise BadLength(f"c1 needs n = 4m, got {n}")
        return Fraction(5 * n - 8, 8 * n - 16), Fraction(13 * n - 16, 16 * n - 32)
    if family == C2:
        if n < 3 or n % 3:
            raise BadLength(f"c2 needs n = 3m, got {n}")
        if normalize_strategy(strategy) == BANDWIDTH:
            return Fraction(2 * n - 3, 3 * n - 6), Fraction(7 * n - 9, 9 * n - 18)
        v = Fraction(13 * n - 18, 18 * n - 36)
        return v, v
    raise BadLength(f"no closed form for family {family!r}")


def partition_access(n: int, l1: int, l2: int, l3: int) -> Fraction:
    """Average normalized access of the three-type code with counts l1, l2, l3."""
    k = n - 2
    return Fraction(n * n - 2 * n + l1 * l1 + l2 * l2 + l3 * l3 + l2 * l3, 2 * n * k)


def partition_opt(n: int, k: int | None = None) -> tuple[tuple[int, int, int], Fraction]:
    """Best (l1, l2, l3), parts >= 1 and l3 <= l1, for :func:`partition_access`."""
    if k is None:
        k = n - 2
    if n < 3 or k != n - 2:
        raise BadParameters(f"need n >= 3 and k = n - 2, got n={n} k={k}")
    val, arg = _argmin(
        (c, partition_access(n, *c)) for c in compositions(n, 3) if c[2] <= c[0]
    )
    return arg, val


# -- report -----------------------------------------------------------------

@dataclass
class BoundsReport:
    n: int
    k: int
    d: int
    cutset: Fraction
    drf: DRFAccessBound | None
    nondrf_bandwidth: Fraction
    nondrf_access: Fraction
    opt_partition: tuple[int, int, int]
    opt_access: Fraction
    families: dict[str, tuple[Fraction, Fraction]] = field(default_factory=dict)
    allow_empty: bool = False

    def items(self) -> list[tuple[str, object]]:
        out: list[tuple[str, object]] = [
            ("n", self.n),
            ("k", self.k),
            ("d", self.d),
            ("cutset_symbols", self.cutset),
            ("cutset_normalized", self.cutset / (2 * self.k)),
        ]
        if self.drf is not None:
            out += [
                ("delta3", self.drf.delta3),
                ("delta3_argmin", self.drf.argmin3),
                ("delta4", self.drf.delta4),
                ("delta4_argmin", self.drf.argmin4),
                ("drf_access_bound_delta3", self.drf.bound_delta3),
                ("drf_access_bound_min", self.drf.bound),
            ]
        out += [
            ("nondrf_bandwidth_bound", self.nondrf_bandwidth),
            ("nondrf_access_bound", self.nondrf_access),
            ("partition_opt", (self.opt_partition)),
            ("partition_opt_access", self.opt_access),
        ]
        for name, (g, a) in self.families.items():
            out += [(f"{name}_bandwidth", g), (f"{name}_access", a)]
        return out

    def render_lines(self) -> str:
        """Machine-readable ``name=num/den`` lines."""
        return "\n".join(f"{name}={_fmt_value(v)}" for name, v in self.items())

    def render_table(self) -> str:
        rows = [(name, _fmt_value(v), _fmt_float(v)) for name, v in self.items()]
        w0 = max(len(r[0]) for r in rows)
        w1 = max(len(r[1]) for r in rows)
        lines = [f"{'quantity':<{w0}}  {'exact':>{w1}}  decimal"]
        lines.append("-" * len(lines[0]))
        lines += [f"{a:<{w0}}  {b:>{w1}}  {c}" for a, b, c in rows]
        if self.drf is not None and self.drf.delta4_suspect:
            lines.append(
                "note: delta4 evaluated as printed is negative; "
                "drf_access_bound_min inherits that and is not a usable bound"
            )
        return "\n".join(lines)


def _fmt_value(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, tuple):
        return ",".join(str(x) for x in v)
    return str(v)


def _fmt_float(v) -> str:
    if isinstance(v, Fraction):
        return f"{float(v):.6f}"
    return ""


def bounds_report(n: int, allow_empty: bool = False) -> BoundsReport:
    if n < 4:
        raise BadParameters(f"need n >= 4, got {n}")
    k = n - 2
    bw, acc = nondrf_bounds(k)
    part, part_val = partition_opt(n)
    families = {}
    if n % 4 == 0:
        families["c1"] = family_metrics(C1, n)
    if n % 3 == 0:
        families["c2_bw"] = family_metrics(C2, n, BANDWIDTH)
        families["c2_access"] = family_metrics(C2, n, ACCESS)
    return BoundsReport(
        n=n, k=k, d=n - 1,
        cutset=cutset_bound(n, k, n - 1, 2),
        drf=drf_access_bound(n, k, allow_empty),
        nondrf_bandwidth=bw,
        nondrf_access=acc,
        opt_partition=part,
        opt_access=part_val,
        families=families,
        allow_empty=allow_empty,
    )

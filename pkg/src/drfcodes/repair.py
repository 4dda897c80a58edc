"""Single-node repair with exact download and access accounting.

To rebuild node i every other node j is a helper.  Left-multiplying the
parity-check equations by a 2x4 repair matrix R gives

    M_i f_i + sum_{j != i} M_j f_j = 0,      M_j = R [I; A_j].

Helper j only has to send enough to reproduce ``M_j f_j``: ``rank(M_j)``
symbols downloaded, computed from the ``N_c(M_j)`` stored symbols sitting
under nonzero columns.  A rank-1 helper sends the single symbol ``v_j . f_j``
where ``v_j`` is the first nonzero row of ``M_j``; the repairing side scales
it back up to both rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

import numpy as np

from .codes import C1, C2, C2GEN, Code
from .errors import (
    BadHelperIndex,
    BadNodeIndex,
    MissingSymbols,
    SingularMatrix,
    SingularUsefulData,
    UsefulDataRankDeficient,
)
from .linalg import Mat, dot, mat, mat_mul, mat_rank, mat_solve, mat_vec, nonzero_col_mask

BANDWIDTH = "bandwidth"
ACCESS = "access"
STRATEGIES = (BANDWIDTH, ACCESS)
_ALIASES = {"bw": BANDWIDTH, "bandwidth": BANDWIDTH, "access": ACCESS}


def normalize_strategy(strategy: str) -> str:
    try:
        return _ALIASES[strategy]
    except KeyError:
        raise ValueError(f"unknown repair strategy {strategy!r}") from None


def repair_matrix(code: Code, i: int, strategy: str = BANDWIDTH) -> Mat:
    """The family's 2x4 repair matrix for node ``i``.

    c1 has one matrix per block type and ignores ``strategy``.  For c2/c2gen
    only type-2 nodes differ between the two strategies.
    """
    if not 0 <= i < code.n:
        raise BadNodeIndex(f"node {i} outside [0, {code.n})")
    strategy = normalize_strategy(strategy)
    f = code.field
    t = code.node_type(i)
    if code.family == C1:
        a, b = code.a, code.b
        rows = {
            0: [[1, a, 0, 0], [0, 0, 1, 1]],
            1: [[a, 1, 0, 0], [0, 0, 1, b]],
            2: [[0, 1, 0, 0], [0, 0, 0, 1]],
            3: [[1, 0, 0, 0], [0, 0, 1, 0]],
        }[t]
    elif code.family in (C2, C2GEN):
        if t == 0:
            rows = [[1, 0, 0, 0], [0, 0, 1, 0]]
        elif t == 1:
            rows = [[0, 1, 0, 0], [0, 0, 0, 1]]
        elif strategy == BANDWIDTH:
            rows = [[1, 1, 0, 0], [0, 0, 1, 1]]
        else:
            rows = [[1, 0, 0, 0], [0, 1, 1, 0]]
    else:
        raise BadNodeIndex(f"no built-in repair matrices for family {code.family!r}")
    return mat(f, rows)


@dataclass(frozen=True)
class HelperPlan:
    """What helper ``j`` reads and sends for one repair."""

    node: int
    product: Mat                     # M_j = R [I; A_j]
    rank: int
    mask: tuple[bool, bool]          # nonzero columns of M_j
    rep_row: tuple[int, int] | None  # v_j, rank-1 helpers only
    scales: tuple[int, int] | None   # row r of M_j == scales[r] * v_j

    @property
    def accessed(self) -> int:
        return sum(self.mask)


@dataclass(frozen=True)
class RepairPlan:
    code: Code
    node: int
    strategy: str
    matrix: Mat
    useful: Mat                       # M_i
    helpers: dict[int, HelperPlan]


def _helper_plan(code: Code, r: Mat, j: int) -> HelperPlan:
    prod = mat_mul(r, code.column_block(j))
    rank = mat_rank(prod)
    rep = scales = None
    if rank == 1:
        f = code.field
        rep = next(row for row in prod.rows if any(row))
        c = next(t for t in range(2) if rep[t])
        scales = tuple(f.div(row[c], rep[c]) for row in prod.rows)
    return HelperPlan(j, prod, rank, nonzero_col_mask(prod), rep, scales)


def make_plan(code: Code, i: int, strategy: str = BANDWIDTH, matrix: Mat | None = None) -> RepairPlan:
    """Plan the repair of node ``i``; ``matrix`` overrides the built-in R."""
    if not 0 <= i < code.n:
        raise BadNodeIndex(f"node {i} outside [0, {code.n})")
    strategy = normalize_strategy(strategy)
    r = repair_matrix(code, i, strategy) if matrix is None else matrix
    useful = mat_mul(r, code.column_block(i))
    if mat_rank(useful) != 2:
        raise UsefulDataRankDeficient(f"R [I; A_{i}] is singular for node {i}")
    helpers = {j: _helper_plan(code, r, j) for j in range(code.n) if j != i}
    return RepairPlan(code, i, strategy, r, useful, helpers)


@dataclass(frozen=True)
class RepairReport:
    node: int
    downloaded: int                    # gamma_i
    accessed: int                      # Gamma_i
    per_helper: dict[int, tuple[int, int]]
    file_symbols: int                  # k * N

    @property
    def downloaded_normalized(self) -> Fraction:
        return Fraction(self.downloaded, self.file_symbols)

    @property
    def accessed_normalized(self) -> Fraction:
        return Fraction(self.accessed, self.file_symbols)


def measure(plan: RepairPlan) -> RepairReport:
    per = {j: (h.rank, h.accessed) for j, h in plan.helpers.items()}
    return RepairReport(
        node=plan.node,
        downloaded=sum(r for r, _ in per.values()),
        accessed=sum(a for _, a in per.values()),
        per_helper=per,
        file_symbols=2 * plan.code.k,
    )


class Transfer(NamedTuple):
    """Payload sent by one helper: the symbols on the wire and the columns read."""

    node: int
    symbols: tuple[int, ...]
    accessed: tuple[int, ...]


def helper_extract(plan: RepairPlan, j: int, f_j: Sequence[int]) -> Transfer:
    h = plan.helpers.get(j)
    if h is None:
        raise BadHelperIndex(f"node {j} is not a helper for the repair of node {plan.node}")
    cols = tuple(c for c in range(2) if h.mask[c])
    if h.rank == 0:
        return Transfer(j, (), ())
    if h.rank == 1:
        return Transfer(j, (dot(plan.code.field, h.rep_row, f_j),), cols)
    return Transfer(j, mat_vec(h.product, f_j), cols)


def interference(plan: RepairPlan, t: Transfer) -> tuple[int, int]:
    """Reconstruct ``M_j f_j`` on the repairing side from a helper payload."""
    h = plan.helpers[t.node]
    f = plan.code.field
    if h.rank == 0:
        return (0, 0)
    if h.rank == 1:
        (s,) = t.symbols
        return (f.mul(h.scales[0], s), f.mul(h.scales[1], s))
    return tuple(t.symbols)


def repair_node(code: Code, plan: RepairPlan,
                payloads: Mapping[int, Transfer]) -> tuple[tuple[int, int], RepairReport]:
    """Solve ``M_i f_i = -sum_j M_j f_j`` from the helpers' payloads.

    The report counts what was actually transferred and read.
    """
    f = code.field
    missing = set(plan.helpers) - set(payloads)
    if missing:
        raise MissingSymbols(f"no payload from helper(s) {sorted(missing)}")
    acc = [0, 0]
    down = acc_count = 0
    per = {}
    for j in plan.helpers:
        t = payloads[j]
        v = interference(plan, t)
        acc = [f.add(acc[0], v[0]), f.add(acc[1], v[1])]
        per[j] = (len(t.symbols), len(t.accessed))
        down += len(t.symbols)
        acc_count += len(t.accessed)
    rhs = mat(f, [[f.neg(acc[0])], [f.neg(acc[1])]])
    try:
        sol = mat_solve(plan.useful, rhs)
    except SingularMatrix:
        raise SingularUsefulData(f"useful-data matrix for node {plan.node} is singular") from None
    report = RepairReport(plan.node, down, acc_count, per, 2 * code.k)
    return (sol[0, 0], sol[1, 0]), report


def repair_from_codeword(plan: RepairPlan, cw) -> tuple[tuple[int, int], RepairReport]:
    """Run extract + repair against a full codeword (node ``plan.node`` unused)."""
    payloads = {j: helper_extract(plan, j, cw[j]) for j in plan.helpers}
    return repair_node(plan.code, plan, payloads)


# -- averages ---------------------------------------------------------------

def average_metrics(code: Code, strategy: str = BANDWIDTH) -> tuple[Fraction, Fraction]:
    """(average normalized repair bandwidth, average normalized access)."""
    reports = [measure(make_plan(code, i, strategy)) for i in range(code.n)]
    denom = code.n * 2 * code.k
    return (
        Fraction(sum(r.downloaded for r in reports), denom),
        Fraction(sum(r.accessed for r in reports), denom),
    )


# -- degraded read ----------------------------------------------------------

class DegradedRead(NamedTuple):
    value: int
    accessed: int


def degraded_read(code: Code, i: int, r: int, symbols: Mapping[int, int]) -> DegradedRead:
    """Recover ``f_{i,r}`` as minus the sum of row ``r`` over the other nodes."""
    if not 0 <= i < code.n:
        raise BadNodeIndex(f"node {i} outside [0, {code.n})")
    if r not in (0, 1):
        raise ValueError(f"row must be 0 or 1, got {r}")
    need = [j for j in range(code.n) if j != i]
    absent = [j for j in need if j not in symbols]
    if absent:
        raise MissingSymbols(f"row-{r} symbols missing for node(s) {absent}")
    f = code.field
    acc = 0
    for j in need:
        acc = f.add(acc, symbols[j])
    return DegradedRead(f.neg(acc), len(need))


# -- bulk (many stripes) ------------------------------------------------------

def extract_stripes(plan: RepairPlan, j: int, col: np.ndarray) -> np.ndarray:
    """Helper ``j``'s payload for every stripe; ``col`` has shape (2, S)."""
    h = plan.helpers.get(j)
    if h is None:
        raise BadHelperIndex(f"node {j} is not a helper for the repair of node {plan.node}")
    f = plan.code.field
    S = col.shape[1]
    if h.rank == 0:
        return np.zeros((0, S), dtype=np.int64)
    rows = [h.rep_row] if h.rank == 1 else h.product.rows
    out = np.zeros((len(rows), S), dtype=np.int64)
    for t, row in enumerate(rows):
        acc = np.zeros(S, dtype=np.int64)
        for c in range(2):
            if row[c]:
                acc = f.add_arrays(acc, f.scale_array(row[c], col[c]))
        out[t] = acc
    return out


def repair_stripes(plan: RepairPlan, payloads: Mapping[int, np.ndarray]) -> np.ndarray:
    """Rebuild node ``plan.node`` for every stripe; returns shape (2, S)."""
    f = plan.code.field
    S = next(iter(payloads.values())).shape[1]
    acc = np.zeros((2, S), dtype=np.int64)
    for j, h in plan.helpers.items():
        p = payloads[j]
        if h.rank == 1:
            for r in range(2):
                acc[r] = f.add_arrays(acc[r], f.scale_array(h.scales[r], p[0]))
        elif h.rank == 2:
            acc = f.add_arrays(acc, p)
    inv = mat_solve(plan.useful, mat(f, [[1, 0], [0, 1]]))
    rhs = f.neg_array(acc)
    out = np.zeros((2, S), dtype=np.int64)
    for r in range(2):
        for c in range(2):
            if inv[r, c]:
                out[r] = f.add_arrays(out[r], f.scale_array(inv[r, c], rhs[c]))
    return out

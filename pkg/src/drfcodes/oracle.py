"""Brute-force checks that do not trust the code builders.

``best_repair`` scans every 2-dimensional row space of F_q^4 (one reduced
row-echelon representative each), which is enough because both the rank and
the nonzero-column count of ``R [I; A_j]`` depend only on the row space of R.

``mds_exhaustive`` erases every pair of nodes from random codewords and
decodes, independently of the determinant criterion in
:func:`drfcodes.codes.verify_mds`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .codes import Code, verify_mds
from .errors import DRFError, FieldTooLarge
from .gf import Field
from .linalg import Mat, mat_mul, mat_rank, nonzero_cols
from .stripes import decode_stripes, encode_stripes

MAX_ORACLE_ORDER = 16


def gaussian_binomial_4_2(q: int) -> int:
    """Number of 2-dimensional subspaces of F_q^4."""
    return (q * q + 1) * (q * q + q + 1)


def enumerate_rowspaces(field: Field) -> Iterator[Mat]:
    """Yield the RREF 2x4 matrix of every 2-dimensional subspace of F_q^4."""
    if field.order > MAX_ORACLE_ORDER:
        raise FieldTooLarge(f"{field.ident} exceeds the oracle limit q <= {MAX_ORACLE_ORDER}")
    q = field.order
    for p1, p2 in itertools.combinations(range(4), 2):
        free1 = [c for c in range(p1 + 1, 4) if c != p2]
        free2 = list(range(p2 + 1, 4))
        for vals1 in itertools.product(range(q), repeat=len(free1)):
            row1 = [0] * 4
            row1[p1] = 1
            for c, v in zip(free1, vals1):
                row1[c] = v
            for vals2 in itertools.product(range(q), repeat=len(free2)):
                row2 = [0] * 4
                row2[p2] = 1
                for c, v in zip(free2, vals2):
                    row2[c] = v
                yield Mat(field, (tuple(row1), tuple(row2)))


@dataclass(frozen=True)
class SearchResult:
    node: int
    min_downloaded: int
    min_accessed: int
    downloaded_matrix: Mat
    accessed_matrix: Mat
    enumerated: int
    admissible: int


def repair_cost(code: Code, i: int, r: Mat) -> tuple[int, int] | None:
    """(gamma, Gamma) of repairing node i with R, or None if R cannot repair i."""
    if mat_rank(mat_mul(r, code.column_block(i))) != 2:
        return None
    gamma = Gamma = 0
    for j in range(code.n):
        if j != i:
            prod = mat_mul(r, code.column_block(j))
            gamma += mat_rank(prod)
            Gamma += nonzero_cols(prod)
    return gamma, Gamma


def best_repair(code: Code, i: int) -> SearchResult:
    """Minimum bandwidth and, separately, minimum access over all repair row spaces."""
    best_g = best_a = None
    count = admissible = 0
    for r in enumerate_rowspaces(code.field):
        count += 1
        cost = repair_cost(code, i, r)
        if cost is None:
            continue
        admissible += 1
        g, a = cost
        if best_g is None or g < best_g[0]:
            best_g = (g, r)
        if best_a is None or a < best_a[0]:
            best_a = (a, r)
    return SearchResult(i, best_g[0], best_a[0], best_g[1], best_a[1], count, admissible)


def pareto_front(code: Code, i: int) -> list[tuple[int, int]]:
    """Non-dominated (gamma, Gamma) pairs achievable by a single repair row space."""
    costs = {c for r in enumerate_rowspaces(code.field) if (c := repair_cost(code, i, r)) is not None}
    return sorted(
        c for c in costs
        if not any(d != c and d[0] <= c[0] and d[1] <= c[1] for d in costs)
    )


@dataclass(frozen=True)
class MDSCheck:
    ok: bool
    verify_agrees: bool
    counterexample: tuple[tuple[int, int], int] | None = None   # (erased pair, trial)

    def __bool__(self):
        return self.ok


def mds_exhaustive(code: Code, trials: int = 100, seed: int = 0) -> MDSCheck:
    """Erase every node pair from ``trials`` random codewords and decode.

    Trial 0 is the all-zero codeword.  Stops at the first failing pair.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    data = rng.integers(0, code.field.order, size=(code.k, 2, trials), dtype=np.int64)
    data[:, :, 0] = 0
    counterexample = None
    try:
        cw = encode_stripes(code, data)
    except DRFError:
        # parity nodes themselves cannot be solved for
        counterexample = ((code.n - 2, code.n - 1), 0)
    if counterexample is None:
        for pair in itertools.combinations(range(code.n), 2):
            present = {j: cw[j] for j in range(code.n) if j not in pair}
            try:
                out = decode_stripes(code, present, trials, check=False)
            except DRFError:
                counterexample = (pair, 0)
                break
            bad = np.flatnonzero((out != cw).any(axis=(0, 1)))
            if bad.size:
                counterexample = (pair, int(bad[0]))
                break
    ok = counterexample is None
    return MDSCheck(ok, verify_mds(code).ok == ok, counterexample)

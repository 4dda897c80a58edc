"""Vectorised encode/decode over many stripes at once.

A batch of S codewords is an int64 array of shape ``(n, 2, S)``: node, row,
stripe.  The scalar routines in :mod:`drfcodes.codes` define the semantics;
these kernels apply the same (cached) linear maps column-wise with numpy.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

from .codes import Code
from .errors import InconsistentSymbols, MissingSymbols, TooManyErasures
from .gf import Field
from .linalg import Mat


def apply_matrix(field: Field, m: Mat, vecs: np.ndarray) -> np.ndarray:
    """``m @ vecs`` where ``vecs`` has shape (m.ncols, S)."""
    out = np.zeros((m.nrows, vecs.shape[1]), dtype=np.int64)
    for r, row in enumerate(m.rows):
        acc = out[r]
        for c, coef in enumerate(row):
            if coef:
                acc = field.add_arrays(acc, field.scale_array(coef, vecs[c]))
        out[r] = acc
    return out


def encode_stripes(code: Code, data: np.ndarray) -> np.ndarray:
    """Encode data of shape (k, 2, S) into codewords of shape (n, 2, S)."""
    k = code.k
    if data.ndim != 3 or data.shape[:2] != (k, 2):
        raise ValueError(f"data must have shape ({k}, 2, S), got {data.shape}")
    S = data.shape[2]
    parity = apply_matrix(code.field, code.parity_generator(), data.reshape(2 * k, S))
    return np.concatenate([data, parity.reshape(2, 2, S)], axis=0)


def parity_residual_stripes(code: Code, cw: np.ndarray) -> np.ndarray:
    """Shape (4, S); column s is zero iff stripe s is a codeword."""
    n, _, S = cw.shape
    return apply_matrix(code.field, code.parity_check(), cw.reshape(2 * n, S))


def decode_stripes(code: Code, present: Mapping[int, np.ndarray], S: int | None = None,
                   check: bool = True) -> np.ndarray:
    """Rebuild all n columns from the nodes in ``present`` (each shape (2, S))."""
    lost = tuple(j for j in range(code.n) if j not in present)
    if len(lost) > 2:
        raise TooManyErasures(f"{len(lost)} erasures, at most 2 are correctable")
    if S is None:
        S = next(iter(present.values())).shape[1]
    nodes, rec = code.recovery_matrix(lost)
    out = np.zeros((code.n, 2, S), dtype=np.int64)
    for j in nodes:
        col = present[j]
        if col.shape != (2, S):
            raise MissingSymbols(f"node {j} has shape {col.shape}, expected (2, {S})")
        out[j] = col
    if lost:
        stacked = out[list(nodes)].reshape(2 * len(nodes), S)
        rebuilt = apply_matrix(code.field, rec, stacked).reshape(len(lost), 2, S)
        out[list(lost)] = rebuilt
    if check:
        bad = np.flatnonzero(parity_residual_stripes(code, out).any(axis=0))
        if bad.size:
            raise InconsistentSymbols(f"parity check failed in {bad.size} stripe(s), first {bad[0]}")
    return out


def random_stripes(code: Code, S: int, rng: np.random.Generator) -> np.ndarray:
    """S random codewords, shape (n, 2, S)."""
    data = rng.integers(0, code.field.order, size=(code.k, 2, S), dtype=np.int64)
    return encode_stripes(code, data)


def erase(cw: np.ndarray, nodes: Sequence[int]) -> dict[int, np.ndarray]:
    return {j: cw[j] for j in range(cw.shape[0]) if j not in set(nodes)}

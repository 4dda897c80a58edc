"""File-level operations on a directory of shards."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .codes import Code
from .errors import HeaderMismatch, MissingSymbols, TooManyErasures
from .repair import degraded_read, extract_stripes, make_plan, measure, repair_stripes
from .shards import (
    ShardHeader,
    check_header,
    data_array,
    data_bytes,
    read_shard,
    shard_name,
    write_shard,
)
from .stripes import decode_stripes, encode_stripes


def encode_file(code: Code, data: bytes, out_dir) -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    cw = encode_stripes(code, data_array(data, code))
    S = cw.shape[2]
    paths = []
    for j in range(code.n):
        path = out_dir / shard_name(j)
        write_shard(path, ShardHeader.for_code(code, j, S, len(data)), cw[j], code.field)
        paths.append(path)
    return paths


def load_shards(code: Code, shard_dir, skip: tuple[int, ...] = ()):
    """Read every present shard; returns ({node: (2, S) array}, reference header)."""
    shard_dir = Path(shard_dir)
    cols: dict[int, np.ndarray] = {}
    ref: ShardHeader | None = None
    for j in range(code.n):
        path = shard_dir / shard_name(j)
        if j in skip or not path.exists():
            continue
        header, col = read_shard(path, code.field)
        check_header(header, code, path)
        if header.node != j:
            raise HeaderMismatch(f"{path}: header says node {header.node}")
        if ref is None:
            ref = header
        elif not header.same_encoding(ref):
            raise HeaderMismatch(f"{path}: header differs from the other shards")
        cols[j] = col
    if ref is None:
        raise TooManyErasures(f"no shards found in {shard_dir}")
    return cols, ref


def decode_dir(code: Code, shard_dir) -> bytes:
    cols, ref = load_shards(code, shard_dir)
    cw = decode_stripes(code, cols, ref.stripes)
    return data_bytes(cw, code, ref.length)


def verify_dir(code: Code, shard_dir) -> tuple[int, int]:
    """Parity-check all stripes; returns (shards present, stripes checked)."""
    cols, ref = load_shards(code, shard_dir)
    decode_stripes(code, cols, ref.stripes, check=True)
    return len(cols), ref.stripes


@dataclass(frozen=True)
class RepairStats:
    node: int
    stripes: int
    downloaded_symbols: int
    accessed_symbols: int
    downloaded_bytes: int
    per_stripe_downloaded: int
    per_stripe_accessed: int
    path: Path


def repair_dir(code: Code, shard_dir, lost: int, strategy: str, out_path=None) -> RepairStats:
    """Rebuild shard ``lost`` from the other n-1 shards, counting traffic."""
    shard_dir = Path(shard_dir)
    plan = make_plan(code, lost, strategy)
    cols, ref = load_shards(code, shard_dir, skip=(lost,))
    absent = [j for j in plan.helpers if j not in cols]
    if absent:
        raise MissingSymbols(f"repair needs all n-1 helpers; missing shard(s) {absent}")
    S = ref.stripes
    payloads = {j: extract_stripes(plan, j, cols[j]) for j in plan.helpers}
    downloaded = sum(p.size for p in payloads.values())
    accessed = sum(h.accessed for h in plan.helpers.values()) * S
    if S:
        col = repair_stripes(plan, payloads)
    else:
        col = np.zeros((2, 0), dtype=np.int64)
    out_path = Path(out_path) if out_path else shard_dir / shard_name(lost)
    header = ShardHeader.for_code(code, lost, S, ref.length)
    write_shard(out_path, header, col, code.field)
    report = measure(plan)
    return RepairStats(lost, S, downloaded, accessed, downloaded * code.field.symbol_bytes,
                       report.downloaded, report.accessed, out_path)


def read_symbol(code: Code, shard_dir, node: int, row: int, stripe: int = 0):
    """Degraded read of ``f_{node,row}`` in one stripe from the other n-1 shards."""
    cols, ref = load_shards(code, shard_dir, skip=(node,))
    if not 0 <= stripe < ref.stripes:
        raise IndexError(f"stripe {stripe} outside [0, {ref.stripes})")
    symbols = {j: int(c[row, stripe]) for j, c in cols.items()}
    return degraded_read(code, node, row, symbols)

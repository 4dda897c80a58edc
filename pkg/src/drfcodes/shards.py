"""Shard files: striping a byte stream over n nodes and back.

Byte stream -> symbols: the input is read as a little-endian bit stream and
cut into ``b``-bit symbols, ``b = floor(log2 q)`` (8 for GF(2^8), 16 for
GF(2^16), 2 for GF(4) or GF(7)).  Symbol ``t`` of the padded stream goes to
stripe ``t // 2k``, node ``(t % 2k) // 2``, row ``t % 2``.

Shard file = 64-byte header, optional lambda list (u16 each), then the node's
two symbols per stripe in stripe order, 1 byte per symbol for GF(2^e) with
e <= 8 and 2 bytes little-endian otherwise (including all prime fields).

Header layout (little-endian)::

    off  size  field
    0    4     magic b"DRF1"
    4    1     format version (1)
    5    1     family (1=c1, 2=c2, 3=c2gen)
    6    2     n
    8    2     k
    10   2     m, or l1 for c2gen
    12   2     l2 (c2gen, else 0)
    14   2     l3 (c2gen, else 0)
    16   2     node index
    18   2     lambda count
    20   8     stripe count
    28   8     original length in bytes
    36   1     field identifier length
    37   27    field identifier, ASCII, zero padded
"""

from __future__ import annotations

import os
import struct
import tempfile
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .codes import C1, C2, C2GEN, Code
from .errors import HeaderMismatch, ShardFormatError
from .gf import Field

MAGIC = b"DRF1"
VERSION = 1
HEADER_SIZE = 64
_HEADER = struct.Struct("<4sBBHHHHHHHQQB27s")
assert _HEADER.size == HEADER_SIZE
_FAMILY_CODES = {C1: 1, C2: 2, C2GEN: 3}
_FAMILY_NAMES = {v: k for k, v in _FAMILY_CODES.items()}


@dataclass(frozen=True)
class ShardHeader:
    field_id: str
    family: str
    n: int
    k: int
    params: tuple[int, int, int]       # (m, 0, 0) or (l1, l2, l3)
    node: int
    stripes: int
    length: int
    lambdas: tuple[int, ...] = ()
    version: int = VERSION

    @classmethod
    def for_code(cls, code: Code, node: int, stripes: int, length: int) -> "ShardHeader":
        params = code.partition if code.family == C2GEN else (code.m, 0, 0)
        return cls(code.field.ident, code.family, code.n, code.k, params, node,
                   stripes, length, tuple(code.lambdas))

    def pack(self) -> bytes:
        fid = self.field_id.encode("ascii")
        head = _HEADER.pack(
            MAGIC, self.version, _FAMILY_CODES[self.family], self.n, self.k,
            *self.params, self.node, len(self.lambdas), self.stripes, self.length,
            len(fid), fid,
        )
        return head + struct.pack(f"<{len(self.lambdas)}H", *self.lambdas)

    @classmethod
    def unpack(cls, buf: bytes) -> tuple["ShardHeader", int]:
        """Parse a header from the start of ``buf``; returns (header, bytes consumed)."""
        if len(buf) < HEADER_SIZE:
            raise ShardFormatError("file shorter than the shard header")
        (magic, version, fam, n, k, p0, p1, p2, node, nlam, stripes, length,
         fid_len, fid) = _HEADER.unpack_from(buf)
        if magic != MAGIC:
            raise ShardFormatError(f"bad magic {magic!r}")
        if version != VERSION:
            raise ShardFormatError(f"unsupported format version {version}")
        if fam not in _FAMILY_NAMES:
            raise ShardFormatError(f"unknown family byte {fam}")
        end = HEADER_SIZE + 2 * nlam
        if len(buf) < end:
            raise ShardFormatError("truncated lambda list")
        lambdas = struct.unpack_from(f"<{nlam}H", buf, HEADER_SIZE)
        header = cls(fid[:fid_len].decode("ascii"), _FAMILY_NAMES[fam], n, k, (p0, p1, p2),
                     node, stripes, length, tuple(lambdas), version)
        return header, end

    def same_encoding(self, other: "ShardHeader") -> bool:
        return replace(self, node=0) == replace(other, node=0)


# -- symbol packing -----------------------------------------------------------

def bytes_to_symbols(data: bytes, field: Field) -> np.ndarray:
    b = field.data_bits
    if b == 8:
        return np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="little")
    pad = -len(bits) % b
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    weights = 1 << np.arange(b, dtype=np.int64)
    return bits.reshape(-1, b).astype(np.int64) @ weights


def symbols_to_bytes(symbols: np.ndarray, field: Field, length: int) -> bytes:
    b = field.data_bits
    if symbols.size and (symbols.max() >> b):
        raise ShardFormatError("decoded symbol does not fit the data width; shards are corrupt")
    if b == 8:
        return symbols.astype(np.uint8).tobytes()[:length]
    bits = ((symbols[:, None] >> np.arange(b)) & 1).astype(np.uint8).ravel()
    return np.packbits(bits, bitorder="little").tobytes()[:length]


def stripe_count(length: int, code: Code) -> int:
    nsym = -(-8 * length // code.field.data_bits)
    return -(-nsym // (2 * code.k))


def data_array(data: bytes, code: Code) -> np.ndarray:
    """Input bytes as a zero-padded (k, 2, S) symbol array."""
    S = stripe_count(len(data), code)
    sym = bytes_to_symbols(data, code.field)
    padded = np.zeros(S * 2 * code.k, dtype=np.int64)
    padded[: sym.size] = sym
    return padded.reshape(S, code.k, 2).transpose(1, 2, 0)


def data_bytes(cw: np.ndarray, code: Code, length: int) -> bytes:
    """Inverse of :func:`data_array` applied to the data nodes of ``cw``."""
    S = cw.shape[2]
    sym = cw[: code.k].transpose(2, 0, 1).reshape(S * 2 * code.k)
    return symbols_to_bytes(sym, code.field, length)


# -- shard files -------------------------------------------------------------

def shard_name(node: int) -> str:
    return f"node_{node:02d}.shard"


def _dtype(field: Field):
    return np.uint8 if field.symbol_bytes == 1 else np.dtype("<u2")


def shard_payload(col: np.ndarray, field: Field) -> bytes:
    """Serialise one node's (2, S) symbols in stripe order."""
    return col.T.astype(_dtype(field)).tobytes()


def write_atomic(path: Path, blob: bytes) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(blob)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_shard(path: Path, header: ShardHeader, col: np.ndarray, field: Field) -> None:
    write_atomic(path, header.pack() + shard_payload(col, field))


def read_shard(path: Path, field: Field | None = None) -> tuple[ShardHeader, np.ndarray]:
    blob = Path(path).read_bytes()
    header, off = ShardHeader.unpack(blob)
    if field is None:
        field = Field.parse(header.field_id)
    body = blob[off:]
    expected = header.stripes * 2 * field.symbol_bytes
    if len(body) != expected:
        raise ShardFormatError(f"{path}: payload has {len(body)} bytes, expected {expected}")
    sym = np.frombuffer(body, dtype=_dtype(field)).astype(np.int64)
    if sym.size and sym.max() >= field.order:
        raise ShardFormatError(f"{path}: symbol outside {field.ident}")
    return header, sym.reshape(header.stripes, 2).T.copy()


def check_header(header: ShardHeader, code: Code, path=None) -> None:
    """Raise :class:`HeaderMismatch` unless ``header`` describes ``code``."""
    if not 0 <= header.node < code.n:
        raise HeaderMismatch(f"{path or 'shard'}: node index {header.node} outside [0, {code.n})")
    if header != ShardHeader.for_code(code, header.node, header.stripes, header.length):
        raise HeaderMismatch(f"{path or 'shard'}: header does not match the code configuration")

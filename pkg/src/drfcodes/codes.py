"""The (n = k+2, k) degraded-read-friendly array codes with two symbols per node.

A code is fixed by n blocks ``A_0 .. A_{n-1}`` (2x2 matrices); a codeword
``f_0 .. f_{n-1}`` (columns of length 2) is valid when

    sum_i f_i = 0    and    sum_i A_i f_i = 0.

The first condition is what makes single-symbol degraded reads cheap.  The
code is MDS exactly when every difference ``A_i - A_j`` is nonsingular.

Three families are built here:

* ``c1``     n = 4m over GF(2^(2t)), blocks ``w^i * {I, diag(a,b), ...}``
             with ``a, b`` the two primitive cube roots of unity.
* ``c2``     n = 3m over any supported field, blocks parametrised by
             ``lambda_0 .. lambda_{m-1}`` (upper-, lower-triangular, diagonal).
* ``c2gen``  the same three block types with counts ``l1, l2, l3``.

Layout is systematic: data lives on nodes ``0 .. k-1`` and the parity on
nodes ``n-2`` and ``n-1``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import (
    BadLambdas,
    BadParameters,
    BadPartition,
    DimensionMismatch,
    FieldOrderNotFourPower,
    FieldTooSmall,
    InconsistentSymbols,
    MissingSymbols,
    NotMDS,
    SingularMatrix,
    TooManyErasures,
)
from .gf import Field, is_order_four_power
from .linalg import (
    Mat,
    hstack,
    identity,
    mat,
    mat_det2,
    mat_mul,
    mat_neg,
    mat_solve,
    mat_vec,
    vstack,
)

C1 = "c1"
C2 = "c2"
C2GEN = "c2gen"
CUSTOM = "custom"
FAMILIES = (C1, C2, C2GEN)


@dataclass(frozen=True)
class Code:
    family: str
    field: Field
    blocks: tuple[Mat, ...]
    m: int | None = None
    a: int | None = None
    b: int | None = None
    lambdas: tuple[int, ...] = ()
    partition: tuple[int, int, int] | None = None
    _cache: dict = dc_field(default_factory=dict, compare=False, repr=False, hash=False)

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> int:
        return self.n - 2

    @property
    def subpacketization(self) -> int:
        return 2

    def node_type(self, i: int) -> int | None:
        """Block type of node ``i`` (0..3 for c1, 0..2 for c2/c2gen)."""
        if not 0 <= i < self.n:
            raise IndexError(f"node {i} outside [0, {self.n})")
        if self.family == C1:
            return i % 4
        if self.family == C2:
            return i % 3
        if self.family == C2GEN:
            l1, l2, _ = self.partition
            return 0 if i < l1 else 1 if i < l1 + l2 else 2
        return None

    def parity_check(self) -> Mat:
        """The 4 x 2n parity-check matrix ``[I .. I; A_0 .. A_{n-1}]``."""
        if "H" not in self._cache:
            eye = identity(self.field, 2)
            self._cache["H"] = vstack(hstack(*([eye] * self.n)), hstack(*self.blocks))
        return self._cache["H"]

    def column_block(self, j: int) -> Mat:
        """``[I; A_j]``, the 4x2 slice of the parity-check matrix for node j."""
        return vstack(identity(self.field, 2), self.blocks[j])

    def recovery_matrix(self, missing: Sequence[int]) -> tuple[tuple[int, ...], Mat]:
        """Linear map from present columns to the missing ones.

        Returns ``(present, M)`` where ``M`` has shape ``(2|missing|, 2|present|)``
        and ``concat(f_i for i in missing) = M @ concat(f_j for j in present)``.
        One missing node uses only the all-identity parity row.
        """
        missing = tuple(sorted(set(missing)))
        key = ("rec", missing)
        if key in self._cache:
            return self._cache[key]
        if len(missing) > 2:
            raise TooManyErasures(f"{len(missing)} erasures, at most 2 are correctable")
        present = tuple(j for j in range(self.n) if j not in missing)
        f = self.field
        if len(missing) == 0:
            result = (present, identity(f, 2 * self.n))
        elif len(missing) == 1:
            negI = mat_neg(identity(f, 2))
            result = (present, hstack(*([negI] * len(present))))
        else:
            i, j = missing
            lhs = hstack(self.column_block(i), self.column_block(j))
            rhs = mat_neg(hstack(*(self.column_block(p) for p in present)))
            result = (present, mat_solve(lhs, rhs))
        self._cache[key] = result
        return result

    def parity_generator(self) -> Mat:
        """4 x 2k matrix mapping stacked data columns to the two parity columns."""
        present, m = self.recovery_matrix((self.n - 2, self.n - 1))
        return m


class Codeword:
    """n columns of two symbols; ``cw[i]`` is ``(f_{i,0}, f_{i,1})``."""

    __slots__ = ("columns",)

    def __init__(self, columns: Iterable[Sequence[int]]):
        self.columns = tuple((int(c[0]), int(c[1])) for c in columns)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Codeword":
        if len(rows) != 2 or len(rows[0]) != len(rows[1]):
            raise DimensionMismatch("codeword rows must be a 2 x n array")
        return cls(zip(rows[0], rows[1]))

    @property
    def rows(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(c[0] for c in self.columns), tuple(c[1] for c in self.columns)

    @property
    def n(self) -> int:
        return len(self.columns)

    def __getitem__(self, i: int) -> tuple[int, int]:
        return self.columns[i]

    def __len__(self):
        return len(self.columns)

    def __eq__(self, other):
        return isinstance(other, Codeword) and self.columns == other.columns

    def __hash__(self):
        return hash(self.columns)

    def __repr__(self):
        return f"Codeword({list(self.columns)})"

    def flat(self, nodes: Iterable[int] | None = None) -> tuple[int, ...]:
        nodes = range(self.n) if nodes is None else nodes
        return tuple(v for j in nodes for v in self.columns[j])


# -- construction ---------------------------------------------------------

def _blocks_c1(field: Field, m: int, a: int, b: int) -> list[Mat]:
    f = field
    templates = [
        ((1, 0), (0, 1)),
        ((a, 0), (0, b)),
        ((b, 0), (a, a)),
        ((b, b), (0, a)),
    ]
    blocks = []
    for i in range(m):
        wi = f.w_pow(i)
        for t in templates:
            blocks.append(mat(f, [[f.mul(wi, v) for v in row] for row in t]))
    return blocks


def build_c1(m: int, field: Field) -> Code:
    """The n = 4m code over GF(2^(2t)); needs q >= 3m + 1."""
    if m < 1:
        raise BadParameters(f"m must be positive, got {m}")
    if not is_order_four_power(field):
        raise FieldOrderNotFourPower(f"{field.ident} is not of the form GF(2^(2t))")
    q = field.order
    if q < 3 * m + 1:
        raise FieldTooSmall(f"m={m} needs q >= {3 * m + 1}, {field.ident} has q={q}")
    f = field
    a = f.w_pow((q - 1) // 3)
    b = f.w_pow(2 * (q - 1) // 3)
    # Rank conditions behind the repair matrices; all follow from a^3 = 1, a != 1.
    assert a != 1 and b == f.mul(a, a) and f.add(a, b) == 1
    assert f.mul(a, b) == f.add(a, b) == 1 and f.mul(b, b) != 1 and f.mul(a, a) == f.add(a, 1)
    code = Code(C1, field, tuple(_blocks_c1(field, m, a, b)), m=m, a=a, b=b)
    _require_mds(code)
    return code


def check_lambdas(field: Field, lambdas: Sequence[int], count: int) -> tuple[int, ...]:
    lambdas = tuple(int(v) for v in lambdas)
    if len(lambdas) != count:
        raise BadLambdas(f"expected {count} lambdas, got {len(lambdas)}")
    for v in lambdas:
        if v not in field:
            raise BadLambdas(f"lambda {v} is not an element of {field.ident}")
    for (i, x), (j, y) in itertools.combinations(enumerate(lambdas), 2):
        d = field.sub(x, y)
        if d == 0:
            raise BadLambdas(f"lambda_{i} == lambda_{j} == {x}")
        if d == 1 or d == field.neg(1):
            raise BadLambdas(f"lambda_{i} - lambda_{j} = +-1 ({x}, {y})")
    return lambdas


def auto_lambdas(field: Field, count: int) -> tuple[int, ...]:
    """Ascending greedy pick avoiding {x, x+1, x-1} of earlier picks.

    In characteristic 2 this yields 0, 2, 4, ... (one element of every pair
    {s, s+1}), so it succeeds iff q >= 2*count.
    """
    f = field
    chosen: list[int] = []
    banned: set[int] = set()
    for x in f.elements():
        if len(chosen) == count:
            break
        if x in banned:
            continue
        chosen.append(x)
        banned.update((x, f.add(x, 1), f.sub(x, 1)))
    if len(chosen) < count:
        raise FieldTooSmall(
            f"{field.ident} admits only {len(chosen)} lambdas spaced by more than 1, need {count}"
        )
    return tuple(chosen)


def _c2_block(field: Field, kind: int, lam: int) -> Mat:
    f = field
    lp1 = f.add(lam, 1)
    if kind == 0:
        return mat(f, [[lam, f.neg(1)], [0, lp1]])
    if kind == 1:
        return mat(f, [[lam, 0], [1, lp1]])
    return mat(f, [[lp1, 0], [0, lam]])


def build_c2(m: int, field: Field, lambdas: Sequence[int] | None = None) -> Code:
    """The n = 3m code with blocks indexed 3i + j, j the block type."""
    if m < 1:
        raise BadParameters(f"m must be positive, got {m}")
    lams = auto_lambdas(field, m) if lambdas is None else check_lambdas(field, lambdas, m)
    blocks = [_c2_block(field, j, lams[i]) for i in range(m) for j in range(3)]
    code = Code(C2, field, tuple(blocks), m=m, lambdas=lams)
    _require_mds(code)
    return code


def build_c2_general(l1: int, l2: int, l3: int, field: Field,
                     lambdas: Sequence[int] | None = None) -> Code:
    """Type-0 blocks on nodes [0, l1), type 1 on the next l2, type 2 on the last l3.

    Each type draws from one shared lambda pool by offset inside its range.
    """
    if min(l1, l2, l3) < 1:
        raise BadPartition(f"every part must be >= 1, got ({l1}, {l2}, {l3})")
    count = max(l1, l2, l3)
    lams = auto_lambdas(field, count) if lambdas is None else check_lambdas(field, lambdas, count)
    blocks = (
        [_c2_block(field, 0, lams[i]) for i in range(l1)]
        + [_c2_block(field, 1, lams[i]) for i in range(l2)]
        + [_c2_block(field, 2, lams[i]) for i in range(l3)]
    )
    code = Code(C2GEN, field, tuple(blocks), m=None, lambdas=lams, partition=(l1, l2, l3))
    _require_mds(code)
    return code


def custom_code(field: Field, blocks: Sequence[Mat]) -> Code:
    """Wrap arbitrary blocks without any validation (for experiments and tests)."""
    return Code(CUSTOM, field, tuple(blocks))


# -- MDS ------------------------------------------------------------------

class MDSReport(NamedTuple):
    ok: bool
    failures: list[tuple[int, int]]


def verify_mds(code: Code) -> MDSReport:
    """Check det(A_i - A_j) != 0 for every pair i < j."""
    failures = [
        (i, j)
        for i, j in itertools.combinations(range(code.n), 2)
        if mat_det2(code.blocks[i] - code.blocks[j]) == 0
    ]
    return MDSReport(not failures, failures)


def _require_mds(code: Code) -> None:
    report = verify_mds(code)
    if not report.ok:
        raise NotMDS(f"singular block differences at pairs {report.failures[:5]}")


def c1_mds_conditions(code: Code) -> dict[str, bool]:
    """The three sufficient MDS conditions for c1, checked literally."""
    f, m, a, b = code.field, code.m, code.a, code.b
    q = f.order
    excluded = {f.w_pow(t) for t in itertools.chain(range(m), range(q - m, q - 1))}
    cond1 = a not in excluded and b not in excluded
    cond2 = all(a != f.mul(f.w_pow(t), b) for t in range(-m + 1, m))
    cond3 = all(
        f.sub(f.add(f.w_pow(2 * i), f.w_pow(2 * j)), f.mul(f.w_pow(i), f.w_pow(j))) != 0
        for i in range(m)
        for j in range(m)
    )
    return {"powers": cond1, "ratio": cond2, "cubic": cond3}


# -- encode / decode --------------------------------------------------------

def parity_residual(code: Code, cw: Codeword) -> tuple[int, ...]:
    """The length-4 vector H f; all zero iff ``cw`` is a codeword."""
    return mat_vec(code.parity_check(), cw.flat())


def is_codeword(code: Code, cw: Codeword) -> bool:
    return cw.n == code.n and not any(parity_residual(code, cw))


def encode_systematic(code: Code, data: Sequence[Sequence[int]]) -> Codeword:
    """Complete a 2 x k data array to a codeword (parity on nodes n-2, n-1)."""
    if len(data) != 2 or any(len(r) != code.k for r in data):
        raise DimensionMismatch(f"data must be a 2 x {code.k} array")
    for row in data:
        for v in row:
            if v not in code.field:
                raise ValueError(f"symbol {v} is not an element of {code.field.ident}")
    cols = [(data[0][j], data[1][j]) for j in range(code.k)]
    stacked = tuple(v for c in cols for v in c)
    p = mat_vec(code.parity_generator(), stacked)
    return Codeword(cols + [(p[0], p[1]), (p[2], p[3])])


def decode_erasures(code: Code, present: Mapping[int, Sequence[int]],
                    missing: Iterable[int] = ()) -> Codeword:
    """Rebuild the full codeword from the columns in ``present``.

    Nodes absent from ``present`` count as erased whether or not they are
    listed in ``missing``.  The result is parity-checked; a failure means
    the supplied symbols were not taken from one codeword.
    """
    for j in itertools.chain(present, missing):
        if not 0 <= j < code.n:
            raise IndexError(f"node {j} outside [0, {code.n})")
    lost = set(missing) | (set(range(code.n)) - set(present))
    if len(lost) > 2:
        raise TooManyErasures(f"{len(lost)} erasures, at most 2 are correctable")
    nodes, rec = code.recovery_matrix(tuple(lost))
    cols: list[tuple[int, int] | None] = [None] * code.n
    for j in nodes:
        col = present.get(j)
        if col is None or len(col) != 2:
            raise MissingSymbols(f"node {j} needs exactly two symbols")
        cols[j] = (int(col[0]), int(col[1]))
    if lost:
        stacked = tuple(v for j in nodes for v in cols[j])
        out = mat_vec(rec, stacked)
        for t, i in enumerate(sorted(lost)):
            cols[i] = (out[2 * t], out[2 * t + 1])
    cw = Codeword(cols)
    if not is_codeword(code, cw):
        raise InconsistentSymbols("parity check failed on the reconstructed word")
    return cw


def missing_pair_matrix(code: Code, i: int, j: int) -> Mat:
    """``[[I, I], [A_i, A_j]]``: nonsingular iff nodes i, j can both be erased."""
    return hstack(code.column_block(i), code.column_block(j))


def pair_decodable(code: Code, i: int, j: int) -> bool:
    try:
        mat_solve(missing_pair_matrix(code, i, j), identity(code.field, 4))
    except SingularMatrix:
        return False
    return True


def random_data(code: Code, rng) -> list[list[int]]:
    """A uniformly random 2 x k data array drawn from ``rng`` (random.Random)."""
    q = code.field.order
    return [[rng.randrange(q) for _ in range(code.k)] for _ in range(2)]


def describe(code: Code) -> str:
    """Multi-line human description of a code and its blocks."""
    lines = [f"family={code.family} field={code.field.ident} n={code.n} k={code.k}"]
    if code.family == C1:
        lines.append(f"m={code.m} a={code.a} b={code.b} w={code.field.w}")
    elif code.family == C2:
        lines.append(f"m={code.m} lambdas={list(code.lambdas)}")
    elif code.family == C2GEN:
        lines.append(f"partition={code.partition} lambdas={list(code.lambdas)}")
    for i, blk in enumerate(code.blocks):
        t = code.node_type(i)
        lines.append(f"  A_{i:<3d} type={t}  {[list(r) for r in blk.rows]}")
    return "\n".join(lines)


def mat_block_product(r: Mat, code: Code, j: int) -> Mat:
    """``r @ [I; A_j]``."""
    return mat_mul(r, code.column_block(j))

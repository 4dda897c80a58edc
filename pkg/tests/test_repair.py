import random
from fractions import Fraction

import numpy as np
import pytest

from drfcodes.codes import C1, build_c1, build_c2, build_c2_general, custom_code, encode_systematic, random_data
from drfcodes.errors import (
    BadHelperIndex,
    BadNodeIndex,
    MissingSymbols,
    UsefulDataRankDeficient,
)
from drfcodes.gf import binary_field, prime_field
from drfcodes.linalg import identity, mat, mat_rank
from drfcodes.repair import (
    ACCESS,
    BANDWIDTH,
    average_metrics,
    degraded_read,
    extract_stripes,
    helper_extract,
    make_plan,
    measure,
    normalize_strategy,
    repair_from_codeword,
    repair_matrix,
    repair_node,
    repair_stripes,
)
from drfcodes.stripes import encode_stripes


def test_c1_repair_matrices_gf4():
    f = binary_field(2)
    code = build_c1(1, f)
    a, b = code.a, code.b
    assert repair_matrix(code, 0) == mat(f, [[1, a, 0, 0], [0, 0, 1, 1]])
    assert repair_matrix(code, 1) == mat(f, [[a, 1, 0, 0], [0, 0, 1, b]])
    assert repair_matrix(code, 2) == mat(f, [[0, 1, 0, 0], [0, 0, 0, 1]])
    assert repair_matrix(code, 3, "access") == mat(f, [[1, 0, 0, 0], [0, 0, 1, 0]])


def test_c2_repair_matrices():
    f = binary_field(4)
    code = build_c2(2, f)
    assert repair_matrix(code, 3) == mat(f, [[1, 0, 0, 0], [0, 0, 1, 0]])
    assert repair_matrix(code, 4) == mat(f, [[0, 1, 0, 0], [0, 0, 0, 1]])
    assert repair_matrix(code, 5, "bw") == mat(f, [[1, 1, 0, 0], [0, 0, 1, 1]])
    assert repair_matrix(code, 5, ACCESS) == mat(f, [[1, 0, 0, 0], [0, 1, 1, 0]])


def test_strategy_names():
    assert normalize_strategy("bw") == BANDWIDTH
    with pytest.raises(ValueError):
        normalize_strategy("fast")
    with pytest.raises(BadNodeIndex):
        repair_matrix(build_c2(2, binary_field(4)), 6)


def test_c1_m1_per_node_costs_gf4():
    # every helper of a length-4 c1 code is rank 1: gamma_i = 3
    code = build_c1(1, binary_field(2))
    reps = [measure(make_plan(code, i)) for i in range(4)]
    assert [r.downloaded for r in reps] == [3, 3, 3, 3]
    assert sum(r.accessed for r in reps) == 4 * 4 * Fraction(13 * 4 - 16, 16 * 4 - 32)


def test_c2_helper_ranks_by_type():
    code = build_c2(3, binary_field(4))
    plan = make_plan(code, 0)
    ranks = {j: h.rank for j, h in plan.helpers.items()}
    # M_j = [e_1; first row of A_j]; only type-0 rows (lambda, -1) add rank
    assert all(ranks[j] == 2 for j in (3, 6))
    assert all(ranks[j] == 1 for j in (1, 2, 4, 5, 7, 8))
    assert measure(plan).downloaded == 2 * 2 + 6


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_c1_averages_match_closed_form(m):
    code = build_c1(m, binary_field(4 if m <= 5 else 6))
    n = code.n
    g, a = average_metrics(code)
    assert g == Fraction(5 * n - 8, 8 * n - 16)
    assert a == Fraction(13 * n - 16, 16 * n - 32)


@pytest.mark.parametrize("field", [binary_field(4), prime_field(17)], ids=lambda f: f.ident)
@pytest.mark.parametrize("m", [2, 3, 5])
def test_c2_averages_match_closed_form(field, m):
    code = build_c2(m, field)
    n = code.n
    assert average_metrics(code, BANDWIDTH) == (Fraction(2 * n - 3, 3 * n - 6), Fraction(7 * n - 9, 9 * n - 18))
    acc = Fraction(13 * n - 18, 18 * n - 36)
    assert average_metrics(code, ACCESS) == (acc, acc)


@pytest.mark.parametrize("part", [(3, 2, 1), (1, 4, 2), (2, 2, 3), (4, 1, 1)])
def test_c2_general_access_formula(part):
    l1, l2, l3 = part
    n = sum(part)
    code = build_c2_general(l1, l2, l3, prime_field(13))
    expected = Fraction(n * n - 2 * n + l1 ** 2 + l2 ** 2 + l3 ** 2 + l2 * l3, 2 * n * (n - 2))
    assert average_metrics(code, ACCESS)[1] == expected


def test_repair_roundtrip_every_node(code_case, rng):
    code, strategies = code_case
    cw = encode_systematic(code, random_data(code, rng))
    for s in strategies:
        for i in range(code.n):
            plan = make_plan(code, i, s)
            col, report = repair_from_codeword(plan, cw)
            assert col == cw[i]
            static = measure(plan)
            assert (report.downloaded, report.accessed) == (static.downloaded, static.accessed)
            assert report.per_helper == static.per_helper


def test_helper_payload_sizes(code_case, rng):
    code, strategies = code_case
    cw = encode_systematic(code, random_data(code, rng))
    for s in strategies:
        plan = make_plan(code, code.n - 1, s)
        for j, h in plan.helpers.items():
            t = helper_extract(plan, j, cw[j])
            assert len(t.symbols) == h.rank == mat_rank(h.product)
            assert len(t.accessed) == h.accessed
            assert 1 <= h.rank <= 2


def test_repair_errors():
    f = binary_field(4)
    code = build_c2(2, f)
    plan = make_plan(code, 0)
    cw = encode_systematic(code, random_data(code, random.Random(1)))
    with pytest.raises(BadHelperIndex):
        helper_extract(plan, 0, cw[0])
    payloads = {j: helper_extract(plan, j, cw[j]) for j in range(2, 6)}
    with pytest.raises(MissingSymbols):
        repair_node(code, plan, payloads)
    with pytest.raises(UsefulDataRankDeficient):
        make_plan(code, 0, matrix=mat(f, [[1, 0, 0, 0], [1, 0, 0, 0]]))


def test_custom_matrix_plan():
    # R = [I 0] gives the naive repair: every helper is rank 2
    f = binary_field(4)
    code = build_c2(2, f)
    r = mat(f, [[1, 0, 0, 0], [0, 1, 0, 0]])
    rep = measure(make_plan(code, 2, matrix=r))
    assert (rep.downloaded, rep.accessed) == (10, 10)
    assert rep.downloaded_normalized == Fraction(10, 8)


def test_custom_family_has_no_builtin_matrices():
    f = binary_field(2)
    code = custom_code(f, [identity(f, 2)] * 4)
    with pytest.raises(BadNodeIndex):
        repair_matrix(code, 0)


def test_degraded_read(code_case, rng):
    code, _ = code_case
    cw = encode_systematic(code, random_data(code, rng))
    for i in range(code.n):
        for r in (0, 1):
            syms = {j: cw[j][r] for j in range(code.n) if j != i}
            res = degraded_read(code, i, r, syms)
            assert res.value == cw[i][r]
            assert res.accessed == code.n - 1


def test_degraded_read_errors():
    code = build_c2(2, binary_field(4))
    with pytest.raises(MissingSymbols):
        degraded_read(code, 0, 0, {1: 0, 2: 0})
    with pytest.raises(BadNodeIndex):
        degraded_read(code, 9, 0, {})
    with pytest.raises(ValueError):
        degraded_read(code, 0, 2, {})


def test_bulk_repair_matches_scalar(code_case):
    code, strategies = code_case
    gen = np.random.default_rng(3)
    S = 17
    data = gen.integers(0, code.field.order, size=(code.k, 2, S))
    cw = encode_stripes(code, data)
    for s in strategies:
        for i in (0, code.n // 2, code.n - 1):
            plan = make_plan(code, i, s)
            payloads = {j: extract_stripes(plan, j, cw[j]) for j in plan.helpers}
            assert sum(p.shape[0] for p in payloads.values()) == measure(plan).downloaded
            assert np.array_equal(repair_stripes(plan, payloads), cw[i])


def test_c1_uses_one_strategy():
    code = build_c1(2, binary_field(4))
    assert code.family == C1
    assert average_metrics(code, BANDWIDTH) == average_metrics(code, ACCESS)

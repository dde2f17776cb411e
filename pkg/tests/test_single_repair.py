import random

import pytest

from rsrepair.errors import DomainError, IncompleteDownload, SchemeInapplicable
from rsrepair.rs_code import CodeParams, encode, encode_systematic, full_length_code
from rsrepair.single_repair import (answer_demand, build_single_plan, node_repair_trace,
                                    recover_single, repair_single)
from rsrepair.tower import make_tower

from conftest import XI, XI2, all_files, bits, toy_code


def test_example_plan_basis():
    plan = build_single_plan(toy_code(), 1)
    assert plan.basis == (XI, XI2)
    assert [c.u for c in plan.checks] == [XI, XI2]
    assert all(c.alpha == 1 and c.tau == 1 for c in plan.checks)
    assert plan.bandwidth == 3


def test_ineligible_code_rejected(gf16):
    with pytest.raises(SchemeInapplicable):
        build_single_plan(CodeParams(gf16, tuple(range(16)), 9), 0)
    build_single_plan(full_length_code(gf16, k=8), 0)


def test_node_repair_traces_example(gf4):
    for a1, a2, b1, b2 in all_files():
        a, b = bits(a1, a2), bits(b1, b2)
        cw = encode_systematic(toy_code(), [a, b])
        assert node_repair_trace(gf4, cw[0], 0, 1) == a2
        assert node_repair_trace(gf4, cw[3], XI2, 1) == a2 ^ b1 ^ b2
    assert node_repair_trace(gf4, 0, XI, 1) == 0
    with pytest.raises(DomainError):
        node_repair_trace(gf4, 1, 1, 1)


def test_example_recovery_all_files():
    code = toy_code()
    plan = build_single_plan(code, 1)
    for a1, a2, b1, b2 in all_files():
        cw = encode_systematic(code, [bits(a1, a2), bits(b1, b2)])
        traces = {i: answer_demand(code.tower, c, cw[i]) for i, c in plan.demands.items()}
        assert len(traces) == 3
        assert traces[0] == a2 and traces[3] == a2 ^ b1 ^ b2
        assert recover_single(plan, traces) == cw[1]


def test_zero_codeword():
    code = toy_code()
    plan = build_single_plan(code, 2)
    assert recover_single(plan, {0: 0, 1: 0, 3: 0}) == 0


def test_missing_trace():
    plan = build_single_plan(toy_code(), 0)
    with pytest.raises(IncompleteDownload):
        recover_single(plan, {1: 0, 2: 1})


def test_only_weights_depend_on_basis_index(gf16):
    code = full_length_code(gf16)
    plan = build_single_plan(code, 5)
    # one demand per helper, shared by all t repair equations
    assert sorted(plan.demands) == [i for i in range(16) if i != 5]
    assert len(plan.weights) == gf16.t
    assert all(set(w) == set(plan.demands) for w in plan.weights)


@pytest.mark.parametrize("pmt,pts,k", [
    ((2, 1, 4), tuple(range(16)), 8),
    ((2, 1, 4), (1, 2, 3, 5, 8, 9, 10, 12, 13, 15), 2),
    ((3, 1, 2), tuple(range(9)), 6),
    ((2, 2, 2), tuple(range(16)), 12),
    ((3, 1, 3), tuple(range(27)), 18),
])
def test_random_single_repairs(pmt, pts, k):
    T = make_tower(*pmt)
    code = CodeParams(T, pts, k)
    rng = random.Random(hash(pmt) & 0xffff)
    plans = [build_single_plan(code, i) for i in range(code.n)]
    for _ in range(300):
        cw = encode(code, [rng.randrange(T.q) for _ in range(k)])
        lost = rng.randrange(code.n)
        symbols = {i: y for i, y in enumerate(cw) if i != lost}
        assert repair_single(plans[lost], symbols) == cw[lost]
        assert plans[lost].bandwidth == code.n - 1

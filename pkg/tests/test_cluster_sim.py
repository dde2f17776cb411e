import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from rsrepair.cluster_sim import COLLAB, DOWNLOAD, Cluster
from rsrepair.errors import DomainError, SchemeInapplicable, UnsupportedFailures
from rsrepair.rs_code import full_length_code
from rsrepair.tower import make_tower

from conftest import bits, toy_code


def example_cluster():
    # file (a1, a2, b1, b2) = (1, 0, 0, 1)
    return Cluster.spawn(toy_code(), [bits(1, 0), bits(0, 1)])


def test_spawn_is_systematic():
    c = example_cluster()
    assert c.symbols[:2] == [bits(1, 0), bits(0, 1)]
    assert c.intact() and c.failed == []


def test_failure_limits():
    c = example_cluster()
    with pytest.raises(UnsupportedFailures):
        c.fail([1, 2, 3])
    c.fail([2])
    with pytest.raises(DomainError):
        c.fail([2])
    with pytest.raises(DomainError):
        c.fail([9])
    c.fail([3])
    with pytest.raises(UnsupportedFailures):
        c.fail([4])
    assert c.failed == [2, 3] and not c.intact()


def test_scheme_must_match_failure_count():
    c = example_cluster()
    c.fail([2])
    with pytest.raises(SchemeInapplicable):
        c.repair("depth1")
    with pytest.raises(ValueError):
        c.repair("magic")
    c.repair("gw")
    assert c.intact()


def test_failed_nodes_send_nothing_in_download_phase():
    for scheme in ("depth1", "depth2", "naive"):
        c = Cluster.spawn(full_length_code(make_tower(2, 1, 4)), list(range(8)))
        c.fail([4, 9])
        c.repair(scheme)
        payload = [r for r in c.log if r.phase == DOWNLOAD and r.kind != "demand"]
        assert payload and all(r.src not in (4, 9) for r in payload)


def test_depth_one_log_order():
    c = example_cluster()
    c.fail([2, 3])
    c.repair("depth1")
    collab = [i for i, r in enumerate(c.log) if r.phase == COLLAB]
    assert len(collab) == 2
    # both messages are on the wire before either RN recovers
    assert all(c.recovered_at[node] > max(collab) for node in (2, 3))
    assert {(c.log[i].src, c.log[i].dst) for i in collab} == {(2, 3), (3, 2)}
    # the download phase comes strictly first
    assert all(r.phase == DOWNLOAD for r in c.log[:min(collab)])


def test_depth_two_log_order():
    c = Cluster.spawn(full_length_code(make_tower(3, 1, 2)), [1, 2, 3, 4, 5, 6])
    c.fail([7, 2])
    c.repair("depth2")
    collab = [i for i, r in enumerate(c.log) if r.phase == COLLAB]
    first, second = collab
    assert (c.log[first].src, c.log[first].dst) == (7, 2)
    assert (c.log[second].src, c.log[second].dst) == (2, 7)
    assert first < c.recovered_at[2] <= second < c.recovered_at[7]
    assert c.intact()


@pytest.mark.parametrize("scheme,erase", [("gw", [3]), ("depth1", [1, 4]), ("depth2", [2, 3]), ("naive", [1, 4])])
def test_log_sizes_sum_to_report(scheme, erase):
    c = example_cluster()
    c.fail(erase)
    rep = c.repair(scheme)
    assert rep.scheme_bandwidth == sum(r.size for r in c.log)
    for node, total in zip(rep.erased, rep.total):
        assert total == sum(r.size for r in c.log if r.dst == node)
    assert rep.passed and c.intact()


def test_naive_vs_trace_bandwidth():
    c = example_cluster()
    c.fail([2, 3])
    naive = c.repair("naive")
    assert naive.scheme_bandwidth == 6 and naive.naive_baseline == 6
    T = make_tower(2, 1, 4)
    c = Cluster.spawn(full_length_code(T), list(range(8)))
    c.fail([5, 6])
    assert c.repair("naive").scheme_bandwidth == 36
    c.fail([5, 6])
    rep = c.repair("depth1")
    assert rep.scheme_bandwidth == 30 and rep.naive_baseline == 36


def test_export_log_is_json_lines():
    c = example_cluster()
    c.fail([2])
    c.repair("gw")
    lines = c.export_log().splitlines()
    assert len(lines) == 6
    first = json.loads(lines[0])
    assert set(first) == {"from", "to", "kind", "size", "phase"}
    assert first["kind"] == "demand" and first["size"] == 0


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(2, 1, 2), (2, 1, 4), (3, 1, 2), (2, 2, 2)]),
       st.sampled_from(["naive", "gw", "depth1", "depth2"]), st.randoms(use_true_random=False))
def test_repair_restores_cluster(pmt, scheme, rng):
    T = make_tower(*pmt)
    code = full_length_code(T)
    if scheme == "depth1" and T.t % T.p:
        return
    c = Cluster.spawn(code, [rng.randrange(T.q) for _ in range(code.k)])
    count = 1 if scheme == "gw" else 2
    c.fail(rng.sample(range(1, code.n + 1), count))
    rep = c.repair(scheme)
    assert rep.passed and c.intact()
    if scheme != "naive":
        assert all(x == code.n - 1 for x in rep.total)

from fractions import Fraction

import pytest

import setpack


def test_fano_golden_values():
    fano = setpack.projective_plane(2)
    assert (fano.universe_size, len(fano), fano.k) == (7, 7, 3)
    assert len(setpack.max_packing(fano)) == 1
    assert setpack.lp_value(fano) == Fraction(7, 3)
    assert setpack.lp_value(fano, "intersecting") == 1
    gap = setpack.integrality_gap(fano)
    assert gap == {"lp_value": Fraction(7, 3), "ilp_value": 1, "gap": Fraction(7, 3)}


def test_local_search_and_bound():
    inst = setpack.random_instance(12, 14, 3, seed=5)
    result = setpack.local_search(inst, 2)
    assert setpack.is_packing(inst, result["members"])
    assert setpack.find_improving_set(inst, result["members"], 2) is None
    best = len(setpack.max_packing(inst))
    assert Fraction(best, len(result["members"])) <= setpack.hs_bound(3, 2) == 2
    assert setpack.hs_bound(3, 3) == Fraction(9, 5)
    log = setpack.log_local_search(inst, Fraction(1, 2))
    assert setpack.is_packing(inst, log["members"])


def claw_example_graph():
    # s3 = 0, s1 = 1, s2 = 2, s4 = 3, s5 = 4, t1 = 5, t2 = 6
    edges = [(5, 1), (5, 2), (5, 0), (6, 0), (6, 3), (6, 4)]
    return setpack.ConflictGraph.from_edges(7, edges, [10] * 5 + [18] * 2)


def test_weighted_example():
    g = claw_example_graph()
    a = [0, 1, 2, 3, 4]
    assert setpack.charge(g, a, 5, 0) == 3
    assert setpack.find_nice_claw(g, a) == (0, [5, 6])
    assert setpack.wishful_thinking(g, 4)["members"] == [5, 6]
    assert setpack.max_independent_set(g) == a
    assert setpack.power_local_search(g, 2, 2, initial=a)["members"] == [5, 6]
    assert setpack.power_local_search(g, 1, 2, initial=a)["members"] == a
    assert setpack.square_imp(g, 2, initial=a)["members"] == [5, 6]
    assert setpack.greedy_weighted(g) == [5, 6]


def test_round_trip_and_errors():
    inst = setpack.random_instance(9, 5, 3, seed=7, weights=(Fraction(1), Fraction(10)))
    assert setpack.parse_instance(setpack.serialize_instance(inst)) == inst
    assert all(isinstance(w, Fraction) for w in inst.weights)
    with pytest.raises(setpack.InputError):
        setpack.projective_plane(6)
    with pytest.raises(ValueError):
        setpack.Instance(3, 2, [[0, 3]])
    with pytest.raises(setpack.CapExceeded):
        setpack.max_packing(setpack.random_instance(60, 45, 3, seed=1))


def test_dense_subgraph_and_sdp():
    x = setpack.find_dense_subgraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] * 2, 1)
    assert len(x) >= 2
    sdp = setpack.export_theta_sdp(setpack.projective_plane(2))
    body = [line for line in sdp.splitlines() if not line.startswith("*")]
    assert body[0] == "22"

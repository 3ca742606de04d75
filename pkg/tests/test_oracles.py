from itertools import product

import pytest

from kanon.oracles import (
    FALSE_PARTITIONED,
    INVALID,
    TRUE_PARTITIONED,
    assignment_from_partition,
    classify_gadget_partition,
    edge_partition_search,
    enumerate_1in3_sat,
    iter_edge_partitions,
    max_3dm_bruteforce,
    verify_edge_partition,
)
from kanon.reductions import CnfFormula, Graph, ThreeDMInstance, formula_to_graph

EX1 = CnfFormula(3, [(-1, 2, 3), (1, -2, 3)])
EX2 = CnfFormula(3, [(1, 2, 3), (-1, -2, -3)])
K3 = Graph(3, ((0, 1), (1, 2), (0, 2)))
CLAW = Graph(4, ((0, 1), (0, 2), (0, 3)))


def test_1in3_examples():
    assert len(enumerate_1in3_sat(CnfFormula(3, [(1, 2, 3)]))) == 3
    assert enumerate_1in3_sat(EX1) == [(False, False, False), (True, True, False)]
    assert enumerate_1in3_sat(EX2) == []


def test_1in3_against_direct_count():
    phi = CnfFormula(4, [(1, -2, 3), (2, 4, -1), (-3, -4, 2)])
    expected = [bits for bits in product((False, True), repeat=4)
                if all(sum(bits[abs(l) - 1] == (l > 0) for l in c) == 1 for c in phi.clauses)]
    assert enumerate_1in3_sat(phi) == expected


def test_max_3dm():
    empty = ThreeDMInstance(["w"], ["x"], ["y"], [])
    assert max_3dm_bruteforce(empty) == ()
    two = ThreeDMInstance(["w1", "w2"], ["x1", "x2"], ["y1", "y2"],
                          [("w1", "x1", "y1"), ("w2", "x2", "y2")])
    assert len(max_3dm_bruteforce(two)) == 2
    clash = ThreeDMInstance(["w1"], ["x1", "x2"], ["y1", "y2"],
                            [("w1", "x1", "y1"), ("w1", "x2", "y2")])
    assert len(max_3dm_bruteforce(clash)) == 1


def test_small_partitions():
    assert edge_partition_search(CLAW) == [((0, 1), (0, 2), (0, 3))]
    assert edge_partition_search(K3) is None
    assert edge_partition_search(K3, allow_triangles=True) == [((0, 1), (1, 2), (0, 2))]
    assert edge_partition_search(Graph(4, ((0, 1), (1, 2)))) is None


def test_verify_edge_partition():
    path = Graph(4, ((0, 1), (1, 2), (2, 3)))
    assert not verify_edge_partition(path, [((0, 1), (1, 2), (2, 3))])
    assert not verify_edge_partition(CLAW, [])
    assert verify_edge_partition(CLAW, [((0, 1), (0, 2), (0, 3))])
    assert not verify_edge_partition(K3, [((0, 1), (0, 2), (1, 2))], allow_triangles=False)


def test_examples_end_to_end():
    g1, reg1 = formula_to_graph(EX1)
    parts = list(iter_edge_partitions(g1))
    assert len(parts) == 2
    assert all(verify_edge_partition(g1, p, allow_triangles=False) for p in parts)
    assert sorted(assignment_from_partition(reg1, p, 3) for p in parts) == enumerate_1in3_sat(EX1)
    for p in parts:
        a = assignment_from_partition(reg1, p, 3)
        for x in (1, 2, 3):
            want = TRUE_PARTITIONED if a[x - 1] else FALSE_PARTITIONED
            assert classify_gadget_partition(reg1, p, x) == want
    g2, _ = formula_to_graph(EX2)
    assert edge_partition_search(g2) is None


def test_mixed_partition_is_invalid():
    g, reg = formula_to_graph(EX1)
    parts = list(iter_edge_partitions(g))
    true_part = next(p for p in parts if assignment_from_partition(reg, p, 3)[0])
    false_part = next(p for p in parts if not assignment_from_partition(reg, p, 3)[0])
    top = {tuple(sorted(e)) for e in reg.variables[1].top_shared}
    # take the top edges' blocks from one partition and everything else from the other
    mixed = [b for b in true_part if any(tuple(sorted(e)) in top for e in b)][:1]
    used = {tuple(sorted(e)) for b in mixed for e in b}
    mixed += [b for b in false_part if not used & {tuple(sorted(e)) for e in b}]
    assert classify_gadget_partition(reg, mixed, 1) == INVALID
    with pytest.raises(KeyError):
        classify_gadget_partition(reg, parts[0], 9)


def test_search_finds_every_partition_of_a_double_claw():
    # two claws sharing a center: K_{1,6} splits into C(6,3)/2 = 10 pairs of stars
    g = Graph(7, tuple((0, i) for i in range(1, 7)))
    assert len(list(iter_edge_partitions(g))) == 10

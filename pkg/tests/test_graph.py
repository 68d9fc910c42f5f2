from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colref.engine import is_stable
from colref.errors import ContractViolation
from colref.graph import (
    Colouring,
    Digraph,
    EdgeColouredDigraph,
    Partition,
    TransitionSystem,
    UndirectedGraph,
    colouring_of,
    double,
    partition_of,
    refines,
)
from colref.random_instances import random_digraph, random_undirected


def test_digraph_degrees_sum_to_m():
    g = Digraph(4, ((0, 1), (1, 2), (2, 0), (0, 3)))
    assert sum(g.out_degree(v) for v in range(4)) == g.m == 4
    assert sum(g.in_degree(v) for v in range(4)) == 4
    assert g.out_adj[0] == (1, 3)
    assert g.in_adj[0] == (2,)


def test_simple_digraph_rejects_duplicates_and_loops():
    with pytest.raises(ContractViolation):
        Digraph(2, ((0, 1), (0, 1)))
    with pytest.raises(ContractViolation):
        Digraph(2, ((0, 0),))
    with pytest.raises(ContractViolation):
        Digraph(2, ((0, 2),))


def test_multi_digraph_keeps_multiplicity():
    g = Digraph(2, ((0, 1), (0, 1), (1, 1)), multi=True)
    assert g.out_degree(0) == 2
    assert g.in_degree(1) == 3


def test_undirected_rejects_loops_and_duplicates():
    with pytest.raises(ContractViolation):
        UndirectedGraph(2, ((0, 0),))
    with pytest.raises(ContractViolation):
        UndirectedGraph(2, ((0, 1), (1, 0)))


def test_edge_colours_are_densified():
    g = EdgeColouredDigraph(2, ((0, 1, 5), (1, 0, 9), (1, 1, 5)))
    assert g.p == 2
    assert [j for _, _, j in g.edges] == [1, 2, 1]


def test_transition_system_labels_dense():
    ts = TransitionSystem(Digraph(3, (), multi=True), (4, 9, 4))
    assert ts.labels == (1, 2, 1)


def test_double_path():
    g = double(UndirectedGraph(3, ((0, 1), (1, 2))))
    assert set(g.edges) == {(0, 1), (1, 0), (1, 2), (2, 1)}


def test_double_edgeless_and_triangle():
    assert double(UndirectedGraph(4, ())).m == 0
    assert double(UndirectedGraph(3, ((0, 1), (1, 2), (0, 2)))).m == 6


def test_colouring_partition_round_trip():
    c = Colouring([1, 2, 1])
    assert partition_of(c).cells == ((0, 2), (1,))
    assert colouring_of(partition_of(c)) == c
    assert partition_of(Colouring.discrete(3)).order == 3
    assert partition_of(Colouring.unit(5)).cells == ((0, 1, 2, 3, 4),)


def test_colouring_of_numbers_by_smallest_vertex():
    assert colouring_of(Partition([[2, 0], [1]])).colours == (1, 2, 1)
    assert colouring_of(Partition([[1], [0, 2]])).colours == (1, 2, 1)


def test_colouring_surjectivity():
    assert Colouring([1, 3]).is_surjective is False
    assert Colouring([2, 1, 2]).is_surjective
    with pytest.raises(ContractViolation):
        Colouring([0, 1])


def test_refines_examples():
    unit, disc = Partition.unit(range(3)), Partition.discrete(range(3))
    assert refines(disc, unit)
    assert not refines(unit, disc)
    p, q = Partition([[0, 1], [2]]), Partition([[0, 2], [1]])
    assert not refines(p, q) and not refines(q, p)
    assert refines(p, p)
    with pytest.raises(ContractViolation):
        refines(Partition([[0]]), Partition([[1]]))


def test_partition_rejects_overlap():
    with pytest.raises(ContractViolation):
        Partition([[0, 1], [1]])


def test_partition_helpers():
    p = Partition([[0, 1], [2, 3], [4]])
    assert p.is_closed({0, 1, 4})
    assert not p.is_closed({0})
    assert p.restrict({1, 2, 3}) == Partition([[1], [2, 3]])
    assert p.with_rest(range(7)).cells[-1] == (5, 6)
    assert p.meet(Partition([[0, 2], [1, 3, 4]])) == Partition([[0], [1], [2], [3], [4]])


partitions_of_6 = st.lists(st.integers(0, 3), min_size=6, max_size=6).map(Partition.from_labels)


@given(partitions_of_6, partitions_of_6, partitions_of_6)
def test_refines_is_a_partial_order(a, b, c):
    assert refines(a, a)
    if refines(a, b) and refines(b, a):
        assert a == b
    if refines(a, b) and refines(b, c):
        assert refines(a, c)


@given(partitions_of_6, partitions_of_6)
def test_meet_refines_both(a, b):
    m = a.meet(b)
    assert refines(m, a) and refines(m, b)


def test_refines_on_chains():
    rng = random.Random(11)
    for _ in range(50):
        labels = [rng.randrange(3) for _ in range(8)]
        coarse = Partition.from_labels(labels)
        finer = Partition.from_labels([(x, rng.randrange(2)) for x in labels])
        finest = Partition.from_labels([(x, rng.randrange(2)) for x in finer.cell_of.items()])
        assert refines(finer, coarse) and refines(finest, finer) and refines(finest, coarse)


def _undirected_stable(g: UndirectedGraph, p: Partition) -> bool:
    for cell in p.cells:
        sigs = {tuple(sorted(p.cell_of[w] for w in g.adj[v])) for v in cell}
        if len(sigs) > 1:
            return False
    return True


def set_partitions(n: int):
    if n == 0:
        yield []
        return
    for rest in set_partitions(n - 1):
        for i in range(len(rest)):
            yield rest[:i] + [rest[i] + [n - 1]] + rest[i + 1 :]
        yield rest + [[n - 1]]


def test_double_preserves_stability_exhaustively():
    rng = random.Random(5)
    for _ in range(12):
        n = rng.randint(1, 6)
        g = random_undirected(rng, n, 0.4)
        gd = double(g)
        for cells in set_partitions(n):
            p = Partition(cells)
            assert is_stable(gd, p) == _undirected_stable(g, p)


@settings(max_examples=50)
@given(st.integers(1, 12), st.floats(0, 1), st.integers(0, 10**6))
def test_relabel_preserves_degrees(n, p, seed):
    rng = random.Random(seed)
    g = random_digraph(rng, n, p)
    perm = list(range(n))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert all(g.out_degree(v) == h.out_degree(perm[v]) for v in range(n))

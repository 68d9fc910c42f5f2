from __future__ import annotations

import random

from colref.engine import refine
from colref.graph import Colouring, Digraph, EdgeColouredDigraph, Partition, UndirectedGraph, partition_of
from colref.oracle import naive_bistable, naive_coarsest_stable, naive_edge_colour_stable, naive_undirected_stable
from colref.random_instances import (
    random_colouring,
    random_digraph,
    random_ec_digraph,
    random_permutation,
    random_undirected,
)
from colref.reductions import (
    reduce_bistable,
    reduce_edge_coloured,
    refine_bistable,
    refine_edge_coloured,
    refine_undirected,
)


def test_undirected_examples():
    path = UndirectedGraph(3, ((0, 1), (1, 2)))
    assert partition_of(refine_undirected(path)) == Partition([[0, 2], [1]])
    petersen_outer = [(i, (i + 1) % 5) for i in range(5)]
    petersen = petersen_outer + [(i, i + 5) for i in range(5)] + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    assert refine_undirected(UndirectedGraph(10, tuple(petersen))).k == 1
    star = UndirectedGraph(4, ((0, 1), (0, 2), (0, 3)))
    assert partition_of(refine_undirected(star)) == Partition([[0], [1, 2, 3]])


def test_subdivision_shape():
    h, alpha, lift = reduce_edge_coloured(EdgeColouredDigraph(2, ((0, 1, 1),)))
    assert h.n == 3 and set(h.edges) == {(0, 2), (2, 1)}
    assert alpha.colours == (1, 1, 2)
    assert lift == [0, 1]
    h, alpha, _ = reduce_edge_coloured(EdgeColouredDigraph(3, ()))
    assert h.m == 0 and alpha.colours == (1, 1, 1)


def test_edge_colour_examples():
    g = EdgeColouredDigraph(3, ((0, 1, 1), (0, 2, 2)))
    assert partition_of(refine_edge_coloured(g)) == Partition([[0], [1, 2]])
    # two 2-cycles; the second is the first with its vertices swapped
    g = EdgeColouredDigraph(4, ((0, 1, 1), (1, 0, 2), (2, 3, 2), (3, 2, 1)))
    p = partition_of(refine_edge_coloured(g))
    assert p.cell_of[0] == p.cell_of[3] and p.cell_of[1] == p.cell_of[2]
    assert p.cell_of[0] != p.cell_of[1]


def test_edge_colours_block_matching():
    # 0->1 in colour 1 versus 2->3 in colour 2
    g = EdgeColouredDigraph(4, ((0, 1, 1), (2, 3, 2)))
    p = partition_of(refine_edge_coloured(g))
    assert p.cell_of[0] != p.cell_of[2]
    assert p.cell_of[1] == p.cell_of[3]


def test_single_colour_matches_plain_refine():
    rng = random.Random(6)
    for _ in range(50):
        n = rng.randint(1, 12)
        d = random_digraph(rng, n, 0.3)
        ec = EdgeColouredDigraph(n, tuple((u, v, 1) for u, v in d.edges))
        assert partition_of(refine_edge_coloured(ec)) == partition_of(refine(d, Colouring.unit(n))[0])


def test_bistable_reduction_shape():
    assert reduce_bistable(Digraph(2, ((0, 1),))).edges == ((0, 1, 1), (1, 0, 2))
    two_cycle = reduce_bistable(Digraph(2, ((0, 1), (1, 0))))
    assert sorted(two_cycle.edges) == sorted([(0, 1, 1), (1, 0, 2), (1, 0, 1), (0, 1, 2)])
    assert reduce_bistable(Digraph(3, ())).m == 0


def test_bistable_examples():
    assert refine_bistable(Digraph(3, ((0, 1), (1, 2)))).k == 3
    assert refine_bistable(Digraph(3, ((0, 1), (1, 2), (2, 0)))).k == 1
    star = Digraph(4, ((0, 1), (0, 2), (0, 3)))
    assert partition_of(refine_bistable(star)) == Partition([[0], [1, 2, 3]])


def test_reductions_match_oracles():
    rng = random.Random(10)
    for _ in range(80):
        n = rng.randint(1, 20)
        ell = rng.randint(1, 3)
        alpha = random_colouring(rng, n, ell)
        p0 = partition_of(alpha)
        u = random_undirected(rng, n, 0.2)
        assert partition_of(refine_undirected(u, alpha)) == naive_undirected_stable(u, p0)
        ec = random_ec_digraph(rng, n, 0.15, rng.randint(1, 3))
        assert partition_of(refine_edge_coloured(ec, alpha)) == naive_edge_colour_stable(ec, p0)
        assert reduce_edge_coloured(ec, alpha)[0].m == 2 * ec.m
        d = random_digraph(rng, n, 0.15)
        assert partition_of(refine_bistable(d, alpha)) == naive_bistable(d, p0)
        assert reduce_bistable(d).m == 2 * d.m


def test_reductions_are_canonical():
    rng = random.Random(12)
    for _ in range(60):
        n = rng.randint(1, 15)
        perm = random_permutation(rng, n)
        alpha = random_colouring(rng, n, 2)
        ec = random_ec_digraph(rng, n, 0.2, 2)
        moved = EdgeColouredDigraph(n, tuple((perm[u], perm[v], j) for u, v, j in ec.edges))
        a, b = refine_edge_coloured(ec, alpha), refine_edge_coloured(moved, alpha.relabel(perm))
        assert all(b[perm[v]] == a[v] for v in range(n))
        d = random_digraph(rng, n, 0.2)
        a, b = refine_bistable(d, alpha), refine_bistable(d.relabel(perm), alpha.relabel(perm))
        assert all(b[perm[v]] == a[v] for v in range(n))

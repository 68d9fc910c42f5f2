"""Slow reference implementations used as ground truth in tests.

Each coarsest-partition oracle repeats one global round of splitting by
neighbour-count signatures until the number of cells stops growing.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Hashable, Iterable, Sequence

from colref.errors import ContractViolation
from colref.graph import Digraph, EdgeColouredDigraph, Partition, UndirectedGraph

Signature = Callable[[int, Partition], Hashable]


def _check_ground(n: int, p: Partition) -> None:
    if p.ground != frozenset(range(n)):
        raise ContractViolation("partition is not over the graph's vertex set")


def _count_signature(nbrs: Sequence[int], p: Partition) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(Counter(p.cell_of[w] for w in nbrs).items()))


def fixpoint(vertices: Iterable[int], p0: Partition, signature: Signature) -> Partition:
    """Refine ``p0`` by ``signature`` until a round creates no new cell."""
    vertices = list(vertices)
    p = p0
    while True:
        q = Partition.from_labels({v: (p.cell_of[v], signature(v, p)) for v in vertices})
        if q.order == p.order:
            return p
        p = q


def naive_coarsest_stable(g: Digraph, p0: Partition) -> Partition:
    _check_ground(g.n, p0)
    return fixpoint(range(g.n), p0, lambda v, p: _count_signature(g.out_adj[v], p))


def naive_undirected_stable(g: UndirectedGraph, p0: Partition) -> Partition:
    _check_ground(g.n, p0)
    return fixpoint(range(g.n), p0, lambda v, p: _count_signature(g.adj[v], p))


def naive_edge_colour_stable(g: EdgeColouredDigraph, p0: Partition) -> Partition:
    _check_ground(g.n, p0)
    out: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for u, v, j in g.edges:
        out[u].append((v, j))

    def signature(v: int, p: Partition):
        return tuple(sorted(Counter((p.cell_of[w], j) for w, j in out[v]).items()))

    return fixpoint(range(g.n), p0, signature)


def naive_bistable(g: Digraph, p0: Partition) -> Partition:
    _check_ground(g.n, p0)
    return fixpoint(
        range(g.n),
        p0,
        lambda v, p: (_count_signature(g.out_adj[v], p), _count_signature(g.in_adj[v], p)),
    )


def neighbours(g: Digraph | UndirectedGraph) -> tuple[tuple[int, ...], ...]:
    return g.adj if isinstance(g, UndirectedGraph) else g.out_adj


def apply_refining_op(
    g: Digraph | UndirectedGraph, p: Partition, R: Iterable[int], S: Iterable[int]
) -> Partition:
    """Split the cells inside ``S`` by neighbour counts into each cell of ``R``."""
    R, S = set(R), set(S)
    if not p.is_closed(R):
        raise ContractViolation("R is not a union of cells")
    if not p.is_closed(S):
        raise ContractViolation("S is not a union of cells")
    nbrs = neighbours(g)
    labels = {}
    for v, i in p.cell_of.items():
        if v in S:
            labels[v] = (i, _count_signature([w for w in nbrs[v] if w in R], p))
        else:
            labels[v] = (i, ())
    return Partition.from_labels(labels)

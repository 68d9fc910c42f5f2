"""The adversarial graphs ``G_k`` and their oriented versions ``S_k``.

Vertex groups (``i`` ranges over ``0..2^k-1``, ``j`` over ``1..k``):

* ``X``: ``x_i``
* ``XX``: ``x_i^j``, adjacent to ``x_i`` and to every ``y_i^j'``
* ``YY``: ``y_i^j``, adjacent to ``y_i``
* ``Y``: ``y_i``
* one AND gadget of each level ``1..k-1`` and a three-vertex start gadget.

Binary block ``q`` of level ``l`` is the index interval
``[q 2^(k-l), (q+1) 2^(k-l))``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from colref.errors import ContractViolation
from colref.graph import Digraph, TransitionSystem, UndirectedGraph, double
from colref.lowerbound.gadgets import GadgetPorts, GraphBuilder, add_and_gadget


def block(k: int, level: int, q: int) -> range:
    width = 1 << (k - level)
    return range(q * width, (q + 1) * width)


@dataclass(frozen=True)
class LowerBoundInstance:
    k: int
    graph: UndirectedGraph
    roles: tuple[tuple, ...]
    X: tuple[int, ...]
    XX: tuple[tuple[int, ...], ...]
    YY: tuple[tuple[int, ...], ...]
    Y: tuple[int, ...]
    gadgets: dict[int, GadgetPorts]
    start: tuple[int, int, int]

    @property
    def n(self) -> int:
        return self.graph.n

    def calX(self, level: int, q: int) -> frozenset[int]:
        """Binary block of the ``x_i^j`` vertices."""
        return frozenset(v for i in block(self.k, level, q) for v in self.XX[i])

    def calY(self, level: int, q: int) -> frozenset[int]:
        return frozenset(v for i in block(self.k, level, q) for v in self.YY[i])

    def Xblock(self, level: int, q: int) -> frozenset[int]:
        return frozenset(self.X[i] for i in block(self.k, level, q))

    @cached_property
    def calX_all(self) -> frozenset[int]:
        return frozenset(v for row in self.XX for v in row)

    @cached_property
    def calY_all(self) -> frozenset[int]:
        return frozenset(v for row in self.YY for v in row)

    @cached_property
    def xy_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(
            (u, v)
            for u, v in self.graph.edges
            if (u in self.calX_all and v in self.calY_all) or (u in self.calY_all and v in self.calX_all)
        )

    @cached_property
    def g_prime(self) -> UndirectedGraph:
        """``G_k`` without the edges between the two middle layers."""
        return self.graph.without_edges(self.xy_edges)

    @cached_property
    def doubled(self) -> Digraph:
        return double(self.graph)

    @cached_property
    def doubled_prime(self) -> Digraph:
        return double(self.g_prime)

    def component_counts(self) -> dict[str, int]:
        X, XX, YY, Y = set(self.X), self.calX_all, self.calY_all, set(self.Y)
        counts = {"X-XX": 0, "XX-YY": 0, "YY-Y": 0}
        for u, v in self.graph.edges:
            pair = {u, v}
            if pair & X and pair & XX:
                counts["X-XX"] += 1
            elif pair <= XX | YY and pair & XX and pair & YY:
                counts["XX-YY"] += 1
            elif pair & YY and pair & Y:
                counts["YY-Y"] += 1
        counts.update(X=len(X), XX=len(XX), YY=len(YY), Y=len(Y), gadgets=len(self.gadgets))
        return counts


def _build(k: int) -> LowerBoundInstance:
    if k < 2:
        raise ContractViolation(f"k must be at least 2, got {k}")
    size = 1 << k
    b = GraphBuilder()
    X = tuple(b.vertex(("X", i)) for i in range(size))
    XX = tuple(tuple(b.vertex(("XX", i, j)) for j in range(1, k + 1)) for i in range(size))
    YY = tuple(tuple(b.vertex(("YY", i, j)) for j in range(1, k + 1)) for i in range(size))
    Y = tuple(b.vertex(("Y", i)) for i in range(size))
    for i in range(size):
        for v in XX[i]:
            b.edge(v, X[i])
    for i in range(size):
        for u in YY[i]:
            for v in XX[i]:
                b.edge(u, v)
    for i in range(size):
        for v in YY[i]:
            b.edge(Y[i], v)

    gadgets = {}
    for level in range(1, k):
        ports = add_and_gadget(b, level, lambda name, level=level: ("AND", level, name))
        gadgets[level] = ports
        for side in (0, 1):
            a = ports.out_terminals[side]
            for q in range(1 << level):
                for i in block(k, level + 1, 2 * q + side):
                    b.edge(X[i], a)
        for idx, term in enumerate(ports.in_terminals):
            for i in block(k, level, idx):
                b.edge(term, Y[i])

    v0, v1, v2 = (b.vertex(("start", t)) for t in range(3))
    for i in block(k, 1, 0):
        b.edge(X[i], v0)
    for i in block(k, 1, 1):
        b.edge(X[i], v1)
    b.edge(v1, v2)

    return LowerBoundInstance(
        k, UndirectedGraph(b.n, tuple(b.edges)), tuple(b.roles), X, XX, YY, Y, gadgets, (v0, v1, v2)
    )


def gen_gk(k: int) -> LowerBoundInstance:
    return _build(k)


def gen_sk(k: int) -> TransitionSystem:
    """Oriented ``G_k`` with constant labels.

    Orientation: ``x_i^j -> x_i``, ``y_i -> y_i^j``, ``y_i^j -> x_i^j'``,
    ``X ->`` gadget out-terminals and start vertices, gadget edges from
    out-terminals towards in-terminals, in-terminals ``-> Y``, ``v1 -> v2``.
    """
    inst = _build(k)
    return TransitionSystem(Digraph(inst.n, inst.graph.edges), (1,) * inst.n)

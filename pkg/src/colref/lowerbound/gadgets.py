"""AND gadgets and binary-block partitions of their in-terminals."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from colref.errors import ContractViolation
from colref.graph import UndirectedGraph


@dataclass
class GraphBuilder:
    """Accumulates vertices with role tags and edges in a fixed orientation.

    Edges are stored in the direction used by the oriented (transition
    system) version of the graphs built here; the undirected graphs simply
    forget that direction.
    """

    roles: list[tuple] = field(default_factory=list)
    edges: list[tuple[int, int]] = field(default_factory=list)

    def vertex(self, role: tuple) -> int:
        self.roles.append(role)
        return len(self.roles) - 1

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    @property
    def n(self) -> int:
        return len(self.roles)


@dataclass(frozen=True)
class GadgetPorts:
    level: int
    out_terminals: tuple[int, int]
    in_terminals: tuple[int, ...]
    vertices: tuple[int, ...]
    middle: tuple[int, ...] = ()


def add_and_gadget(b: GraphBuilder, level: int, tag: Callable[[str], tuple]) -> GadgetPorts:
    """Append an AND gadget of the given level to ``b``.

    Edges are oriented from the out-terminals towards the in-terminals.
    ``tag(name)`` produces the role of each new vertex.
    """
    if level < 1:
        raise ContractViolation(f"gadget level must be at least 1, got {level}")
    start = b.n
    if level == 1:
        a0, a1 = b.vertex(tag("a0")), b.vertex(tag("a1"))
        b0, b1 = b.vertex(tag("b0")), b.vertex(tag("b1"))
        b.edge(a0, b0)
        b.edge(a1, b1)
        return GadgetPorts(1, (a0, a1), (b0, b1), tuple(range(start, b.n)))
    if level == 2:
        a = [b.vertex(tag(f"a{i}")) for i in range(2)]
        ins = [b.vertex(tag(f"b{i}")) for i in range(4)]
        c = [b.vertex(tag(f"c{i}")) for i in range(4)]
        for ai, ci in ((0, 0), (0, 1), (1, 2), (1, 3)):
            b.edge(a[ai], c[ci])
        for ci, bi in ((0, 0), (2, 0), (1, 1), (3, 1), (1, 2), (2, 2), (0, 3), (3, 3)):
            b.edge(c[ci], ins[bi])
        return GadgetPorts(2, (a[0], a[1]), tuple(ins), tuple(range(start, b.n)), tuple(c))
    top = add_and_gadget(b, 2, lambda name: tag("top." + name))
    left = add_and_gadget(b, level - 1, lambda name: tag("L." + name))
    right = add_and_gadget(b, level - 1, lambda name: tag("R." + name))
    t = top.in_terminals
    b.edge(t[0], left.out_terminals[0])
    b.edge(t[1], left.out_terminals[1])
    b.edge(t[2], right.out_terminals[0])
    b.edge(t[3], right.out_terminals[1])
    return GadgetPorts(
        level,
        top.out_terminals,
        left.in_terminals + right.in_terminals,
        tuple(range(start, b.n)),
        top.middle,
    )


@dataclass(frozen=True)
class Gadget:
    graph: UndirectedGraph
    out_terminals: tuple[int, int]
    in_terminals: tuple[int, ...]
    level: int
    names: tuple[str, ...]
    middle: tuple[int, ...] = ()


def gen_and_gadget(level: int) -> Gadget:
    """Stand-alone AND gadget with out-terminals first in the vertex order."""
    b = GraphBuilder()
    ports = add_and_gadget(b, level, lambda name: (name,))
    return Gadget(
        UndirectedGraph(b.n, tuple(b.edges)),
        ports.out_terminals,
        ports.in_terminals,
        level,
        tuple(r[0] for r in b.roles),
        ports.middle,
    )


def binary_block_partitions(size: int) -> list[tuple[tuple[int, ...], ...]]:
    """All partitions of ``0..size-1`` (size a power of two) into binary blocks."""
    if size < 1 or size & (size - 1):
        raise ContractViolation("size must be a power of two")

    def rec(lo: int, hi: int) -> list[tuple[tuple[int, ...], ...]]:
        whole = (tuple(range(lo, hi)),)
        if hi - lo == 1:
            return [whole]
        mid = (lo + hi) // 2
        return [whole] + [x + y for x in rec(lo, mid) for y in rec(mid, hi)]

    return rec(0, size)

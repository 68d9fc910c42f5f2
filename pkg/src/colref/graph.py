"""Graphs, colourings and partitions.

Vertices are ``0..n-1`` inside the package; the text formats in
:mod:`colref.io` are 1-based and convert at the boundary. Colours are
positive integers.

All types here are immutable after construction.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from colref.errors import ContractViolation

Edge = tuple[int, int]


def _adjacency(n: int, edges: Sequence[Edge]) -> tuple[tuple[tuple[int, ...], ...], tuple[tuple[int, ...], ...]]:
    out_lists: list[list[int]] = [[] for _ in range(n)]
    in_lists: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        out_lists[u].append(v)
        in_lists[v].append(u)
    return tuple(map(tuple, out_lists)), tuple(map(tuple, in_lists))


def _check_vertex(n: int, v: int) -> None:
    if not 0 <= v < n:
        raise ContractViolation(f"vertex {v + 1} out of range 1..{n}")


@dataclass(frozen=True)
class Digraph:
    """Directed graph on ``0..n-1``.

    In simple mode (the default) parallel edges and loops are rejected. With
    ``multi=True`` both are allowed and every copy of an edge counts towards
    the degrees.
    """

    n: int
    edges: tuple[Edge, ...]
    multi: bool = False
    out_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    in_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ContractViolation("negative vertex count")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            _check_vertex(self.n, u)
            _check_vertex(self.n, v)
        if not self.multi:
            if any(u == v for u, v in edges):
                raise ContractViolation("self-loop in simple digraph")
            if len(set(edges)) != len(edges):
                raise ContractViolation("duplicate edge in simple digraph")
        object.__setattr__(self, "edges", edges)
        out_adj, in_adj = _adjacency(self.n, edges)
        object.__setattr__(self, "out_adj", out_adj)
        object.__setattr__(self, "in_adj", in_adj)

    @property
    def m(self) -> int:
        return len(self.edges)

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Image of this graph under the vertex bijection ``v -> perm[v]``."""
        return Digraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges), self.multi)


@dataclass(frozen=True)
class UndirectedGraph:
    n: int
    edges: tuple[Edge, ...]
    adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        seen = set()
        edges = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            _check_vertex(self.n, u)
            _check_vertex(self.n, v)
            if u == v:
                raise ContractViolation(f"self-loop at vertex {u + 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ContractViolation(f"duplicate edge {{{u + 1}, {v + 1}}}")
            seen.add(key)
            edges.append((u, v))
        object.__setattr__(self, "edges", tuple(edges))
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "adj", tuple(map(tuple, adj)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def relabel(self, perm: Sequence[int]) -> "UndirectedGraph":
        return UndirectedGraph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def without_edges(self, drop: Iterable[Edge]) -> "UndirectedGraph":
        gone = {(min(u, v), max(u, v)) for u, v in drop}
        return UndirectedGraph(self.n, tuple(e for e in self.edges if (min(e), max(e)) not in gone))


@dataclass(frozen=True)
class EdgeColouredDigraph:
    """Digraph with edge colours ``1..p``; loops and parallel edges allowed.

    Edge colours are renumbered densely (order preserving) on construction so
    that every colour in ``1..p`` is used.
    """

    n: int
    edges: tuple[tuple[int, int, int], ...]
    p: int = field(init=False)

    def __post_init__(self) -> None:
        raw = tuple((int(u), int(v), int(j)) for u, v, j in self.edges)
        for u, v, j in raw:
            _check_vertex(self.n, u)
            _check_vertex(self.n, v)
            if j < 1:
                raise ContractViolation(f"edge colour {j} is not positive")
        used = sorted({j for _, _, j in raw})
        rank = {j: i + 1 for i, j in enumerate(used)}
        object.__setattr__(self, "edges", tuple((u, v, rank[j]) for u, v, j in raw))
        object.__setattr__(self, "p", len(used))

    @property
    def m(self) -> int:
        return len(self.edges)

    def relabel(self, perm: Sequence[int]) -> "EdgeColouredDigraph":
        return EdgeColouredDigraph(self.n, tuple((perm[u], perm[v], j) for u, v, j in self.edges))


@dataclass(frozen=True)
class TransitionSystem:
    """Vertex-labelled digraph. Labels are densified to ``1..L``."""

    graph: Digraph
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.labels) != self.graph.n:
            raise ContractViolation("label vector length differs from vertex count")
        object.__setattr__(self, "labels", Colouring.from_labels(self.labels).colours)

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m


class Colouring:
    """Vertex -> positive integer colour, for vertices ``0..n-1``."""

    __slots__ = ("colours", "_k")

    def __init__(self, colours: Iterable[int]):
        colours = tuple(int(c) for c in colours)
        if any(c < 1 for c in colours):
            raise ContractViolation("colours must be positive integers")
        self.colours = colours
        self._k = len(set(colours))

    @classmethod
    def unit(cls, n: int) -> "Colouring":
        return cls((1,) * n)

    @classmethod
    def discrete(cls, n: int) -> "Colouring":
        return cls(range(1, n + 1))

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable]) -> "Colouring":
        """Densify arbitrary sortable labels to ``1..l`` keeping their order."""
        rank = {x: i + 1 for i, x in enumerate(sorted(set(labels)))}
        return cls(rank[x] for x in labels)

    @property
    def n(self) -> int:
        return len(self.colours)

    @property
    def k(self) -> int:
        """Number of distinct colours."""
        return self._k

    @property
    def is_surjective(self) -> bool:
        return not self.colours or max(self.colours) == self._k

    def __getitem__(self, v: int) -> int:
        return self.colours[v]

    def __iter__(self) -> Iterator[int]:
        return iter(self.colours)

    def __len__(self) -> int:
        return len(self.colours)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Colouring):
            return self.colours == other.colours
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.colours)

    def __repr__(self) -> str:
        return f"Colouring({list(self.colours)})"

    def classes(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for v, c in enumerate(self.colours):
            out[c].append(v)
        return dict(out)

    def relabel(self, perm: Sequence[int]) -> "Colouring":
        """Colouring of the relabelled graph: vertex ``perm[v]`` gets colour of ``v``."""
        out = [0] * len(self.colours)
        for v, c in enumerate(self.colours):
            out[perm[v]] = c
        return Colouring(out)


class Partition:
    """Partition of a finite set of integers into nonempty cells.

    Cells are stored sorted, and ordered by their smallest element, so two
    partitions compare equal exactly when they have the same cells.
    """

    __slots__ = ("cells", "cell_of")

    def __init__(self, cells: Iterable[Iterable[int]]):
        normalised = []
        cell_of: dict[int, int] = {}
        for cell in cells:
            cell = tuple(sorted(set(cell)))
            if not cell:
                raise ContractViolation("partition cells must be nonempty")
            normalised.append(cell)
        normalised.sort(key=lambda c: c[0])
        for i, cell in enumerate(normalised):
            for v in cell:
                if v in cell_of:
                    raise ContractViolation(f"element {v} occurs in two cells")
                cell_of[v] = i
        self.cells: tuple[tuple[int, ...], ...] = tuple(normalised)
        self.cell_of: dict[int, int] = cell_of

    @classmethod
    def from_labels(cls, labels: Mapping[int, Hashable] | Sequence[Hashable]) -> "Partition":
        items = labels.items() if isinstance(labels, Mapping) else enumerate(labels)
        groups: dict[Hashable, list[int]] = defaultdict(list)
        for v, lab in items:
            groups[lab].append(v)
        return cls(groups.values())

    @classmethod
    def unit(cls, ground: Iterable[int]) -> "Partition":
        ground = list(ground)
        return cls([ground] if ground else [])

    @classmethod
    def discrete(cls, ground: Iterable[int]) -> "Partition":
        return cls([v] for v in ground)

    @property
    def ground(self) -> frozenset[int]:
        return frozenset(self.cell_of)

    @property
    def order(self) -> int:
        return len(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.cells)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Partition):
            return self.cells == other.cells
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.cells)

    def __repr__(self) -> str:
        return "Partition(" + ", ".join("{" + ",".join(map(str, c)) + "}" for c in self.cells) + ")"

    @property
    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.cells)

    @property
    def is_unit(self) -> bool:
        return len(self.cells) == 1

    def same(self, u: int, v: int) -> bool:
        return self.cell_of[u] == self.cell_of[v]

    def cell(self, v: int) -> tuple[int, ...]:
        return self.cells[self.cell_of[v]]

    def is_closed(self, subset: Iterable[int]) -> bool:
        """True iff ``subset`` is a union of cells."""
        subset = set(subset)
        touched = {self.cell_of[v] for v in subset}
        return sum(len(self.cells[i]) for i in touched) == len(subset)

    def restrict(self, subset: Iterable[int]) -> "Partition":
        """The induced partition on ``subset``."""
        subset = set(subset)
        return Partition(
            kept for kept in (tuple(v for v in c if v in subset) for c in self.cells) if kept
        )

    def agrees_with(self, other: "Partition") -> bool:
        return self.restrict(other.ground) == other

    def with_rest(self, ground: Iterable[int]) -> "Partition":
        """This partition plus one extra cell holding the rest of ``ground``."""
        rest = [v for v in ground if v not in self.cell_of]
        return Partition(list(self.cells) + ([rest] if rest else []))

    def distinguishes(self, u: int, v: int) -> bool:
        return self.cell_of[u] != self.cell_of[v]

    def meet(self, other: "Partition") -> "Partition":
        if self.ground != other.ground:
            raise ContractViolation("ground-set mismatch")
        return Partition.from_labels({v: (i, other.cell_of[v]) for v, i in self.cell_of.items()})

    def refines(self, other: "Partition") -> bool:
        return refines(self, other)


def refines(p: Partition, q: Partition) -> bool:
    """True iff every cell of ``q`` is a union of cells of ``p``."""
    if p.ground != q.ground:
        raise ContractViolation("ground-set mismatch")
    q_of = q.cell_of
    return all(len({q_of[v] for v in cell}) == 1 for cell in p.cells)


def partition_of(c: Colouring) -> Partition:
    return Partition.from_labels(c.colours)


def colouring_of(p: Partition) -> Colouring:
    """Number the cells ``1..k`` by smallest contained vertex.

    For display and diffing only; the ground set must be ``0..n-1``.
    """
    n = len(p.cell_of)
    if p.ground != frozenset(range(n)):
        raise ContractViolation("colouring_of needs a partition of 0..n-1")
    out = [0] * n
    for i, cell in enumerate(p.cells):
        for v in cell:
            out[v] = i + 1
    return Colouring(out)


def double(g: UndirectedGraph) -> Digraph:
    """Replace every undirected edge by the two opposite arcs."""
    arcs: list[Edge] = []
    for u, v in g.edges:
        arcs.append((u, v))
        arcs.append((v, u))
    return Digraph(g.n, tuple(arcs))

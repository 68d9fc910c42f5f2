"""Plain-text graph files and colouring output.

Input, one record per line, ``#`` starts a comment::

    digraph n m | graph n m | ecdigraph n m p | ts n m
    e u v          (e u v j for ecdigraph)
    c v x          optional vertex colour / label, default 1

Vertices are 1-based in files and 0-based in memory.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from colref.errors import ContractViolation, ParseError
from colref.graph import (
    Colouring,
    Digraph,
    EdgeColouredDigraph,
    Partition,
    TransitionSystem,
    UndirectedGraph,
)

AnyGraph = Union[Digraph, UndirectedGraph, EdgeColouredDigraph, TransitionSystem]

KINDS = {"digraph": 2, "graph": 2, "ecdigraph": 3, "ts": 2}


@dataclass(frozen=True)
class ParsedInput:
    graph: AnyGraph
    colouring: Colouring
    has_colours: bool

    @property
    def kind(self) -> str:
        return {
            Digraph: "digraph",
            UndirectedGraph: "graph",
            EdgeColouredDigraph: "ecdigraph",
            TransitionSystem: "ts",
        }[type(self.graph)]


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse(text: str) -> ParsedInput:
    """Parse a graph file into a graph object and its initial colouring."""
    kind = None
    n = m = p = 0
    edges: list[tuple[int, ...]] = []
    raw_colour: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if kind is None:
            kind = tokens[0]
            if kind not in KINDS or len(tokens) != KINDS[kind] + 1:
                raise ParseError(f"malformed header {line!r}", lineno)
            nums = _ints(tokens[1:], lineno)
            n, m = nums[0], nums[1]
            p = nums[2] if kind == "ecdigraph" else 0
            if n < 1:
                raise ParseError("graph must have at least one vertex", lineno)
            if m < 0 or (kind == "ecdigraph" and p < (1 if m else 0)):
                raise ParseError(f"malformed header {line!r}", lineno)
            continue
        tag, args = tokens[0], _ints(tokens[1:], lineno)
        if tag == "e":
            want = 3 if kind == "ecdigraph" else 2
            if len(args) != want:
                raise ParseError(f"edge line needs {want} fields", lineno)
            for v in args[:2]:
                if not 1 <= v <= n:
                    raise ParseError(f"vertex {v} out of range 1..{n}", lineno)
            if kind == "ecdigraph" and not 1 <= args[2] <= p:
                raise ParseError(f"edge colour {args[2]} out of range 1..{p}", lineno)
            edges.append(tuple(args))
        elif tag == "c":
            if len(args) != 2:
                raise ParseError("colour line needs 2 fields", lineno)
            v, x = args
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} out of range 1..{n}", lineno)
            if x < 1:
                raise ParseError(f"colour {x} is not positive", lineno)
            if v in raw_colour:
                raise ParseError(f"vertex {v} coloured twice", lineno)
            raw_colour[v] = x
        else:
            raise ParseError(f"unknown record {tag!r}", lineno)
    if kind is None:
        raise ParseError("missing header")
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")

    colouring = Colouring.from_labels([raw_colour.get(v, 1) for v in range(1, n + 1)])
    try:
        if kind == "digraph":
            graph: AnyGraph = Digraph(n, tuple((u - 1, v - 1) for u, v in edges))
        elif kind == "graph":
            graph = UndirectedGraph(n, tuple((u - 1, v - 1) for u, v in edges))
        elif kind == "ecdigraph":
            graph = EdgeColouredDigraph(n, tuple((u - 1, v - 1, j) for u, v, j in edges))
        else:
            arcs = tuple((u - 1, v - 1) for u, v in edges)
            if len(set(arcs)) != len(arcs):
                raise ContractViolation("duplicate edge in transition system")
            graph = TransitionSystem(Digraph(n, arcs, multi=True), colouring.colours)
    except ContractViolation as exc:
        raise ParseError(str(exc)) from None
    return ParsedInput(graph, colouring, bool(raw_colour))


def read_graph(path: str) -> ParsedInput:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def format_graph(g: AnyGraph, colouring: Colouring | None = None) -> str:
    """Serialise a graph (and optional colouring) in the text format."""
    lines: list[str] = []
    if isinstance(g, TransitionSystem):
        lines.append(f"ts {g.n} {g.m}")
        lines += [f"e {u + 1} {v + 1}" for u, v in g.graph.edges]
        colouring = Colouring(g.labels)
    elif isinstance(g, EdgeColouredDigraph):
        lines.append(f"ecdigraph {g.n} {g.m} {g.p}")
        lines += [f"e {u + 1} {v + 1} {j}" for u, v, j in g.edges]
    else:
        lines.append(f"{'graph' if isinstance(g, UndirectedGraph) else 'digraph'} {g.n} {g.m}")
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges]
    if colouring is not None and colouring.k > 1:
        lines += [f"c {v + 1} {c}" for v, c in enumerate(colouring)]
    return "\n".join(lines) + "\n"


def format_colouring(c: Colouring, as_json: bool = False) -> str:
    if as_json:
        doc = {"n": c.n, "classes": c.k, "colours": list(c.colours)}
        return json.dumps(doc, sort_keys=True) + "\n"
    lines = [f"v {v + 1} {col}" for v, col in enumerate(c)]
    lines.append(f"classes {c.k}")
    return "\n".join(lines) + "\n"


def format_partition(p: Partition, as_json: bool = False) -> str:
    """Cells as 1-based vertex lists, one cell per line."""
    cells = [[v + 1 for v in cell] for cell in p.cells]
    if as_json:
        return json.dumps({"classes": len(cells), "cells": cells}) + "\n"
    lines = ["cell " + " ".join(map(str, cell)) for cell in cells]
    lines.append(f"classes {len(cells)}")
    return "\n".join(lines) + "\n"

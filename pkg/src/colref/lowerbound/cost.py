"""Edge-incidence cost of refining operations and refinement scripts."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from colref.errors import ContractViolation
from colref.graph import Digraph, Partition, UndirectedGraph
from colref.oracle import apply_refining_op, neighbours

AnyGraph = Digraph | UndirectedGraph


def cost_of_op(g: AnyGraph, R: Iterable[int], S: Iterable[int]) -> int:
    """Number of ordered pairs ``(u, v)`` with ``u`` in R, ``v`` in S and ``uv`` an edge.

    Computed from the ``S`` side: every neighbour in R of every vertex in S.
    Edges inside ``R & S`` are therefore counted twice.
    """
    R = set(R)
    nbrs = neighbours(g)
    return sum(1 for v in set(S) for w in nbrs[v] if w in R)


@dataclass(frozen=True)
class ElementaryOp:
    R: tuple[int, ...]
    S: tuple[int, ...]
    cost: int
    result: Partition


def effective_pairs(g: AnyGraph, p: Partition) -> list[tuple[int, int]]:
    """Index pairs ``(R, S)`` of cells for which the operation splits ``S``."""
    nbrs = neighbours(g)
    pairs = []
    for s_idx, cell in enumerate(p.cells):
        if len(cell) < 2:
            continue
        profiles = [Counter(p.cell_of[w] for w in nbrs[v]) for v in cell]
        touched = set().union(*profiles)
        for r_idx in sorted(touched):
            first = profiles[0][r_idx]
            if any(prof[r_idx] != first for prof in profiles):
                pairs.append((r_idx, s_idx))
    pairs.sort(key=lambda rs: (rs[1], rs[0]))
    return pairs


def enumerate_effective_elementary(g: AnyGraph, p: Partition) -> list[ElementaryOp]:
    """Every cell pair ``(R, S)`` of ``p`` whose refining operation is effective."""
    out = []
    for r_idx, s_idx in effective_pairs(g, p):
        R, S = p.cells[r_idx], p.cells[s_idx]
        out.append(ElementaryOp(R, S, cost_of_op(g, R, S), apply_refining_op(g, p, R, S)))
    return out


@dataclass
class RefinementScript:
    steps: list[tuple[frozenset[int], frozenset[int]]] = field(default_factory=list)

    def add(self, R: Iterable[int], S: Iterable[int]) -> None:
        self.steps.append((frozenset(R), frozenset(S)))

    def __len__(self) -> int:
        return len(self.steps)


def script_cost(g: AnyGraph, p0: Partition, script: RefinementScript) -> tuple[Partition, int]:
    """Apply the steps in order and add up their costs."""
    p, total = p0, 0
    for i, (R, S) in enumerate(script.steps):
        try:
            p = apply_refining_op(g, p, R, S)
        except ContractViolation as exc:
            raise ContractViolation(f"step {i}: {exc}") from None
        total += cost_of_op(g, R, S)
    return p, total

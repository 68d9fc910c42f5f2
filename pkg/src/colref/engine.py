"""Canonical colour refinement with Hopcroft-style worklist.

The engine keeps colour classes as doubly linked lists over vertex ids and
processes one refining colour per iteration. Only vertices with a nonzero
colour degree are ever touched while splitting, which is what gives the
``O((n+m) log n)`` running time.

Colours are numbered canonically: when class ``s`` splits, the sub-class
with the smallest colour degree keeps ``s`` and the others receive
``maxcolour+1, maxcolour+2, ...`` in increasing colour-degree order.
"""

from __future__ import annotations

import csv
import io
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable

from colref.errors import ContractViolation
from colref.graph import Colouring, Digraph, Partition

NIL = -1


class Policy(Enum):
    STACK = "stack"
    QUEUE = "queue"


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    r: int
    size_R: int
    D_minus_R: int
    new_colours: int
    sort_size: int


@dataclass
class CostLedger:
    """Per-iteration cost records plus optional per-vertex history.

    ``class_sizes[v]`` lists the sizes of the refining classes that contained
    ``v``, in the order they were used.
    """

    n: int
    m: int
    records: list[IterationRecord] = field(default_factory=list)
    class_sizes: list[list[int]] | None = None

    @property
    def total_R(self) -> int:
        return sum(r.size_R for r in self.records)

    @property
    def total_D(self) -> int:
        return sum(r.D_minus_R for r in self.records)

    @property
    def total_new(self) -> int:
        return sum(r.new_colours for r in self.records)

    @property
    def cost(self) -> int:
        """Sum of ``|R| + D-(R)`` over all iterations."""
        return self.total_R + self.total_D

    @property
    def appearances(self) -> list[int] | None:
        if self.class_sizes is None:
            return None
        return [len(s) for s in self.class_sizes]

    def bound(self) -> float:
        """``(n+m) log2 n + n``."""
        if self.n == 0:
            return 0.0
        return (self.n + self.m) * math.log2(self.n) + self.n

    def within_bound(self) -> bool:
        return self.cost <= self.bound()

    def halving_violations(self) -> list[tuple[int, int, int]]:
        """Triples ``(v, earlier size, later size)`` breaking ``|R_i| >= 2|R_{i+1}|``."""
        if self.class_sizes is None:
            raise ContractViolation("ledger was built without per-vertex tracking")
        bad = []
        for v, sizes in enumerate(self.class_sizes):
            for a, b in zip(sizes, sizes[1:]):
                if a < 2 * b:
                    bad.append((v, a, b))
        return bad

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["iteration", "r", "size_R", "D_minus_R", "new_colours"])
        for rec in self.records:
            w.writerow([rec.iteration, rec.r, rec.size_R, rec.D_minus_R, rec.new_colours])
        w.writerow(["total", "", self.total_R, self.total_D, self.total_new])
        return buf.getvalue()


class RefineState:
    """Mutable working set of one refinement run.

    Colours are 1-based, vertices 0-based. With ``debug=True`` the reset
    invariant, the worklist flags and the class sizes are re-checked at the
    top of every iteration.
    """

    def __init__(
        self,
        g: Digraph,
        alpha: Colouring,
        refining: Iterable[int] | None = None,
        policy: Policy = Policy.STACK,
        debug: bool = False,
        track_vertices: bool = True,
    ):
        n = g.n
        if alpha.n != n:
            raise ContractViolation(f"colouring has {alpha.n} entries for {n} vertices")
        if not alpha.is_surjective:
            raise ContractViolation("initial colouring is not surjective")
        ell = alpha.k
        refining = list(range(1, ell + 1)) if refining is None else sorted(set(refining))
        for c in refining:
            if not 1 <= c <= ell:
                raise ContractViolation(f"refining colour {c} outside 1..{ell}")

        self.g = g
        self.n = n
        self.policy = policy
        self.debug = debug
        size = n + 2
        self.head = [NIL] * size
        self.tail = [NIL] * size
        self.size = [0] * size
        self.nxt = [NIL] * n
        self.prv = [NIL] * n
        self.colour = list(alpha.colours)
        for v in range(n):
            self._append(v, self.colour[v])
        self.maxcolour = ell

        self.cdeg = [0] * n
        self.A: list[list[int]] = [[] for _ in range(size)]
        self.maxcdeg = [0] * size
        self.mincdeg = [0] * size
        self.colors_adj: list[int] = []
        self.in_adj_flag = [False] * size
        width = max((len(a) for a in g.out_adj), default=0) + 1
        self.numcdeg = [0] * width
        self.newcol = [0] * width

        self.worklist: deque[int] = deque()
        self.in_worklist = [False] * size
        for c in refining:
            self.push(c)

        self.nonsingleton: dict[int, None] = {c: None for c in range(1, ell + 1) if self.size[c] >= 2}
        self.ledger = CostLedger(n, g.m, class_sizes=[[] for _ in range(n)] if track_vertices else None)
        self.iteration = 0

    # linked lists

    def _append(self, v: int, c: int) -> None:
        t = self.tail[c]
        self.prv[v] = t
        self.nxt[v] = NIL
        if t == NIL:
            self.head[c] = v
        else:
            self.nxt[t] = v
        self.tail[c] = v
        self.size[c] += 1

    def _remove(self, v: int, c: int) -> None:
        p, q = self.prv[v], self.nxt[v]
        if p == NIL:
            self.head[c] = q
        else:
            self.nxt[p] = q
        if q == NIL:
            self.tail[c] = p
        else:
            self.prv[q] = p
        self.size[c] -= 1

    def members(self, c: int) -> list[int]:
        out = []
        v = self.head[c]
        while v != NIL:
            out.append(v)
            v = self.nxt[v]
        return out

    # worklist

    def push(self, c: int) -> None:
        self.worklist.append(c)
        self.in_worklist[c] = True

    def pop(self) -> int:
        c = self.worklist.pop() if self.policy is Policy.STACK else self.worklist.popleft()
        self.in_worklist[c] = False
        return c

    # one iteration

    def count_colour_degrees(self, r: int) -> None:
        """Fill ``cdeg``, ``A``, ``maxcdeg`` and ``colors_adj`` for refining colour ``r``."""
        cdeg, colour, A = self.cdeg, self.colour, self.A
        maxcdeg, flag, colors_adj = self.maxcdeg, self.in_adj_flag, self.colors_adj
        in_adj, nxt = self.g.in_adj, self.nxt
        sizes = self.ledger.class_sizes
        size_r = self.size[r]
        d_minus = 0
        v = self.head[r]
        while v != NIL:
            if sizes is not None:
                sizes[v].append(size_r)
            preds = in_adj[v]
            d_minus += len(preds)
            for w in preds:
                d = cdeg[w] + 1
                cdeg[w] = d
                c = colour[w]
                if d == 1:
                    A[c].append(w)
                if not flag[c]:
                    flag[c] = True
                    colors_adj.append(c)
                if d > maxcdeg[c]:
                    maxcdeg[c] = d
            v = nxt[v]
        self._size_R, self._d_minus = size_r, d_minus

    def colours_to_split(self) -> list[int]:
        """Touched colours whose class has two different colour degrees, ascending."""
        split = []
        for c in self.colors_adj:
            if self.size[c] != len(self.A[c]):
                lo = 0
            else:
                lo = min(self.cdeg[v] for v in self.A[c])
            self.mincdeg[c] = lo
            if lo < self.maxcdeg[c]:
                split.append(c)
        split.sort()
        return split

    def split_up_colour(self, s: int) -> list[int]:
        """Split class ``s`` by colour degree; returns the colours that were created."""
        top, lo = self.maxcdeg[s], self.mincdeg[s]
        if lo >= top:
            raise ContractViolation(f"colour {s} does not split")
        numcdeg, newcol, cdeg = self.numcdeg, self.newcol, self.cdeg
        A_s = self.A[s]
        for i in range(1, top + 1):
            numcdeg[i] = 0
        numcdeg[0] = self.size[s] - len(A_s)
        for v in A_s:
            numcdeg[cdeg[v]] += 1
        b = 0
        for i in range(1, top + 1):
            if numcdeg[i] > numcdeg[b]:
                b = i
        instack = self.in_worklist[s]
        created = []
        for i in range(top + 1):
            if numcdeg[i] >= 1:
                if i == lo:
                    newcol[i] = s
                    if not instack and b != i:
                        self.push(s)
                else:
                    self.maxcolour += 1
                    newcol[i] = self.maxcolour
                    created.append(self.maxcolour)
                    if instack or i != b:
                        self.push(self.maxcolour)
        colour = self.colour
        for v in A_s:
            c = newcol[cdeg[v]]
            if c != s:
                self._remove(v, s)
                self._append(v, c)
                colour[v] = c
        for c in [s] + created:
            if self.size[c] >= 2:
                self.nonsingleton[c] = None
            else:
                self.nonsingleton.pop(c, None)
        return created

    def reset_scratch(self) -> None:
        cdeg, A, maxcdeg, flag = self.cdeg, self.A, self.maxcdeg, self.in_adj_flag
        for c in self.colors_adj:
            for v in A[c]:
                cdeg[v] = 0
            maxcdeg[c] = 0
            A[c] = []
            flag[c] = False
        self.colors_adj = []

    def step(self) -> None:
        if self.debug:
            self.check_invariants()
        before = self.maxcolour
        r = self.pop()
        self.count_colour_degrees(r)
        split = self.colours_to_split()
        for s in split:
            self.split_up_colour(s)
        self.reset_scratch()
        self.ledger.records.append(
            IterationRecord(self.iteration, r, self._size_R, self._d_minus, self.maxcolour - before, len(split))
        )
        self.iteration += 1

    def run(self) -> None:
        while self.worklist:
            self.step()
        if self.debug:
            self.check_invariants()

    def individualise(self, v: int) -> int:
        """Give ``v`` a fresh colour and seed the worklist with it alone."""
        if self.worklist:
            raise ContractViolation("individualisation requires an empty worklist")
        c = self.colour[v]
        if self.size[c] < 2:
            raise ContractViolation(f"vertex {v + 1} already has a unique colour")
        self._remove(v, c)
        self.maxcolour += 1
        fresh = self.maxcolour
        self._append(v, fresh)
        self.colour[v] = fresh
        if self.size[c] < 2:
            self.nonsingleton.pop(c, None)
        self.push(fresh)
        return fresh

    # results and checks

    def colouring(self) -> Colouring:
        return Colouring(self.colour)

    def check_invariants(self) -> None:
        if any(self.cdeg) or any(self.maxcdeg) or any(self.A) or self.colors_adj or any(self.in_adj_flag):
            raise AssertionError("scratch state not reset")
        listed = set(self.worklist)
        for c in range(1, len(self.in_worklist)):
            if self.in_worklist[c] != (c in listed):
                raise AssertionError(f"worklist flag of colour {c} is stale")
        seen = 0
        for c in range(1, self.maxcolour + 1):
            members = self.members(c)
            if len(members) != self.size[c] or not members:
                raise AssertionError(f"class {c} size bookkeeping is wrong")
            if any(self.colour[v] != c for v in members):
                raise AssertionError(f"class {c} contains a vertex of another colour")
            if (self.size[c] >= 2) != (c in self.nonsingleton):
                raise AssertionError(f"non-singleton registry disagrees on colour {c}")
            seen += len(members)
        if seen != self.n:
            raise AssertionError("colour classes do not cover the vertex set")


def refine(
    g: Digraph,
    alpha: Colouring,
    refining: Iterable[int] | None = None,
    policy: Policy = Policy.STACK,
    debug: bool = False,
    track_vertices: bool = True,
) -> tuple[Colouring, CostLedger]:
    """Canonical coarsest stable colouring refining ``alpha``.

    ``refining`` must be a sufficient refining colour set for ``alpha``;
    the default (all colours) always is.
    """
    state = RefineState(g, alpha, refining, policy, debug, track_vertices)
    state.run()
    return state.colouring(), state.ledger


def is_stable(g: Digraph, p: Partition) -> bool:
    """True iff same-cell vertices have equal out-neighbour counts into every cell."""
    if p.ground != frozenset(range(g.n)):
        raise ContractViolation("ground-set mismatch")
    for cell in p.cells:
        first = None
        for v in cell:
            counts: dict[int, int] = {}
            for w in g.out_adj[v]:
                i = p.cell_of[w]
                counts[i] = counts.get(i, 0) + 1
            if first is None:
                first = counts
            elif counts != first:
                return False
    return True

"""Coarsest bisimulation on vertex-labelled transition systems.

Two states are bisimilar when they carry the same label and, for every
class ``C`` of the result, either both or neither have a successor in ``C``.
"""

from __future__ import annotations

from colref.graph import Partition, TransitionSystem
from colref.oracle import fixpoint


def bisimilarity_naive(ts: TransitionSystem) -> Partition:
    """Split by the set of classes hit by each state's successors until stable."""
    out = ts.graph.out_adj
    return fixpoint(
        range(ts.n),
        Partition.from_labels(ts.labels),
        lambda v, p: tuple(sorted({p.cell_of[w] for w in out[v]})),
    )


class _Refiner:
    """Three-way splitting over a compound partition.

    ``blocks`` is the fine partition, ``xblocks`` groups fine blocks into
    compound blocks the fine partition is already stable with respect to.
    Every arc ``(x, y)`` points at the shared counter holding the number of
    successors of ``x`` in the compound block of ``y``.
    """

    def __init__(self, ts: TransitionSystem):
        g = ts.graph
        self.n = ts.n
        self.preds: list[list[tuple[int, int]]] = [[] for _ in range(ts.n)]
        for e, (x, y) in enumerate(g.edges):
            self.preds[y].append((x, e))

        labels = [(ts.labels[v], bool(g.out_adj[v])) for v in range(ts.n)]
        initial = Partition.from_labels(labels)
        self.blocks: dict[int, set[int]] = {}
        self.block_of = [0] * ts.n
        for i, cell in enumerate(initial.cells):
            self.blocks[i] = set(cell)
            for v in cell:
                self.block_of[v] = i
        self.next_block = len(initial.cells)

        self.xblocks: dict[int, set[int]] = {0: set(self.blocks)}
        self.xblock_of = {b: 0 for b in self.blocks}
        self.next_x = 1
        self.compound = {0} if len(self.blocks) >= 2 else set()

        per_vertex = [[len(g.out_adj[x])] for x in range(ts.n)]
        self.count_ref = [per_vertex[x] for x, _ in g.edges]

    def split(self, marked: set[int]) -> None:
        touched: dict[int, list[int]] = {}
        for x in marked:
            touched.setdefault(self.block_of[x], []).append(x)
        for d, inside in touched.items():
            if len(inside) == len(self.blocks[d]):
                continue
            new = self.next_block
            self.next_block += 1
            self.blocks[d].difference_update(inside)
            self.blocks[new] = set(inside)
            for x in inside:
                self.block_of[x] = new
            xb = self.xblock_of[d]
            self.xblock_of[new] = xb
            self.xblocks[xb].add(new)
            self.compound.add(xb)

    def run(self) -> Partition:
        while self.compound:
            s = self.compound.pop()
            members = iter(self.xblocks[s])
            b1, b2 = next(members), next(members)
            b = b1 if len(self.blocks[b1]) <= len(self.blocks[b2]) else b2
            self.xblocks[s].discard(b)
            t = self.next_x
            self.next_x += 1
            self.xblocks[t] = {b}
            self.xblock_of[b] = t
            if len(self.xblocks[s]) >= 2:
                self.compound.add(s)

            b_verts = list(self.blocks[b])
            count_b: dict[int, list[int]] = {}
            count_s: dict[int, list[int]] = {}
            for y in b_verts:
                for x, e in self.preds[y]:
                    count_b.setdefault(x, [0])[0] += 1
                    count_s[x] = self.count_ref[e]
            self.split(set(count_b))
            self.split({x for x, c in count_b.items() if c[0] == count_s[x][0]})
            for y in b_verts:
                for x, e in self.preds[y]:
                    self.count_ref[e][0] -= 1
                    self.count_ref[e] = count_b[x]
        return Partition(self.blocks.values())


def bisimilarity_fast(ts: TransitionSystem) -> Partition:
    """Same result as :func:`bisimilarity_naive`, splitting on the smaller half."""
    if ts.n == 0:
        return Partition([])
    return _Refiner(ts).run()

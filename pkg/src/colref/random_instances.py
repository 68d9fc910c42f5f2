"""Seeded random instances.

All generators take a ``random.Random`` (Mersenne Twister MT19937), so a
seed reproduces the same instance on every platform and Python version
that keeps that generator stable.
"""

from __future__ import annotations

import random

from colref.graph import Colouring, Digraph, EdgeColouredDigraph, TransitionSystem, UndirectedGraph


def random_digraph(rng: random.Random, n: int, p: float) -> Digraph:
    return Digraph(n, tuple((u, v) for u in range(n) for v in range(n) if u != v and rng.random() < p))


def random_undirected(rng: random.Random, n: int, p: float) -> UndirectedGraph:
    return UndirectedGraph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p))


def random_colouring(rng: random.Random, n: int, ell: int) -> Colouring:
    """Random colouring with at most ``ell`` colours, densified to be surjective."""
    return Colouring.from_labels([rng.randint(1, ell) for _ in range(n)])


def random_ec_digraph(rng: random.Random, n: int, p: float, colours: int) -> EdgeColouredDigraph:
    """Random edge-coloured digraph; loops and parallel edges occur occasionally."""
    edges = []
    for u in range(n):
        for v in range(n):
            if rng.random() < (p / 4 if u == v else p):
                edges.append((u, v, rng.randint(1, colours)))
                if rng.random() < 0.1:
                    edges.append((u, v, rng.randint(1, colours)))
    return EdgeColouredDigraph(n, tuple(edges))


def random_ts(rng: random.Random, n: int, p: float, labels: int) -> TransitionSystem:
    edges = tuple((u, v) for u in range(n) for v in range(n) if rng.random() < p)
    return TransitionSystem(Digraph(n, edges, multi=True), tuple(rng.randint(1, labels) for _ in range(n)))


def random_permutation(rng: random.Random, n: int) -> list[int]:
    perm = list(range(n))
    rng.shuffle(perm)
    return perm

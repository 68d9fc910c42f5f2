"""Undirected, edge-coloured and bi-stable refinement via plain digraphs."""

from __future__ import annotations

from colref.engine import CostLedger, Policy, refine
from colref.errors import ContractViolation
from colref.graph import Colouring, Digraph, EdgeColouredDigraph, UndirectedGraph, double


def refine_undirected_with_ledger(
    g: UndirectedGraph, alpha: Colouring | None = None, policy: Policy = Policy.STACK
) -> tuple[Colouring, CostLedger]:
    alpha = Colouring.unit(g.n) if alpha is None else alpha
    return refine(double(g), alpha, policy=policy)


def refine_undirected(
    g: UndirectedGraph, alpha: Colouring | None = None, policy: Policy = Policy.STACK
) -> Colouring:
    """Canonical coarsest stable colouring of an undirected graph."""
    return refine_undirected_with_ledger(g, alpha, policy)[0]


def reduce_edge_coloured(
    g: EdgeColouredDigraph, alpha: Colouring | None = None
) -> tuple[Digraph, Colouring, list[int]]:
    """Subdivide every edge ``e = (u, v)`` by a new vertex ``v_e``.

    The new vertex of the i-th edge is ``n + i`` and carries colour
    ``l + j`` where ``j`` is the edge colour and ``l`` the number of vertex
    colours (1 for the default unit colouring). The returned lift map sends
    each original vertex to its id in the new graph.
    """
    alpha = Colouring.unit(g.n) if alpha is None else alpha
    if alpha.n != g.n or not alpha.is_surjective:
        raise ContractViolation("vertex colouring must be surjective on the original vertices")
    ell = alpha.k
    arcs = []
    colours = list(alpha.colours)
    for i, (u, v, j) in enumerate(g.edges):
        ve = g.n + i
        arcs.append((u, ve))
        arcs.append((ve, v))
        colours.append(ell + j)
    return Digraph(g.n + g.m, tuple(arcs)), Colouring(colours), list(range(g.n))


def refine_edge_coloured_with_ledger(
    g: EdgeColouredDigraph, alpha: Colouring | None = None, policy: Policy = Policy.STACK
) -> tuple[Colouring, CostLedger]:
    h, beta0, lift = reduce_edge_coloured(g, alpha)
    beta, ledger = refine(h, beta0, policy=policy)
    return Colouring.from_labels([beta[lift[v]] for v in range(g.n)]), ledger


def refine_edge_coloured(
    g: EdgeColouredDigraph, alpha: Colouring | None = None, policy: Policy = Policy.STACK
) -> Colouring:
    """Canonical coarsest edge-colour stable colouring, on the original vertices."""
    return refine_edge_coloured_with_ledger(g, alpha, policy)[0]


def reduce_bistable(g: Digraph) -> EdgeColouredDigraph:
    """Each arc ``(u, v)`` becomes ``(u, v)`` in colour 1 and ``(v, u)`` in colour 2."""
    edges = []
    for u, v in g.edges:
        edges.append((u, v, 1))
        edges.append((v, u, 2))
    return EdgeColouredDigraph(g.n, tuple(edges))


def refine_bistable_with_ledger(
    g: Digraph, alpha: Colouring | None = None, policy: Policy = Policy.STACK
) -> tuple[Colouring, CostLedger]:
    return refine_edge_coloured_with_ledger(reduce_bistable(g), alpha, policy)


def refine_bistable(g: Digraph, alpha: Colouring | None = None, policy: Policy = Policy.STACK) -> Colouring:
    """Canonical coarsest colouring stable for both in- and out-neighbour counts."""
    return refine_bistable_with_ledger(g, alpha, policy)[0]

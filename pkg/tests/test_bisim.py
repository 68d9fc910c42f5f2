from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colref.bisim import bisimilarity_fast, bisimilarity_naive
from colref.graph import Digraph, Partition, TransitionSystem, refines
from colref.lowerbound.gk import gen_gk, gen_sk
from colref.oracle import naive_coarsest_stable
from colref.random_instances import random_ts

BOTH = [bisimilarity_naive, bisimilarity_fast]


def ts(n, edges, labels=None):
    return TransitionSystem(Digraph(n, tuple(edges), multi=True), tuple(labels or [1] * n))


@pytest.mark.parametrize("bisim", BOTH)
def test_chain(bisim):
    assert bisim(ts(3, [(0, 1), (1, 2)])) == Partition.discrete(range(3))


@pytest.mark.parametrize("bisim", BOTH)
def test_branching_does_not_count(bisim):
    # 0 -> 2; 1 -> 2, 1 -> 3; 2 and 3 are sinks
    assert bisim(ts(4, [(0, 2), (1, 2), (1, 3)])) == Partition([[0, 1], [2, 3]])


@pytest.mark.parametrize("bisim", BOTH)
def test_trivial_systems(bisim):
    assert bisim(ts(1, [])).order == 1
    assert bisim(ts(2, [], [1, 2])) == Partition.discrete(range(2))
    assert bisim(ts(3, [(0, 0), (1, 2), (2, 1)])).order == 1


def _is_bisimulation(t: TransitionSystem, p: Partition) -> bool:
    out = t.graph.out_adj
    for cell in p.cells:
        sigs = {(t.labels[v], frozenset(p.cell_of[w] for w in out[v])) for v in cell}
        if len(sigs) > 1:
            return False
    return True


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 40), st.sampled_from([0.03, 0.1, 0.3]), st.integers(1, 3), st.integers(0, 10**9))
def test_fast_equals_naive(n, p, labels, seed):
    t = random_ts(random.Random(seed), n, p, labels)
    got = bisimilarity_fast(t)
    assert got == bisimilarity_naive(t)
    assert _is_bisimulation(t, got)


def test_counting_refinement_is_finer():
    rng = random.Random(1)
    for _ in range(60):
        t = random_ts(rng, rng.randint(1, 20), 0.2, 2)
        counting = naive_coarsest_stable(t.graph, Partition.from_labels(t.labels))
        assert refines(counting, bisimilarity_fast(t))


@pytest.mark.parametrize("k", [2, 3])
def test_transition_system_of_the_hard_family(k):
    inst, system = gen_gk(k), gen_sk(k)
    assert system.n == inst.n and system.graph.m == inst.graph.m
    assert Partition.from_labels(system.labels).order == 1
    omega = naive_coarsest_stable(inst.doubled, Partition.unit(range(inst.n)))
    bisim = bisimilarity_fast(system)
    assert refines(omega, bisim)
    # the two sinks of the start path are the only extra merge
    v0, v2 = inst.start[0], inst.start[2]
    merged = [c for c in bisim.cells if len({omega.cell_of[v] for v in c}) > 1]
    assert merged == [tuple(sorted((v0, v2)))]

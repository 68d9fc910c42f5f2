from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colref.engine import Policy, RefineState, is_stable, refine
from colref.errors import ContractViolation
from colref.graph import Colouring, Digraph, Partition, UndirectedGraph, double, partition_of
from colref.oracle import naive_coarsest_stable
from colref.random_instances import random_colouring, random_digraph, random_permutation

CYCLE3 = Digraph(3, ((0, 1), (1, 2), (2, 0)))
PATH3 = Digraph(3, ((0, 1), (1, 2)))


def test_cycle_stays_unit():
    beta, _ = refine(CYCLE3, Colouring.unit(3), refining=[1])
    assert beta.colours == (1, 1, 1)


def test_path_colours():
    beta, _ = refine(PATH3, Colouring.unit(3), refining=[1])
    assert beta.colours == (2, 3, 1)
    assert naive_coarsest_stable(PATH3, Partition.unit(range(3))) == partition_of(beta)


def test_path_step_through():
    state = RefineState(PATH3, Colouring.unit(3), refining=[1])
    state.step()
    # vertex 2 has no successor, so it keeps colour 1 and the others move to 2
    assert state.colour == [2, 2, 1]
    assert list(state.worklist) == [1]
    state.step()
    assert state.colour == [2, 3, 1]
    state.run()
    assert state.colour == [2, 3, 1]


def test_star_two_classes():
    star = double(UndirectedGraph(4, ((0, 1), (0, 2), (0, 3))))
    beta, _ = refine(star, Colouring.unit(4))
    p = partition_of(beta)
    assert p.cells == ((0,), (1, 2, 3))
    assert p == naive_coarsest_stable(star, Partition.unit(range(4)))


def _prepared(g: Digraph, alpha: Colouring, refining: list[int]) -> RefineState:
    state = RefineState(g, alpha, refining=refining)
    r = state.pop()
    state.count_colour_degrees(r)
    state.colours_to_split()
    return state


def test_split_skips_largest_new_fragment():
    # vertices 0..2 have colour 1; 1 and 2 point at vertex 3
    g = Digraph(4, ((1, 3), (2, 3)))
    state = _prepared(g, Colouring([1, 1, 1, 2]), [2])
    assert state.split_up_colour(1) == [3]
    assert state.members(1) == [0]
    assert state.members(3) == [1, 2]
    assert list(state.worklist) == [1]


def test_split_when_already_queued():
    g = Digraph(4, ((0, 2), (1, 2), (1, 3)))
    state = _prepared(g, Colouring([1, 1, 2, 2]), [1, 2])
    assert state.split_up_colour(1) == [3]
    assert state.members(1) == [0] and state.members(3) == [1]
    assert list(state.worklist) == [1, 3]


def test_split_without_difference_is_rejected():
    g = Digraph(3, ((0, 2), (1, 2)))
    state = _prepared(g, Colouring([1, 1, 2]), [2])
    with pytest.raises(ContractViolation):
        state.split_up_colour(1)


def test_is_stable_examples():
    assert is_stable(CYCLE3, Partition.unit(range(3)))
    assert not is_stable(PATH3, Partition.unit(range(3)))
    assert is_stable(PATH3, Partition.discrete(range(3)))


def test_bad_inputs():
    with pytest.raises(ContractViolation):
        refine(PATH3, Colouring([1, 3, 3]))
    with pytest.raises(ContractViolation):
        refine(PATH3, Colouring.unit(2))
    with pytest.raises(ContractViolation):
        refine(PATH3, Colouring.unit(3), refining=[2])
    state = RefineState(PATH3, Colouring.unit(3))
    with pytest.raises(ContractViolation):
        state.individualise(0)


def test_fresh_colour_suffices_after_stabilising():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(2, 15)
        g = random_digraph(rng, n, 0.3)
        beta, _ = refine(g, random_colouring(rng, n, 2))
        big = [v for v in range(n) if sum(1 for w in range(n) if beta[w] == beta[v]) > 1]
        if not big:
            continue
        v = rng.choice(big)
        alpha = Colouring(list(beta.colours[:v]) + [beta.k + 1] + list(beta.colours[v + 1 :]))
        full, _ = refine(g, alpha)
        short, _ = refine(g, alpha, refining=[beta.k + 1])
        assert partition_of(short) == partition_of(full)


def test_matches_oracle_and_invariants_under_debug():
    rng = random.Random(17)
    for _ in range(150):
        n = rng.randint(1, 25)
        g = random_digraph(rng, n, rng.choice([0.1, 0.3, 0.5]))
        alpha = random_colouring(rng, n, rng.randint(1, 5))
        want = naive_coarsest_stable(g, partition_of(alpha))
        for policy in Policy:
            beta, ledger = refine(g, alpha, policy=policy, debug=True)
            assert partition_of(beta) == want
            assert is_stable(g, partition_of(beta))
            assert ledger.within_bound()
            assert ledger.halving_violations() == []


def test_policies_give_same_partition_not_necessarily_same_colours():
    rng = random.Random(23)
    for _ in range(100):
        n = rng.randint(1, 20)
        g = random_digraph(rng, n, 0.2)
        alpha = random_colouring(rng, n, 3)
        a, _ = refine(g, alpha, policy=Policy.STACK)
        b, _ = refine(g, alpha, policy=Policy.QUEUE)
        assert partition_of(a) == partition_of(b)
        assert a.k == b.k


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 18), st.sampled_from([0.1, 0.3, 0.5]), st.integers(1, 4), st.integers(0, 10**9))
def test_colours_commute_with_relabelling(n, p, ell, seed):
    rng = random.Random(seed)
    g = random_digraph(rng, n, p)
    alpha = random_colouring(rng, n, ell)
    perm = random_permutation(rng, n)
    h, alpha_h = g.relabel(perm), alpha.relabel(perm)
    for policy in Policy:
        beta, _ = refine(g, alpha, policy=policy)
        beta_h, _ = refine(h, alpha_h, policy=policy)
        assert all(beta_h[perm[v]] == beta[v] for v in range(n))


def test_ledger_records_and_csv():
    beta, ledger = refine(PATH3, Colouring.unit(3))
    assert len(ledger.records) == ledger.records[-1].iteration + 1
    assert ledger.total_new == beta.k - 1
    assert ledger.cost == ledger.total_R + ledger.total_D
    lines = ledger.to_csv().splitlines()
    assert lines[0] == "iteration,r,size_R,D_minus_R,new_colours"
    assert lines[-1].startswith("total,,")
    assert len(lines) == len(ledger.records) + 2


def test_ledger_without_tracking():
    _, ledger = refine(PATH3, Colouring.unit(3), track_vertices=False)
    assert ledger.appearances is None
    with pytest.raises(ContractViolation):
        ledger.halving_violations()


def test_empty_and_edgeless():
    beta, ledger = refine(Digraph(5, ()), Colouring.unit(5))
    assert beta.k == 1
    assert ledger.cost == 5

"""One branch of individualisation-refinement.

The engine state survives between individualisations, so the whole branch
costs no more than a single refinement run asymptotically.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from colref.engine import CostLedger, Policy, RefineState, is_stable
from colref.errors import ContractViolation
from colref.graph import Colouring, Digraph, partition_of


class Selector(Enum):
    FIRST_MIN_COLOUR = "first"
    SMALLEST_CLASS = "smallest"
    LARGEST_CLASS = "largest"


@dataclass(frozen=True)
class BranchStep:
    vertex: int
    classes_before: int
    classes_after: int


@dataclass(frozen=True)
class BranchTrace:
    steps: tuple[BranchStep, ...]
    colouring: Colouring
    ledger: CostLedger


def select_vertex(state: RefineState, selector: Selector = Selector.FIRST_MIN_COLOUR) -> int:
    """Head of a non-singleton class chosen by ``selector``."""
    registry = state.nonsingleton
    if not registry:
        raise ContractViolation("every colour class is a singleton")
    if selector is Selector.FIRST_MIN_COLOUR:
        c = min(registry)
    elif selector is Selector.SMALLEST_CLASS:
        c = min(registry, key=lambda x: (state.size[x], x))
    else:
        c = min(registry, key=lambda x: (-state.size[x], x))
    return state.head[c]


def branch_refine(
    g: Digraph,
    alpha: Colouring | None = None,
    selector: Selector = Selector.FIRST_MIN_COLOUR,
    policy: Policy = Policy.STACK,
    check_stable: bool = False,
    track_vertices: bool = True,
) -> BranchTrace:
    """Refine, then individualise and re-refine until the colouring is discrete.

    With ``check_stable`` the partition is tested for stability at the head
    of every loop iteration and an ``AssertionError`` is raised if it is not.
    """
    alpha = Colouring.unit(g.n) if alpha is None else alpha
    state = RefineState(g, alpha, policy=policy, track_vertices=track_vertices)
    state.run()
    steps = []
    while state.maxcolour < g.n:
        if check_stable and not is_stable(g, partition_of(state.colouring())):
            raise AssertionError("partition not stable before individualisation")
        before = state.maxcolour
        v = select_vertex(state, selector)
        state.individualise(v)
        state.run()
        steps.append(BranchStep(v, before, state.maxcolour))
    return BranchTrace(tuple(steps), state.colouring(), state.ledger)

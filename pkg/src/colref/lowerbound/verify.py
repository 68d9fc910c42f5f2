"""Machine checks of the structural facts behind the lower bound.

Every check returns a :class:`Report`; nothing here raises on a failed
check, so callers can print all failures at once.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from colref.graph import Partition, double, refines
from colref.lowerbound.cost import RefinementScript, cost_of_op, effective_pairs, enumerate_effective_elementary
from colref.lowerbound.gadgets import binary_block_partitions, gen_and_gadget
from colref.lowerbound.gk import LowerBoundInstance, gen_gk
from colref.lowerbound.partitions import BlockPartitionSpec, pi_partition, tau_partition
from colref.oracle import apply_refining_op, naive_coarsest_stable


@dataclass
class Report:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str) -> bool:
        self.checks += 1
        if not ok:
            self.failures.append(message)
        return ok

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = f"{status} {self.name}: {self.checks - len(self.failures)}/{self.checks} checks"
        if self.failures:
            line += f"; first failure: {self.failures[0]}"
        return line


# gadgets


def gadget_closure(level: int, psi: tuple[tuple[int, ...], ...]) -> tuple[Partition, object]:
    """Coarsest stable partition of an AND gadget refining ``psi`` on its in-terminals.

    ``psi`` is given over in-terminal positions ``0..2^level-1``.
    """
    gadget = _gadget(level)
    terms = gadget.in_terminals
    cells = [[terms[i] for i in cell] for cell in psi]
    p0 = Partition(cells).with_rest(range(gadget.graph.n))
    return naive_coarsest_stable(double(gadget.graph), p0), gadget


@lru_cache(maxsize=None)
def _gadget(level: int):
    return gen_and_gadget(level)


def verify_gadget_lemma(level: int) -> Report:
    """For every binary-block partition of the in-terminals: agreement and the out-terminal condition."""
    report = Report(f"gadget level {level}")
    gadget = _gadget(level)
    terms = gadget.in_terminals
    psis = binary_block_partitions(len(terms))
    report.info["partitions"] = len(psis)
    for psi in psis:
        rho, _ = gadget_closure(level, psi)
        expected = Partition([[terms[i] for i in cell] for cell in psi])
        report.check(rho.restrict(terms) == expected, f"psi={psi}: closure does not agree on in-terminals")
        pos = {i: c for c, cell in enumerate(psi) for i in cell}
        all_pairs = all(pos[2 * t] != pos[2 * t + 1] for t in range(len(terms) // 2))
        a0, a1 = gadget.out_terminals
        report.check(
            rho.distinguishes(a0, a1) == all_pairs,
            f"psi={psi}: out-terminals distinguished={rho.distinguishes(a0, a1)}, all pairs split={all_pairs}",
        )
    return report


def and2_named_closure(psi_names: list[list[str]]) -> set[frozenset[str]]:
    """Closure on the level-2 gadget with cells given by vertex names such as ``"b0"``."""
    gadget = _gadget(2)
    index = {name: v for v, name in enumerate(gadget.names)}
    p0 = Partition([[index[x] for x in cell] for cell in psi_names]).with_rest(range(gadget.graph.n))
    rho = naive_coarsest_stable(double(gadget.graph), p0)
    return {frozenset(gadget.names[v] for v in cell) for cell in rho.cells}


# block partitions


def all_specs(k: int) -> Iterator[BlockPartitionSpec]:
    for level in range(k):
        for size in range(1, (1 << level) + 1):
            for Q in combinations(range(1 << level), size):
                yield BlockPartitionSpec(level, frozenset(Q), k)


def sample_specs(k: int, count: int, rng: random.Random) -> list[BlockPartitionSpec]:
    """Full-Q and singleton-Q specs at every level plus ``count`` random ones."""
    out = []
    for level in range(k):
        width = 1 << level
        out.append(BlockPartitionSpec(level, frozenset(range(width)), k))
        out.append(BlockPartitionSpec(level, frozenset({rng.randrange(width)}), k))
    for _ in range(count):
        level = rng.randrange(k)
        width = 1 << level
        Q = frozenset(q for q in range(width) if rng.random() < 0.5) or frozenset({0})
        out.append(BlockPartitionSpec(level, Q, k))
    return out


class PiCache:
    def __init__(self, inst: LowerBoundInstance):
        self.inst = inst
        self._pi: dict[tuple[int, frozenset[int]], Partition] = {}
        self._omega: Partition | None = None

    def pi(self, level: int, Q: frozenset[int]) -> Partition:
        key = (level, frozenset(Q))
        if key not in self._pi:
            self._pi[key] = pi_partition(BlockPartitionSpec(level, key[1], self.inst.k), self.inst)
        return self._pi[key]

    @property
    def omega(self) -> Partition:
        """Coarsest stable partition of ``G_k`` from the unit partition."""
        if self._omega is None:
            self._omega = naive_coarsest_stable(self.inst.doubled, Partition.unit(range(self.inst.n)))
        return self._omega


def verify_agreement(k: int, specs: list[BlockPartitionSpec] | None = None, cache: PiCache | None = None) -> Report:
    """pi restricted to the middle layers equals tau."""
    cache = cache or PiCache(gen_gk(k))
    inst = cache.inst
    specs = list(all_specs(k)) if specs is None else specs
    report = Report(f"agreement k={k}")
    middle = inst.calX_all | inst.calY_all
    for spec in specs:
        tau = tau_partition(spec, inst)
        report.check(tau.order == spec.expected_order, f"{spec}: tau has {tau.order} cells")
        pi = cache.pi(spec.level, spec.Q)
        report.check(pi.restrict(middle) == tau, f"level={spec.level} Q={sorted(spec.Q)}: pi disagrees with tau")
    return report


def op_cost_prediction(k: int, level: int) -> int:
    return k * k * (1 << (k - level - 1))


def predicted_ops(inst: LowerBoundInstance, spec: BlockPartitionSpec) -> set[tuple[frozenset[int], frozenset[int]]]:
    ell = spec.level
    out = set()
    for q in spec.Q:
        S = inst.calY(ell, q)
        out.add((inst.calX(ell + 1, 2 * q), S))
        out.add((inst.calX(ell + 1, 2 * q + 1), S))
    return out


def verify_effective_ops(k: int, specs: list[BlockPartitionSpec] | None = None, cache: PiCache | None = None) -> Report:
    """The effective elementary operations on every pi are exactly the predicted ones."""
    cache = cache or PiCache(gen_gk(k))
    inst = cache.inst
    specs = list(all_specs(k)) if specs is None else specs
    report = Report(f"effective operations k={k}")
    for spec in specs:
        label = f"level={spec.level} Q={sorted(spec.Q)}"
        pi = cache.pi(spec.level, spec.Q)
        ops = enumerate_effective_elementary(inst.graph, pi)
        found = {(frozenset(op.R), frozenset(op.S)) for op in ops}
        report.check(found == predicted_ops(inst, spec), f"{label}: {len(found)} effective ops differ from prediction")
        want = op_cost_prediction(k, spec.level)
        for op in ops:
            report.check(op.cost == want, f"{label}: op cost {op.cost} != {want}")
        by_s: dict[tuple[int, ...], set[Partition]] = {}
        for op in ops:
            by_s.setdefault(op.S, set()).add(op.result)
        for S, results in by_s.items():
            report.check(len(results) == 1, f"{label}: the two splitters of one Y block disagree")
    return report


def verify_discrete_on_x(k: int, samples: int = 8, seed: int = 0, cache: PiCache | None = None) -> Report:
    """omega is discrete on X and refines sampled pi partitions."""
    cache = cache or PiCache(gen_gk(k))
    inst = cache.inst
    report = Report(f"discrete on X k={k}")
    omega = cache.omega
    restricted = omega.restrict(inst.X)
    report.info["x_cells"] = restricted.order
    report.check(restricted.is_discrete, f"omega has {restricted.order} cells on {len(inst.X)} X vertices")
    for spec in sample_specs(k, samples, random.Random(seed)):
        pi = cache.pi(spec.level, spec.Q)
        report.check(refines(omega, pi), f"level={spec.level} Q={sorted(spec.Q)}: omega does not refine pi")
    return report


def _q_of(inst: LowerBoundInstance, level: int, S: tuple[int, ...]) -> int:
    role = inst.roles[S[0]]
    return role[1] >> (inst.k - level)


def verify_cost_recurrence(k: int, cache: PiCache | None = None) -> Report:
    """Walk the whole ``(Q, level)`` lattice and evaluate the cost recurrence.

    For each effective operation on ``pi(Q, level)`` removing block ``q``,
    the successor partition (``pi(Q - {q}, level)``, or the full next
    level when ``Q - {q}`` is empty) must refine the operation's result.
    ``info["bound"]`` is the value of the recurrence at the top.
    """
    cache = cache or PiCache(gen_gk(k))
    inst = cache.inst
    report = Report(f"cost recurrence k={k}")
    memo: dict[tuple[int, frozenset[int]], int] = {}
    reverse_direction = 0

    def successor(level: int, Q: frozenset[int]) -> Partition | None:
        if Q:
            return cache.pi(level, Q)
        if level + 1 <= k - 1:
            return cache.pi(level + 1, frozenset(range(1 << (level + 1))))
        return None

    def lb(level: int, Q: frozenset[int]) -> int:
        nonlocal reverse_direction
        if not Q:
            if level + 1 > k - 1:
                return 0
            return lb(level + 1, frozenset(range(1 << (level + 1))))
        key = (level, Q)
        if key in memo:
            return memo[key]
        pi = cache.pi(level, Q)
        ops = enumerate_effective_elementary(inst.graph, pi)
        label = f"level={level} Q={sorted(Q)}"
        report.check(bool(ops), f"{label}: no effective operation")
        want = op_cost_prediction(k, level)
        best = None
        for op in ops:
            report.check(op.cost == want, f"{label}: op cost {op.cost} != {want}")
            q = _q_of(inst, level, op.S)
            rest = Q - {q}
            nxt = successor(level, rest)
            target = nxt if nxt is not None else cache.omega
            report.check(refines(target, op.result), f"{label} q={q}: successor does not refine the result")
            if nxt is not None and refines(op.result, nxt):
                reverse_direction += 1
            value = op.cost + lb(level, rest)
            best = value if best is None else min(best, value)
        memo[key] = best or 0
        return memo[key]

    bound = lb(0, frozenset({0}))
    report.info["bound"] = bound
    report.info["states"] = len(memo)
    report.info["result_refines_successor"] = reverse_direction
    target = (1 << (k - 1)) * k**3
    report.check(bound == target, f"recurrence value {bound} != {target}")
    return report


# the canonical script


def _is_xy_pair(inst: LowerBoundInstance, R: tuple[int, ...], S: tuple[int, ...]) -> bool:
    X, Y = inst.calX_all, inst.calY_all
    return (R[0] in X and S[0] in Y) or (R[0] in Y and S[0] in X)


def canonical_script(k: int, inst: LowerBoundInstance | None = None) -> tuple[RefinementScript, Report]:
    """Level-by-level script from ``pi({0}, 0)`` to the coarsest stable partition.

    At level ``l`` it splits every ``YY`` block of level ``l`` with the even
    ``XX`` half, then applies elementary operations that use no middle-layer
    edges until nothing else is effective. ``info["xy_cost"]`` is the part
    of the total cost spent on middle-layer edges.
    """
    inst = inst or gen_gk(k)
    cache = PiCache(inst)
    g = inst.graph
    report = Report(f"canonical script k={k}")
    script = RefinementScript()
    p = cache.pi(0, frozenset({0}))
    start = p
    xy_cost = other_cost = 0
    for level in range(k):
        for q in range(1 << level):
            R, S = inst.calX(level + 1, 2 * q), inst.calY(level, q)
            report.check(R in set(map(frozenset, p.cells)), f"level {level}: X block {2 * q} is not a cell")
            script.add(R, S)
            p = apply_refining_op(g, p, R, S)
            xy_cost += cost_of_op(g, R, S)
        while True:
            pairs = [(r, s) for r, s in effective_pairs(g, p) if not _is_xy_pair(inst, p.cells[r], p.cells[s])]
            if not pairs:
                break
            r, s = pairs[0]
            R, S = p.cells[r], p.cells[s]
            script.add(R, S)
            other_cost += cost_of_op(g, R, S)
            p = apply_refining_op(g, p, R, S)
        if level + 1 <= k - 1:
            nxt = cache.pi(level + 1, frozenset(range(1 << (level + 1))))
            report.check(p == nxt, f"after level {level}: partition differs from the next full block partition")
    report.check(not effective_pairs(g, p), "final partition is not stable")
    report.check(p.restrict(inst.X).is_discrete, "final partition is not discrete on X")
    report.check(p == cache.omega, "final partition differs from the coarsest stable partition")
    target = (1 << (k - 1)) * k**3
    report.check(xy_cost == target, f"middle-layer cost {xy_cost} != {target}")
    report.info.update(xy_cost=xy_cost, other_cost=other_cost, steps=len(script), start=start, final=p)
    return script, report

"""Block partitions of the middle layers and their stable closures."""

from __future__ import annotations

from dataclasses import dataclass

from colref.errors import ContractViolation
from colref.graph import Partition
from colref.lowerbound.gk import LowerBoundInstance
from colref.oracle import naive_coarsest_stable


@dataclass(frozen=True)
class BlockPartitionSpec:
    """Level ``level`` and the set ``Q`` of level blocks of ``YY`` kept whole."""

    level: int
    Q: frozenset[int]
    k: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "Q", frozenset(self.Q))
        if not 0 <= self.level <= self.k - 1:
            raise ContractViolation(f"level {self.level} outside 0..{self.k - 1}")
        if not self.Q:
            raise ContractViolation("Q must be nonempty")
        if not all(0 <= q < (1 << self.level) for q in self.Q):
            raise ContractViolation(f"Q must be a subset of 0..{(1 << self.level) - 1}")

    @property
    def expected_order(self) -> int:
        return (1 << (self.level + 1)) + len(self.Q) + 2 * ((1 << self.level) - len(self.Q))


def tau_partition(spec: BlockPartitionSpec, inst: LowerBoundInstance) -> Partition:
    """``XX`` in blocks one level down; ``YY`` whole on ``Q`` and halved elsewhere."""
    if spec.k != inst.k:
        raise ContractViolation("spec and instance disagree on k")
    ell = spec.level
    cells = [inst.calX(ell + 1, q) for q in range(1 << (ell + 1))]
    for q in range(1 << ell):
        if q in spec.Q:
            cells.append(inst.calY(ell, q))
        else:
            cells.append(inst.calY(ell + 1, 2 * q))
            cells.append(inst.calY(ell + 1, 2 * q + 1))
    return Partition(cells)


def pi_partition(spec: BlockPartitionSpec, inst: LowerBoundInstance) -> Partition:
    """Coarsest partition stable on ``G_k`` minus the middle edges, refining tau."""
    p0 = tau_partition(spec, inst).with_rest(range(inst.n))
    return naive_coarsest_stable(inst.doubled_prime, p0)


"""Approximation spaces: a universe together with a partition of it.

The partition is the canonical form of the equivalence relation; a set of
pairs is accepted and converted after checking it really is an equivalence.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import CapacityError, InputError
from .sets import Subset, Universe
from .topology import FiniteTopology

__all__ = [
    "Partition",
    "ApproximationSpace",
    "equivalence_class",
    "upper_approximation",
    "lower_approximation",
    "boundary",
    "associated_clopen_topology",
    "set_partitions",
    "all_spaces",
    "TOPOLOGY_BLOCK_LIMIT",
]

# associated_clopen_topology materializes 2**blocks open sets
TOPOLOGY_BLOCK_LIMIT = 16


@dataclass(frozen=True)
class Partition:
    """Blocks of a partition, canonically sorted by least element position."""

    universe: Universe
    blocks: tuple[int, ...]  # bit patterns
    block_of: tuple[int, ...] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        blocks = [int(b) for b in self.blocks]
        seen = 0
        for b in blocks:
            if b == 0:
                raise InputError("partition blocks must be nonempty")
            if b & ~self.universe.full_bits:
                raise InputError("partition block lies outside the universe")
            if b & seen:
                dup = self.universe.members(b & seen)[0]
                raise InputError(f"partition blocks overlap at {dup!r}")
            seen |= b
        if seen != self.universe.full_bits:
            missing = self.universe.members(self.universe.full_bits & ~seen)[0]
            raise InputError(f"partition does not cover element {missing!r}")
        blocks.sort(key=lambda b: (b & -b))
        block_of = [0] * len(self.universe)
        for k, b in enumerate(blocks):
            i = 0
            while b:
                if b & 1:
                    block_of[i] = k
                b >>= 1
                i += 1
        object.__setattr__(self, "blocks", tuple(blocks))
        object.__setattr__(self, "block_of", tuple(block_of))

    @classmethod
    def from_blocks(cls, universe: Universe, blocks: Iterable[Iterable[str]]) -> Partition:
        return cls(universe, tuple(universe.subset(B).bits for B in blocks))

    @classmethod
    def from_pairs(cls, universe: Universe, pairs: Iterable[tuple[str, str]]) -> Partition:
        """Convert a relation given as pairs, after verifying it is an
        equivalence relation."""
        n = len(universe)
        rel = [0] * n
        for u, v in pairs:
            rel[universe.position(u)] |= 1 << universe.position(v)
        for i in range(n):
            if not rel[i] >> i & 1:
                raise InputError(f"relation is not reflexive at {universe.elements[i]!r}")
        for i in range(n):
            for j in range(n):
                if rel[i] >> j & 1 and not rel[j] >> i & 1:
                    a, b = universe.elements[i], universe.elements[j]
                    raise InputError(f"relation is not symmetric: ({a!r}, {b!r}) without ({b!r}, {a!r})")
        for i in range(n):
            for j in range(n):
                if rel[i] >> j & 1 and rel[j] & ~rel[i]:
                    a, b = universe.elements[i], universe.elements[j]
                    raise InputError(f"relation is not transitive through ({a!r}, {b!r})")
        return cls(universe, tuple(set(rel)))

    @classmethod
    def discrete(cls, universe: Universe) -> Partition:
        return cls(universe, tuple(1 << i for i in range(len(universe))))

    @classmethod
    def indiscrete(cls, universe: Universe) -> Partition:
        return cls(universe, (universe.full_bits,) if len(universe) else ())

    def __len__(self):
        return len(self.blocks)

    def block_subsets(self) -> list[Subset]:
        return [Subset(self.universe, b) for b in self.blocks]

    def as_lists(self) -> list[list[str]]:
        return [self.universe.members(b) for b in self.blocks]

    def pairs(self) -> Iterator[tuple[str, str]]:
        for b in self.blocks:
            members = self.universe.members(b)
            for u in members:
                for v in members:
                    yield u, v

    def refines(self, other: Partition) -> bool:
        """Every block of ``self`` lies inside a block of ``other``."""
        if other.universe != self.universe:
            raise InputError("partitions over different universes")
        return all(b & ~other.blocks[other.block_of[(b & -b).bit_length() - 1]] == 0 for b in self.blocks)

    def __str__(self):
        return "{" + ", ".join(str(B) for B in self.block_subsets()) + "}"


@dataclass(frozen=True)
class ApproximationSpace:
    universe: Universe
    partition: Partition

    def __post_init__(self):
        if self.partition.universe != self.universe:
            raise InputError("partition is over a different universe")

    @classmethod
    def from_blocks(cls, elements: Iterable[str], blocks: Iterable[Iterable[str]]) -> ApproximationSpace:
        U = Universe(tuple(elements))
        return cls(U, Partition.from_blocks(U, blocks))

    @classmethod
    def of(cls, partition: Partition) -> ApproximationSpace:
        return cls(partition.universe, partition)

    @property
    def blocks(self) -> tuple[int, ...]:
        return self.partition.blocks

    def class_bits(self, i: int) -> int:
        return self.partition.blocks[self.partition.block_of[i]]

    def upper_bits(self, bits: int) -> int:
        out = 0
        for b in self.partition.blocks:
            if b & bits:
                out |= b
        return out

    def lower_bits(self, bits: int) -> int:
        out = 0
        for b in self.partition.blocks:
            if b & ~bits == 0:
                out |= b
        return out

    def __str__(self):
        return str(self.partition)


def _check(S: ApproximationSpace, X: Subset):
    if not isinstance(X, Subset) or X.universe != S.universe:
        raise InputError("subset is not over the space's universe")


def equivalence_class(S: ApproximationSpace, u: str) -> Subset:
    return Subset(S.universe, S.class_bits(S.universe.position(u)))


def upper_approximation(S: ApproximationSpace, X: Subset) -> Subset:
    """Elements whose class meets ``X``."""
    _check(S, X)
    return Subset(S.universe, S.upper_bits(X.bits))


def lower_approximation(S: ApproximationSpace, X: Subset) -> Subset:
    """Elements whose class is contained in ``X``."""
    _check(S, X)
    return Subset(S.universe, S.lower_bits(X.bits))


def boundary(S: ApproximationSpace, X: Subset) -> Subset:
    return upper_approximation(S, X) - lower_approximation(S, X)


def associated_clopen_topology(S: ApproximationSpace) -> FiniteTopology:
    """Fixed points of the lower approximation, i.e. all unions of blocks."""
    blocks = S.partition.blocks
    if len(blocks) > TOPOLOGY_BLOCK_LIMIT:
        raise CapacityError(
            f"space has {len(blocks)} blocks; topology materialization is limited to "
            f"{TOPOLOGY_BLOCK_LIMIT} blocks (2**{TOPOLOGY_BLOCK_LIMIT} open sets)"
        )
    opens = [0]
    for b in blocks:
        opens += [o | b for o in opens]
    return FiniteTopology(S.universe, frozenset(opens))


def set_partitions(universe: Universe) -> Iterator[Partition]:
    """All partitions of ``universe`` (Bell(n) of them), via restricted
    growth strings."""
    n = len(universe)
    if n == 0:
        yield Partition(universe, ())
        return
    labels = [0] * n

    def grow(i, top):
        if i == n:
            blocks = [0] * (top + 1)
            for pos, k in enumerate(labels):
                blocks[k] |= 1 << pos
            yield Partition(universe, tuple(blocks))
            return
        for k in range(top + 2):
            labels[i] = k
            yield from grow(i + 1, max(top, k))

    labels[0] = 0
    yield from grow(1, 0)


def all_spaces(universe: Universe) -> Iterator[ApproximationSpace]:
    for P in set_partitions(universe):
        yield ApproximationSpace(universe, P)

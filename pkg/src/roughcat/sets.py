"""Finite universes, bit-indexed subsets, total maps and their images.

Subsets are stored as Python ints: bit ``i`` is set iff the element at
position ``i`` of the universe is a member.  All values are immutable.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from .errors import InputError

__all__ = [
    "Universe",
    "Subset",
    "TotalMap",
    "Check",
    "Mode",
    "complement",
    "union",
    "intersection",
    "difference",
    "direct_image",
    "inverse_image",
    "compose_maps",
    "identity_map",
    "inverse_map",
    "all_maps",
    "subset_sweep",
    "pair_sweep",
]


@dataclass(frozen=True)
class Universe:
    """An ordered finite set of opaque string identifiers."""

    elements: tuple[str, ...]
    index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        for e in elements:
            if not isinstance(e, str):
                raise InputError(f"element identifiers must be strings, got {e!r}")
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            dupes = sorted({e for e in elements if elements.count(e) > 1})
            raise InputError(f"duplicate element identifier(s): {', '.join(dupes)}")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "index", index)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, u):
        return u in self.index

    @property
    def full_bits(self) -> int:
        return (1 << len(self.elements)) - 1

    def position(self, u: str) -> int:
        try:
            return self.index[u]
        except (KeyError, TypeError):
            raise InputError(f"unknown element {u!r}") from None

    def subset(self, members: Iterable[str] = ()) -> Subset:
        if isinstance(members, str):
            members = [members]
        bits = 0
        for u in members:
            bits |= 1 << self.position(u)
        return Subset(self, bits)

    def from_bits(self, bits: int) -> Subset:
        if bits < 0 or bits > self.full_bits:
            raise InputError(f"bit pattern {bits} does not fit a universe of size {len(self)}")
        return Subset(self, bits)

    def empty(self) -> Subset:
        return Subset(self, 0)

    def full(self) -> Subset:
        return Subset(self, self.full_bits)

    def singleton(self, u: str) -> Subset:
        return Subset(self, 1 << self.position(u))

    def all_subsets(self) -> Iterator[Subset]:
        """Every subset, in canonical bit order (0, 1, 2, ...)."""
        for bits in range(1 << len(self.elements)):
            yield Subset(self, bits)

    def members(self, bits: int) -> list[str]:
        return [self.elements[i] for i in _positions(bits)]


def _positions(bits: int) -> Iterator[int]:
    i = 0
    while bits:
        if bits & 1:
            yield i
        bits >>= 1
        i += 1


@dataclass(frozen=True)
class Subset:
    """A subset of a specific universe."""

    universe: Universe
    bits: int

    def __iter__(self):
        return iter(self.universe.members(self.bits))

    def __len__(self):
        return self.bits.bit_count()

    def __contains__(self, u):
        i = self.universe.index.get(u)
        return i is not None and bool(self.bits >> i & 1)

    def __bool__(self):
        return self.bits != 0

    def _same(self, other) -> Universe:
        if not isinstance(other, Subset):
            raise InputError(f"expected a Subset, got {type(other).__name__}")
        if other.universe is not self.universe and other.universe != self.universe:
            raise InputError("subsets belong to different universes")
        return self.universe

    def __or__(self, other):
        return Subset(self._same(other), self.bits | other.bits)

    def __and__(self, other):
        return Subset(self._same(other), self.bits & other.bits)

    def __sub__(self, other):
        return Subset(self._same(other), self.bits & ~other.bits)

    def __invert__(self):
        return Subset(self.universe, self.universe.full_bits & ~self.bits)

    def __le__(self, other):
        self._same(other)
        return self.bits & ~other.bits == 0

    def __lt__(self, other):
        return self <= other and self.bits != other.bits

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    def isdisjoint(self, other) -> bool:
        self._same(other)
        return self.bits & other.bits == 0

    @property
    def canonical(self) -> str:
        """Comma-joined members in universe order, e.g. ``"a,b"``."""
        return ",".join(self)

    def __str__(self):
        return "{" + self.canonical + "}"

    def __repr__(self):
        return f"Subset({self})"

    def sort_key(self):
        return self.bits


def complement(X: Subset) -> Subset:
    return ~X


def union(X: Subset, Y: Subset) -> Subset:
    return X | Y


def intersection(X: Subset, Y: Subset) -> Subset:
    return X & Y


def difference(X: Subset, Y: Subset) -> Subset:
    return X - Y


@dataclass(frozen=True)
class TotalMap:
    """A total function ``source -> target``.

    ``images[i]`` is the target position of the source element at position ``i``.
    """

    source: Universe
    target: Universe
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != len(self.source):
            raise InputError(
                f"map assigns {len(images)} images to a source of size {len(self.source)}"
            )
        for j in images:
            if not 0 <= j < len(self.target):
                raise InputError(f"image position {j} outside target universe")
        object.__setattr__(self, "images", images)

    @classmethod
    def from_dict(cls, source: Universe, target: Universe, assignment: Mapping[str, str]) -> TotalMap:
        extra = [u for u in assignment if u not in source]
        if extra:
            raise InputError(f"map assigns unknown source element {extra[0]!r}")
        missing = [u for u in source if u not in assignment]
        if missing:
            raise InputError(f"map is partial: no image for {missing[0]!r}")
        images = []
        for u in source:
            v = assignment[u]
            if v not in target:
                raise InputError(f"image {v!r} of {u!r} is not a target element")
            images.append(target.index[v])
        return cls(source, target, tuple(images))

    def __call__(self, u: str) -> str:
        return self.target.elements[self.images[self.source.position(u)]]

    def as_dict(self) -> dict[str, str]:
        return {u: self.target.elements[j] for u, j in zip(self.source, self.images)}

    @property
    def is_injective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.images)) == len(self.target)

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    def image_bits(self, bits: int) -> int:
        out = 0
        for i in _positions(bits):
            out |= 1 << self.images[i]
        return out

    def preimage_bits(self, bits: int) -> int:
        out = 0
        for i, j in enumerate(self.images):
            if bits >> j & 1:
                out |= 1 << i
        return out


def direct_image(f: TotalMap, X: Subset) -> Subset:
    """``{f(u) | u in X}`` as a subset of the target."""
    if X.universe != f.source:
        raise InputError("subset is not over the map's source universe")
    return Subset(f.target, f.image_bits(X.bits))


def inverse_image(f: TotalMap, Y: Subset) -> Subset:
    """``{u | f(u) in Y}`` as a subset of the source."""
    if Y.universe != f.target:
        raise InputError("subset is not over the map's target universe")
    return Subset(f.source, f.preimage_bits(Y.bits))


def compose_maps(f: TotalMap, g: TotalMap) -> TotalMap:
    """The composite ``g . f`` (apply ``f`` first)."""
    if f.target != g.source:
        raise InputError("maps are not composable: f's target is not g's source")
    return TotalMap(f.source, g.target, tuple(g.images[j] for j in f.images))


def identity_map(U: Universe) -> TotalMap:
    return TotalMap(U, U, tuple(range(len(U))))


def inverse_map(f: TotalMap) -> TotalMap:
    if not f.is_bijective:
        raise InputError("map is not bijective")
    inv = [0] * len(f.target)
    for i, j in enumerate(f.images):
        inv[j] = i
    return TotalMap(f.target, f.source, tuple(inv))


def all_maps(source: Universe, target: Universe) -> Iterator[TotalMap]:
    """All ``|target| ** |source|`` total maps, in lexicographic image order."""
    for images in itertools.product(range(len(target)), repeat=len(source)):
        yield TotalMap(source, target, images)


@dataclass(frozen=True)
class Mode:
    """How a universally quantified property was checked."""

    exhaustive: bool
    checked: int
    seed: int | None = None
    trials: int | None = None

    def __str__(self):
        if self.exhaustive:
            return f"exhaustive ({self.checked} cases)"
        return f"sampled (seed={self.seed}, trials={self.trials})"

    def as_dict(self) -> dict:
        if self.exhaustive:
            return {"mode": "exhaustive", "checked": self.checked}
        return {"mode": "sampled", "seed": self.seed, "trials": self.trials, "checked": self.checked}

    @staticmethod
    def combine(*modes: Mode) -> Mode:
        checked = sum(m.checked for m in modes)
        sampled = [m for m in modes if not m.exhaustive]
        if not sampled:
            return Mode(True, checked)
        return Mode(False, checked, sampled[0].seed, sampled[0].trials)


@dataclass(frozen=True)
class Check:
    """A boolean verdict plus the least witness of failure, if any."""

    holds: bool
    witness: object = None
    mode: Mode | None = None

    def __bool__(self):
        return self.holds


def subset_sweep(n: int, limit: int, seed: int = 0, trials: int = 10_000) -> tuple[list[int] | range, Mode]:
    """Bit patterns to quantify over: all ``2**n`` if ``n <= limit``,
    else ``trials`` seeded random draws, deduplicated and sorted so the
    first failure found is the least one sampled."""
    if n <= limit:
        return range(1 << n), Mode(True, 1 << n)
    rng = random.Random(seed)
    picks = sorted({rng.getrandbits(n) for _ in range(trials)})
    return picks, Mode(False, len(picks), seed, trials)


def pair_sweep(n: int, limit: int, seed: int = 0, trials: int = 10_000):
    """Pairs of bit patterns, same policy as :func:`subset_sweep`."""
    if n <= limit:
        size = 1 << n
        return itertools.product(range(size), repeat=2), Mode(True, size * size)
    rng = random.Random(seed)
    picks = sorted({(rng.getrandbits(n), rng.getrandbits(n)) for _ in range(trials)})
    return picks, Mode(False, len(picks), seed, trials)

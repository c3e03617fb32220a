"""Finite topologies given extensionally by their family of open sets."""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError
from .sets import Subset, Universe

__all__ = [
    "FiniteTopology",
    "TopologyReport",
    "analyze_topology",
    "minimal_neighborhood",
    "is_base",
    "is_continuous",
]


@dataclass(frozen=True)
class FiniteTopology:
    """A family of subsets of ``universe`` claimed to be a topology.

    Construction does not enforce the axioms; :func:`analyze_topology`
    diagnoses them.
    """

    universe: Universe
    opens: frozenset  # of int bit patterns

    def __post_init__(self):
        opens = frozenset(self.opens)
        full = self.universe.full_bits
        for b in opens:
            if not isinstance(b, int) or b < 0 or b & ~full:
                raise InputError(f"open set {b!r} is not a subset of the universe")
        object.__setattr__(self, "opens", opens)

    @classmethod
    def from_subsets(cls, universe: Universe, family) -> FiniteTopology:
        bits = set()
        for X in family:
            if isinstance(X, Subset):
                if X.universe != universe:
                    raise InputError("open set over a different universe")
                bits.add(X.bits)
            else:
                bits.add(universe.subset(X).bits)
        return cls(universe, frozenset(bits))

    def __len__(self):
        return len(self.opens)

    def __contains__(self, X):
        if isinstance(X, Subset):
            return X.universe == self.universe and X.bits in self.opens
        return X in self.opens

    def open_sets(self) -> list[Subset]:
        """Open sets in canonical bit order."""
        return [Subset(self.universe, b) for b in sorted(self.opens)]


@dataclass(frozen=True)
class TopologyReport:
    is_topology: bool
    violation: tuple | None  # (reason, X, Y) for the least offending pair
    is_clopen: bool
    clopen_violation: Subset | None
    # every finite topology is Alexandroff; kept explicit for reporting
    is_alexandroff: bool
    minimal_base: tuple[Subset, ...]

    def lines(self) -> list[str]:
        mark = lambda ok: "yes" if ok else "no"  # noqa: E731
        out = [f"topology: {mark(self.is_topology)}"]
        if self.violation:
            reason, X, Y = self.violation
            out.append(f"  violation: {reason} {X} {Y if Y is not None else ''}".rstrip())
        out.append(f"clopen: {mark(self.is_clopen)}")
        if self.clopen_violation is not None:
            out.append(f"  complement of {self.clopen_violation} is not open")
        out.append(f"alexandroff: {mark(self.is_alexandroff)} (finite)")
        out.append("minimal base: " + ", ".join(str(B) for B in self.minimal_base))
        return out


def _topology_violation(T: FiniteTopology):
    U = T.universe
    if 0 not in T.opens:
        return ("missing empty set", U.empty(), None)
    if U.full_bits not in T.opens:
        return ("missing universe", U.full(), None)
    ordered = sorted(T.opens)
    for i, a in enumerate(ordered):
        for b in ordered[i + 1:]:
            if a | b not in T.opens:
                return ("union not open", Subset(U, a), Subset(U, b))
            if a & b not in T.opens:
                return ("intersection not open", Subset(U, a), Subset(U, b))
    return None


def _minimal_neighborhood_bits(T: FiniteTopology, i: int) -> int:
    out = T.universe.full_bits
    for b in T.opens:
        if b >> i & 1:
            out &= b
    return out


def minimal_neighborhood(T: FiniteTopology, u: str) -> Subset:
    """Intersection of all open sets containing ``u``."""
    i = T.universe.position(u)
    return Subset(T.universe, _minimal_neighborhood_bits(T, i))


def analyze_topology(T: FiniteTopology) -> TopologyReport:
    U = T.universe
    violation = _topology_violation(T)
    clopen_violation = None
    for b in sorted(T.opens):
        if U.full_bits & ~b not in T.opens:
            clopen_violation = Subset(U, b)
            break
    base = sorted({_minimal_neighborhood_bits(T, i) for i in range(len(U))})
    return TopologyReport(
        is_topology=violation is None,
        violation=violation,
        is_clopen=clopen_violation is None,
        clopen_violation=clopen_violation,
        is_alexandroff=violation is None,
        minimal_base=tuple(Subset(U, b) for b in base),
    )


def is_base(T: FiniteTopology, family) -> bool:
    """True iff every member of ``family`` is open and every open set is a
    union of members of ``family``."""
    fam = {X.bits if isinstance(X, Subset) else X for X in family}
    if not fam <= T.opens:
        return False
    for b in T.opens:
        covered = 0
        for m in fam:
            if m & ~b == 0:
                covered |= m
        if covered != b:
            return False
    return True


def is_continuous(f, source: FiniteTopology, target: FiniteTopology):
    """Inverse image of every open set of ``target`` is open in ``source``.

    Returns the least offending target open set, or ``None``.
    """
    if f.source != source.universe or f.target != target.universe:
        raise InputError("map does not match the topologies' universes")
    for b in sorted(target.opens):
        if f.preimage_bits(b) not in source.opens:
            return Subset(target.universe, b)
    return None

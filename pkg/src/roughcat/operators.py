"""Set operators ``2^U -> 2^U``: Kuratowski closure/interior classification,
the rough condition, duality and the topologies these operators induce."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .approximation import ApproximationSpace, Partition, set_partitions
from .errors import CapacityError, DomainError, InputError
from .sets import Check, Mode, Subset, Universe, pair_sweep, subset_sweep
from .topology import FiniteTopology, TopologyReport, analyze_topology, minimal_neighborhood

__all__ = [
    "SetOperator",
    "AxiomReport",
    "evaluate",
    "classify_closure",
    "classify_interior",
    "dual_interior",
    "dual_closure",
    "operators_equal",
    "operator_topology",
    "point_closure_basis",
    "require_rough_closure",
    "require_rough_interior",
    "rough_census",
    "rough_closure_tables",
    "CensusResult",
    "FiniteTopology",
    "TopologyReport",
    "analyze_topology",
    "minimal_neighborhood",
    "TABLE_LIMIT",
    "SINGLE_LIMIT",
    "PAIR_LIMIT",
]

TABLE_LIMIT = 16  # extensional tables hold 2**n entries
SINGLE_LIMIT = 14  # exhaustive single-set axioms up to this universe size
PAIR_LIMIT = 10  # exhaustive pair axioms (4**n pairs) up to this size
DEFAULT_SEED = 0
DEFAULT_TRIALS = 10_000


@dataclass(frozen=True, eq=False)
class SetOperator:
    """A map on the power set of ``universe``.

    Backed either by an extensional ``table`` (indexed by subset bit pattern)
    or by a ``partition`` evaluated as its upper or lower approximation.
    Compare operators with :func:`operators_equal`, not ``==``.
    """

    universe: Universe
    table: tuple[int, ...] | None = None
    partition: Partition | None = None
    mode: str | None = None
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if (self.table is None) == (self.partition is None):
            raise InputError("operator needs exactly one backing: table or partition")
        if self.table is not None:
            n = len(self.universe)
            if n > TABLE_LIMIT:
                raise CapacityError(f"extensional tables are limited to |U| <= {TABLE_LIMIT}, got {n}")
            table = tuple(self.table)
            if len(table) != 1 << n:
                raise InputError(f"table has {len(table)} entries, expected {1 << n}")
            full = self.universe.full_bits
            for b in table:
                if b < 0 or b & ~full:
                    raise InputError("table value outside the universe")
            object.__setattr__(self, "table", table)
        else:
            if self.partition.universe != self.universe:
                raise InputError("partition is over a different universe")
            if self.mode not in ("upper", "lower"):
                raise InputError(f"partition mode must be 'upper' or 'lower', got {self.mode!r}")
            space = ApproximationSpace(self.universe, self.partition)
            fn = space.upper_bits if self.mode == "upper" else space.lower_bits
            self._cache["apply"] = fn

    @classmethod
    def from_table(cls, universe: Universe, table: Mapping | Callable | list) -> SetOperator:
        """Build from a mapping ``Subset -> Subset`` (or iterable-of-ids keys),
        a callable on subsets, or a list of bit patterns."""
        size = 1 << len(universe)
        if len(universe) > TABLE_LIMIT:
            raise CapacityError(f"extensional tables are limited to |U| <= {TABLE_LIMIT}, got {len(universe)}")
        if callable(table):
            rows = [_bits(universe, table(Subset(universe, b))) for b in range(size)]
        elif isinstance(table, Mapping):
            rows = [None] * size
            for k, v in table.items():
                kb = _bits(universe, k)
                if rows[kb] is not None:
                    raise InputError(f"duplicate table entry for {universe.from_bits(kb)}")
                rows[kb] = _bits(universe, v)
            missing = [b for b, r in enumerate(rows) if r is None]
            if missing:
                raise InputError(f"table has no entry for subset {universe.from_bits(missing[0])}")
        else:
            rows = [_bits(universe, v) for v in table]
        return cls(universe, table=tuple(rows))

    @classmethod
    def from_partition(cls, partition: Partition, mode: str = "upper") -> SetOperator:
        return cls(partition.universe, partition=partition, mode=mode)

    @classmethod
    def identity(cls, universe: Universe) -> SetOperator:
        if len(universe) <= TABLE_LIMIT:
            return cls(universe, table=tuple(range(1 << len(universe))))
        return cls.from_partition(Partition.discrete(universe), "upper")

    @property
    def backing(self) -> str:
        return "table" if self.table is not None else "partition"

    def apply_bits(self, bits: int) -> int:
        if self.table is not None:
            return self.table[bits]
        return self._cache["apply"](bits)

    def __call__(self, X: Subset) -> Subset:
        return evaluate(self, X)

    def to_table(self) -> SetOperator:
        if self.table is not None:
            return self
        n = len(self.universe)
        if n > TABLE_LIMIT:
            raise CapacityError(f"extensional tables are limited to |U| <= {TABLE_LIMIT}, got {n}")
        return SetOperator(self.universe, table=tuple(self.apply_bits(b) for b in range(1 << n)))


def _bits(universe: Universe, X) -> int:
    if isinstance(X, Subset):
        if X.universe != universe:
            raise InputError("subset over a different universe")
        return X.bits
    if isinstance(X, int):
        return universe.from_bits(X).bits
    return universe.subset(X).bits


def evaluate(op: SetOperator, X: Subset) -> Subset:
    if not isinstance(X, Subset) or X.universe != op.universe:
        raise InputError("subset is not over the operator's universe")
    return Subset(op.universe, op.apply_bits(X.bits))


@dataclass(frozen=True)
class AxiomReport:
    """Verdicts for the four Kuratowski axioms plus the rough condition.

    A sampled verdict only means no counterexample was found.
    """

    kind: str  # "closure" or "interior"
    verdicts: dict[str, bool]
    counterexamples: dict[str, tuple[Subset, ...]]
    mode: Mode
    checked: dict[str, int]

    @property
    def axioms(self) -> tuple[str, ...]:
        return tuple(k for k in self.verdicts if k != "rough")

    @property
    def holds(self) -> bool:
        """All four axioms hold (closure or interior operator)."""
        return all(self.verdicts[k] for k in self.axioms)

    @property
    def rough(self) -> bool:
        return self.verdicts["rough"]

    @property
    def is_rough(self) -> bool:
        return self.holds and self.rough

    @property
    def proved(self) -> bool:
        return self.mode.exhaustive and self.is_rough

    def lines(self) -> list[str]:
        qualifier = "holds" if self.mode.exhaustive else "no counterexample found"
        out = []
        for name, ok in self.verdicts.items():
            label = "rough" if name == "rough" else name
            if ok:
                out.append(f"{label}: {qualifier} ({self.checked[name]} cases)")
            else:
                witness = ", ".join(str(X) for X in self.counterexamples[name])
                out.append(f"{label}: FAILS at {witness}")
        verdict = "yes" if self.holds else "no"
        out.append(f"{self.kind} operator: {verdict}")
        out.append(f"rough {self.kind} operator: {'yes' if self.is_rough else 'no'}")
        out.append(f"verification: {self.mode}")
        return out

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "verdicts": dict(self.verdicts),
            "is_operator": self.holds,
            "is_rough": self.is_rough,
            "counterexamples": {k: [list(X) for X in v] for k, v in self.counterexamples.items()},
            "checked": dict(self.checked),
            "verification": self.mode.as_dict(),
        }


def _first_failure(candidates, predicate):
    for c in candidates:
        if not predicate(c):
            return c
    return None


def _classify(op: SetOperator, kind: str, seed: int, trials: int) -> AxiomReport:
    key = (kind, seed, trials)
    cached = op._cache.get(key)
    if cached is not None:
        return cached
    U = op.universe
    n = len(U)
    full = U.full_bits
    c = op.apply_bits
    singles, smode = subset_sweep(n, SINGLE_LIMIT, seed, trials)
    pairs, pmode = pair_sweep(n, PAIR_LIMIT, seed + 1, trials)

    if kind == "closure":
        names = ("KC1", "KC2", "KC3", "KC4")
        unit = lambda: c(0) == 0  # noqa: E731
        unit_witness = 0
        extensive = lambda x: x & ~c(x) == 0  # noqa: E731
        additive = lambda p: c(p[0] | p[1]) == c(p[0]) | c(p[1])  # noqa: E731
    else:
        names = ("KI1", "KI2", "KI3", "KI4")
        unit = lambda: c(full) == full  # noqa: E731
        unit_witness = full
        extensive = lambda x: c(x) & ~x == 0  # noqa: E731
        additive = lambda p: c(p[0] & p[1]) == c(p[0]) & c(p[1])  # noqa: E731
    idempotent = lambda x: c(c(x)) == c(x)  # noqa: E731
    # the rough condition has the same shape for closure and interior
    rough = lambda x: c(x) == full & ~c(full & ~c(x))  # noqa: E731

    verdicts, cex, checked = {}, {}, {}
    ok = unit()
    verdicts[names[0]] = ok
    checked[names[0]] = 1
    if not ok:
        cex[names[0]] = (Subset(U, unit_witness),)
    for name, pred in ((names[1], extensive), (names[2], idempotent)):
        bad = _first_failure(singles, pred)
        verdicts[name] = bad is None
        checked[name] = smode.checked
        if bad is not None:
            cex[name] = (Subset(U, bad),)
    bad = _first_failure(pairs, additive)
    verdicts[names[3]] = bad is None
    checked[names[3]] = pmode.checked
    if bad is not None:
        cex[names[3]] = (Subset(U, bad[0]), Subset(U, bad[1]))
    bad = _first_failure(singles, rough)
    verdicts["rough"] = bad is None
    checked["rough"] = smode.checked
    if bad is not None:
        cex["rough"] = (Subset(U, bad),)

    report = AxiomReport(kind, verdicts, cex, Mode.combine(smode, pmode), checked)
    op._cache[key] = report
    return report


def classify_closure(op: SetOperator, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> AxiomReport:
    """Check KC1-KC4 and the rough condition ``c(X) = U - c(U - c(X))``.

    Exhaustive for ``|U| <= 14`` (single-set axioms) and ``|U| <= 10``
    (additivity); seeded sampling beyond.  Counterexamples are the least
    in canonical bit order among those examined.
    """
    return _classify(op, "closure", seed, trials)


def classify_interior(op: SetOperator, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> AxiomReport:
    """Interior counterpart of :func:`classify_closure` (KI1-KI4 and
    ``i(X) = U - i(U - i(X))``)."""
    return _classify(op, "interior", seed, trials)


def _dual(op: SetOperator) -> SetOperator:
    if op.partition is not None:
        return SetOperator.from_partition(op.partition, "lower" if op.mode == "upper" else "upper")
    full = op.universe.full_bits
    t = op.table
    return SetOperator(op.universe, table=tuple(full & ~t[full & ~b] for b in range(len(t))))


def dual_interior(op: SetOperator) -> SetOperator:
    """``X -> U - op(U - X)``; the interior operator of a closure operator."""
    return _dual(op)


def dual_closure(op: SetOperator) -> SetOperator:
    """``X -> U - op(U - X)``; the closure operator of an interior operator."""
    return _dual(op)


def _is_rough_closure(op: SetOperator) -> bool:
    if op.partition is not None:
        return op.mode == "upper"
    return classify_closure(op).is_rough


def _is_rough_interior(op: SetOperator) -> bool:
    if op.partition is not None:
        return op.mode == "lower"
    return classify_interior(op).is_rough


def require_rough_closure(op: SetOperator) -> None:
    if not _is_rough_closure(op):
        raise DomainError("operator is not a rough closure operator")


def require_rough_interior(op: SetOperator) -> None:
    if not _is_rough_interior(op):
        raise DomainError("operator is not a rough interior operator")


def operators_equal(a: SetOperator, b: SetOperator, seed: int = DEFAULT_SEED, trials: int = DEFAULT_TRIALS) -> Check:
    """Extensional equality; the witness is the least subset where they differ.

    All subsets are compared for ``|U| <= 14``.  Beyond that, two rough
    closure operators are equal iff they agree on singletons (each is the
    upper approximation of the partition its point closures form), and
    dually two rough interior operators iff they agree on co-singletons.
    Otherwise singletons plus a seeded sample are compared.
    """
    if a.universe != b.universe:
        return Check(False, "different universes")
    U = a.universe
    n = len(U)
    full = U.full_bits
    if n <= SINGLE_LIMIT:
        candidates, mode = range(1 << n), Mode(True, 1 << n)
    elif _is_rough_closure(a) and _is_rough_closure(b):
        candidates, mode = [1 << i for i in range(n)], Mode(True, n)
    elif _is_rough_interior(a) and _is_rough_interior(b):
        candidates = sorted(full & ~(1 << i) for i in range(n))
        mode = Mode(True, n)
    else:
        sample, mode = subset_sweep(n, SINGLE_LIMIT, seed, trials)
        candidates = sorted(set(sample) | {1 << i for i in range(n)})
    bad = _first_failure(candidates, lambda x: a.apply_bits(x) == b.apply_bits(x))
    if bad is None:
        return Check(True, None, mode)
    return Check(False, Subset(U, bad), mode)


def operator_topology(op: SetOperator) -> FiniteTopology:
    """Open sets ``{X | op(U - X) = U - X}`` of a closure operator."""
    if not classify_closure(op).holds:
        raise DomainError("operator is not a closure operator")
    n = len(op.universe)
    if n > TABLE_LIMIT:
        raise CapacityError(f"topology enumeration is limited to |U| <= {TABLE_LIMIT}, got {n}")
    full = op.universe.full_bits
    c = op.apply_bits
    return FiniteTopology(op.universe, frozenset(x for x in range(1 << n) if c(full & ~x) == full & ~x))


def point_closure_basis(op: SetOperator) -> list[Subset]:
    """The distinct point closures ``op({u})``, in canonical order."""
    require_rough_closure(op)
    U = op.universe
    return [Subset(U, b) for b in sorted({op.apply_bits(1 << i) for i in range(len(U))})]


# ---------------------------------------------------------------------------
# census of rough closure operators over all extensional tables


@dataclass(frozen=True)
class CensusResult:
    size: int
    tables: int
    rough_closures: int
    partitions: int

    @property
    def match(self) -> bool:
        return self.rough_closures == self.partitions

    def line(self) -> str:
        verdict = "MATCH" if self.match else "MISMATCH"
        return (
            f"{self.tables} tables, {self.rough_closures} rough closure operators, "
            f"{self.partitions} partitions — {verdict}"
        )


CENSUS_LIMIT = 3
_CHUNK_COLUMNS = 6


def _surviving(T: np.ndarray, full: int) -> np.ndarray:
    """Rows of ``T`` (one table per row, column = subset bits) that are rough
    closure operators."""
    S = T.shape[1]
    T = T[T[:, 0] == 0]  # KC1
    for x in range(1, S):  # KC2
        T = T[(T[:, x] & x) == x]
    rows = np.arange(len(T))
    keep = np.ones(len(T), dtype=bool)
    for x in range(S):  # KC3
        cx = T[:, x].astype(np.intp)
        keep &= T[rows, cx] == T[:, x]
    for x, y in itertools.combinations(range(S), 2):  # KC4 (x = y is trivial)
        keep &= T[:, x | y] == (T[:, x] | T[:, y])
    for x in range(S):  # rough condition
        cx = T[:, x]
        inner = T[rows, (full ^ cx).astype(np.intp)]
        keep &= cx == (full ^ inner)
    return T[keep]


def _enumerate_rough(n: int, prune: bool) -> tuple[list[tuple[int, ...]], int]:
    if not 0 <= n <= CENSUS_LIMIT:
        raise CapacityError(f"census enumeration is limited to n <= {CENSUS_LIMIT}, got {n}")
    S = 1 << n
    full = S - 1
    m = min(S, _CHUNK_COLUMNS)
    tail = np.indices((S,) * m, dtype=np.uint8).reshape(m, -1).T
    found, decided = [], 0
    for prefix in itertools.product(range(S), repeat=S - m):
        decided += len(tail)
        # tables failing KC1/KC2 in the fixed prefix columns fail as a block
        if prune and prefix and (prefix[0] != 0 or any(v & x != x for x, v in enumerate(prefix))):
            continue
        T = np.empty((len(tail), S), dtype=np.uint8)
        T[:, : S - m] = prefix
        T[:, S - m:] = tail
        found.extend(tuple(int(v) for v in row) for row in _surviving(T, full))
    return sorted(found), decided


def rough_closure_tables(n: int, prune: bool = True) -> list[tuple[int, ...]]:
    """Every table on an ``n``-element universe that is a rough closure
    operator, found by deciding all ``(2**n)**(2**n)`` tables.

    With ``prune`` a chunk whose fixed columns already violate KC1 or KC2
    is rejected as a whole instead of row by row.
    """
    return _enumerate_rough(n, prune)[0]


def rough_census(n: int, prune: bool = True) -> CensusResult:
    tables, decided = _enumerate_rough(n, prune)
    partitions = sum(1 for _ in set_partitions(Universe(tuple(f"u{i}" for i in range(n)))))
    return CensusResult(n, decided, len(tables), partitions)


def random_table_operator(universe: Universe, rng: random.Random) -> SetOperator:
    """A uniformly random extensional operator (for sampling sweeps)."""
    n = len(universe)
    return SetOperator(universe, table=tuple(rng.getrandbits(n) if n else 0 for _ in range(1 << n)))

"""Information systems, indiscernibility, O-A-D homomorphisms and the
functors between non-expansive information systems and approximation
spaces."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .approximation import ApproximationSpace, Partition
from .errors import CapacityError, ConsistencyError, DomainError, InputError
from .morphisms import is_relation_preserving
from .sets import Check, TotalMap, Universe, compose_maps, identity_map

__all__ = [
    "InfoSystem",
    "OADHom",
    "indiscernibility",
    "finest_space",
    "single_attribute_system",
    "block_name",
    "is_oad_homomorphism",
    "is_non_expansive",
    "identity_hom",
    "compose_homs",
    "functor_H",
    "functor_H_arrow",
    "functor_H_prime",
    "functor_H_prime_arrow",
    "verify_H_roundtrip",
    "hprime_h_counterexample",
    "find_reducts",
    "REDUCT_ATTRIBUTE_LIMIT",
    "SINGLE_ATTRIBUTE",
]

REDUCT_ATTRIBUTE_LIMIT = 20
SINGLE_ATTRIBUTE = "a_t"


@dataclass(frozen=True)
class InfoSystem:
    """Objects x attributes table of opaque value strings.

    ``rows[i][k]`` is the value of attribute ``attributes[k]`` on the
    object at position ``i`` of ``universe``.
    """

    universe: Universe
    attributes: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        attributes = tuple(self.attributes)
        if len(set(attributes)) != len(attributes):
            dupes = sorted({a for a in attributes if attributes.count(a) > 1})
            raise InputError(f"duplicate attribute name(s): {', '.join(dupes)}")
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) != len(self.universe):
            raise InputError(f"table has {len(rows)} rows for {len(self.universe)} objects")
        for x, r in zip(self.universe, rows):
            if len(r) != len(attributes):
                raise InputError(f"row for object {x!r} has {len(r)} cells, expected {len(attributes)}")
            for v in r:
                if not isinstance(v, str):
                    raise InputError(f"value {v!r} of object {x!r} is not a string")
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_records(cls, objects: Sequence[str], attributes: Sequence[str], records: Mapping[str, Sequence[str]]) -> InfoSystem:
        """``records[object]`` is that object's value tuple in attribute order."""
        U = Universe(tuple(objects))
        return cls(U, tuple(attributes), tuple(tuple(records[x]) for x in U))

    @classmethod
    def from_columns(cls, objects: Sequence[str], columns: Mapping[str, Sequence[str]]) -> InfoSystem:
        U = Universe(tuple(objects))
        attrs = tuple(columns)
        for a in attrs:
            if len(columns[a]) != len(U):
                raise InputError(f"column {a!r} has {len(columns[a])} values for {len(U)} objects")
        return cls(U, attrs, tuple(tuple(columns[a][i] for a in attrs) for i in range(len(U))))

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(v for r in self.rows for v in r)

    def attribute_index(self, a: str) -> int:
        try:
            return self.attributes.index(a)
        except ValueError:
            raise InputError(f"unknown attribute {a!r}") from None

    def value(self, x: str, a: str) -> str:
        return self.rows[self.universe.position(x)][self.attribute_index(a)]


def indiscernibility(T: InfoSystem, B: Iterable[str]) -> Partition:
    """Objects grouped by their value tuple over ``B``; ``B`` empty gives a
    single block."""
    cols = [T.attribute_index(a) for a in B]
    groups: dict[tuple, int] = {}
    for i, r in enumerate(T.rows):
        key = tuple(r[k] for k in cols)
        groups[key] = groups.get(key, 0) | 1 << i
    return Partition(T.universe, tuple(groups.values()))


def finest_space(T: InfoSystem) -> ApproximationSpace:
    return ApproximationSpace(T.universe, indiscernibility(T, T.attributes))


def block_name(universe: Universe, bits: int) -> str:
    return "{" + ",".join(universe.members(bits)) + "}"


def single_attribute_system(S: ApproximationSpace, attribute: str = SINGLE_ATTRIBUTE) -> InfoSystem:
    """One attribute whose value on ``u`` is the name of ``u``'s class."""
    U = S.universe
    rows = tuple((block_name(U, S.class_bits(i)),) for i in range(len(U)))
    return InfoSystem(U, (attribute,), rows)


@dataclass(frozen=True)
class OADHom:
    """Object, attribute and value maps between two information systems."""

    objects: TotalMap
    attributes: Mapping[str, str]
    values: Mapping[str, str]
    source: InfoSystem
    target: InfoSystem

    def __post_init__(self):
        if self.objects.source != self.source.universe or self.objects.target != self.target.universe:
            raise InputError("object map does not match the systems' universes")
        attrs = dict(self.attributes)
        for a in self.source.attributes:
            if a not in attrs:
                raise InputError(f"attribute map has no image for {a!r}")
        for a, b in attrs.items():
            if a not in self.source.attributes:
                raise InputError(f"attribute map covers unknown source attribute {a!r}")
            if b not in self.target.attributes:
                raise InputError(f"attribute image {b!r} is not a target attribute")
        vals = dict(self.values)
        dom, tdom = self.source.domain, self.target.domain
        for v in sorted(dom):
            if v not in vals:
                raise InputError(f"value map has no image for {v!r}")
        for v, w in vals.items():
            if v not in dom:
                raise InputError(f"value map covers value {v!r} outside the source domain")
            if w not in tdom:
                raise InputError(f"value image {w!r} is not in the target domain")
        object.__setattr__(self, "attributes", attrs)
        object.__setattr__(self, "values", vals)

    __hash__ = None


def is_oad_homomorphism(h: OADHom) -> Check:
    """``h_D(a(x)) == h_A(a)(h_O(x))`` for every attribute ``a`` and object
    ``x``; the witness is the first failing ``(a, x)`` in attribute-then-object
    order."""
    S, T = h.source, h.target
    for k, a in enumerate(S.attributes):
        b = T.attributes.index(h.attributes[a])
        for i, x in enumerate(S.universe):
            lhs = h.values[S.rows[i][k]]
            rhs = T.rows[h.objects.images[i]][b]
            if lhs != rhs:
                return Check(False, (a, x))
    return Check(True)


def is_non_expansive(h: OADHom) -> Check:
    """The attribute map is onto; the witness is the first unhit target attribute."""
    hit = set(h.attributes.values())
    for b in h.target.attributes:
        if b not in hit:
            return Check(False, b)
    return Check(True)


def identity_hom(T: InfoSystem) -> OADHom:
    return OADHom(
        identity_map(T.universe),
        {a: a for a in T.attributes},
        {v: v for v in T.domain},
        T,
        T,
    )


def compose_homs(h: OADHom, g: OADHom) -> OADHom:
    """``g . h`` componentwise (``h`` first)."""
    if h.target != g.source:
        raise InputError("homomorphisms are not composable")
    return OADHom(
        compose_maps(h.objects, g.objects),
        {a: g.attributes[b] for a, b in h.attributes.items()},
        {v: g.values[w] for v, w in h.values.items()},
        h.source,
        g.target,
    )


def functor_H(T: InfoSystem) -> ApproximationSpace:
    return finest_space(T)


def functor_H_arrow(h: OADHom) -> TotalMap:
    """The object map of a non-expansive homomorphism, after confirming it
    is relation-preserving between the finest spaces."""
    hom = is_oad_homomorphism(h)
    if not hom:
        raise DomainError(f"not an O-A-D homomorphism: condition fails at {hom.witness}")
    ne = is_non_expansive(h)
    if not ne:
        raise DomainError(f"homomorphism is expansive: target attribute {ne.witness!r} is not hit")
    rp = is_relation_preserving(h.objects, finest_space(h.source), finest_space(h.target))
    if not rp:
        raise ConsistencyError(f"non-expansive homomorphism with non-preserving object map, witness {rp.witness}")
    return h.objects


def functor_H_prime(S: ApproximationSpace) -> InfoSystem:
    return single_attribute_system(S)


def functor_H_prime_arrow(f: TotalMap, S: ApproximationSpace, T: ApproximationSpace) -> OADHom:
    """``(f, a_t -> a_s, [u]_t -> [f(u)]_s)`` for a relation-preserving ``f``."""
    rp = is_relation_preserving(f, S, T)
    if not rp:
        raise DomainError(f"map is not relation-preserving, witness {rp.witness}")
    src, tgt = functor_H_prime(S), functor_H_prime(T)
    values: dict[str, str] = {}
    for i in range(len(S.universe)):
        v = block_name(S.universe, S.class_bits(i))
        w = block_name(T.universe, T.class_bits(f.images[i]))
        if values.setdefault(v, w) != w:
            raise ConsistencyError(f"value map is not well defined on class {v}")
    attrs = {a: tgt.attributes[0] for a in src.attributes}
    return OADHom(f, attrs, values, src, tgt)


def verify_H_roundtrip(spaces: Iterable[ApproximationSpace]):
    """``H(H'(S)) == S`` for every space in the corpus."""
    from .functors import FunctorCheckReport

    report = FunctorCheckReport("H.H'")
    results = []
    for S in spaces:
        report.inventory.append(("space", S))
        ok = functor_H(functor_H_prime(S)) == S
        results.append(ok)
        if not ok:
            report.failures.append(f"H(H'(S)) != S for {S}")
    report.roundtrips = {"H.H' = 1 (objects)": all(results)}
    return report


def color_size_system() -> InfoSystem:
    return InfoSystem.from_columns(
        ["x1", "x2", "x3", "x4"],
        {"color": ["R", "R", "G", "G"], "size": ["S", "M", "S", "M"]},
    )


def hprime_h_counterexample() -> tuple[InfoSystem, InfoSystem]:
    """A two-attribute system ``T`` and ``H'(H(T))``, which has one attribute
    and so differs from ``T``."""
    T = color_size_system()
    back = functor_H_prime(functor_H(T))
    if back == T:
        raise ConsistencyError("stored counterexample round-trips to itself")
    return T, back


def find_reducts(T: InfoSystem) -> list[tuple[str, ...]]:
    """All inclusion-minimal attribute subsets with the same
    indiscernibility as the full attribute set, by exhaustive search."""
    n = len(T.attributes)
    if n > REDUCT_ATTRIBUTE_LIMIT:
        raise CapacityError(f"reduct search is limited to {REDUCT_ATTRIBUTE_LIMIT} attributes, got {n}")
    target = indiscernibility(T, T.attributes)
    found: list[int] = []
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            mask = sum(1 << k for k in combo)
            if any(m & ~mask == 0 for m in found):
                continue  # a smaller reduct is inside: not minimal
            if indiscernibility(T, [T.attributes[k] for k in combo]) == target:
                found.append(mask)
    reducts = [tuple(k for k in range(n) if m >> k & 1) for m in found]
    reducts.sort()
    return [tuple(T.attributes[k] for k in r) for r in reducts]

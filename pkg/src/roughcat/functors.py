"""The functors between approximation spaces (AprS), rough closure spaces
(RCls) and rough interior spaces (RInt), plus harnesses that check the
functor laws and round-trip identities over a finite corpus.

Every functor here acts on arrows as the identity on the underlying
function; what the harnesses really verify is that the transported function
is still an arrow of the target category and that objects round-trip.
"""
from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Callable

from .approximation import ApproximationSpace, Partition, all_spaces
from .errors import ConsistencyError, InputError
from .morphisms import is_continuous_closure_map, is_continuous_interior_map, is_relation_preserving
from .operators import (
    SetOperator,
    dual_closure,
    dual_interior,
    operators_equal,
    require_rough_closure,
    require_rough_interior,
)
from .sets import TotalMap, Universe, all_maps, compose_maps, identity_map

__all__ = [
    "Arrow",
    "Corpus",
    "FunctorCheckReport",
    "functor_F",
    "functor_F_prime",
    "functor_G",
    "functor_G_inverse",
    "verify_roundtrips",
    "verify_functor_laws",
    "space_corpus",
    "FUNCTORS",
]


@functools.lru_cache(maxsize=4096)
def functor_F(S: ApproximationSpace) -> SetOperator:
    """The upper approximation of ``S`` as a rough closure operator."""
    return SetOperator.from_partition(S.partition, "upper")


def functor_F_prime(op: SetOperator) -> ApproximationSpace:
    """The space whose class of ``u`` is the point closure ``op({u})``."""
    require_rough_closure(op)
    U = op.universe
    closures = [op.apply_bits(1 << i) for i in range(len(U))]
    for i, b in enumerate(closures):
        if not b >> i & 1:
            raise ConsistencyError(f"point closure of {U.elements[i]!r} does not contain it")
        for j, c in enumerate(closures[:i]):
            if b != c and b & c:
                raise ConsistencyError(
                    f"point closures of {U.elements[j]!r} and {U.elements[i]!r} overlap without being equal"
                )
    try:
        P = Partition(U, tuple(set(closures)))
    except InputError as exc:
        raise ConsistencyError(f"point closures do not partition the universe: {exc}") from None
    return ApproximationSpace(U, P)


def functor_G(op: SetOperator) -> SetOperator:
    """Rough closure operator to its dual rough interior operator."""
    require_rough_closure(op)
    return dual_interior(op)


def functor_G_inverse(op: SetOperator) -> SetOperator:
    """Rough interior operator to its dual rough closure operator."""
    require_rough_interior(op)
    return dual_closure(op)


@dataclass(frozen=True)
class Arrow:
    """A function together with the objects it is claimed to connect."""

    map: TotalMap
    source: object
    target: object


@dataclass
class Corpus:
    """Objects and arrows of AprS to run the harnesses over.

    ``pairs`` lists composable ``(f, g)`` arrow pairs (``f`` first); when
    omitted, every composable pair drawn from ``arrows`` is used.
    ``operators`` may add rough closure operators that are not images of
    ``spaces``.
    """

    spaces: list
    arrows: list = field(default_factory=list)
    operators: list = field(default_factory=list)
    pairs: list | None = None

    def composable_pairs(self) -> list[tuple[Arrow, Arrow]]:
        if self.pairs is not None:
            for f, g in self.pairs:
                if not (f.target == g.source and f.map.target == g.map.source):
                    raise InputError("corpus pair is not composable: first target differs from second source")
            return list(self.pairs)
        by_source = {}
        for g in self.arrows:
            by_source.setdefault(g.source, []).append(g)
        return [(f, g) for f in self.arrows for g in by_source.get(f.target, ())]


@dataclass
class FunctorCheckReport:
    functor: str
    identity_law: bool | None = None
    composition_law: bool | None = None
    roundtrips: dict = field(default_factory=dict)
    inventory: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    mode: str = "exhaustive over corpus"

    @property
    def ok(self) -> bool:
        laws = [v for v in (self.identity_law, self.composition_law) if v is not None]
        return all(laws) and all(self.roundtrips.values()) and not self.failures

    def lines(self) -> list[str]:
        mark = lambda v: "n/a" if v is None else ("pass" if v else "FAIL")  # noqa: E731
        out = [f"functor: {self.functor}"]
        if self.identity_law is not None or self.composition_law is not None:
            out.append(f"identity law: {mark(self.identity_law)}")
            out.append(f"composition law: {mark(self.composition_law)}")
        for name, ok in self.roundtrips.items():
            out.append(f"{name}: {mark(ok)}")
        counts = {}
        for kind, *_ in self.inventory:
            counts[kind] = counts.get(kind, 0) + 1
        out.append("checked: " + ", ".join(f"{v} {k}" for k, v in counts.items()))
        for msg in self.failures[:10]:
            out.append(f"  failure: {msg}")
        out.append(f"mode: {self.mode}")
        return out

    def as_dict(self) -> dict:
        counts = {}
        for kind, *_ in self.inventory:
            counts[kind] = counts.get(kind, 0) + 1
        return {
            "functor": self.functor,
            "identity_law": self.identity_law,
            "composition_law": self.composition_law,
            "roundtrips": dict(self.roundtrips),
            "checked": counts,
            "failures": list(self.failures),
            "ok": self.ok,
            "mode": self.mode,
        }


def space_corpus(max_size: int, with_arrows: bool = True) -> Corpus:
    """Every partition of ``{u0, ..., u(n-1)}`` for ``n <= max_size`` and,
    optionally, every relation-preserving map between them."""
    spaces = []
    for n in range(max_size + 1):
        U = Universe(tuple(f"u{i}" for i in range(n)))
        spaces.extend(all_spaces(U))
    arrows = []
    if with_arrows:
        for S, T in itertools.product(spaces, repeat=2):
            for f in all_maps(S.universe, T.universe):
                if is_relation_preserving(f, S, T):
                    arrows.append(Arrow(f, S, T))
    return Corpus(spaces, arrows)


def verify_roundtrips(corpus: Corpus) -> FunctorCheckReport:
    """``F'(F(S)) == S`` for each space, ``F(F'(c)) == c`` for each rough
    closure operator derived from (or added to) the corpus, the same for
    ``G`` and its inverse, and arrow transport for each corpus arrow."""
    for op in corpus.operators:
        require_rough_closure(op)
    report = FunctorCheckReport("F, F', G, G^-1")
    ff, fpf, gg = [], [], []
    for S in corpus.spaces:
        report.inventory.append(("space", S))
        ok = functor_F_prime(functor_F(S)) == S
        ff.append(ok)
        if not ok:
            report.failures.append(f"F'(F(S)) != S for {S}")
    ops = [functor_F(S) for S in corpus.spaces] + list(corpus.operators)
    for op in ops:
        report.inventory.append(("operator", op))
        ok = bool(operators_equal(functor_F(functor_F_prime(op)), op))
        fpf.append(ok)
        if not ok:
            report.failures.append(f"F(F'(c)) != c on universe {list(op.universe)}")
        i_op = functor_G(op)
        ok_g = bool(operators_equal(functor_G_inverse(i_op), op)) and bool(
            operators_equal(functor_G(functor_G_inverse(i_op)), i_op)
        )
        gg.append(ok_g)
        if not ok_g:
            report.failures.append(f"G/G^-1 round-trip fails on universe {list(op.universe)}")
    arrows_ok = []
    for a in corpus.arrows:
        report.inventory.append(("arrow", a))
        arrows_ok.append(_transport_ok(a, report))
    report.roundtrips = {
        "F'.F = 1 (objects)": all(ff),
        "F.F' = 1 (objects)": all(fpf),
        "G^-1.G = G.G^-1 = 1 (objects)": all(gg),
        "arrow transport": all(arrows_ok),
    }
    return report


def _transport_ok(a: Arrow, report: FunctorCheckReport) -> bool:
    f, S, T = a.map, a.source, a.target
    rp = bool(is_relation_preserving(f, S, T))
    cc = bool(is_continuous_closure_map(f, functor_F(S), functor_F(T)))
    ci = bool(is_continuous_interior_map(f, functor_G(functor_F(S)), functor_G(functor_F(T))))
    back = functor_F_prime(functor_F(S)) == S and functor_F_prime(functor_F(T)) == T
    ok = rp and cc and ci and back
    if not ok:
        report.failures.append(f"arrow {f.as_dict()} fails transport (rp={rp}, closure={cc}, interior={ci})")
    return ok


def _aprs_valid(f, S, T):
    return bool(is_relation_preserving(f, S, T))


def _rcls_valid(f, a, b):
    return bool(is_continuous_closure_map(f, a, b))


def _rint_valid(f, a, b):
    return bool(is_continuous_interior_map(f, a, b))


@dataclass(frozen=True)
class _FunctorSpec:
    """How one functor acts, and the categories on either side of it.

    ``lift_object``/``lift_arrow`` carry an AprS corpus into the source
    category.  Arrow values are ``TotalMap`` or ``OADHom`` depending on the
    category.
    """

    lift_object: Callable
    lift_arrow: Callable  # Arrow over AprS -> source arrow value
    source_identity: Callable
    source_compose: Callable  # (first, second) -> composite
    on_objects: Callable
    on_arrows: Callable  # (value, source object, target object) -> target arrow value
    target_identity: Callable
    target_compose: Callable
    target_valid: Callable  # (value, F(source), F(target)) -> bool


def _ident(x):
    return x


def _map_identity(obj):
    return identity_map(obj.universe)


def _same_function(value, src, tgt):
    return value


def _specs() -> dict[str, _FunctorSpec]:
    from . import infosys

    plain = dict(
        lift_arrow=lambda a: a.map,
        source_identity=_map_identity,
        source_compose=compose_maps,
        on_arrows=_same_function,
        target_identity=_map_identity,
        target_compose=compose_maps,
    )
    return {
        "F": _FunctorSpec(lift_object=_ident, on_objects=functor_F, target_valid=_rcls_valid, **plain),
        "F_prime": _FunctorSpec(lift_object=functor_F, on_objects=functor_F_prime, target_valid=_aprs_valid, **plain),
        "G": _FunctorSpec(lift_object=functor_F, on_objects=functor_G, target_valid=_rint_valid, **plain),
        "G_inverse": _FunctorSpec(
            lift_object=lambda S: functor_G(functor_F(S)),
            on_objects=functor_G_inverse,
            target_valid=_rcls_valid,
            **plain,
        ),
        "H_prime": _FunctorSpec(
            lift_object=_ident,
            lift_arrow=lambda a: a.map,
            source_identity=_map_identity,
            source_compose=compose_maps,
            on_objects=infosys.functor_H_prime,
            on_arrows=infosys.functor_H_prime_arrow,
            target_identity=infosys.identity_hom,
            target_compose=infosys.compose_homs,
            target_valid=lambda h, src, tgt: bool(infosys.is_oad_homomorphism(h)) and bool(infosys.is_non_expansive(h)),
        ),
        "H": _FunctorSpec(
            lift_object=infosys.functor_H_prime,
            lift_arrow=lambda a: infosys.functor_H_prime_arrow(a.map, a.source, a.target),
            source_identity=infosys.identity_hom,
            source_compose=infosys.compose_homs,
            on_objects=infosys.functor_H,
            on_arrows=lambda h, src, tgt: infosys.functor_H_arrow(h),
            target_identity=_map_identity,
            target_compose=compose_maps,
            target_valid=_aprs_valid,
        ),
    }


FUNCTORS = ("F", "F_prime", "G", "G_inverse", "H", "H_prime")


def verify_functor_laws(functor: str, corpus: Corpus) -> FunctorCheckReport:
    """Check ``F(1_A) == 1_F(A)`` and ``F(g.f) == F(g).F(f)`` over the corpus.

    ``corpus`` holds AprS objects and arrows; they are first carried into
    the source category of ``functor`` (through ``F`` for ``F'`` and ``G``,
    through ``H'`` for ``H``).  Every transported arrow is also checked to
    be a genuine arrow of the target category.
    """
    specs = _specs()
    if functor not in specs:
        raise InputError(f"unknown functor {functor!r}; choose from {', '.join(FUNCTORS)}")
    spec = specs[functor]
    pairs = corpus.composable_pairs()
    report = FunctorCheckReport(functor)

    objects = list(corpus.spaces)
    for a in corpus.arrows:
        for S in (a.source, a.target):
            if S not in objects:
                objects.append(S)
    lifted = {S: spec.lift_object(S) for S in objects}
    images = {S: spec.on_objects(o) for S, o in lifted.items()}

    id_ok = []
    for S in objects:
        report.inventory.append(("object", S))
        src = lifted[S]
        value = spec.on_arrows(spec.source_identity(src), src, src)
        ok = value == spec.target_identity(images[S]) and spec.target_valid(value, images[S], images[S])
        id_ok.append(ok)
        if not ok:
            report.failures.append(f"identity law fails at {S}")

    source_values, target_values = {}, {}

    def act(a: Arrow):
        key = id(a)
        if key not in target_values:
            value = spec.lift_arrow(a)
            source_values[key] = value
            out = spec.on_arrows(value, lifted[a.source], lifted[a.target])
            if not spec.target_valid(out, images[a.source], images[a.target]):
                report.failures.append(f"transported arrow {a.map.as_dict()} is not a valid target arrow")
            target_values[key] = out
        return target_values[key]

    for a in corpus.arrows:
        report.inventory.append(("arrow", a))
        act(a)

    comp_ok = []
    for f, g in pairs:
        report.inventory.append(("pair", f, g))
        Ff, Fg = act(f), act(g)
        composite = spec.source_compose(source_values[id(f)], source_values[id(g)])
        lhs = spec.on_arrows(composite, lifted[f.source], lifted[g.target])
        ok = lhs == spec.target_compose(Ff, Fg) and spec.target_valid(lhs, images[f.source], images[g.target])
        comp_ok.append(ok)
        if not ok:
            report.failures.append(f"composition law fails for {f.map.as_dict()} then {g.map.as_dict()}")

    report.identity_law = all(id_ok)
    report.composition_law = all(comp_ok)
    return report

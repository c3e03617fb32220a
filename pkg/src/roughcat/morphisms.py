"""Arrow predicates: relation preservation, continuity in its six equivalent
forms, isomorphisms, operator continuity and the natural-transformation
conditions of the stricter approximation categories."""
from __future__ import annotations

from dataclasses import dataclass

from .approximation import ApproximationSpace, Partition, associated_clopen_topology, TOPOLOGY_BLOCK_LIMIT
from .errors import ConsistencyError, DomainError, InputError
from .operators import SINGLE_LIMIT, SetOperator, classify_closure, classify_interior
from .sets import Check, Mode, Subset, TotalMap, Universe, inverse_map, subset_sweep
from .topology import is_continuous

__all__ = [
    "MorphismVerdict",
    "CONDITIONS",
    "is_relation_preserving",
    "class_containment",
    "continuity_suite",
    "is_aprs_isomorphism",
    "is_continuous_closure_map",
    "is_continuous_interior_map",
    "is_upper_natural_transformation",
    "is_lower_natural_transformation",
    "preserves_classes",
    "upper_natural_witness",
    "SUITE_LIMIT",
]

SUITE_LIMIT = 12  # subset sweeps in the six-way suite are exhaustive up to this size

CONDITIONS = {
    1: "relation-preserving: (u,u') in t implies (f(u),f(u')) in s",
    2: "continuous between the associated clopen topologies",
    3: "f[[u]_t] is contained in [f(u)]_s for each u",
    4: "f[upper_t(X)] is contained in upper_s(f[X]) for each X",
    5: "upper_t(f^-1(Y)) is contained in f^-1(upper_s(Y)) for each Y",
    6: "f^-1(lower_s(Y)) is contained in lower_t(f^-1(Y)) for each Y",
}


def _check_map(f: TotalMap, S: ApproximationSpace, T: ApproximationSpace):
    if f.source != S.universe:
        raise InputError("map source is not the first space's universe")
    if f.target != T.universe:
        raise InputError("map target is not the second space's universe")


def is_relation_preserving(f: TotalMap, S: ApproximationSpace, T: ApproximationSpace) -> Check:
    """Decide the arrow condition via class containment (linear time).

    On failure the witness is the least pair ``(u, u')`` of related source
    elements whose images are unrelated.
    """
    _check_map(f, S, T)
    images = f.images
    for i in range(len(S.universe)):
        target_class = T.class_bits(images[i])
        cls = S.class_bits(i)
        if f.image_bits(cls) & ~target_class:
            # least u' in [u] whose image falls outside [f(u)]
            j = next(j for j in range(len(S.universe)) if cls >> j & 1 and not target_class >> images[j] & 1)
            U = S.universe.elements
            return Check(False, (U[i], U[j]))
    return Check(True)


def class_containment(f: TotalMap, S: ApproximationSpace, T: ApproximationSpace) -> Check:
    """``f[[u]_t] <= [f(u)]_s`` for each ``u``; witness is the least failing ``u``."""
    _check_map(f, S, T)
    for i in range(len(S.universe)):
        if f.image_bits(S.class_bits(i)) & ~T.class_bits(f.images[i]):
            return Check(False, S.universe.elements[i])
    return Check(True)


def preserves_classes(f: TotalMap, S: ApproximationSpace, T: ApproximationSpace) -> Check:
    """``f[[u]_t] == [f(u)]_s`` for each ``u``; witness is the least failing ``u``."""
    _check_map(f, S, T)
    for i in range(len(S.universe)):
        if f.image_bits(S.class_bits(i)) != T.class_bits(f.images[i]):
            return Check(False, S.universe.elements[i])
    return Check(True)


@dataclass(frozen=True)
class MorphismVerdict:
    verdicts: dict[int, bool]
    witnesses: dict[int, object]
    mode: Mode

    @property
    def agree(self) -> bool:
        return len(set(self.verdicts.values())) <= 1

    @property
    def holds(self) -> bool:
        return all(self.verdicts.values())

    @property
    def counterexample(self):
        """``(condition id, witness)`` for the first failing condition."""
        for k in sorted(self.verdicts):
            if not self.verdicts[k]:
                return k, self.witnesses[k]
        return None

    def lines(self) -> list[str]:
        out = []
        for k in sorted(self.verdicts):
            mark = "yes" if self.verdicts[k] else "no"
            line = f"({k}) {CONDITIONS[k]}: {mark}"
            if not self.verdicts[k]:
                line += f"  witness: {_fmt(self.witnesses[k])}"
            out.append(line)
        out.append("conditions agree: " + ("yes" if self.agree else "NO"))
        out.append(f"verification: {self.mode}")
        return out

    def as_dict(self) -> dict:
        return {
            "verdicts": {str(k): v for k, v in self.verdicts.items()},
            "witnesses": {str(k): _jsonable(w) for k, w in self.witnesses.items() if w is not None},
            "agree": self.agree,
            "verification": self.mode.as_dict(),
        }


def _fmt(w) -> str:
    if isinstance(w, tuple):
        return "(" + ", ".join(_fmt(x) for x in w) + ")"
    return str(w)


def _jsonable(w):
    if isinstance(w, Subset):
        return list(w)
    if isinstance(w, tuple):
        return [_jsonable(x) for x in w]
    return w


def _cond_pairs(f, S, T):
    # condition 1 straight from the relation: every related pair
    images = f.images
    U = S.universe.elements
    for i in range(len(U)):
        cls = S.class_bits(i)
        for j in range(len(U)):
            if cls >> j & 1 and not T.class_bits(images[i]) >> images[j] & 1:
                return Check(False, (U[i], U[j]))
    return Check(True)


def _open_family(S: ApproximationSpace, seed, trials):
    if len(S.blocks) <= TOPOLOGY_BLOCK_LIMIT:
        top = associated_clopen_topology(S)
        return sorted(top.opens), top, Mode(True, len(top))
    picks, mode = subset_sweep(len(S.blocks), 0, seed, trials)
    opens = []
    for p in picks:
        o = 0
        for k, b in enumerate(S.blocks):
            if p >> k & 1:
                o |= b
        opens.append(o)
    return sorted(set(opens)), None, mode


def _cond_continuity(f, S, T, seed, trials):
    opens_T, top_T, mode = _open_family(T, seed, trials)
    if top_T is not None and len(S.blocks) <= TOPOLOGY_BLOCK_LIMIT:
        top_S = associated_clopen_topology(S)
        bad = is_continuous(f, top_S, top_T)
        return Check(bad is None, bad, mode)
    for o in opens_T:
        pre = f.preimage_bits(o)
        # open in the source clopen topology iff a fixed point of lower approx.
        if S.lower_bits(pre) != pre:
            return Check(False, Subset(T.universe, o), mode)
    return Check(True, None, mode)


def _sweep_check(universe, sweep, pred):
    for x in sweep:
        if not pred(x):
            return Check(False, Subset(universe, x))
    return Check(True)


def continuity_suite(f: TotalMap, S: ApproximationSpace, T: ApproximationSpace, seed: int = 0, trials: int = 10_000) -> MorphismVerdict:
    """Evaluate all six equivalent arrow conditions independently.

    In exhaustive mode the six verdicts must coincide; a disagreement
    raises :class:`ConsistencyError`.
    """
    _check_map(f, S, T)
    xs, xmode = subset_sweep(len(S.universe), SUITE_LIMIT, seed, trials)
    ys, ymode = subset_sweep(len(T.universe), SUITE_LIMIT, seed, trials)
    img, pre = f.image_bits, f.preimage_bits
    results = {
        1: _cond_pairs(f, S, T),
        2: _cond_continuity(f, S, T, seed, trials),
        3: class_containment(f, S, T),
        4: _sweep_check(S.universe, xs, lambda x: img(S.upper_bits(x)) & ~T.upper_bits(img(x)) == 0),
        5: _sweep_check(T.universe, ys, lambda y: S.upper_bits(pre(y)) & ~pre(T.upper_bits(y)) == 0),
        6: _sweep_check(T.universe, ys, lambda y: pre(T.lower_bits(y)) & ~S.lower_bits(pre(y)) == 0),
    }
    mode = Mode.combine(xmode, ymode, results[2].mode)
    verdict = MorphismVerdict(
        {k: r.holds for k, r in results.items()},
        {k: r.witness for k, r in results.items()},
        mode,
    )
    if mode.exhaustive and not verdict.agree:
        raise ConsistencyError(f"six-way suite disagrees in exhaustive mode: {verdict.verdicts}")
    return verdict


def is_aprs_isomorphism(f: TotalMap, S: ApproximationSpace, T: ApproximationSpace) -> Check:
    """Bijective and ``f[[u]_t] == [f(u)]_s`` for each ``u``.

    Cross-checked against the inverse-arrow route (bijective, preserving,
    inverse preserving); a disagreement raises :class:`ConsistencyError`.
    """
    _check_map(f, S, T)
    if not f.is_bijective:
        route_a = Check(False, "not bijective")
        route_b = False
    else:
        eq = preserves_classes(f, S, T)
        route_a = eq
        route_b = bool(is_relation_preserving(f, S, T)) and bool(is_relation_preserving(inverse_map(f), T, S))
    if route_a.holds != route_b:
        raise ConsistencyError("isomorphism routes disagree")
    return route_a


def _require_closure(op: SetOperator, what: str):
    if not classify_closure(op).holds:
        raise DomainError(f"{what} is not a closure operator")


def _require_interior(op: SetOperator, what: str):
    if not classify_interior(op).holds:
        raise DomainError(f"{what} is not an interior operator")


def _op_check_universes(f: TotalMap, a: SetOperator, b: SetOperator):
    if f.source != a.universe or f.target != b.universe:
        raise InputError("map does not match the operators' universes")


def is_continuous_closure_map(f: TotalMap, c_U: SetOperator, c_V: SetOperator, seed: int = 0, trials: int = 10_000) -> Check:
    """``f[c_U(X)] <= c_V(f[X])`` for all ``X``; the witness is ``X``.

    The preimage form ``c_U(f^-1(Y)) <= f^-1(c_V(Y))`` is checked too and
    must agree in exhaustive mode.
    """
    _op_check_universes(f, c_U, c_V)
    _require_closure(c_U, "source operator")
    _require_closure(c_V, "target operator")
    xs, xmode = subset_sweep(len(f.source), SINGLE_LIMIT, seed, trials)
    ys, ymode = subset_sweep(len(f.target), SINGLE_LIMIT, seed, trials)
    img, pre = f.image_bits, f.preimage_bits
    a, b = c_U.apply_bits, c_V.apply_bits
    direct = _sweep_check(f.source, xs, lambda x: img(a(x)) & ~b(img(x)) == 0)
    inverse = _sweep_check(f.target, ys, lambda y: a(pre(y)) & ~pre(b(y)) == 0)
    mode = Mode.combine(xmode, ymode)
    if mode.exhaustive and direct.holds != inverse.holds:
        raise ConsistencyError("image and preimage forms of closure continuity disagree")
    return Check(direct.holds, direct.witness, mode)


def is_continuous_interior_map(f: TotalMap, i_U: SetOperator, i_V: SetOperator, seed: int = 0, trials: int = 10_000) -> Check:
    """``f^-1(i_V(Y)) <= i_U(f^-1(Y))`` for all ``Y``; the witness is ``Y``."""
    _op_check_universes(f, i_U, i_V)
    _require_interior(i_U, "source operator")
    _require_interior(i_V, "target operator")
    ys, mode = subset_sweep(len(f.target), SINGLE_LIMIT, seed, trials)
    pre = f.preimage_bits
    a, b = i_U.apply_bits, i_V.apply_bits
    result = _sweep_check(f.target, ys, lambda y: pre(b(y)) & ~a(pre(y)) == 0)
    return Check(result.holds, result.witness, mode)


def is_upper_natural_transformation(f: TotalMap, S: ApproximationSpace, T: ApproximationSpace, seed: int = 0, trials: int = 10_000) -> Check:
    """``upper_s(f[X]) == f[upper_t(X)]`` for every ``X``.

    On these concrete spaces this is also the modal-homomorphism condition
    for the upper approximation viewed as a diamond operator.
    """
    _check_map(f, S, T)
    xs, mode = subset_sweep(len(S.universe), SUITE_LIMIT, seed, trials)
    img = f.image_bits
    r = _sweep_check(S.universe, xs, lambda x: T.upper_bits(img(x)) == img(S.upper_bits(x)))
    return Check(r.holds, r.witness, mode)


def is_lower_natural_transformation(f: TotalMap, S: ApproximationSpace, T: ApproximationSpace, seed: int = 0, trials: int = 10_000) -> Check:
    """``lower_s(f[X]) == f[lower_t(X)]`` for every ``X``."""
    _check_map(f, S, T)
    xs, mode = subset_sweep(len(S.universe), SUITE_LIMIT, seed, trials)
    img = f.image_bits
    r = _sweep_check(S.universe, xs, lambda x: T.lower_bits(img(x)) == img(S.lower_bits(x)))
    return Check(r.holds, r.witness, mode)


def upper_natural_witness() -> tuple[TotalMap, ApproximationSpace, ApproximationSpace]:
    """A relation-preserving map that is not an upper natural transformation:
    ``{a, b}`` collapsed onto ``p`` inside the one-block space on ``{p, q}``."""
    U, V = Universe(("a", "b")), Universe(("p", "q"))
    S = ApproximationSpace(U, Partition.indiscrete(U))
    T = ApproximationSpace(V, Partition.indiscrete(V))
    f = TotalMap.from_dict(U, V, {"a": "p", "b": "p"})
    if not is_relation_preserving(f, S, T) or is_upper_natural_transformation(f, S, T):
        raise ConsistencyError("stored separation witness no longer separates")
    return f, S, T

import itertools

import pytest

import oracle
from roughcat import (
    ApproximationSpace,
    DomainError,
    InputError,
    Partition,
    SetOperator,
    TotalMap,
    Universe,
    compose_maps,
    continuity_suite,
    functor_F,
    functor_G,
    identity_map,
    is_aprs_isomorphism,
    is_continuous_closure_map,
    is_continuous_interior_map,
    is_lower_natural_transformation,
    is_relation_preserving,
    is_upper_natural_transformation,
    set_partitions,
)
from roughcat.morphisms import preserves_classes
from roughcat.sets import all_maps

ABCD = Universe(("a", "b", "c", "d"))
AB = Universe(("a", "b"))
PQ = Universe(("p", "q"))


def space(U, blocks):
    return ApproximationSpace(U, Partition.from_blocks(U, blocks))


@pytest.fixture
def collapse():
    S = space(ABCD, [["a", "b"], ["c", "d"]])
    T = space(PQ, [["p"], ["q"]])
    f = TotalMap.from_dict(ABCD, PQ, {"a": "p", "b": "p", "c": "q", "d": "q"})
    return f, S, T


@pytest.fixture
def splitting():
    S = space(AB, [["a", "b"]])
    T = space(PQ, [["p"], ["q"]])
    g = TotalMap.from_dict(AB, PQ, {"a": "p", "b": "q"})
    return g, S, T


def small_corpus(max_n, prefix_u="u", prefix_v="v"):
    for n, m in itertools.product(range(max_n + 1), repeat=2):
        U = Universe(tuple(f"{prefix_u}{i}" for i in range(n)))
        V = Universe(tuple(f"{prefix_v}{i}" for i in range(m)))
        maps = list(all_maps(U, V))
        for P in set_partitions(U):
            for Q in set_partitions(V):
                S, T = ApproximationSpace(U, P), ApproximationSpace(V, Q)
                for f in maps:
                    yield f, S, T


def test_relation_preserving_examples(collapse, splitting):
    assert is_relation_preserving(*collapse)
    S = collapse[1]
    assert is_relation_preserving(identity_map(ABCD), S, S)
    chk = is_relation_preserving(*splitting)
    assert not chk and chk.witness == ("a", "b")


def test_universe_mismatch(collapse):
    f, S, T = collapse
    with pytest.raises(InputError):
        is_relation_preserving(f, T, S)
    with pytest.raises(InputError):
        continuity_suite(f, S, S)


def test_suite_examples(collapse, splitting):
    v = continuity_suite(*collapse)
    assert v.holds and v.agree and v.mode.exhaustive
    v = continuity_suite(*splitting)
    assert v.agree and not any(v.verdicts.values())
    assert v.witnesses[4] == AB.subset(["a"])
    assert v.counterexample == (1, ("a", "b"))
    S = collapse[1]
    assert continuity_suite(identity_map(ABCD), S, S).holds


def test_suite_report_text(splitting):
    lines = continuity_suite(*splitting).lines()
    assert lines[0].startswith("(1) ") and "witness: (a, b)" in lines[0]
    assert "conditions agree: yes" in lines


def test_relation_preservation_matches_oracle():
    for f, S, T in small_corpus(3):
        rel_t = oracle.relation(S.partition.as_lists())
        rel_s = oracle.relation(T.partition.as_lists())
        assert bool(is_relation_preserving(f, S, T)) == oracle.relation_preserving(f.as_dict(), rel_t, rel_s)


def test_six_way_agreement_up_to_four():
    for f, S, T in small_corpus(4):
        v = continuity_suite(f, S, T)
        assert v.agree
        assert v.holds == bool(is_relation_preserving(f, S, T))


def test_six_way_sampled_mode_on_large_spaces():
    U = Universe(tuple(f"e{i}" for i in range(20)))
    P = Partition(U, tuple(0b11 << 2 * k for k in range(10)))
    S = ApproximationSpace(U, P)
    v = continuity_suite(identity_map(U), S, S, seed=1, trials=300)
    assert v.holds and not v.mode.exhaustive
    coarse = ApproximationSpace(U, Partition.indiscrete(U))
    v = continuity_suite(identity_map(U), coarse, S, seed=1, trials=300)
    assert not any(v.verdicts.values())


def test_isomorphism_examples(collapse):
    S = space(ABCD, [["a", "b"], ["c", "d"]])
    N = Universe(("1", "2", "3", "4"))
    T = space(N, [["1", "2"], ["3", "4"]])
    f = TotalMap.from_dict(ABCD, N, {"a": "1", "b": "2", "c": "3", "d": "4"})
    assert is_aprs_isomorphism(f, S, T)
    chk = is_aprs_isomorphism(*collapse)
    assert not chk and chk.witness == "not bijective"
    disc = ApproximationSpace(ABCD, Partition.discrete(ABCD))
    whole = ApproximationSpace(N, Partition.indiscrete(N))
    assert is_relation_preserving(f, disc, whole)
    assert not is_aprs_isomorphism(f, disc, whole)


def test_isomorphism_characterization():
    for f, S, T in small_corpus(3):
        expected = (
            f.is_bijective
            and bool(is_relation_preserving(f, S, T))
            and bool(is_relation_preserving(_inverse(f), T, S))
        )
        assert bool(is_aprs_isomorphism(f, S, T)) == expected


def _inverse(f):
    if not f.is_bijective:
        return f
    return TotalMap.from_dict(f.target, f.source, {v: u for u, v in f.as_dict().items()})


def test_composition_closure_and_identities():
    U = Universe(("u0", "u1", "u2"))
    spaces = [ApproximationSpace(U, P) for P in set_partitions(U)]
    maps = list(all_maps(U, U))
    for S in spaces:
        assert is_relation_preserving(identity_map(U), S, S)
    for S, T, R in itertools.product(spaces, repeat=3):
        st = [f for f in maps if is_relation_preserving(f, S, T)]
        tr = [g for g in maps if is_relation_preserving(g, T, R)]
        for f in st:
            for g in tr:
                assert is_relation_preserving(compose_maps(f, g), S, R)


def test_closure_continuity_examples(collapse, splitting):
    f, S, T = collapse
    assert is_continuous_closure_map(f, functor_F(S), functor_F(T))
    cS = functor_F(S)
    assert is_continuous_closure_map(identity_map(ABCD), cS, cS)
    g, S2, T2 = splitting
    chk = is_continuous_closure_map(g, functor_F(S2), functor_F(T2))
    assert not chk and chk.witness == AB.subset(["a"])


def test_interior_continuity_examples(collapse, splitting):
    f, S, T = collapse
    assert is_continuous_interior_map(f, functor_G(functor_F(S)), functor_G(functor_F(T)))
    iS = functor_G(functor_F(S))
    assert is_continuous_interior_map(identity_map(ABCD), iS, iS)
    g, S2, T2 = splitting
    chk = is_continuous_interior_map(g, functor_G(functor_F(S2)), functor_G(functor_F(T2)))
    assert not chk and chk.witness == PQ.subset(["p"])


def test_operator_continuity_requires_operators(collapse):
    f, S, T = collapse
    junk = SetOperator.from_table(PQ, lambda X: PQ.full())
    with pytest.raises(DomainError):
        is_continuous_closure_map(f, functor_F(S), junk)
    with pytest.raises(DomainError):
        is_continuous_interior_map(f, functor_G(functor_F(S)), junk)


def test_operator_continuity_tracks_relation_preservation():
    for f, S, T in small_corpus(3):
        rp = bool(is_relation_preserving(f, S, T))
        assert bool(is_continuous_closure_map(f, functor_F(S), functor_F(T))) == rp
        assert bool(is_continuous_interior_map(f, functor_G(functor_F(S)), functor_G(functor_F(T)))) == rp


def test_natural_transformation_examples(collapse):
    assert is_upper_natural_transformation(*collapse)
    S = space(AB, [["a", "b"]])
    T = space(PQ, [["p", "q"]])
    f = TotalMap.from_dict(AB, PQ, {"a": "p", "b": "p"})
    chk = is_upper_natural_transformation(f, S, T)
    assert not chk and chk.witness == AB.subset(["a"])
    assert is_relation_preserving(f, S, T)
    chk = is_lower_natural_transformation(f, S, T)
    assert not chk and chk.witness == AB.full()


def test_upper_natural_iff_class_equality():
    for f, S, T in small_corpus(3):
        assert bool(is_upper_natural_transformation(f, S, T)) == bool(preserves_classes(f, S, T))


def test_upper_natural_implies_relation_preserving():
    for f, S, T in small_corpus(3):
        if is_upper_natural_transformation(f, S, T):
            assert is_relation_preserving(f, S, T)


def test_lower_natural_observation():
    # recorded at this scale only; not claimed in general
    lower_only = 0
    for f, S, T in small_corpus(3):
        lo = bool(is_lower_natural_transformation(f, S, T))
        up = bool(is_upper_natural_transformation(f, S, T))
        if lo and not up:
            lower_only += 1
    assert lower_only == 0

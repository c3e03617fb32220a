import random

import pytest

from roughcat import (
    ApproximationSpace,
    Arrow,
    ConsistencyError,
    Corpus,
    DomainError,
    InputError,
    Partition,
    SetOperator,
    TotalMap,
    Universe,
    classify_interior,
    functor_F,
    functor_F_prime,
    functor_G,
    functor_G_inverse,
    identity_map,
    is_continuous_closure_map,
    is_continuous_interior_map,
    is_relation_preserving,
    operators_equal,
    set_partitions,
    space_corpus,
    verify_functor_laws,
    verify_roundtrips,
)
from roughcat import functors as functors_mod
from roughcat.functors import FUNCTORS
from roughcat.sets import all_maps

U4 = Universe(("a", "b", "c", "d"))
AB = Universe(("a", "b"))
S4 = ApproximationSpace(U4, Partition.from_blocks(U4, [["a", "b"], ["c", "d"]]))


@pytest.fixture(scope="module")
def corpus3():
    return space_corpus(3)


def sierpinski():
    return SetOperator.from_table(AB, [0, 1, 3, 3])


def random_partition(U, rng):
    labels = [rng.randrange(len(U)) for _ in range(len(U))]
    blocks = {}
    for i, k in enumerate(labels):
        blocks[k] = blocks.get(k, 0) | 1 << i
    return Partition(U, tuple(blocks.values()))


def test_F_examples():
    c = functor_F(S4)
    assert c(U4.subset(["a"])) == U4.subset(["a", "b"])
    assert c(U4.subset(["c"])) == U4.subset(["c", "d"])
    assert operators_equal(functor_F(ApproximationSpace(U4, Partition.discrete(U4))), SetOperator.identity(U4))
    whole = functor_F(ApproximationSpace(U4, Partition.indiscrete(U4)))
    assert all(whole(X) == U4.full() for X in U4.all_subsets() if X)


def test_F_prime_examples():
    assert functor_F_prime(functor_F(S4)) == S4
    assert functor_F_prime(SetOperator.identity(U4)).partition == Partition.discrete(U4)
    op = SetOperator.from_table(U4, lambda X: U4.full() if X else X)
    assert functor_F_prime(op).partition == Partition.indiscrete(U4)


def test_F_prime_rejects_non_rough():
    with pytest.raises(DomainError):
        functor_F_prime(sierpinski())
    with pytest.raises(DomainError):
        functor_F_prime(SetOperator.from_partition(S4.partition, "lower"))


def test_F_prime_consistency_guard(monkeypatch):
    # with the precondition bypassed, overlapping point closures are caught
    monkeypatch.setattr(functors_mod, "require_rough_closure", lambda op: None)
    with pytest.raises(ConsistencyError):
        functor_F_prime(sierpinski())


def test_G_examples():
    assert operators_equal(functor_G(functor_F(S4)), SetOperator.from_partition(S4.partition, "lower"))
    ident = SetOperator.identity(U4)
    assert operators_equal(functor_G(ident), ident)
    with pytest.raises(DomainError):
        functor_G(sierpinski())
    with pytest.raises(DomainError):
        functor_G_inverse(functor_F(S4))


def test_G_is_invertible_on_tables():
    for n in range(4):
        U = Universe(tuple(f"u{i}" for i in range(n)))
        for P in set_partitions(U):
            op = functor_F(ApproximationSpace(U, P)).to_table()
            i_op = functor_G(op)
            assert classify_interior(i_op).proved
            assert operators_equal(functor_G_inverse(i_op), op)
            assert operators_equal(functor_G(functor_G_inverse(i_op)), i_op)


def test_reconstruction_from_point_closures():
    rng = random.Random(4)
    for n in range(11):
        U = Universe(tuple(f"e{i}" for i in range(n)))
        for _ in range(3):
            op = SetOperator.from_partition(random_partition(U, rng) if n else Partition(U, ()), "upper")
            rebuilt = functor_F(functor_F_prime(op))
            assert all(rebuilt.apply_bits(x) == op.apply_bits(x) for x in range(1 << n))


def test_reconstruction_from_classified_tables():
    rng = random.Random(5)
    for n in (6, 7):
        U = Universe(tuple(f"e{i}" for i in range(n)))
        op = SetOperator.from_partition(random_partition(U, rng), "upper").to_table()
        assert operators_equal(functor_F(functor_F_prime(op)), op)


def test_roundtrips_up_to_four():
    corpus = space_corpus(4, with_arrows=False)
    assert sum(len(S.universe) == 4 for S in corpus.spaces) == 15
    report = verify_roundtrips(corpus)
    assert report.ok, report.failures


def test_roundtrip_single_space_identity_arrow():
    report = verify_roundtrips(Corpus([S4], [Arrow(identity_map(U4), S4, S4)]))
    assert report.ok
    assert [k for k, *_ in report.inventory] == ["space", "operator", "arrow"]


def test_roundtrips_reject_non_rough_operator():
    with pytest.raises(DomainError):
        verify_roundtrips(Corpus([], operators=[sierpinski()]))


def test_roundtrips_detect_bad_arrow():
    T = ApproximationSpace(AB, Partition.discrete(AB))
    bad = TotalMap.from_dict(U4, AB, {"a": "a", "b": "b", "c": "a", "d": "a"})
    report = verify_roundtrips(Corpus([S4, T], [Arrow(bad, S4, T)]))
    assert not report.ok
    assert not report.roundtrips["arrow transport"]


def test_report_text_and_dict(corpus3):
    report = verify_functor_laws("F", corpus3)
    text = report.lines()
    assert text[0] == "functor: F"
    assert "identity law: pass" in text
    d = report.as_dict()
    assert d["ok"] and d["checked"]["object"] == 9


@pytest.mark.parametrize("name", FUNCTORS)
def test_functor_laws(name, corpus3):
    report = verify_functor_laws(name, corpus3)
    assert report.identity_law and report.composition_law
    assert report.ok, report.failures[:3]


def test_functor_laws_errors():
    f = Arrow(identity_map(U4), S4, S4)
    T = ApproximationSpace(AB, Partition.discrete(AB))
    g = Arrow(identity_map(AB), T, T)
    with pytest.raises(InputError, match="composable"):
        verify_functor_laws("F", Corpus([S4, T], [f, g], pairs=[(f, g)]))
    with pytest.raises(InputError, match="unknown functor"):
        verify_functor_laws("K", Corpus([S4]))


def test_arrow_transport_equivalence():
    # f valid in AprS iff F(f) valid in RCls iff G(F(f)) valid in RInt
    for n in range(4):
        U = Universe(tuple(f"u{i}" for i in range(n)))
        spaces = [ApproximationSpace(U, P) for P in set_partitions(U)]
        for S in spaces:
            for T in spaces:
                for f in all_maps(U, U):
                    rp = bool(is_relation_preserving(f, S, T))
                    assert bool(is_continuous_closure_map(f, functor_F(S), functor_F(T))) == rp
                    assert bool(is_continuous_interior_map(f, functor_G(functor_F(S)), functor_G(functor_F(T)))) == rp

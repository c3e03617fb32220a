import functools
import itertools
import operator
import random

import numpy as np
import pytest

import oracle
from roughcat import (
    CapacityError,
    DomainError,
    InputError,
    Partition,
    SetOperator,
    Universe,
    analyze_topology,
    associated_clopen_topology,
    classify_closure,
    classify_interior,
    dual_closure,
    dual_interior,
    evaluate,
    minimal_neighborhood,
    operator_topology,
    operators_equal,
    point_closure_basis,
    rough_census,
    set_partitions,
)
from roughcat.approximation import ApproximationSpace
from roughcat.operators import _surviving, random_table_operator, rough_closure_tables
from roughcat.topology import FiniteTopology

AB = Universe(("a", "b"))
U4 = Universe(("a", "b", "c", "d"))
P4 = Partition.from_blocks(U4, [["a", "b"], ["c", "d"]])


def table(U, pairs):
    return SetOperator.from_table(U, {frozenset(k): v for k, v in pairs})


@pytest.fixture
def nonrough_closure():
    return table(AB, [((), []), (("a",), ["a"]), (("b",), ["a", "b"]), (("a", "b"), ["a", "b"])])


@pytest.fixture
def nonrough_interior():
    return table(AB, [((), []), (("a",), ["a"]), (("b",), []), (("a", "b"), ["a", "b"])])


def universes(max_n):
    for n in range(max_n + 1):
        yield Universe(tuple(f"u{i}" for i in range(n)))


def test_evaluate_examples():
    up = SetOperator.from_partition(P4, "upper")
    assert evaluate(up, U4.subset(["a"])) == U4.subset(["a", "b"])
    assert up(U4.empty()) == U4.empty()
    ident = SetOperator.identity(U4)
    assert all(ident(X) == X for X in U4.all_subsets())
    with pytest.raises(InputError):
        evaluate(up, AB.full())


def test_table_construction_errors():
    with pytest.raises(InputError, match="no entry"):
        SetOperator.from_table(AB, {frozenset(): []})
    with pytest.raises(InputError, match="entries"):
        SetOperator(AB, table=(0, 1, 2))
    with pytest.raises(InputError, match="outside"):
        SetOperator(AB, table=(0, 1, 2, 4))
    with pytest.raises(CapacityError, match="16"):
        SetOperator.from_table(Universe(tuple(f"e{i}" for i in range(17))), lambda X: X)
    with pytest.raises(InputError, match="mode"):
        SetOperator.from_partition(P4, "middle")


def test_rough_closure_table_example():
    op = table(AB, [((), []), (("a",), ["a", "b"]), (("b",), ["a", "b"]), (("a", "b"), ["a", "b"])])
    rep = classify_closure(op)
    assert rep.holds and rep.rough and rep.proved
    assert rep.checked["KC2"] == 4 and rep.checked["KC4"] == 16


def test_nonrough_closure_example(nonrough_closure):
    rep = classify_closure(nonrough_closure)
    assert rep.holds
    assert not rep.rough
    assert rep.counterexamples["rough"] == (AB.subset(["a"]),)
    assert "rough: FAILS at {a}" in rep.lines()


def test_nonrough_interior_example(nonrough_interior, nonrough_closure):
    rep = classify_interior(nonrough_interior)
    assert rep.holds and not rep.rough
    # the dual of the non-rough closure above, with a and b swapped
    swapped = SetOperator(AB, table=tuple(nonrough_closure.table[b] for b in (0, 2, 1, 3)))
    swapped = SetOperator(AB, table=tuple({0: 0, 1: 2, 2: 1, 3: 3}[v] for v in swapped.table))
    assert operators_equal(dual_interior(swapped), nonrough_interior)


def test_partition_backed_operators_are_rough():
    for U in universes(5):
        for P in set_partitions(U):
            assert classify_closure(SetOperator.from_partition(P, "upper")).proved
            assert classify_interior(SetOperator.from_partition(P, "lower")).proved


def test_identity_is_rough_both_ways():
    ident = SetOperator.identity(U4)
    assert classify_interior(ident).is_rough
    assert classify_closure(ident).is_rough


def test_axiom_failures_give_least_witness():
    # c(X) = X for |X| != 1, c({u}) = {} : fails KC2 first at the least singleton
    op = SetOperator.from_table(AB, lambda X: AB.empty() if len(X) == 1 else X)
    rep = classify_closure(op)
    assert rep.verdicts["KC1"]
    assert not rep.verdicts["KC2"]
    assert rep.counterexamples["KC2"] == (AB.subset(["a"]),)
    const = SetOperator.from_table(AB, lambda X: AB.full())
    rep = classify_closure(const)
    assert not rep.verdicts["KC1"] and rep.counterexamples["KC1"] == (AB.empty(),)


def test_report_serialization(nonrough_closure):
    d = classify_closure(nonrough_closure).as_dict()
    assert d["is_operator"] and not d["is_rough"]
    assert d["counterexamples"]["rough"] == [["a"]]
    assert d["verification"] == {"mode": "exhaustive", "checked": 20}


def test_sampled_report_never_proved():
    U = Universe(tuple(f"e{i}" for i in range(20)))
    P = Partition(U, tuple(0b11 << 2 * k for k in range(10)))
    rep = classify_closure(SetOperator.from_partition(P, "upper"), seed=3, trials=500)
    assert rep.is_rough and not rep.proved
    assert not rep.mode.exhaustive and rep.mode.seed == 3
    assert any("no counterexample found" in line for line in rep.lines())


def test_sampled_mode_is_deterministic():
    U = Universe(tuple(f"e{i}" for i in range(16)))
    op = random_table_operator(U, random.Random(1))
    r1 = classify_closure(op, seed=5, trials=200)
    op2 = SetOperator(U, table=op.table)
    r2 = classify_closure(op2, seed=5, trials=200)
    assert r1.verdicts == r2.verdicts and r1.counterexamples == r2.counterexamples


def test_duals():
    up = SetOperator.from_partition(P4, "upper")
    lo = SetOperator.from_partition(P4, "lower")
    assert operators_equal(dual_interior(up), lo)
    assert operators_equal(dual_closure(lo), up)
    assert operators_equal(dual_interior(up.to_table()), lo)
    ident = SetOperator.identity(U4)
    assert operators_equal(dual_interior(ident), ident)


def test_dual_is_involution_on_random_tables():
    rng = random.Random(11)
    for n in range(4):
        U = Universe(tuple(f"u{i}" for i in range(n)))
        for _ in range(20):
            op = random_table_operator(U, rng)
            assert dual_closure(dual_interior(op)).table == op.table


def test_operators_equal_witness():
    up = SetOperator.from_partition(P4, "upper")
    ident = SetOperator.identity(U4)
    chk = operators_equal(up, ident)
    assert not chk and chk.witness == U4.subset(["a"])


def test_operators_equal_large_rough_shortcut():
    U = Universe(tuple(f"e{i}" for i in range(40)))
    P = Partition(U, tuple(0b1111 << 4 * k for k in range(10)))
    Q = Partition(U, tuple(0b11 << 2 * k for k in range(20)))
    a = SetOperator.from_partition(P, "upper")
    assert operators_equal(a, SetOperator.from_partition(P, "upper"))
    chk = operators_equal(a, SetOperator.from_partition(Q, "upper"))
    assert not chk and chk.witness == U.subset(["e0"]) and chk.mode.exhaustive
    chk = operators_equal(SetOperator.from_partition(P, "lower"), SetOperator.from_partition(Q, "lower"))
    assert not chk and chk.mode.exhaustive


def test_operator_topology_examples(nonrough_closure):
    up = SetOperator.from_partition(P4, "upper")
    assert set(operator_topology(up).open_sets()) == {
        U4.empty(), U4.subset(["a", "b"]), U4.subset(["c", "d"]), U4.full(),
    }
    assert set(operator_topology(SetOperator.identity(U4)).open_sets()) == set(U4.all_subsets())
    # Sierpinski closure: c({a}) = {a}
    assert set(operator_topology(nonrough_closure).open_sets()) == {AB.empty(), AB.subset(["b"]), AB.full()}


def test_operator_topology_rejects_non_closure(nonrough_interior):
    with pytest.raises(DomainError):
        operator_topology(nonrough_interior)


def test_operator_topology_matches_associated_topology():
    for U in universes(5):
        for P in set_partitions(U):
            up = SetOperator.from_partition(P, "upper")
            assert operator_topology(up).opens == associated_clopen_topology(ApproximationSpace(U, P)).opens


def test_analyze_topology_examples():
    rep = analyze_topology(FiniteTopology.from_subsets(U4, [[], ["a", "b"], ["c", "d"], U4.elements]))
    assert rep.is_topology and rep.is_clopen and rep.is_alexandroff
    assert rep.minimal_base == (U4.subset(["a", "b"]), U4.subset(["c", "d"]))
    rep = analyze_topology(FiniteTopology.from_subsets(AB, [[], ["a"], ["a", "b"]]))
    assert rep.is_topology and not rep.is_clopen
    assert rep.clopen_violation == AB.subset(["a"])
    rep = analyze_topology(FiniteTopology.from_subsets(U4, [[], U4.elements]))
    assert rep.is_clopen and rep.minimal_base == (U4.full(),)


def test_analyze_topology_reports_violations():
    rep = analyze_topology(FiniteTopology.from_subsets(U4, [[], ["a"], ["b"], U4.elements]))
    assert not rep.is_topology
    assert rep.violation == ("union not open", U4.subset(["a"]), U4.subset(["b"]))
    rep = analyze_topology(FiniteTopology.from_subsets(AB, [["a"], ["a", "b"]]))
    assert rep.violation[0] == "missing empty set"


def test_minimal_neighborhood():
    T = FiniteTopology.from_subsets(U4, [[], ["a", "b"], ["c", "d"], U4.elements])
    assert minimal_neighborhood(T, "a") == U4.subset(["a", "b"])
    disc = FiniteTopology(U4, frozenset(range(16)))
    indisc = FiniteTopology(U4, frozenset({0, 15}))
    for u in U4.elements:
        assert minimal_neighborhood(disc, u) == U4.subset([u])
        assert minimal_neighborhood(indisc, u) == U4.full()
    with pytest.raises(InputError):
        minimal_neighborhood(T, "z")


def test_point_closure_basis(nonrough_closure):
    assert point_closure_basis(SetOperator.from_partition(P4, "upper")) == [
        U4.subset(["a", "b"]), U4.subset(["c", "d"])
    ]
    assert point_closure_basis(SetOperator.identity(U4)) == [U4.subset([u]) for u in U4.elements]
    assert point_closure_basis(SetOperator.from_partition(Partition.indiscrete(U4), "upper")) == [U4.full()]
    with pytest.raises(DomainError):
        point_closure_basis(nonrough_closure)


def test_point_closures_form_minimal_base_of_operator_topology():
    for U in universes(4):
        for P in set_partitions(U):
            op = SetOperator.from_partition(P, "upper").to_table()
            assert tuple(point_closure_basis(op)) == analyze_topology(operator_topology(op)).minimal_base


def _rough_tables(n):
    return [SetOperator(U, table=t) for U in [Universe(tuple(f"u{i}" for i in range(n)))]
            for t in rough_closure_tables(n)]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_point_closures_symmetric_and_disjoint(n):
    for op in _rough_tables(n):
        U = op.universe
        pc = [op.apply_bits(1 << i) for i in range(n)]
        for i, j in itertools.product(range(n), repeat=2):
            assert (pc[j] >> i & 1) == (pc[i] >> j & 1)
            assert pc[i] == pc[j] or pc[i] & pc[j] == 0
        assert functools.reduce(operator.or_, pc, 0) == U.full_bits


def test_census_small_sizes():
    assert [rough_census(n).rough_closures for n in range(4)] == [oracle.bell(n) for n in range(4)]
    res = rough_census(2)
    assert res.tables == 256 and res.match
    assert res.line() == "256 tables, 2 rough closure operators, 2 partitions — MATCH"


def test_census_capacity():
    with pytest.raises(CapacityError):
        rough_census(4)


def test_census_n2_independent_route():
    # pure-python classification of every table agrees with the vectorized filter
    U = AB
    rough = []
    for rows in itertools.product(range(4), repeat=4):
        op = SetOperator(U, table=rows)
        if classify_closure(op).is_rough:
            rough.append(rows)
    assert rough == rough_closure_tables(2) == rough_closure_tables(2, prune=False)


def test_census_n3_tables_are_partition_operators():
    U = Universe(("u0", "u1", "u2"))
    expected = sorted(SetOperator.from_partition(P, "upper").to_table().table for P in set_partitions(U))
    assert rough_closure_tables(3) == expected


def test_vectorized_filter_agrees_on_random_n3_tables():
    U = Universe(("u0", "u1", "u2"))
    rng = random.Random(2)
    rows = []
    for _ in range(400):
        rows.append([rng.randrange(8) for _ in range(8)])
    # perturbations of genuine rough operators exercise the late filters
    for t in rough_closure_tables(3):
        for k in range(1, 8):
            r = list(t)
            r[k] = rng.randrange(8)
            rows.append(r)
    T = np.array(rows, dtype=np.uint8)
    kept = {tuple(int(v) for v in r) for r in _surviving(T, 7)}
    for r in rows:
        assert (tuple(r) in kept) == classify_closure(SetOperator(U, table=tuple(r))).is_rough

"""Species compilation against the brute-force enumerators."""

import itertools
import math

import pytest

from finfock import species
from finfock.errors import MismatchReport, NotEnumerable, TooLarge
from finfock.species import (
    B,
    E,
    E_PLUS,
    L,
    ONE,
    PAR,
    X,
    ZERO,
    Compose,
    Derivative,
    Fix,
    Power,
    Product,
    Sum,
    Var,
)


def test_compile_base_sequences():
    assert species.compile(E).terms(6) == [1] * 6
    assert species.compile(ZERO).terms(6) == [0] * 6
    assert species.compile(ONE).terms(4) == [1, 0, 0, 0]
    assert species.compile(X).terms(4) == [0, 1, 0, 0]
    assert species.compile(E_PLUS).terms(4) == [0, 1, 1, 1]
    assert species.compile(L).terms(6) == [math.factorial(n) for n in range(6)]


def test_compile_partitions_matches_enumeration():
    seq = species.compile(PAR)
    for n in range(10):
        assert seq.term(n) == species.count_structures(PAR, n)
    assert seq.terms(6) == [1, 1, 2, 5, 15, 52]


def test_compile_trees_is_fixpoint_solution():
    direct = species.compile(Fix("F", Sum(ONE, Product(X, Power(Var("F"), 2)))))
    assert species.compile(B).terms(9) == direct.terms(9)


def test_compile_operators():
    two_to_n = species.compile(Product(E, E))
    assert two_to_n.terms(9) == [2**n for n in range(9)]
    assert species.compile(Derivative(E)).terms(5) == [1] * 5
    assert species.compile(Power(X, 0)).terms(3) == [1, 0, 0]


def test_compile_unbound_variable():
    with pytest.raises(ValueError):
        species.compile(Var("F"))


# ---------------------------------------------------------------------------
# enumeration


def test_enumerate_counts():
    assert len(species.enumerate_structures(L, 4)) == 24
    assert len(species.enumerate_structures(B, 3)) == 30
    assert len(species.enumerate_structures(ZERO, 0)) == 0
    assert len(species.enumerate_structures(ONE, 0)) == 1
    assert len(species.enumerate_structures(ONE, 1)) == 0
    assert len(species.enumerate_structures(X, 1)) == 1
    assert len(species.enumerate_structures(E, 5)) == 1
    assert len(species.enumerate_structures(E_PLUS, 0)) == 0


def test_enumerate_cap():
    with pytest.raises(TooLarge):
        species.enumerate_structures(L, 10)
    with pytest.raises(TooLarge):
        species.count_structures(E, 12)


def test_enumerate_rejects_composition():
    with pytest.raises(NotEnumerable):
        species.enumerate_structures(Compose(E, E_PLUS), 3)


def test_enumeration_is_duplicate_free():
    for expr, n in [(L, 5), (B, 4), (PAR, 5), (Product(E, E), 5), (Sum(L, PAR), 4)]:
        witnesses = [s.witness for s in species.enumerate_structures(expr, n)]
        assert len(witnesses) == len(set(witnesses))


def test_partition_witnesses_are_canonical():
    for s in species.enumerate_structures(PAR, 5):
        blocks = s.witness
        elements = sorted(x for block in blocks for x in block)
        assert elements == [1, 2, 3, 4, 5]
        assert all(block for block in blocks)
        mins = [min(block) for block in blocks]
        assert mins == sorted(mins)
        assert species.check_witness(PAR, 5, s.witness)


def test_tree_witnesses_use_every_label_once():
    for s in species.enumerate_structures(B, 4):
        labels = []

        def walk(t):
            if t is None:
                return
            root, left, right = t
            labels.append(root)
            walk(left)
            walk(right)

        walk(s.witness)
        assert sorted(labels) == [1, 2, 3, 4]
        assert species.check_witness(B, 4, s.witness)


def test_product_witnesses_split_the_label_set():
    for s in species.enumerate_structures(Product(L, E_PLUS), 4):
        (left_labels, order), (right_labels, _) = s.witness
        assert sorted(left_labels + right_labels) == [1, 2, 3, 4]
        assert sorted(order) == sorted(left_labels)
        assert len(right_labels) >= 1
        assert species.check_witness(Product(L, E_PLUS), 4, s.witness)


def test_check_witness_rejects_garbage():
    assert not species.check_witness(PAR, 3, ((1, 2), (2, 3)))
    assert not species.check_witness(B, 2, (1, None, None))
    assert not species.check_witness(L, 3, (1, 2))


# ---------------------------------------------------------------------------
# oracle


ENUMERABLE = [
    ONE,
    X,
    E,
    E_PLUS,
    L,
    PAR,
    B,
    Sum(E, L),
    Product(E, E),
    Product(X, PAR),
    Sum(ONE, Product(X, L)),
    Power(X, 3),
    Derivative(E_PLUS),
    Derivative(L),
]


@pytest.mark.parametrize("expr", ENUMERABLE, ids=lambda e: type(e).__name__ + str(id(e) % 97))
def test_engine_equals_enumeration(expr):
    rows = species.oracle_check(expr, 6)
    assert [row.n for row in rows] == list(range(7))
    for row in rows:
        assert row.engine_count == row.enumerated_count


def test_oracle_check_trees_to_six():
    rows = species.oracle_check(B, 6)
    assert [int(r.engine_count) for r in rows] == [1, 1, 4, 30, 336, 5040, 95040]


def test_oracle_check_one():
    rows = species.oracle_check(ONE, 5)
    assert [int(r.engine_count) for r in rows] == [1, 0, 0, 0, 0, 0]


@pytest.mark.parametrize("name,expr,upto", [("D(E+)", Derivative(E_PLUS), 6),
                                            ("D(L)", Derivative(L), 6),
                                            ("D(Par)", Derivative(PAR), 6),
                                            ("D(B)", Derivative(B), 5)])
def test_derivative_counts_shift_by_one(name, expr, upto):
    inner = expr.inner
    seq = species.compile(expr)
    for n in range(upto):
        assert seq.term(n) == species.count_structures(inner, n + 1)
        assert species.count_structures(expr, n) == species.count_structures(
            inner, n + 1
        )


def test_mismatch_report(monkeypatch):
    # force the engine to hand back the wrong sequence for X
    fake = species.compile(E)
    monkeypatch.setattr(species, "compile", lambda expr, env=None: fake)
    with pytest.raises(MismatchReport) as info:
        species.oracle_check(X, 3)
    assert info.value.n == 0
    assert info.value.engine_count == 1
    assert info.value.enumerated_count == 0


def test_labeled_structure_records_kind_and_size():
    out = species.enumerate_structures(L, 3)
    assert all(s.kind == "LinearOrders" and s.size == 3 for s in out)
    orders = sorted(s.witness for s in out)
    assert orders == sorted(itertools.permutations((1, 2, 3)))

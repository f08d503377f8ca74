"""Structure tables, elements, and the product identity checks."""

import random
from fractions import Fraction

import pytest

from malcev.algebra import (
    ANTICOMMUTATIVE,
    StructureTable,
    check_anticommutative,
    check_jacobi,
    check_malcev,
    check_pre_malcev,
    check_sagle,
    commutator_algebra,
    jacobi_residual,
    malcev_residual,
    render_element,
    sagle_residual,
)

from helpers import rand_anticommutative


def test_table_validates_inputs():
    with pytest.raises(ValueError):
        StructureTable(2, ("e1",), (), {})
    with pytest.raises(ValueError):
        StructureTable(2, ("e1", "e1"), (), {})
    with pytest.raises(ValueError):
        StructureTable(1, ("e1",), (), {(0, 0): {3: Fraction(1)}})
    with pytest.raises(ValueError):
        StructureTable.anticommutative(2, ("e1", "e2"), (), {(1, 0): {0: Fraction(1)}})


def test_anticommutative_constructor_mirrors_products(fix_a):
    assert fix_a.kind == ANTICOMMUTATIVE
    assert fix_a.product(1, 0) == {1: Fraction(1)}
    assert fix_a.product(2, 1) == {3: Fraction(-2)}
    assert fix_a.product(0, 0) == {}


def test_element_arithmetic(fix_a):
    e1, e2, e3, e4 = fix_a.basis_elements()
    assert (e1 * e2).coords == (0, Fraction(-1), 0, 0)
    combo = e1 + e2 - e4
    assert render_element(combo, fix_a.basis_names) == "e1 + e2 - e4"
    assert (combo * fix_a.zero_element()).is_zero()
    # bilinearity over a composite element
    lhs = combo * e3
    rhs = e1 * e3 + e2 * e3 - e4 * e3
    assert (lhs - rhs).is_zero()


def test_fix_a_is_malcev_not_lie(fix_a):
    assert check_anticommutative(fix_a).holds
    assert check_malcev(fix_a).holds
    assert check_sagle(fix_a).holds
    jac = check_jacobi(fix_a)
    assert not jac.holds
    assert jac.witness is not None
    assert jac.witness.indices == (0, 1, 2)
    assert render_element(jac.witness.residual, fix_a.basis_names) == "-6*e4"


def test_sl2_is_lie_hence_malcev(sl2):
    assert check_jacobi(sl2).holds
    assert check_malcev(sl2).holds
    assert check_sagle(sl2).holds


def test_fix_pm_satisfies_the_four_slot_identity(fix_pm):
    assert check_pre_malcev(fix_pm).holds


def test_commutator_of_fix_pm_recovers_fix_a(fix_pm, fix_a):
    assert commutator_algebra(fix_pm) == fix_a


def test_lie_tables_pass_malcev_and_sagle_randomly():
    # every Lie algebra is Malcev; exercise the implication on the
    # 2-dimensional family [e1, e2] = a e1 + b e2, always Lie
    rng = random.Random(11)
    for _ in range(20):
        table = StructureTable.anticommutative(
            2,
            ("e1", "e2"),
            (),
            {(0, 1): {0: Fraction(rng.randint(-3, 3)), 1: Fraction(rng.randint(-3, 3))}},
        )
        assert check_jacobi(table).holds
        assert check_malcev(table).holds
        assert check_sagle(table).holds


def test_malcev_and_sagle_agree_on_random_tables(fix_a, sl2):
    # the two forms of the defining identity accept the same tables;
    # random dense tables populate the failing side, the fixtures the
    # passing side
    rng = random.Random(13)
    for _ in range(40):
        table = rand_anticommutative(rng, 3)
        assert check_malcev(table).holds == check_sagle(table).holds
    for table in (fix_a, sl2):
        assert check_malcev(table).holds and check_sagle(table).holds


def test_residual_functions_accept_composite_elements(fix_a):
    e1, e2, e3, e4 = fix_a.basis_elements()
    x = e1 + 2 * e2
    y = e3 - e4
    z = e2 + e3
    t = e1 - e4
    assert malcev_residual(x, y, z).is_zero()
    assert sagle_residual(x, y, z, t).is_zero()
    assert not jacobi_residual(e1 + e4, e2, e3).is_zero()


def test_zero_dimensional_table_is_legal():
    table = StructureTable.anticommutative(0, (), (), {})
    assert check_malcev(table).holds
    assert check_jacobi(table).holds

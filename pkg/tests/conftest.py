"""Shared fixtures: the small named algebras used across the suite."""

from fractions import Fraction

import pytest

from malcev.algebra import GENERAL, StructureTable
from malcev.reps import LinearMap, LinearRep
from malcev.ybe import TwoTensor


@pytest.fixture
def fix_a() -> StructureTable:
    """Four-dimensional solvable Malcev algebra that is not Lie."""
    return StructureTable.anticommutative(
        4,
        ("e1", "e2", "e3", "e4"),
        (),
        {
            (0, 1): {1: Fraction(-1)},
            (0, 2): {2: Fraction(-1)},
            (0, 3): {3: Fraction(1)},
            (1, 2): {3: Fraction(2)},
        },
    )


@pytest.fixture
def fix_pm() -> StructureTable:
    """The same four products read as a (non-anticommutative) general table."""
    return StructureTable(
        4,
        ("e1", "e2", "e3", "e4"),
        (),
        {
            (0, 1): {1: Fraction(-1)},
            (0, 2): {2: Fraction(-1)},
            (0, 3): {3: Fraction(1)},
            (1, 2): {3: Fraction(2)},
        },
        kind=GENERAL,
    )


@pytest.fixture
def sl2() -> StructureTable:
    return StructureTable.anticommutative(
        3,
        ("x", "y", "z"),
        (),
        {
            (0, 1): {1: Fraction(2)},
            (0, 2): {2: Fraction(-2)},
            (1, 2): {0: Fraction(1)},
        },
    )


@pytest.fixture
def sl2_rep(sl2: StructureTable) -> LinearRep:
    """Two-dimensional natural action, stored column-convention."""
    mats = [
        [[Fraction(-2), Fraction(0)], [Fraction(0), Fraction(2)]],
        [[Fraction(0), Fraction(-2)], [Fraction(0), Fraction(0)]],
        [[Fraction(0), Fraction(0)], [Fraction(-2), Fraction(0)]],
    ]
    return LinearRep(sl2, 2, mats)


@pytest.fixture
def fix_r(fix_a: StructureTable) -> TwoTensor:
    """The skew solution e1 (x) e4 - e4 (x) e1 - e2 (x) e3 + e3 (x) e2."""
    z = Fraction(0)
    coeffs = [
        [z, z, z, Fraction(1)],
        [z, z, Fraction(-1), z],
        [z, Fraction(1), z, z],
        [Fraction(-1), z, z, z],
    ]
    return TwoTensor(fix_a, coeffs)


@pytest.fixture
def eq3_8_map() -> LinearMap:
    """The invertible antidiagonal operator tied to fix_r."""
    z = Fraction(0)
    rows = [
        [z, z, z, Fraction(1)],
        [z, z, Fraction(-1), z],
        [z, Fraction(1), z, z],
        [Fraction(-1), z, z, z],
    ]
    return LinearMap(4, 4, rows)

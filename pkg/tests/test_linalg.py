"""Dense exact matrix helpers, including inversion over Laurent scalars."""

import random
from fractions import Fraction

import pytest

from malcev.linalg import (
    SingularMatrixError,
    determinant,
    from_rows,
    identity,
    inverse,
    mat_mul,
    mat_sub,
    mat_vec,
    is_zero_matrix,
    shape,
    transpose,
    zeros,
)
from malcev.scalars import parse_scalar, render_scalar

from helpers import rand_matrix


def F(n, d=1):
    return Fraction(n, d)


def test_shape_transpose_zeros():
    m = from_rows([[F(1), F(2), F(3)], [F(4), F(5), F(6)]])
    assert shape(m) == (2, 3)
    assert shape(transpose(m)) == (3, 2)
    assert transpose(transpose(m)) == m
    assert is_zero_matrix(zeros(3, 2))


def test_determinant_small_cases():
    assert determinant(from_rows([[F(5)]])) == F(5)
    m = from_rows([[F(1), F(2)], [F(3), F(4)]])
    assert determinant(m) == F(-2)
    assert determinant(identity(4)) == F(1)


def test_inverse_round_trip_random():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randint(1, 4)
        m = from_rows(rand_matrix(rng, n, n))
        try:
            inv = inverse(m)
        except SingularMatrixError:
            assert determinant(m) == 0
            continue
        assert mat_mul(m, inv) == identity(n)
        assert mat_mul(inv, m) == identity(n)


def test_inverse_rejects_singular():
    m = from_rows([[F(1), F(2)], [F(2), F(4)]])
    with pytest.raises(SingularMatrixError):
        inverse(m)


def test_inverse_over_laurent_units():
    ring = ("k",)
    k = parse_scalar("k", ring)
    one = parse_scalar("1", ring)
    m = from_rows([[k, one], [parse_scalar("0", ring), parse_scalar("k^-1", ring)]])
    inv = inverse(m)
    assert mat_mul(m, inv) == identity(2)
    assert render_scalar(inv[0][0]) == "k^-1"


def test_parametric_determinant_expands():
    ring = ("a", "b")
    a = parse_scalar("a", ring)
    b = parse_scalar("b", ring)
    z = parse_scalar("0", ring)
    m = from_rows([[a, b], [b, a]])
    assert render_scalar(determinant(m)) == "a^2 - b^2"
    assert is_zero_matrix(mat_sub(m, m))
    assert mat_vec(m, (z, parse_scalar("1", ring)))[0] == b

"""Exact scalar arithmetic: rationals and multivariate Laurent polynomials."""

from fractions import Fraction

import pytest

from malcev.scalars import (
    LaurentPoly,
    NotInvertibleError,
    RingMismatchError,
    ScalarParseError,
    is_unit,
    is_zero,
    join_rings,
    parse_scalar,
    render_scalar,
    scalar_eval,
    scalar_invert,
)

RING = ("a", "b", "k")


def P(text: str, ring=RING):
    return parse_scalar(text, ring)


def test_parse_render_round_trip():
    for text in (
        "0",
        "-3/2",
        "a",
        "2*a*b - k^2",
        "a^2*k^-1 + 1/2",
        "-a^3 + 3*a*b*k - b^2",
    ):
        value = P(text)
        assert render_scalar(value) == render_scalar(P(render_scalar(value)))


def test_render_is_canonical_and_sorted():
    # same polynomial assembled in two different orders
    left = P("a") * P("b") + P("k") * P("k") - P("1")
    right = P("-1") + P("k^2") + P("b*a")
    assert render_scalar(left) == render_scalar(right)
    # descending exponent order keeps the leading term first
    assert render_scalar(P("1 + a^2 + a")) == "a^2 + a + 1"


def test_constants_collapse_to_fractions():
    value = P("a - a + 7/3")
    assert isinstance(value, Fraction)
    assert value == Fraction(7, 3)


def test_arithmetic_matches_evaluation():
    x = P("a^2 - 2*b*k^-1")
    y = P("3*a*k + b")
    assignment = {"a": 2, "b": Fraction(1, 3), "k": Fraction(-1, 2)}
    for combo, expected in (
        (x + y, scalar_eval(x, assignment) + scalar_eval(y, assignment)),
        (x - y, scalar_eval(x, assignment) - scalar_eval(y, assignment)),
        (x * y, scalar_eval(x, assignment) * scalar_eval(y, assignment)),
        (-x, -scalar_eval(x, assignment)),
    ):
        assert scalar_eval(combo, assignment) == expected


def test_zero_detection():
    assert is_zero(P("0"))
    assert is_zero(P("a*b - b*a"))
    assert not is_zero(P("a - b"))


def test_units_and_inversion():
    assert is_unit(P("-2*a^2*k^-1"))
    assert not is_unit(P("a + b"))
    inv = scalar_invert(P("2*a"))
    assert render_scalar(P("2*a") * inv) == "1"
    with pytest.raises(NotInvertibleError):
        scalar_invert(P("a + 1"))
    with pytest.raises(ZeroDivisionError):
        scalar_invert(Fraction(0))


def test_laurent_negative_exponents():
    value = P("a^-2") * P("a^2")
    assert value == Fraction(1) or render_scalar(value) == "1"
    assert render_scalar(P("k^-1") * P("k^-1")) == "k^-2"


def test_ring_mismatch_guard():
    other = parse_scalar("x + 1", ("x",))
    with pytest.raises(RingMismatchError):
        _ = P("a") + other


def test_join_rings_allows_only_trivial_extensions():
    assert join_rings(("a", "b"), ("a", "b"), "test") == ("a", "b")
    assert join_rings((), ("a", "b"), "test") == ("a", "b")
    assert join_rings(("a", "b"), (), "test") == ("a", "b")
    with pytest.raises(RingMismatchError):
        join_rings(("a", "b"), ("b", "k"), "test")


def test_parse_rejects_garbage():
    for bad in ("", "a +", "2**3", "q", "a^x"):
        with pytest.raises(ScalarParseError):
            P(bad)


def test_laurent_poly_equality_and_hashing_protocol():
    assert P("a + b") == P("b + a")
    assert P("a") != P("b")
    assert isinstance(P("a"), LaurentPoly)

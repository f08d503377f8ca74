"""Exact scalar arithmetic: rationals and Laurent polynomials.

A scalar is either a ``fractions.Fraction`` or a :class:`LaurentPoly`.
Laurent polynomials are stored sparsely as a map from exponent vectors
(one signed integer per ring variable) to nonzero rational coefficients;
the zero polynomial is the empty map.  All arithmetic is exact.  Nothing
in this package touches floating point.

Rationals embed into any polynomial ring as constants, so they mix
freely with polynomials.  Two polynomials combine only when they were
built over the same variable tuple; anything else raises
:class:`RingMismatchError`.

Canonical form: coefficients are reduced fractions, zero coefficients
are dropped, and rendering orders terms by descending lexicographic
exponent vector.  Two scalars over the same ring are mathematically
equal exactly when their rendered forms coincide byte for byte.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Exponents = tuple[int, ...]
Scalar = Union[Fraction, "LaurentPoly"]

ZERO = Fraction(0)
ONE = Fraction(1)


class ScalarError(Exception):
    """Base class for scalar arithmetic and parsing failures."""


class RingMismatchError(ScalarError):
    """Polynomials over different variable tuples were combined."""


class NotInvertibleError(ScalarError):
    """Inversion was requested for a scalar that is not a ring unit."""


class ScalarParseError(ScalarError):
    """Scalar text that does not match the grammar."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class LaurentPoly:
    """Sparse Laurent polynomial over Q in a fixed tuple of variables.

    Treated as immutable: arithmetic always builds fresh instances.
    """

    __slots__ = ("variables", "terms")

    def __init__(
        self,
        variables: Iterable[str],
        terms: Mapping[Exponents, Fraction] | Iterable[tuple[Exponents, Fraction]] = (),
    ) -> None:
        self.variables: tuple[str, ...] = tuple(variables)
        arity = len(self.variables)
        acc: dict[Exponents, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, coeff in items:
            key = tuple(int(e) for e in exps)
            if len(key) != arity:
                raise ValueError(
                    f"exponent vector {key} does not match ring arity {arity}"
                )
            val = acc.get(key, ZERO) + Fraction(coeff)
            if val:
                acc[key] = val
            else:
                acc.pop(key, None)
        self.terms: dict[Exponents, Fraction] = acc

    @classmethod
    def constant(cls, variables: Iterable[str], value: Fraction | int) -> "LaurentPoly":
        variables = tuple(variables)
        value = Fraction(value)
        if not value:
            return cls(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, variables: Iterable[str], name: str) -> "LaurentPoly":
        variables = tuple(variables)
        if name not in variables:
            raise KeyError(f"variable {name!r} is not in the ring {variables}")
        i = variables.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls(variables, {exps: ONE})

    def as_constant(self) -> Fraction | None:
        """The value as a Fraction when the polynomial is constant, else None."""
        if not self.terms:
            return ZERO
        if len(self.terms) == 1:
            exps, coeff = next(iter(self.terms.items()))
            if not any(exps):
                return coeff
        return None

    # Rationals embed as constants; a foreign polynomial ring is an error.
    def _embed(self, other: object) -> "LaurentPoly | None":
        if isinstance(other, LaurentPoly):
            if other.variables != self.variables:
                raise RingMismatchError(
                    f"cannot combine polynomials over {self.variables!r} "
                    f"and {other.variables!r}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.constant(self.variables, other)
        return None

    def __add__(self, other: object) -> "LaurentPoly":
        o = self._embed(other)
        if o is None:
            return NotImplemented
        acc = dict(self.terms)
        for exps, coeff in o.terms.items():
            val = acc.get(exps, ZERO) + coeff
            if val:
                acc[exps] = val
            else:
                acc.pop(exps, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.variables = self.variables
        out.terms = acc
        return out

    __radd__ = __add__

    def __sub__(self, other: object) -> "LaurentPoly":
        o = self._embed(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> "LaurentPoly":
        o = self._embed(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out.variables = self.variables
        out.terms = {exps: -coeff for exps, coeff in self.terms.items()}
        return out

    def __mul__(self, other: object) -> "LaurentPoly":
        o = self._embed(other)
        if o is None:
            return NotImplemented
        acc: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                val = acc.get(key, ZERO) + c1 * c2
                if val:
                    acc[key] = val
                else:
                    acc.pop(key, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.variables = self.variables
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = LaurentPoly.constant(self.variables, 1)
        for _ in range(exponent):
            out = out * self
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            const = self.as_constant()
            return const is not None and const == other
        return NotImplemented

    __hash__ = None  # mutable-dict payload; scalars are never dict keys

    def __str__(self) -> str:
        return render_scalar(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.variables!r}, {render_scalar(self)!r})"


def is_zero(a: Scalar) -> bool:
    return not a


def ensure_ring(a: Scalar | int, ring: Sequence[str], context: str = "scalar") -> Scalar:
    """Validate that a scalar lives in (or embeds into) the given ring.

    Constant polynomials are demoted to plain Fractions, so stored
    scalars have one canonical representation.
    """
    if isinstance(a, int):
        return Fraction(a)
    if isinstance(a, Fraction):
        return a
    if isinstance(a, LaurentPoly):
        if a.variables != tuple(ring):
            raise RingMismatchError(
                f"{context} lives in ring {a.variables!r}, expected {tuple(ring)!r}"
            )
        const = a.as_constant()
        return const if const is not None else a
    raise TypeError(f"{context} is {type(a).__name__}, not a scalar")


def is_unit(a: Scalar) -> bool:
    """Units are nonzero rationals and single-monomial polynomials."""
    if isinstance(a, (int, Fraction)):
        return bool(a)
    return len(a.terms) == 1


def join_rings(
    first: Sequence[str], second: Sequence[str], context: str = "objects"
) -> tuple[str, ...]:
    """Common ambient ring of two objects; only trivial extensions allowed."""
    a, b = tuple(first), tuple(second)
    if a == b:
        return a
    if not a:
        return b
    if not b:
        return a
    raise RingMismatchError(f"{context} live over different rings {a!r} and {b!r}")


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_sub(a: Scalar, b: Scalar) -> Scalar:
    return a - b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def scalar_neg(a: Scalar) -> Scalar:
    return -a


def scalar_invert(a: Scalar) -> Scalar:
    """Multiplicative inverse of a ring unit.

    Zero raises ZeroDivisionError; a polynomial with more than one term
    is not a unit of the Laurent ring and raises NotInvertibleError.
    """
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(a, Fraction):
        if not a:
            raise ZeroDivisionError("scalar 0 has no inverse")
        return 1 / a
    if not a.terms:
        raise ZeroDivisionError("scalar 0 has no inverse")
    if len(a.terms) > 1:
        raise NotInvertibleError(
            f"{render_scalar(a)} is not a unit of the Laurent ring over "
            f"{a.variables!r}; instantiate the parameters first"
        )
    (exps, coeff), = a.terms.items()
    return LaurentPoly(a.variables, {tuple(-e for e in exps): 1 / coeff})


def scalar_eval(a: Scalar, assignment: Mapping[str, Fraction | int]) -> Fraction:
    """Substitute rationals for every variable and return the exact value."""
    if isinstance(a, int):
        return Fraction(a)
    if isinstance(a, Fraction):
        return a
    values = []
    for name in a.variables:
        if name not in assignment:
            raise ScalarError(f"no value supplied for variable {name!r}")
        values.append(Fraction(assignment[name]))
    total = ZERO
    for exps, coeff in a.terms.items():
        term = coeff
        for name, value, e in zip(a.variables, values, exps):
            if e == 0:
                continue
            if not value and e < 0:
                raise ZeroDivisionError(
                    f"variable {name!r} set to 0 but occurs with exponent {e}"
                )
            term *= value ** e
        total += term
    return total


def render_scalar(a: Scalar) -> str:
    """Canonical text form; the inverse of parse_scalar on its image."""
    if isinstance(a, int):
        a = Fraction(a)
    if isinstance(a, Fraction):
        return str(a)
    if not a.terms:
        return "0"
    parts: list[str] = []
    for exps in sorted(a.terms, reverse=True):
        coeff = a.terms[exps]
        factors = [
            name if e == 1 else f"{name}^{e}"
            for name, e in zip(a.variables, exps)
            if e != 0
        ]
        magnitude = -coeff if coeff < 0 else coeff
        if not factors:
            body = str(magnitude)
        elif magnitude == 1:
            body = "*".join(factors)
        else:
            body = "*".join([str(magnitude)] + factors)
        if not parts:
            parts.append(body if coeff > 0 else "-" + body)
        else:
            parts.append((" + " if coeff > 0 else " - ") + body)
    return "".join(parts)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        if ch in "+-*/^":
            tokens.append((ch, ch, i))
            i += 1
            continue
        raise ScalarParseError(f"unexpected character {ch!r}", i)
    return tokens


class _Parser:
    """Recursive-descent parser for `term (('+'|'-') term)*`."""

    def __init__(self, tokens: list[tuple[str, str, int]], length: int, ring: tuple[str, ...]):
        self.tokens = tokens
        self.pos = 0
        self.length = length
        self.ring = ring

    def _peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _take(self) -> tuple[str, str, int]:
        tok = self._peek()
        if tok is None:
            raise ScalarParseError("unexpected end of input", self.length)
        self.pos += 1
        return tok

    def _expect(self, kind: str) -> tuple[str, str, int]:
        tok = self._take()
        if tok[0] != kind:
            raise ScalarParseError(f"expected {kind}, found {tok[1]!r}", tok[2])
        return tok

    def parse(self) -> LaurentPoly:
        total = LaurentPoly(self.ring)
        sign = 1
        tok = self._peek()
        if tok is not None and tok[0] in "+-":
            self._take()
            sign = -1 if tok[0] == "-" else 1
        while True:
            total = total + self._term(sign)
            tok = self._peek()
            if tok is None:
                return total
            if tok[0] not in "+-":
                raise ScalarParseError(f"expected '+' or '-', found {tok[1]!r}", tok[2])
            self._take()
            sign = -1 if tok[0] == "-" else 1

    def _term(self, sign: int) -> LaurentPoly:
        coeff = Fraction(sign)
        exps = [0] * len(self.ring)
        tok = self._peek()
        if tok is None:
            raise ScalarParseError("unexpected end of input", self.length)
        if tok[0] == "int":
            self._take()
            numerator = int(tok[1])
            denominator = 1
            nxt = self._peek()
            if nxt is not None and nxt[0] == "/":
                self._take()
                dtok = self._expect("int")
                denominator = int(dtok[1])
                if denominator == 0:
                    raise ScalarParseError("zero denominator", dtok[2])
            coeff *= Fraction(numerator, denominator)
            nxt = self._peek()
            if nxt is None or nxt[0] != "*":
                return LaurentPoly(self.ring, {tuple(exps): coeff})
            self._take()
        self._varpow(exps)
        while True:
            nxt = self._peek()
            if nxt is None or nxt[0] != "*":
                break
            self._take()
            self._varpow(exps)
        return LaurentPoly(self.ring, {tuple(exps): coeff})

    def _varpow(self, exps: list[int]) -> None:
        tok = self._expect("name")
        name = tok[1]
        if name not in self.ring:
            raise ScalarParseError(
                f"unknown variable {name!r} (ring is {list(self.ring)})", tok[2]
            )
        index = self.ring.index(name)
        exponent = 1
        nxt = self._peek()
        if nxt is not None and nxt[0] == "^":
            self._take()
            sign = 1
            nxt = self._peek()
            if nxt is not None and nxt[0] == "-":
                self._take()
                sign = -1
            etok = self._expect("int")
            exponent = sign * int(etok[1])
        exps[index] += exponent


def parse_scalar(text: str, ring: Sequence[str]) -> Scalar:
    """Parse scalar text over the given variable ring.

    Grammar: `term (('+'|'-') term)*` where a term is an optional
    rational coefficient `p` or `p/q` followed by `*`-separated
    `name^int` factors (the exponent may be negative, `^1` may be
    omitted).  Whitespace is insignificant.  Constant results come back
    as plain Fractions.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ScalarParseError("empty scalar", 0)
    poly = _Parser(tokens, len(text), tuple(ring)).parse()
    const = poly.as_constant()
    return const if const is not None else poly

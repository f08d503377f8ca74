"""Structure tables, elements, and the defining identities.

A finite-dimensional algebra is stored by its structure constants: a
sparse map (i, j) -> {k: c} meaning that the product of the i-th and
j-th basis elements has coefficient c on the k-th.  Constants live over
an exact scalar ring (rationals, optionally extended by named Laurent
parameters).  Tables tagged ``anticommutative`` enforce c_ij = -c_ji
and c_ii = 0 at construction time; ``general`` tables carry arbitrary
products, which is where pre-Malcev candidates live.

Identity checks quantify over basis tuples only (all the identities are
multilinear) and report the lexicographically first failing tuple
together with the exact residual element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .scalars import Scalar, ZERO, ensure_ring, is_zero, join_rings, render_scalar

ANTICOMMUTATIVE = "anticommutative"
GENERAL = "general"

ProductRow = dict[int, Scalar]


class StructureTable:
    """Immutable structure-constant table of a finite-dimensional algebra."""

    __slots__ = ("dim", "basis_names", "ring", "kind", "constants")

    def __init__(
        self,
        dim: int,
        basis_names: Iterable[str],
        ring: Iterable[str],
        constants: Mapping[tuple[int, int], Mapping[int, Scalar]],
        kind: str = GENERAL,
    ) -> None:
        if dim < 0:
            raise ValueError("dimension must be non-negative")
        if kind not in (ANTICOMMUTATIVE, GENERAL):
            raise ValueError(f"unknown table kind {kind!r}")
        names = tuple(basis_names)
        if len(names) != dim:
            raise ValueError(f"{len(names)} basis names for dimension {dim}")
        if len(set(names)) != dim:
            raise ValueError("basis names must be distinct")
        ring_t = tuple(ring)
        if len(set(ring_t)) != len(ring_t):
            raise ValueError("ring variables must be distinct")
        clean: dict[tuple[int, int], ProductRow] = {}
        for (i, j), row in constants.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"product index ({i}, {j}) out of range for dim {dim}")
            out_row: ProductRow = {}
            for k, coeff in row.items():
                if not 0 <= k < dim:
                    raise ValueError(f"component index {k} out of range for dim {dim}")
                coeff = ensure_ring(coeff, ring_t, f"constant c[{i},{j}]^{k}")
                if not is_zero(coeff):
                    out_row[k] = coeff
            if out_row:
                clean[(i, j)] = out_row
        self.dim = dim
        self.basis_names = names
        self.ring = ring_t
        self.kind = kind
        self.constants = clean
        if kind == ANTICOMMUTATIVE:
            self._validate_anticommutative()

    def _validate_anticommutative(self) -> None:
        for i in range(self.dim):
            if self.constants.get((i, i)):
                raise ValueError(
                    f"anticommutative table has a nonzero square at basis index {i}"
                )
            for j in range(i + 1, self.dim):
                forward = self.constants.get((i, j), {})
                backward = self.constants.get((j, i), {})
                mismatch = _row_add(forward, backward)
                if mismatch:
                    raise ValueError(
                        f"anticommutative table violates c[{j},{i}] = -c[{i},{j}] "
                        f"at pair ({i}, {j})"
                    )

    @classmethod
    def anticommutative(
        cls,
        dim: int,
        basis_names: Iterable[str],
        ring: Iterable[str],
        upper_products: Mapping[tuple[int, int], Mapping[int, Scalar]],
    ) -> "StructureTable":
        """Build an anticommutative table from products with i < j only."""
        constants: dict[tuple[int, int], ProductRow] = {}
        for (i, j), row in upper_products.items():
            if i >= j:
                raise ValueError(
                    f"anticommutative input lists pair ({i}, {j}); only i < j is allowed"
                )
            constants[(i, j)] = dict(row)
            constants[(j, i)] = {k: -c for k, c in row.items()}
        return cls(dim, basis_names, ring, constants, kind=ANTICOMMUTATIVE)

    def product(self, i: int, j: int) -> ProductRow:
        """Sparse coordinates of the product of basis elements i and j."""
        return self.constants.get((i, j), {})

    def basis_element(self, i: int) -> "Element":
        if not 0 <= i < self.dim:
            raise IndexError(f"basis index {i} out of range for dim {self.dim}")
        coords = tuple(Fraction(1) if k == i else ZERO for k in range(self.dim))
        return Element(self, coords)

    def element(self, coords: Iterable[Scalar]) -> "Element":
        coords_t = tuple(ensure_ring(c, self.ring, "coordinate") for c in coords)
        if len(coords_t) != self.dim:
            raise ValueError(f"{len(coords_t)} coordinates for dimension {self.dim}")
        return Element(self, coords_t)

    def zero_element(self) -> "Element":
        return Element(self, (ZERO,) * self.dim)

    def basis_elements(self) -> list["Element"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def with_ring(self, ring: Iterable[str]) -> "StructureTable":
        """The same table viewed over an extended scalar ring."""
        joined = join_rings(self.ring, tuple(ring), "table and requested ring")
        if joined == self.ring:
            return self
        return StructureTable(self.dim, self.basis_names, joined, self.constants, self.kind)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StructureTable):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.basis_names == other.basis_names
            and self.ring == other.ring
            and self.kind == other.kind
            and self.constants == other.constants
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (
            f"StructureTable(dim={self.dim}, kind={self.kind!r}, "
            f"basis={list(self.basis_names)})"
        )


class Element:
    """An algebra element: a structure table plus a coordinate vector."""

    __slots__ = ("table", "coords")

    def __init__(self, table: StructureTable, coords: tuple[Scalar, ...]) -> None:
        self.table = table
        self.coords = coords

    def _check_mate(self, other: "Element") -> None:
        if self.table is not other.table and self.table != other.table:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._check_mate(other)
        return Element(self.table, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "Element") -> "Element":
        self._check_mate(other)
        return Element(self.table, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Element":
        return Element(self.table, tuple(-a for a in self.coords))

    def __mul__(self, other: object) -> "Element":
        if isinstance(other, Element):
            return multiply(self, other)
        if isinstance(other, (int, Fraction)) or hasattr(other, "terms"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other: object) -> "Element":
        if isinstance(other, (int, Fraction)) or hasattr(other, "terms"):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: Scalar) -> "Element":
        return Element(self.table, tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(is_zero(a) for a in self.coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        self._check_mate(other)
        return self.coords == other.coords

    __hash__ = None

    def __repr__(self) -> str:
        return f"Element({render_element(self)})"


def multiply(x: Element, y: Element) -> Element:
    """Bilinear product through the structure constants."""
    x._check_mate(y)
    table = x.table
    coords: list[Scalar] = [ZERO] * table.dim
    for i, a in enumerate(x.coords):
        if is_zero(a):
            continue
        for j, b in enumerate(y.coords):
            if is_zero(b):
                continue
            row = table.product(i, j)
            if not row:
                continue
            ab = a * b
            for k, c in row.items():
                coords[k] = coords[k] + ab * c
    return Element(table, tuple(coords))


def render_element(x: Element, names: tuple[str, ...] | None = None) -> str:
    """Human-readable linear combination, e.g. ``-6*e4`` or ``(a + b)*e1``."""
    names = names if names is not None else x.table.basis_names
    parts: list[str] = []
    for coeff, name in zip(x.coords, names):
        if is_zero(coeff):
            continue
        if isinstance(coeff, Fraction):
            negative = coeff < 0
            magnitude = -coeff if negative else coeff
            body = name if magnitude == 1 else f"{magnitude}*{name}"
        else:
            negative = False
            body = f"({render_scalar(coeff)})*{name}"
        if not parts:
            parts.append(("-" if negative else "") + body)
        else:
            parts.append((" - " if negative else " + ") + body)
    return "".join(parts) if parts else "0"


@dataclass(frozen=True)
class Witness:
    """First failing basis tuple and the exact residual at it."""

    indices: tuple[int, ...]
    residual: Any

    def describe(self, basis_names: tuple[str, ...] | None = None) -> str:
        residual = self.residual
        if isinstance(residual, Element):
            rendered = render_element(residual, basis_names)
        elif isinstance(residual, tuple):
            rendered = "[" + "; ".join(
                ", ".join(render_scalar(entry) for entry in row) for row in residual
            ) + "]"
        else:
            rendered = render_scalar(residual)
        return f"at indices {self.indices}: residual {rendered}"


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check over all basis tuples."""

    identity: str
    holds: bool
    witness: Witness | None = None

    def describe(self, basis_names: tuple[str, ...] | None = None) -> str:
        if self.holds:
            return f"{self.identity}: holds"
        assert self.witness is not None
        return f"{self.identity}: fails {self.witness.describe(basis_names)}"


def _row_add(p: ProductRow, q: ProductRow) -> ProductRow:
    out = dict(p)
    for k, v in q.items():
        nv = out.get(k, ZERO) + v
        if is_zero(nv):
            out.pop(k, None)
        else:
            out[k] = nv
    return out


def _scan(
    table: StructureTable, arity: int, name: str, residual
) -> IdentityReport:
    basis = table.basis_elements()
    for idx in itertools.product(range(table.dim), repeat=arity):
        value = residual(*(basis[i] for i in idx))
        if not value.is_zero():
            return IdentityReport(name, False, Witness(idx, value))
    return IdentityReport(name, True)


def anticommutativity_residual(x: Element, y: Element) -> Element:
    return x * y + y * x


def jacobi_residual(x: Element, y: Element, z: Element) -> Element:
    return (x * y) * z + (y * z) * x + (z * x) * y


def malcev_residual(x: Element, y: Element, z: Element) -> Element:
    """Defect of (xy)(xz) = ((xy)z)x + ((yz)x)x + ((zx)x)y."""
    return (x * y) * (x * z) - (((x * y) * z) * x + ((y * z) * x) * x + ((z * x) * x) * y)


def sagle_residual(x: Element, y: Element, z: Element, t: Element) -> Element:
    """Defect of (xz)(yt) = ((xy)z)t + ((yz)t)x + ((zt)x)y + ((tx)y)z."""
    return (x * z) * (y * t) - (
        ((x * y) * z) * t + ((y * z) * t) * x + ((z * t) * x) * y + ((t * x) * y) * z
    )


def pre_malcev_residual(x: Element, y: Element, z: Element, t: Element) -> Element:
    """The ten-term defect whose vanishing defines a pre-Malcev product."""
    return (
        (y * z) * (x * t)
        - (z * y) * (x * t)
        + ((x * y) * z) * t
        - ((y * x) * z) * t
        + (z * (y * x)) * t
        - (z * (x * y)) * t
        + y * ((x * z) * t)
        - y * ((z * x) * t)
        + z * (x * (y * t))
        - x * (y * (z * t))
    )


def check_anticommutative(table: StructureTable) -> IdentityReport:
    return _scan(table, 2, "anticommutativity", anticommutativity_residual)


def check_jacobi(table: StructureTable) -> IdentityReport:
    return _scan(table, 3, "jacobi", jacobi_residual)


def check_malcev(table: StructureTable) -> IdentityReport:
    return _scan(table, 3, "malcev", malcev_residual)


def check_sagle(table: StructureTable) -> IdentityReport:
    return _scan(table, 4, "sagle", sagle_residual)


def check_pre_malcev(table: StructureTable) -> IdentityReport:
    return _scan(table, 4, "pre-malcev", pre_malcev_residual)


def commutator_algebra(table: StructureTable) -> StructureTable:
    """Anticommutative table of x*y - y*x on the same basis and ring."""
    constants: dict[tuple[int, int], ProductRow] = {}
    for i in range(table.dim):
        for j in range(table.dim):
            if i == j:
                continue
            row = _row_add(table.product(i, j), {k: -c for k, c in table.product(j, i).items()})
            if row:
                constants[(i, j)] = row
    return StructureTable(
        table.dim, table.basis_names, table.ring, constants, kind=ANTICOMMUTATIVE
    )

"""Representations of Malcev algebras and bimodules of pre-Malcev algebras.

A representation is a family of square matrices, one per algebra basis
element, acting on a module in the column convention.  The defining
axiom ties three actions together through the algebra product:

    rho((xy)z) = rho(x)rho(y)rho(z) - rho(z)rho(x)rho(y)
                 + rho(y)rho(zx) - rho(yz)rho(x)

Bimodules carry a left and a right family.  Their four defining
operator identities are exactly what falls out of demanding that the
semidirect sum become a pre-Malcev algebra, with the module element
placed in each of the four slots of the defining identity; they are
checked verbatim, term by term.

Duals follow the pairing convention <f(xi), v> = -<xi, f(v)>, which on
matrices is negated transposition.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import (
    ANTICOMMUTATIVE,
    GENERAL,
    Element,
    IdentityReport,
    StructureTable,
    Witness,
    commutator_algebra,
)
from .linalg import (
    Matrix,
    SingularMatrixError,
    Vector,
    from_cols,
    identity,
    inverse,
    is_zero_matrix,
    mat_add,
    mat_mul,
    mat_neg,
    mat_sub,
    mat_vec,
    shape,
    transpose,
    zeros,
)
from .scalars import (
    NotInvertibleError,
    Scalar,
    ZERO,
    ensure_ring,
    is_zero,
    join_rings,
)


def _clean_matrix(m: Iterable[Iterable[Scalar]], ring: tuple[str, ...], what: str) -> Matrix:
    rows = tuple(
        tuple(ensure_ring(entry, ring, what) for entry in row) for row in m
    )
    widths = {len(row) for row in rows}
    if len(widths) > 1:
        raise ValueError(f"{what} has ragged rows")
    return rows


class LinearMap:
    """A linear map between coordinate spaces, stored column-convention."""

    __slots__ = ("source_dim", "target_dim", "matrix", "ring")

    def __init__(
        self,
        source_dim: int,
        target_dim: int,
        matrix: Iterable[Iterable[Scalar]],
        ring: Iterable[str] = (),
    ) -> None:
        self.ring = tuple(ring)
        self.matrix = _clean_matrix(matrix, self.ring, "map entry")
        rows, cols = shape(self.matrix)
        if rows != target_dim or (rows and cols != source_dim) or (not rows and target_dim):
            raise ValueError(
                f"matrix shape {rows}x{cols} does not match map "
                f"{source_dim} -> {target_dim}"
            )
        if target_dim == 0 and source_dim and self.matrix:
            raise ValueError("zero-target map must have an empty matrix")
        self.source_dim = source_dim
        self.target_dim = target_dim

    @classmethod
    def identity(cls, n: int, ring: Iterable[str] = ()) -> "LinearMap":
        return cls(n, n, identity(n), ring)

    def apply(self, v: Vector) -> Vector:
        return mat_vec(self.matrix, v)

    def column(self, j: int) -> Vector:
        return tuple(self.matrix[i][j] for i in range(self.target_dim))

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self after other."""
        if other.target_dim != self.source_dim:
            raise ValueError("composition dimensions do not match")
        ring = join_rings(self.ring, other.ring, "maps")
        return LinearMap(other.source_dim, self.target_dim, mat_mul(self.matrix, other.matrix), ring)

    def inverse(self) -> "LinearMap":
        if self.source_dim != self.target_dim:
            raise ValueError("only square maps can be inverted")
        return LinearMap(self.target_dim, self.source_dim, inverse(self.matrix), self.ring)

    def transpose(self) -> "LinearMap":
        return LinearMap(self.target_dim, self.source_dim, transpose(self.matrix), self.ring)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearMap):
            return NotImplemented
        return (
            self.source_dim == other.source_dim
            and self.target_dim == other.target_dim
            and self.matrix == other.matrix
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearMap({self.source_dim} -> {self.target_dim})"


class LinearRep:
    """A representation of an anticommutative algebra on a module."""

    __slots__ = ("algebra", "space_dim", "action", "ring")

    def __init__(
        self,
        algebra: StructureTable,
        space_dim: int,
        action: Sequence[Iterable[Iterable[Scalar]]],
        ring: Iterable[str] | None = None,
    ) -> None:
        if algebra.kind != ANTICOMMUTATIVE:
            raise ValueError("representations are defined over anticommutative tables")
        if len(action) != algebra.dim:
            raise ValueError(
                f"{len(action)} action matrices for a dimension-{algebra.dim} algebra"
            )
        self.algebra = algebra
        self.space_dim = space_dim
        self.ring = tuple(ring) if ring is not None else algebra.ring
        join_rings(algebra.ring, self.ring, "algebra and representation")
        mats = []
        for i, m in enumerate(action):
            clean = _clean_matrix(m, self.ring, f"action matrix {i} entry")
            if shape(clean) != (space_dim, space_dim):
                raise ValueError(
                    f"action matrix {i} has shape {shape(clean)}, "
                    f"expected {space_dim}x{space_dim}"
                )
            mats.append(clean)
        self.action = tuple(mats)

    def of(self, x: Element | Sequence[Scalar]) -> Matrix:
        """Matrix acting for an arbitrary algebra element."""
        coords = x.coords if isinstance(x, Element) else tuple(x)
        out = zeros(self.space_dim, self.space_dim)
        for coeff, mat in zip(coords, self.action):
            if is_zero(coeff):
                continue
            out = mat_add(out, tuple(tuple(coeff * e for e in row) for row in mat))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinearRep):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.space_dim == other.space_dim
            and self.action == other.action
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"LinearRep(dim {self.algebra.dim} algebra on dim {self.space_dim} space)"


class Bimodule:
    """Left and right action families over a general (pre-Malcev) table."""

    __slots__ = ("algebra", "space_dim", "left", "right", "ring")

    def __init__(
        self,
        algebra: StructureTable,
        space_dim: int,
        left: Sequence[Iterable[Iterable[Scalar]]],
        right: Sequence[Iterable[Iterable[Scalar]]],
        ring: Iterable[str] | None = None,
    ) -> None:
        if len(left) != algebra.dim or len(right) != algebra.dim:
            raise ValueError("need one left and one right matrix per basis element")
        self.algebra = algebra
        self.space_dim = space_dim
        self.ring = tuple(ring) if ring is not None else algebra.ring
        join_rings(algebra.ring, self.ring, "algebra and bimodule")

        def clean(ms: Sequence[Iterable[Iterable[Scalar]]], side: str) -> tuple[Matrix, ...]:
            out = []
            for i, m in enumerate(ms):
                c = _clean_matrix(m, self.ring, f"{side} matrix {i} entry")
                if shape(c) != (space_dim, space_dim):
                    raise ValueError(
                        f"{side} matrix {i} has shape {shape(c)}, "
                        f"expected {space_dim}x{space_dim}"
                    )
                out.append(c)
            return tuple(out)

        self.left = clean(left, "left")
        self.right = clean(right, "right")

    def left_of(self, x: Element | Sequence[Scalar]) -> Matrix:
        coords = x.coords if isinstance(x, Element) else tuple(x)
        out = zeros(self.space_dim, self.space_dim)
        for coeff, mat in zip(coords, self.left):
            if is_zero(coeff):
                continue
            out = mat_add(out, tuple(tuple(coeff * e for e in row) for row in mat))
        return out

    def right_of(self, x: Element | Sequence[Scalar]) -> Matrix:
        coords = x.coords if isinstance(x, Element) else tuple(x)
        out = zeros(self.space_dim, self.space_dim)
        for coeff, mat in zip(coords, self.right):
            if is_zero(coeff):
                continue
            out = mat_add(out, tuple(tuple(coeff * e for e in row) for row in mat))
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Bimodule):
            return NotImplemented
        return (
            self.algebra == other.algebra
            and self.space_dim == other.space_dim
            and self.left == other.left
            and self.right == other.right
        )

    __hash__ = None

    def __repr__(self) -> str:
        return f"Bimodule(dim {self.algebra.dim} algebra on dim {self.space_dim} space)"


@dataclass(frozen=True)
class AxiomReport:
    """Several named identity verdicts rolled into one pass/fail."""

    name: str
    checks: tuple[IdentityReport, ...]

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)

    def describe(self, basis_names: tuple[str, ...] | None = None) -> str:
        return "\n".join(c.describe(basis_names) for c in self.checks)


def rep_residual(rep: LinearRep, i: int, j: int, k: int) -> Matrix:
    """Axiom defect at the basis triple (i, j, k); zero means compatible."""
    table = rep.algebra
    x, y, z = table.basis_element(i), table.basis_element(j), table.basis_element(k)
    lhs = rep.of((x * y) * z)
    rx, ry, rz = rep.action[i], rep.action[j], rep.action[k]
    rhs = mat_sub(mat_mul(mat_mul(rx, ry), rz), mat_mul(rz, mat_mul(rx, ry)))
    rhs = mat_add(rhs, mat_mul(ry, rep.of(z * x)))
    rhs = mat_sub(rhs, mat_mul(rep.of(y * z), rx))
    return mat_sub(lhs, rhs)


def check_rep(rep: LinearRep) -> IdentityReport:
    dim = rep.algebra.dim
    for idx in itertools.product(range(dim), repeat=3):
        residual = rep_residual(rep, *idx)
        if not is_zero_matrix(residual):
            return IdentityReport("representation", False, Witness(idx, residual))
    return IdentityReport("representation", True)


def adjoint_rep(table: StructureTable) -> LinearRep:
    """The algebra acting on itself by left products."""
    if table.kind != ANTICOMMUTATIVE:
        raise ValueError("the adjoint representation needs an anticommutative table")
    mats = []
    for i in range(table.dim):
        cols = []
        for j in range(table.dim):
            row = table.product(i, j)
            cols.append(tuple(row.get(k, ZERO) for k in range(table.dim)))
        mats.append(from_cols(cols) if table.dim else ())
    return LinearRep(table, table.dim, mats)


def dual_rep(rep: LinearRep) -> LinearRep:
    """Action on the dual space: negated transposes."""
    return LinearRep(
        rep.algebra,
        rep.space_dim,
        tuple(mat_neg(transpose(m)) for m in rep.action),
        rep.ring,
    )


def coadjoint_rep(table: StructureTable) -> LinearRep:
    return dual_rep(adjoint_rep(table))


def default_module_names(table: StructureTable, space_dim: int) -> tuple[str, ...]:
    """Names for adjoined module coordinates that avoid basis collisions."""
    if space_dim == table.dim:
        candidate = tuple(f"x{i + 1}" for i in range(space_dim))
    else:
        candidate = tuple(f"v{i + 1}" for i in range(space_dim))
    if set(candidate) & set(table.basis_names):
        candidate = tuple(f"{n}*" for n in candidate)
    return candidate


def semidirect_malcev(
    table: StructureTable,
    rep: LinearRep,
    module_names: Sequence[str] | None = None,
) -> StructureTable:
    """Anticommutative product on algebra + module:
    (x, u)(y, v) = (xy, rho(x)v - rho(y)u).
    """
    if rep.algebra is not table and rep.algebra != table:
        raise ValueError("representation is not over the given algebra")
    n, m = table.dim, rep.space_dim
    names = tuple(module_names) if module_names is not None else default_module_names(table, m)
    if len(names) != m:
        raise ValueError(f"{len(names)} module names for a dimension-{m} module")
    ring = join_rings(table.ring, rep.ring, "algebra and representation")
    constants: dict[tuple[int, int], dict[int, Scalar]] = {
        key: dict(row) for key, row in table.constants.items()
    }
    for i in range(n):
        mat = rep.action[i]
        for j in range(m):
            row = {n + k: mat[k][j] for k in range(m) if not is_zero(mat[k][j])}
            if row:
                constants[(i, n + j)] = row
                constants[(n + j, i)] = {k: -c for k, c in row.items()}
    return StructureTable(
        n + m,
        table.basis_names + names,
        ring,
        constants,
        kind=ANTICOMMUTATIVE,
    )


def check_rep_iso(phi: LinearMap, rep1: LinearRep, rep2: LinearRep) -> IdentityReport:
    """Is phi an isomorphism from rep2's module to rep1's intertwining
    the actions: rho1(x) . phi = phi . rho2(x)?
    """
    name = "representation-isomorphism"
    if rep1.algebra != rep2.algebra:
        raise ValueError("representations live over different algebras")
    if phi.source_dim != rep2.space_dim or phi.target_dim != rep1.space_dim:
        raise ValueError(
            f"map {phi.source_dim}->{phi.target_dim} does not connect modules "
            f"of dimensions {rep2.space_dim} and {rep1.space_dim}"
        )
    if phi.source_dim != phi.target_dim:
        return IdentityReport(name, False, Witness((), "modules have different dimensions"))
    try:
        phi.inverse()
    except (SingularMatrixError, NotInvertibleError) as exc:
        return IdentityReport(name, False, Witness((), f"map not invertible: {exc}"))
    for i in range(rep1.algebra.dim):
        residual = mat_sub(
            mat_mul(rep1.action[i], phi.matrix),
            mat_mul(phi.matrix, rep2.action[i]),
        )
        if not is_zero_matrix(residual):
            return IdentityReport(name, False, Witness((i,), residual))
    return IdentityReport(name, True)


def _bimodule_residuals_at(bim: Bimodule, i: int, j: int, k: int) -> tuple[Matrix, ...]:
    """The four operator identities at the basis triple (x, y, z) = (i, j, k)."""
    table = bim.algebra
    x, y, z = table.basis_element(i), table.basis_element(j), table.basis_element(k)
    lx, ly, lz = bim.left[i], bim.left[j], bim.left[k]
    rx, ry, rz = bim.right[i], bim.right[j], bim.right[k]
    L, R = bim.left_of, bim.right_of

    def m3(a: Matrix, b: Matrix, c: Matrix) -> Matrix:
        return mat_mul(mat_mul(a, b), c)

    # module element in the first slot
    res1 = m3(rx, ry, rz)
    res1 = mat_sub(res1, m3(rx, ry, lz))
    res1 = mat_sub(res1, m3(rx, ly, rz))
    res1 = mat_add(res1, m3(rx, ly, lz))
    res1 = mat_sub(res1, R(z * (y * x)))
    res1 = mat_add(res1, mat_mul(ly, R(z * x)))
    res1 = mat_add(res1, mat_mul(L(z * y), rx))
    res1 = mat_sub(res1, mat_mul(L(y * z), rx))
    res1 = mat_sub(res1, m3(lz, rx, ly))
    res1 = mat_add(res1, m3(lz, rx, ry))

    # module element in the second slot
    res2 = m3(rx, ry, lz)
    res2 = mat_sub(res2, m3(rx, ry, rz))
    res2 = mat_sub(res2, m3(rx, ly, lz))
    res2 = mat_add(res2, m3(rx, ly, rz))
    res2 = mat_sub(res2, mat_mul(lz, R(y * x)))
    res2 = mat_add(res2, m3(ly, lz, rx))
    res2 = mat_add(res2, mat_mul(R(z * x), ry))
    res2 = mat_sub(res2, mat_mul(R(z * x), ly))
    res2 = mat_sub(res2, R((y * z) * x))
    res2 = mat_add(res2, R((z * y) * x))

    # module element in the third slot
    res3 = mat_mul(rx, L(y * z))
    res3 = mat_sub(res3, mat_mul(rx, L(z * y)))
    res3 = mat_sub(res3, mat_mul(rx, R(y * z)))
    res3 = mat_add(res3, mat_mul(rx, R(z * y)))
    res3 = mat_sub(res3, m3(ly, lz, rx))
    res3 = mat_add(res3, R(y * (z * x)))
    res3 = mat_add(res3, mat_mul(R(y * x), lz))
    res3 = mat_sub(res3, mat_mul(R(y * x), rz))
    res3 = mat_sub(res3, m3(lz, rx, ry))
    res3 = mat_add(res3, m3(lz, rx, ly))

    # module element in the fourth slot
    res4 = L((x * y) * z)
    res4 = mat_sub(res4, L((y * x) * z))
    res4 = mat_sub(res4, L(z * (x * y)))
    res4 = mat_add(res4, L(z * (y * x)))
    res4 = mat_sub(res4, m3(lx, ly, lz))
    res4 = mat_add(res4, m3(lz, lx, ly))
    res4 = mat_add(res4, mat_mul(L(y * z), lx))
    res4 = mat_sub(res4, mat_mul(L(z * y), lx))
    res4 = mat_sub(res4, mat_mul(ly, L(z * x)))
    res4 = mat_add(res4, mat_mul(ly, L(x * z)))

    return res1, res2, res3, res4


def bimodule_residuals(bim: Bimodule, i: int, j: int, k: int) -> tuple[Matrix, ...]:
    return _bimodule_residuals_at(bim, i, j, k)


def check_bimodule(bim: Bimodule) -> AxiomReport:
    dim = bim.algebra.dim
    names = [f"bimodule-axiom-{t}" for t in range(1, 5)]
    failures: list[IdentityReport | None] = [None] * 4
    for idx in itertools.product(range(dim), repeat=3):
        residuals = _bimodule_residuals_at(bim, *idx)
        for t, residual in enumerate(residuals):
            if failures[t] is None and not is_zero_matrix(residual):
                failures[t] = IdentityReport(names[t], False, Witness(idx, residual))
        if all(f is not None for f in failures):
            break
    checks = tuple(
        failures[t] if failures[t] is not None else IdentityReport(names[t], True)
        for t in range(4)
    )
    return AxiomReport("bimodule", checks)


def regular_bimodule(table: StructureTable) -> Bimodule:
    """The algebra acting on itself by left and right products."""
    n = table.dim
    left, right = [], []
    for i in range(n):
        left.append(
            from_cols([
                tuple(table.product(i, j).get(k, ZERO) for k in range(n))
                for j in range(n)
            ]) if n else ()
        )
        right.append(
            from_cols([
                tuple(table.product(j, i).get(k, ZERO) for k in range(n))
                for j in range(n)
            ]) if n else ()
        )
    return Bimodule(table, n, left, right)


def dual_bimodule(bim: Bimodule) -> Bimodule:
    """Dual module with actions (left* - right*, -right*) in matrix form:
    new left = -left^T + right^T, new right = right^T.
    """
    left = tuple(
        mat_add(mat_neg(transpose(l)), transpose(r))
        for l, r in zip(bim.left, bim.right)
    )
    right = tuple(transpose(r) for r in bim.right)
    return Bimodule(bim.algebra, bim.space_dim, left, right, bim.ring)


def semidirect_pre_malcev(
    table: StructureTable,
    bim: Bimodule,
    module_names: Sequence[str] | None = None,
) -> StructureTable:
    """General product on algebra + module:
    (x, u).(y, v) = (x.y, left_x(v) + right_y(u)).
    """
    if bim.algebra is not table and bim.algebra != table:
        raise ValueError("bimodule is not over the given algebra")
    n, m = table.dim, bim.space_dim
    names = tuple(module_names) if module_names is not None else default_module_names(table, m)
    if len(names) != m:
        raise ValueError(f"{len(names)} module names for a dimension-{m} module")
    ring = join_rings(table.ring, bim.ring, "algebra and bimodule")
    constants: dict[tuple[int, int], dict[int, Scalar]] = {
        key: dict(row) for key, row in table.constants.items()
    }
    for i in range(n):
        lmat, rmat = bim.left[i], bim.right[i]
        for j in range(m):
            lrow = {n + k: lmat[k][j] for k in range(m) if not is_zero(lmat[k][j])}
            if lrow:
                constants[(i, n + j)] = lrow
            rrow = {n + k: rmat[k][j] for k in range(m) if not is_zero(rmat[k][j])}
            if rrow:
                constants[(n + j, i)] = rrow
    return StructureTable(
        n + m,
        table.basis_names + names,
        ring,
        constants,
        kind=GENERAL,
    )


def induced_malcev_reps(bim: Bimodule) -> tuple[LinearRep, LinearRep]:
    """The left action and left-minus-right action as representations of
    the commutator algebra."""
    base = commutator_algebra(bim.algebra)
    left = LinearRep(base, bim.space_dim, bim.left, bim.ring)
    left_minus_right = LinearRep(
        base,
        bim.space_dim,
        tuple(mat_sub(l, r) for l, r in zip(bim.left, bim.right)),
        bim.ring,
    )
    return left, left_minus_right


def left_mult_rep(table: StructureTable) -> LinearRep:
    """Left multiplication of a general table as a representation of its
    commutator algebra."""
    return induced_malcev_reps(regular_bimodule(table))[0]

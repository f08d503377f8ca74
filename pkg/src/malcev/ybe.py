"""Yang-Baxter tensors, O-operators, bilinear forms, and the bridges
between them.

A two-tensor r = sum_ij c[i][j] e_i (x) e_j is stored by its coefficient
matrix over the algebra's basis.  The classical Yang-Baxter residual

    r12 r13 + r13 r23 - r23 r12

lives in the triple tensor power and is assembled sparsely from the
nonzero coefficients; its pre-Malcev sibling is

    -r12.r13 + r12.r23 + r13 r23

where the last factor multiplies through the commutator.  O-operators
are linear maps T from a module into the algebra satisfying

    T(v) T(w) = T(rho(T(v)) w - rho(T(w)) v)

(and the bimodule-shaped analogue with left plus right actions).  The
constructions in this module move between those worlds: r -> T_r,
nondegenerate r -> bilinear form, symplectic form -> compatible
pre-Malcev product, O-operator -> solution tensor on the semidirect sum
with the dual module.

Everything is exact.  Invertibility over a parametric ring means the
determinant is a unit; a nonzero non-unit determinant is reported as a
genericity condition instead of a boolean.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

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
    SingularMatrixError,
    determinant,
    inverse,
    is_zero_matrix,
    mat_add,
    mat_vec,
    shape,
    transpose,
    zeros,
)
from .reps import (
    Bimodule,
    LinearMap,
    LinearRep,
    _clean_matrix,
    adjoint_rep,
    coadjoint_rep,
    default_module_names,
    dual_bimodule,
    dual_rep,
    left_mult_rep,
    regular_bimodule,
    semidirect_malcev,
    semidirect_pre_malcev,
)
from .scalars import (
    NotInvertibleError,
    Scalar,
    ZERO,
    ensure_ring,
    is_unit,
    is_zero,
    join_rings,
    render_scalar,
)


class ConstructionError(ValueError):
    """A build was asked for whose mathematical precondition fails."""


class BudgetExceededError(RuntimeError):
    """A grid search would enumerate more candidates than allowed."""

    def __init__(self, count: int, budget: int) -> None:
        super().__init__(
            f"grid search would enumerate {count} candidates, over the budget of {budget}"
        )
        self.count = count
        self.budget = budget


class TwoTensor:
    """Element of A (x) A stored as a coefficient matrix over the basis."""

    __slots__ = ("algebra", "coeffs", "ring")

    def __init__(
        self,
        algebra: StructureTable,
        coeffs: Iterable[Iterable[Scalar]],
        ring: Iterable[str] | None = None,
    ) -> None:
        self.algebra = algebra
        self.ring = join_rings(
            algebra.ring, tuple(ring) if ring is not None else algebra.ring,
            "algebra and tensor",
        )
        self.coeffs = _clean_matrix(coeffs, self.ring, "tensor coefficient")
        if shape(self.coeffs) != (algebra.dim, algebra.dim):
            raise ValueError(
                f"tensor coefficients have shape {shape(self.coeffs)}, "
                f"expected {algebra.dim}x{algebra.dim}"
            )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TwoTensor):
            return NotImplemented
        return self.algebra == other.algebra and self.coeffs == other.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        return f"TwoTensor(dim {self.algebra.dim})"


class ThreeTensor:
    """Sparse element of A (x) A (x) A keyed by basis index triples."""

    __slots__ = ("algebra", "entries", "ring")

    def __init__(
        self,
        algebra: StructureTable,
        entries: Mapping[tuple[int, int, int], Scalar],
        ring: Iterable[str] | None = None,
    ) -> None:
        self.algebra = algebra
        self.ring = join_rings(
            algebra.ring, tuple(ring) if ring is not None else algebra.ring,
            "algebra and tensor",
        )
        clean: dict[tuple[int, int, int], Scalar] = {}
        for key, value in entries.items():
            value = ensure_ring(value, self.ring, f"tensor entry {key}")
            if not is_zero(value):
                clean[key] = value
        self.entries = clean

    def is_zero(self) -> bool:
        return not self.entries

    def first_entry(self) -> tuple[tuple[int, int, int], Scalar] | None:
        if not self.entries:
            return None
        key = min(self.entries)
        return key, self.entries[key]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ThreeTensor):
            return NotImplemented
        return self.algebra == other.algebra and self.entries == other.entries

    __hash__ = None

    def __repr__(self) -> str:
        return f"ThreeTensor(dim {self.algebra.dim}, {len(self.entries)} entries)"


class BilinearForm:
    """Bilinear form B(e_i, e_j) = matrix[i][j] on an algebra."""

    __slots__ = ("algebra", "matrix", "ring")

    def __init__(
        self,
        algebra: StructureTable,
        matrix: Iterable[Iterable[Scalar]],
        ring: Iterable[str] | None = None,
    ) -> None:
        self.algebra = algebra
        self.ring = join_rings(
            algebra.ring, tuple(ring) if ring is not None else algebra.ring,
            "algebra and form",
        )
        self.matrix = _clean_matrix(matrix, self.ring, "form entry")
        if shape(self.matrix) != (algebra.dim, algebra.dim):
            raise ValueError(
                f"form matrix has shape {shape(self.matrix)}, "
                f"expected {algebra.dim}x{algebra.dim}"
            )

    def value(self, x: Sequence[Scalar] | Element, y: Sequence[Scalar] | Element) -> Scalar:
        xc = x.coords if isinstance(x, Element) else tuple(x)
        yc = y.coords if isinstance(y, Element) else tuple(y)
        total: Scalar = ZERO
        for i, a in enumerate(xc):
            if is_zero(a):
                continue
            for j, b in enumerate(yc):
                if is_zero(b) or is_zero(self.matrix[i][j]):
                    continue
                total = total + a * b * self.matrix[i][j]
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.algebra == other.algebra and self.matrix == other.matrix

    __hash__ = None

    def __repr__(self) -> str:
        return f"BilinearForm(dim {self.algebra.dim})"


def twist(r: TwoTensor) -> TwoTensor:
    """Swap the tensor legs: sum c[i][j] e_j (x) e_i."""
    return TwoTensor(r.algebra, transpose(r.coeffs), r.ring)


def is_skew(r: TwoTensor) -> bool:
    return is_zero_matrix(mat_add(r.coeffs, transpose(r.coeffs)))


def is_symmetric(r: TwoTensor) -> bool:
    return r.coeffs == transpose(r.coeffs)


def t_map(r: TwoTensor) -> LinearMap:
    """The induced map from the dual space: T_r(xi) pairs xi into the
    second leg, so its matrix is exactly the coefficient matrix."""
    n = r.algebra.dim
    return LinearMap(n, n, r.coeffs, r.ring)


def _add_entry(
    acc: dict[tuple[int, int, int], Scalar], key: tuple[int, int, int], value: Scalar
) -> None:
    if is_zero(value):
        return
    new = acc.get(key, ZERO) + value
    if is_zero(new):
        acc.pop(key, None)
    else:
        acc[key] = new


def _nonzero_coeffs(r: TwoTensor) -> list[tuple[int, int, Scalar]]:
    return [
        (i, j, c)
        for i, row in enumerate(r.coeffs)
        for j, c in enumerate(row)
        if not is_zero(c)
    ]


def cybe_residual(r: TwoTensor) -> ThreeTensor:
    """r12 r13 + r13 r23 - r23 r12 in the triple tensor power."""
    table = r.algebra
    if table.kind != ANTICOMMUTATIVE:
        raise ValueError("the classical equation needs an anticommutative table")
    acc: dict[tuple[int, int, int], Scalar] = {}
    support = _nonzero_coeffs(r)
    for p, q, cpq in support:
        for s, t, cst in support:
            w = cpq * cst
            for k, coeff in table.product(p, s).items():
                _add_entry(acc, (k, q, t), w * coeff)
            for k, coeff in table.product(q, t).items():
                _add_entry(acc, (p, s, k), w * coeff)
            for k, coeff in table.product(p, t).items():
                _add_entry(acc, (s, k, q), -(w * coeff))
    return ThreeTensor(table, acc, r.ring)


def pm_cybe_residual(r: TwoTensor) -> ThreeTensor:
    """-r12.r13 + r12.r23 + r13 r23, the last product through the
    commutator."""
    table = r.algebra
    if table.kind != GENERAL:
        raise ValueError("the pre-Malcev equation needs a general table")
    acc: dict[tuple[int, int, int], Scalar] = {}
    support = _nonzero_coeffs(r)
    for p, q, cpq in support:
        for s, t, cst in support:
            w = cpq * cst
            for k, coeff in table.product(p, s).items():
                _add_entry(acc, (k, q, t), -(w * coeff))
            for k, coeff in table.product(q, s).items():
                _add_entry(acc, (p, k, t), w * coeff)
            for k, coeff in table.product(q, t).items():
                _add_entry(acc, (p, s, k), w * coeff)
            for k, coeff in table.product(t, q).items():
                _add_entry(acc, (p, s, k), -(w * coeff))
    return ThreeTensor(table, acc, r.ring)


def _tensor_report(name: str, residual: ThreeTensor) -> IdentityReport:
    first = residual.first_entry()
    if first is None:
        return IdentityReport(name, True)
    key, value = first
    return IdentityReport(name, False, Witness(key, value))


def check_cybe(r: TwoTensor) -> IdentityReport:
    return _tensor_report("classical-yang-baxter", cybe_residual(r))


def check_pm_cybe(r: TwoTensor) -> IdentityReport:
    return _tensor_report("pre-malcev-yang-baxter", pm_cybe_residual(r))


def _o_setup(T: LinearMap, rep: LinearRep) -> StructureTable:
    if T.source_dim != rep.space_dim or T.target_dim != rep.algebra.dim:
        raise ValueError(
            f"map {T.source_dim}->{T.target_dim} does not go from the module "
            f"(dim {rep.space_dim}) to the algebra (dim {rep.algebra.dim})"
        )
    ring = join_rings(
        join_rings(rep.algebra.ring, rep.ring, "algebra and representation"),
        T.ring,
        "representation and map",
    )
    return rep.algebra.with_ring(ring)


def o_residual(T: LinearMap, rep: LinearRep, i: int, j: int) -> Element:
    """T(v_i) T(v_j) - T(rho(T(v_i)) v_j - rho(T(v_j)) v_i)."""
    table = _o_setup(T, rep)
    ti, tj = T.column(i), T.column(j)
    lhs = table.element(ti) * table.element(tj)
    basis_i = tuple(Fraction(1) if k == i else ZERO for k in range(rep.space_dim))
    basis_j = tuple(Fraction(1) if k == j else ZERO for k in range(rep.space_dim))
    w = tuple(
        a - b
        for a, b in zip(mat_vec(rep.of(ti), basis_j), mat_vec(rep.of(tj), basis_i))
    )
    return lhs - table.element(T.apply(w))


def check_o_operator(T: LinearMap, rep: LinearRep, name: str = "o-operator") -> IdentityReport:
    """Scan module basis pairs; the residual is antisymmetric, so pairs
    with i <= j cover everything (the target table is anticommutative)."""
    table = _o_setup(T, rep)
    m = rep.space_dim
    columns = [table.element(T.column(i)) for i in range(m)]
    rho = [rep.of(T.column(i)) for i in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            basis_i = tuple(Fraction(1) if k == i else ZERO for k in range(m))
            basis_j = tuple(Fraction(1) if k == j else ZERO for k in range(m))
            w = tuple(
                a - b for a, b in zip(mat_vec(rho[i], basis_j), mat_vec(rho[j], basis_i))
            )
            residual = columns[i] * columns[j] - table.element(T.apply(w))
            if not residual.is_zero():
                return IdentityReport(name, False, Witness((i, j), residual))
    return IdentityReport(name, True)


def check_rota_baxter(T: LinearMap, table: StructureTable) -> IdentityReport:
    """Weight-zero Rota-Baxter operators are O-operators for the adjoint."""
    return check_o_operator(T, adjoint_rep(table), name="rota-baxter")


def pm_o_residual(T: LinearMap, bim: Bimodule, i: int, j: int) -> Element:
    """T(v_i).T(v_j) - T(left_{T(v_i)} v_j + right_{T(v_j)} v_i)."""
    if T.source_dim != bim.space_dim or T.target_dim != bim.algebra.dim:
        raise ValueError(
            f"map {T.source_dim}->{T.target_dim} does not go from the module "
            f"(dim {bim.space_dim}) to the algebra (dim {bim.algebra.dim})"
        )
    ring = join_rings(
        join_rings(bim.algebra.ring, bim.ring, "algebra and bimodule"),
        T.ring,
        "bimodule and map",
    )
    table = bim.algebra.with_ring(ring)
    ti, tj = T.column(i), T.column(j)
    lhs = table.element(ti) * table.element(tj)
    m = bim.space_dim
    basis_i = tuple(Fraction(1) if k == i else ZERO for k in range(m))
    basis_j = tuple(Fraction(1) if k == j else ZERO for k in range(m))
    w = tuple(
        a + b
        for a, b in zip(
            mat_vec(bim.left_of(ti), basis_j), mat_vec(bim.right_of(tj), basis_i)
        )
    )
    return lhs - table.element(T.apply(w))


def check_pm_o_operator(
    T: LinearMap, bim: Bimodule, name: str = "pre-malcev-o-operator"
) -> IdentityReport:
    m = bim.space_dim
    for i in range(m):
        for j in range(m):
            residual = pm_o_residual(T, bim, i, j)
            if not residual.is_zero():
                return IdentityReport(name, False, Witness((i, j), residual))
    return IdentityReport(name, True)


def b_from_r(r: TwoTensor) -> BilinearForm:
    """The form B(x, y) = <T_r^{-1}(x), y> of a nondegenerate tensor."""
    return BilinearForm(r.algebra, transpose(inverse(r.coeffs)), r.ring)


def r_from_b(form: BilinearForm) -> TwoTensor:
    """Inverse of b_from_r: coefficient matrix (B^T)^{-1}."""
    return TwoTensor(form.algebra, inverse(transpose(form.matrix)), form.ring)


def invariance_residual(form: BilinearForm, i: int, j: int, k: int) -> Scalar:
    """B(e_i e_j, e_k) - B(e_i, e_j e_k)."""
    table = form.algebra
    left: Scalar = ZERO
    for m, c in table.product(i, j).items():
        left = left + c * form.matrix[m][k]
    right: Scalar = ZERO
    for m, c in table.product(j, k).items():
        right = right + c * form.matrix[i][m]
    return left - right


def check_invariant(form: BilinearForm) -> IdentityReport:
    dim = form.algebra.dim
    for idx in itertools.product(range(dim), repeat=3):
        residual = invariance_residual(form, *idx)
        if not is_zero(residual):
            return IdentityReport("invariance", False, Witness(idx, residual))
    return IdentityReport("invariance", True)


def symplectic_residual(form: BilinearForm, i: int, j: int, k: int) -> Scalar:
    """B(e_i e_j, e_k) + B(e_j e_k, e_i) + B(e_k e_i, e_j)."""
    table = form.algebra

    def pairing(a: int, b: int, c: int) -> Scalar:
        total: Scalar = ZERO
        for m, coeff in table.product(a, b).items():
            total = total + coeff * form.matrix[m][c]
        return total

    return pairing(i, j, k) + pairing(j, k, i) + pairing(k, i, j)


NONDEGENERATE = "nondegenerate"
DEGENERATE = "degenerate"
GENERICALLY_NONDEGENERATE = "generically-nondegenerate"


@dataclass(frozen=True)
class SymplecticReport:
    """Skewness, the cyclic identity, and exact nondegeneracy status."""

    skew: IdentityReport
    cyclic: IdentityReport
    nondegeneracy: str
    condition: Scalar | None

    @property
    def holds(self) -> bool:
        return self.skew.holds and self.cyclic.holds and self.nondegeneracy == NONDEGENERATE

    def describe(self, basis_names: tuple[str, ...] | None = None) -> str:
        lines = [self.skew.describe(basis_names), self.cyclic.describe(basis_names)]
        if self.nondegeneracy == GENERICALLY_NONDEGENERATE:
            assert self.condition is not None
            lines.append(
                "nondegeneracy: generically non-degenerate: condition = "
                + render_scalar(self.condition)
            )
        else:
            lines.append(f"nondegeneracy: {self.nondegeneracy}")
        return "\n".join(lines)


def check_skew_form(form: BilinearForm) -> IdentityReport:
    matrix = form.matrix
    dim = form.algebra.dim
    for i in range(dim):
        for j in range(i, dim):
            residual = matrix[i][j] + matrix[j][i]
            if not is_zero(residual):
                return IdentityReport("skew-symmetry", False, Witness((i, j), residual))
    return IdentityReport("skew-symmetry", True)


def check_symplectic(form: BilinearForm) -> SymplecticReport:
    skew = check_skew_form(form)
    dim = form.algebra.dim
    cyclic = IdentityReport("symplectic-cyclic", True)
    for idx in itertools.product(range(dim), repeat=3):
        residual = symplectic_residual(form, *idx)
        if not is_zero(residual):
            cyclic = IdentityReport("symplectic-cyclic", False, Witness(idx, residual))
            break
    det = determinant(form.matrix)
    if is_zero(det):
        return SymplecticReport(skew, cyclic, DEGENERATE, None)
    if is_unit(det):
        return SymplecticReport(skew, cyclic, NONDEGENERATE, None)
    return SymplecticReport(skew, cyclic, GENERICALLY_NONDEGENERATE, det)


def phi_from_form(form: BilinearForm) -> LinearMap:
    """x -> B(x, .) into the dual space; the matrix is B transposed."""
    n = form.algebra.dim
    return LinearMap(n, n, transpose(form.matrix), form.ring)


def _dual_names(table: StructureTable, m: int) -> tuple[str, ...]:
    if m == table.dim:
        names = tuple(f"x{i + 1}" for i in range(m))
    else:
        names = tuple(f"v{i + 1}*" for i in range(m))
    if set(names) & set(table.basis_names):
        names = tuple(f"{n}'" for n in names)
    return names


def build_r_T(
    T: LinearMap, rep: LinearRep, module_names: Sequence[str] | None = None
) -> TwoTensor:
    """The skew tensor sum T(v_i) (x) xi_i - xi_i (x) T(v_i) on the
    semidirect sum with the dual module."""
    if T.source_dim != rep.space_dim or T.target_dim != rep.algebra.dim:
        raise ValueError(
            f"map {T.source_dim}->{T.target_dim} does not go from the module "
            f"(dim {rep.space_dim}) to the algebra (dim {rep.algebra.dim})"
        )
    names = (
        tuple(module_names)
        if module_names is not None
        else _dual_names(rep.algebra, rep.space_dim)
    )
    ring = join_rings(rep.algebra.ring, join_rings(rep.ring, T.ring, "map"), "tensor")
    ambient = semidirect_malcev(
        rep.algebra.with_ring(ring),
        LinearRep(
            rep.algebra.with_ring(ring),
            rep.space_dim,
            dual_rep(rep).action,
            ring,
        ),
        names,
    )
    n, m = rep.algebra.dim, rep.space_dim
    size = n + m
    coeffs = [[ZERO] * size for _ in range(size)]
    for p in range(n):
        for i in range(m):
            entry = T.matrix[p][i]
            if is_zero(entry):
                continue
            coeffs[p][n + i] = entry
            coeffs[n + i][p] = -entry
    return TwoTensor(ambient, coeffs, ring)


def build_s_T(
    T: LinearMap, bim: Bimodule, module_names: Sequence[str] | None = None
) -> TwoTensor:
    """The symmetric tensor sum T(v_i) (x) xi_i + xi_i (x) T(v_i) on the
    pre-Malcev semidirect sum with the dual bimodule."""
    if T.source_dim != bim.space_dim or T.target_dim != bim.algebra.dim:
        raise ValueError(
            f"map {T.source_dim}->{T.target_dim} does not go from the module "
            f"(dim {bim.space_dim}) to the algebra (dim {bim.algebra.dim})"
        )
    names = (
        tuple(module_names)
        if module_names is not None
        else _dual_names(bim.algebra, bim.space_dim)
    )
    ring = join_rings(bim.algebra.ring, join_rings(bim.ring, T.ring, "map"), "tensor")
    dual = dual_bimodule(bim)
    ambient = semidirect_pre_malcev(
        bim.algebra.with_ring(ring),
        Bimodule(bim.algebra.with_ring(ring), bim.space_dim, dual.left, dual.right, ring),
        names,
    )
    n, m = bim.algebra.dim, bim.space_dim
    size = n + m
    coeffs = [[ZERO] * size for _ in range(size)]
    for p in range(n):
        for i in range(m):
            entry = T.matrix[p][i]
            if is_zero(entry):
                continue
            coeffs[p][n + i] = entry
            coeffs[n + i][p] = entry
    return TwoTensor(ambient, coeffs, ring)


def canonical_r(table: StructureTable) -> TwoTensor:
    """The identity map, read as an O-operator for the left-multiplication
    representation of the commutator algebra, turned into a skew solution
    tensor sum e_i (x) eps_i - eps_i (x) e_i."""
    if table.kind != GENERAL:
        raise ValueError("the canonical skew tensor needs a general (pre-Malcev) table")
    rep = left_mult_rep(table)
    return build_r_T(LinearMap.identity(table.dim, table.ring), rep)


def canonical_s(table: StructureTable) -> TwoTensor:
    """The identity map, read as an O-operator for the bimodule
    (left multiplication, zero), turned into a symmetric solution tensor
    sum e_i (x) eps_i + eps_i (x) e_i."""
    if table.kind != GENERAL:
        raise ValueError("the canonical symmetric tensor needs a general table")
    n = table.dim
    reg = regular_bimodule(table)
    bim = Bimodule(table, n, reg.left, tuple(zeros(n, n) for _ in range(n)), table.ring)
    return build_s_T(LinearMap.identity(n, table.ring), bim)


def _invertible_square(T: LinearMap, what: str) -> LinearMap:
    if T.source_dim != T.target_dim:
        raise ConstructionError(
            f"{what} needs an invertible map, but this one is "
            f"{T.source_dim} -> {T.target_dim} (not even square)"
        )
    try:
        return T.inverse()
    except SingularMatrixError as exc:
        raise ConstructionError(f"{what} needs an invertible map: {exc}") from exc
    except NotInvertibleError as exc:
        raise ConstructionError(
            f"{what} needs a map invertible over the ring: {exc}"
        ) from exc


def pre_malcev_from_T(T: LinearMap, rep: LinearRep) -> StructureTable:
    """Compatible product x.y = T(rho(x) T^{-1}(y)) of an invertible
    O-operator; its commutator gives back the Malcev product."""
    check = check_o_operator(T, rep)
    if not check.holds:
        assert check.witness is not None
        raise ConstructionError(
            "the map is not an O-operator; first failure "
            + check.witness.describe()
        )
    T_inv = _invertible_square(T, "the compatible product")
    table = _o_setup(T, rep)
    n = table.dim
    constants: dict[tuple[int, int], dict[int, Scalar]] = {}
    for i in range(n):
        for j in range(n):
            image = T.apply(mat_vec(rep.action[i], T_inv.column(j)))
            row = {k: c for k, c in enumerate(image) if not is_zero(c)}
            if row:
                constants[(i, j)] = row
    return StructureTable(n, table.basis_names, table.ring, constants, kind=GENERAL)


def star_product(
    T: LinearMap, rep: LinearRep, module_names: Sequence[str] | None = None
) -> StructureTable:
    """Product v * w = rho(T(v)) w on the module itself.

    Pre-Malcev whenever T is an O-operator; built unconditionally so a
    failed candidate can be inspected through its defect witnesses.
    """
    if T.source_dim != rep.space_dim or T.target_dim != rep.algebra.dim:
        raise ValueError(
            f"map {T.source_dim}->{T.target_dim} does not go from the module "
            f"(dim {rep.space_dim}) to the algebra (dim {rep.algebra.dim})"
        )
    ring = join_rings(
        join_rings(rep.algebra.ring, rep.ring, "algebra and representation"),
        T.ring,
        "representation and map",
    )
    m = rep.space_dim
    names = (
        tuple(module_names)
        if module_names is not None
        else default_module_names(rep.algebra, m)
    )
    constants: dict[tuple[int, int], dict[int, Scalar]] = {}
    for i in range(m):
        rho = rep.of(T.column(i))
        for j in range(m):
            column = tuple(rho[k][j] for k in range(m))
            row = {k: c for k, c in enumerate(column) if not is_zero(c)}
            if row:
                constants[(i, j)] = row
    return StructureTable(m, names, ring, constants, kind=GENERAL)


def pre_malcev_from_symplectic(table: StructureTable, form: BilinearForm) -> StructureTable:
    """Compatible product x.y = T(ad*_x T^{-1}(y)) where <T^{-1}x, y> is
    the symplectic form; satisfies B(x.y, z) = -B(y, xz)."""
    if table.kind != ANTICOMMUTATIVE:
        raise ConstructionError("the symplectic construction starts from a Malcev table")
    if form.algebra != table:
        raise ConstructionError("form and table do not match")
    report = check_symplectic(form)
    if not report.holds:
        raise ConstructionError(
            "the form is not symplectic over this ring:\n" + report.describe()
        )
    T = LinearMap(table.dim, table.dim, inverse(transpose(form.matrix)), form.ring)
    product = pre_malcev_from_T(T, coadjoint_rep(table.with_ring(form.ring)))
    basis = product.basis_elements()
    malcev = table.with_ring(product.ring)
    for i, j, k in itertools.product(range(table.dim), repeat=3):
        lhs = form.value(basis[i] * basis[j], basis[k])
        rhs = -form.value(
            basis[j], malcev.basis_element(i) * malcev.basis_element(k)
        )
        if not is_zero(lhs - rhs):
            raise ConstructionError(
                f"internal check B(x.y, z) = -B(y, xz) failed at {(i, j, k)}"
            )
    return product


@dataclass(frozen=True)
class Prop48Report:
    """A bilinear identity and an O-operator membership, computed by
    independent routes, plus whether the two verdicts agree."""

    variant: int
    bilinear: IdentityReport
    operator: IdentityReport

    @property
    def agree(self) -> bool:
        return self.bilinear.holds == self.operator.holds

    def describe(self, basis_names: tuple[str, ...] | None = None) -> str:
        return "\n".join(
            [
                self.bilinear.describe(basis_names),
                self.operator.describe(basis_names),
                f"equivalence observed: {'yes' if self.agree else 'NO'}",
            ]
        )


def prop48_check(table: StructureTable, T: LinearMap, variant: int) -> Prop48Report:
    """Three characterizations of O-operator membership for the form
    B(x, y) = <T^{-1}(x), y> over a pre-Malcev table."""
    if table.kind != GENERAL:
        raise ValueError("these checks run over a general (pre-Malcev) table")
    if variant not in (1, 2, 3):
        raise ValueError(f"variant must be 1, 2 or 3, not {variant!r}")
    if T.source_dim != table.dim or T.target_dim != table.dim:
        raise ValueError("the map must be a square map on the table's dimension")
    T_inv = _invertible_square(T, "this characterization")
    ring = join_rings(table.ring, T.ring, "table and map")
    work = table.with_ring(ring)
    form = BilinearForm(work, transpose(T_inv.matrix), ring)
    basis = work.basis_elements()
    commutator = commutator_algebra(work)
    cbasis = commutator.basis_elements()

    def bilinear_residual(i: int, j: int, k: int) -> Scalar:
        x, y, z = basis[i], basis[j], basis[k]
        if variant == 1:
            return form.value(x * y, z) + form.value(y, x * z) - form.value(y, z * x)
        if variant == 2:
            return (
                form.value(x * y, z)
                + form.value(y, x * z)
                - form.value(y, z * x)
                - form.value(x, z * y)
            )
        bracket = cbasis[i] * cbasis[j]
        return (
            form.value(bracket.coords, z)
            - form.value(x, y * z)
            + form.value(y, x * z)
        )

    name = f"bilinear-identity-{variant}"
    bilinear = IdentityReport(name, True)
    for idx in itertools.product(range(table.dim), repeat=3):
        residual = bilinear_residual(*idx)
        if not is_zero(residual):
            bilinear = IdentityReport(name, False, Witness(idx, residual))
            break

    reg = regular_bimodule(work)
    dual = dual_bimodule(reg)
    if variant == 1:
        bim = Bimodule(
            work,
            work.dim,
            dual.left,
            tuple(zeros(work.dim, work.dim) for _ in range(work.dim)),
            ring,
        )
        operator = check_pm_o_operator(T, bim)
    elif variant == 2:
        operator = check_pm_o_operator(T, dual)
    else:
        operator = check_o_operator(T, dual_rep(left_mult_rep(work)))
    return Prop48Report(variant, bilinear, operator)


def grid_search_o_operators(
    rep: LinearRep,
    values: Sequence[Scalar],
    mask: Sequence[tuple[int, int]],
    budget: int = 1_000_000,
) -> list[LinearMap]:
    """Exhaustively try maps supported on the mask with entries from the
    value set, in lexicographic candidate order, and keep the O-operators.
    """
    n, m = rep.algebra.dim, rep.space_dim
    positions = sorted(set((int(i), int(j)) for i, j in mask))
    for i, j in positions:
        if not (0 <= i < n and 0 <= j < m):
            raise ValueError(f"mask position ({i}, {j}) outside a {n}x{m} matrix")
    count = len(values) ** len(positions)
    if count > budget:
        raise BudgetExceededError(count, budget)
    found: list[LinearMap] = []
    for assignment in itertools.product(values, repeat=len(positions)):
        rows = [[ZERO] * m for _ in range(n)]
        for (i, j), value in zip(positions, assignment):
            rows[i][j] = value
        candidate = LinearMap(m, n, rows, rep.ring)
        if check_o_operator(candidate, rep).holds:
            found.append(candidate)
    return found

"""Brute-force reference residuals for differential testing.

Every identity the engine checks is recomputed here with plain nested
loops over dense coordinate lists, transcribed term by term from the
defining equations.  Nothing in this module calls the engine's residual
or matrix helpers; the only shared code is the scalar layer.  Residuals
come back as bare tuples and dicts so tests can compare them against
engine output entry by entry.

Unoptimized on purpose.
"""

from __future__ import annotations

from typing import Any, Sequence

from .scalars import Scalar, ZERO, is_zero

Coords = tuple[Scalar, ...]
DenseMatrix = tuple[tuple[Scalar, ...], ...]


def _basis(dim: int, i: int) -> list[Scalar]:
    from fractions import Fraction

    coords: list[Scalar] = [ZERO] * dim
    coords[i] = Fraction(1)
    return coords


def _mul(table: Any, x: Sequence[Scalar], y: Sequence[Scalar]) -> list[Scalar]:
    """Product of two coordinate vectors, dense double loop."""
    out: list[Scalar] = [ZERO] * table.dim
    for i in range(table.dim):
        for j in range(table.dim):
            if is_zero(x[i]) or is_zero(y[j]):
                continue
            for k, c in table.product(i, j).items():
                out[k] = out[k] + x[i] * y[j] * c
    return out


def _add(x: Sequence[Scalar], y: Sequence[Scalar]) -> list[Scalar]:
    return [a + b for a, b in zip(x, y)]


def _sub(x: Sequence[Scalar], y: Sequence[Scalar]) -> list[Scalar]:
    return [a - b for a, b in zip(x, y)]


def _mat_mul(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    n, mid, m = len(a), len(b), len(b[0]) if b else 0
    out = [[ZERO] * m for _ in range(n)]
    for i in range(n):
        for k in range(mid):
            if is_zero(a[i][k]):
                continue
            for j in range(m):
                out[i][j] = out[i][j] + a[i][k] * b[k][j]
    return out


def _mat_sub(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_add(a: Sequence[Sequence[Scalar]], b: Sequence[Sequence[Scalar]]) -> list[list[Scalar]]:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_vec(a: Sequence[Sequence[Scalar]], v: Sequence[Scalar]) -> list[Scalar]:
    out: list[Scalar] = [ZERO] * len(a)
    for i, row in enumerate(a):
        for j, entry in enumerate(row):
            if is_zero(entry) or is_zero(v[j]):
                continue
            out[i] = out[i] + entry * v[j]
    return out


def _combine_operators(matrices: Sequence[Any], coeffs: Sequence[Scalar], size: int) -> list[list[Scalar]]:
    """Operator attached to the algebra element with the given coordinates."""
    out = [[ZERO] * size for _ in range(size)]
    for c, m in zip(coeffs, matrices):
        if is_zero(c):
            continue
        for i in range(size):
            for j in range(size):
                out[i][j] = out[i][j] + c * m[i][j]
    return out


def _freeze(rows: Sequence[Sequence[Scalar]]) -> DenseMatrix:
    return tuple(tuple(row) for row in rows)


# ---------------------------------------------------------------------------
# algebra identities


def anticommutative_residual(table: Any, i: int, j: int) -> Coords:
    ei, ej = _basis(table.dim, i), _basis(table.dim, j)
    return tuple(_add(_mul(table, ei, ej), _mul(table, ej, ei)))


def jacobi_residual(table: Any, i: int, j: int, k: int) -> Coords:
    # (xy)z + (yz)x + (zx)y
    x, y, z = (_basis(table.dim, t) for t in (i, j, k))
    total = _mul(table, _mul(table, x, y), z)
    total = _add(total, _mul(table, _mul(table, y, z), x))
    total = _add(total, _mul(table, _mul(table, z, x), y))
    return tuple(total)


def malcev_residual(table: Any, i: int, j: int, k: int) -> Coords:
    # (xy)(xz) - (((xy)z)x + ((yz)x)x + ((zx)x)y)
    x, y, z = (_basis(table.dim, t) for t in (i, j, k))
    xy = _mul(table, x, y)
    lhs = _mul(table, xy, _mul(table, x, z))
    rhs = _mul(table, _mul(table, xy, z), x)
    rhs = _add(rhs, _mul(table, _mul(table, _mul(table, y, z), x), x))
    rhs = _add(rhs, _mul(table, _mul(table, _mul(table, z, x), x), y))
    return tuple(_sub(lhs, rhs))


def sagle_residual(table: Any, i: int, j: int, k: int, l: int) -> Coords:
    # (xz)(yt) - (((xy)z)t + ((yz)t)x + ((zt)x)y + ((tx)y)z)
    x, y, z, t = (_basis(table.dim, s) for s in (i, j, k, l))
    lhs = _mul(table, _mul(table, x, z), _mul(table, y, t))
    rhs = _mul(table, _mul(table, _mul(table, x, y), z), t)
    rhs = _add(rhs, _mul(table, _mul(table, _mul(table, y, z), t), x))
    rhs = _add(rhs, _mul(table, _mul(table, _mul(table, z, t), x), y))
    rhs = _add(rhs, _mul(table, _mul(table, _mul(table, t, x), y), z))
    return tuple(_sub(lhs, rhs))


def pre_malcev_residual(table: Any, i: int, j: int, k: int, l: int) -> Coords:
    # P_M(x,y,z,t), all ten terms in display order
    x, y, z, t = (_basis(table.dim, s) for s in (i, j, k, l))
    m = lambda a, b: _mul(table, a, b)
    total = m(m(y, z), m(x, t))
    total = _sub(total, m(m(z, y), m(x, t)))
    total = _add(total, m(m(m(x, y), z), t))
    total = _sub(total, m(m(m(y, x), z), t))
    total = _add(total, m(m(z, m(y, x)), t))
    total = _sub(total, m(m(z, m(x, y)), t))
    total = _add(total, m(y, m(m(x, z), t)))
    total = _sub(total, m(y, m(m(z, x), t)))
    total = _add(total, m(z, m(x, m(y, t))))
    total = _sub(total, m(x, m(y, m(z, t))))
    return tuple(total)


# ---------------------------------------------------------------------------
# representations and bimodules


def _rep_of(rep: Any, coords: Sequence[Scalar]) -> list[list[Scalar]]:
    return _combine_operators(rep.action, coords, rep.space_dim)


def rep_residual(rep: Any, i: int, j: int, k: int) -> DenseMatrix:
    # rho((xy)z) - (rho(x)rho(y)rho(z) - rho(z)rho(x)rho(y)
    #              + rho(y)rho(zx) - rho(yz)rho(x))
    table = rep.algebra
    x, y, z = (_basis(table.dim, t) for t in (i, j, k))
    rx, ry, rz = (_rep_of(rep, v) for v in (x, y, z))
    lhs = _rep_of(rep, _mul(table, _mul(table, x, y), z))
    rhs = _mat_mul(_mat_mul(rx, ry), rz)
    rhs = _mat_sub(rhs, _mat_mul(_mat_mul(rz, rx), ry))
    rhs = _mat_add(rhs, _mat_mul(ry, _rep_of(rep, _mul(table, z, x))))
    rhs = _mat_sub(rhs, _mat_mul(_rep_of(rep, _mul(table, y, z)), rx))
    return _freeze(_mat_sub(lhs, rhs))


def bimodule_residuals(bim: Any, i: int, j: int, k: int) -> tuple[DenseMatrix, DenseMatrix, DenseMatrix, DenseMatrix]:
    """The four defining operator identities at a basis triple."""
    table = bim.algebra
    m = bim.space_dim
    x, y, z = (_basis(table.dim, t) for t in (i, j, k))

    def L(v: Sequence[Scalar]) -> list[list[Scalar]]:
        return _combine_operators(bim.left, v, m)

    def R(v: Sequence[Scalar]) -> list[list[Scalar]]:
        return _combine_operators(bim.right, v, m)

    mul = lambda a, b: _mul(table, a, b)
    mm = _mat_mul

    first = mm(mm(R(x), R(y)), R(z))
    first = _mat_sub(first, mm(mm(R(x), R(y)), L(z)))
    first = _mat_sub(first, mm(mm(R(x), L(y)), R(z)))
    first = _mat_add(first, mm(mm(R(x), L(y)), L(z)))
    first = _mat_sub(first, R(mul(z, mul(y, x))))
    first = _mat_add(first, mm(L(y), R(mul(z, x))))
    first = _mat_add(first, mm(L(mul(z, y)), R(x)))
    first = _mat_sub(first, mm(L(mul(y, z)), R(x)))
    first = _mat_sub(first, mm(mm(L(z), R(x)), L(y)))
    first = _mat_add(first, mm(mm(L(z), R(x)), R(y)))

    second = mm(mm(R(x), R(y)), L(z))
    second = _mat_sub(second, mm(mm(R(x), R(y)), R(z)))
    second = _mat_sub(second, mm(mm(R(x), L(y)), L(z)))
    second = _mat_add(second, mm(mm(R(x), L(y)), R(z)))
    second = _mat_sub(second, mm(L(z), R(mul(y, x))))
    second = _mat_add(second, mm(mm(L(y), L(z)), R(x)))
    second = _mat_add(second, mm(R(mul(z, x)), R(y)))
    second = _mat_sub(second, mm(R(mul(z, x)), L(y)))
    second = _mat_sub(second, R(mul(mul(y, z), x)))
    second = _mat_add(second, R(mul(mul(z, y), x)))

    third = mm(R(x), L(mul(y, z)))
    third = _mat_sub(third, mm(R(x), L(mul(z, y))))
    third = _mat_sub(third, mm(R(x), R(mul(y, z))))
    third = _mat_add(third, mm(R(x), R(mul(z, y))))
    third = _mat_sub(third, mm(mm(L(y), L(z)), R(x)))
    third = _mat_add(third, R(mul(y, mul(z, x))))
    third = _mat_add(third, mm(R(mul(y, x)), L(z)))
    third = _mat_sub(third, mm(R(mul(y, x)), R(z)))
    third = _mat_sub(third, mm(mm(L(z), R(x)), R(y)))
    third = _mat_add(third, mm(mm(L(z), R(x)), L(y)))

    fourth = L(mul(mul(x, y), z))
    fourth = _mat_sub(fourth, L(mul(mul(y, x), z)))
    fourth = _mat_sub(fourth, L(mul(z, mul(x, y))))
    fourth = _mat_add(fourth, L(mul(z, mul(y, x))))
    fourth = _mat_sub(fourth, mm(mm(L(x), L(y)), L(z)))
    fourth = _mat_add(fourth, mm(mm(L(z), L(x)), L(y)))
    fourth = _mat_add(fourth, mm(L(mul(y, z)), L(x)))
    fourth = _mat_sub(fourth, mm(L(mul(z, y)), L(x)))
    fourth = _mat_sub(fourth, mm(L(y), L(mul(z, x))))
    fourth = _mat_add(fourth, mm(L(y), L(mul(x, z))))

    return (_freeze(first), _freeze(second), _freeze(third), _freeze(fourth))


# ---------------------------------------------------------------------------
# operator equations


def _map_apply(T: Any, v: Sequence[Scalar]) -> list[Scalar]:
    return _mat_vec(T.matrix, v)


def o_residual(T: Any, rep: Any, i: int, j: int) -> Coords:
    # T(v)T(w) - T(rho(T(v))w - rho(T(w))v)
    table = rep.algebra
    v, w = _basis(rep.space_dim, i), _basis(rep.space_dim, j)
    tv, tw = _map_apply(T, v), _map_apply(T, w)
    lhs = _mul(table, tv, tw)
    inner = _sub(_mat_vec(_rep_of(rep, tv), w), _mat_vec(_rep_of(rep, tw), v))
    return tuple(_sub(lhs, _map_apply(T, inner)))


def pm_o_residual(T: Any, bim: Any, i: int, j: int) -> Coords:
    # T(v).T(w) - T(l_{T(v)} w + r_{T(w)} v)
    table = bim.algebra
    v, w = _basis(bim.space_dim, i), _basis(bim.space_dim, j)
    tv, tw = _map_apply(T, v), _map_apply(T, w)
    lhs = _mul(table, tv, tw)
    lop = _combine_operators(bim.left, tv, bim.space_dim)
    rop = _combine_operators(bim.right, tw, bim.space_dim)
    inner = _add(_mat_vec(lop, w), _mat_vec(rop, v))
    return tuple(_sub(lhs, _map_apply(T, inner)))


# ---------------------------------------------------------------------------
# Yang-Baxter residuals


def cybe_residual(r: Any) -> dict[tuple[int, int, int], Scalar]:
    """r12 r13 + r13 r23 - r23 r12 as a sparse entry dict."""
    table = r.algebra
    n = table.dim
    c = r.coeffs
    out: dict[tuple[int, int, int], Scalar] = {}

    def put(key: tuple[int, int, int], value: Scalar) -> None:
        if is_zero(value):
            return
        acc = out.get(key, ZERO) + value
        if is_zero(acc):
            out.pop(key, None)
        else:
            out[key] = acc

    for p in range(n):
        for q in range(n):
            if is_zero(c[p][q]):
                continue
            for s in range(n):
                for t in range(n):
                    if is_zero(c[s][t]):
                        continue
                    weight = c[p][q] * c[s][t]
                    for k, coeff in table.product(p, s).items():
                        put((k, q, t), weight * coeff)
                    for k, coeff in table.product(q, t).items():
                        put((p, s, k), weight * coeff)
                    for k, coeff in table.product(p, t).items():
                        put((s, k, q), -(weight * coeff))
    return out


def pm_cybe_residual(r: Any) -> dict[tuple[int, int, int], Scalar]:
    """-r12.r13 + r12.r23 + r13 r23 with the commutator in the last leg."""
    table = r.algebra
    n = table.dim
    c = r.coeffs
    out: dict[tuple[int, int, int], Scalar] = {}

    def put(key: tuple[int, int, int], value: Scalar) -> None:
        if is_zero(value):
            return
        acc = out.get(key, ZERO) + value
        if is_zero(acc):
            out.pop(key, None)
        else:
            out[key] = acc

    for p in range(n):
        for q in range(n):
            if is_zero(c[p][q]):
                continue
            for s in range(n):
                for t in range(n):
                    if is_zero(c[s][t]):
                        continue
                    weight = c[p][q] * c[s][t]
                    for k, coeff in table.product(p, s).items():
                        put((k, q, t), -(weight * coeff))
                    for k, coeff in table.product(q, s).items():
                        put((p, k, t), weight * coeff)
                    for k, coeff in table.product(q, t).items():
                        put((p, s, k), weight * coeff)
                    for k, coeff in table.product(t, q).items():
                        put((p, s, k), -(weight * coeff))
    return out


# ---------------------------------------------------------------------------
# bilinear forms


def invariance_residual(form: Any, i: int, j: int, k: int) -> Scalar:
    # B(xy, z) - B(x, yz)
    table = form.algebra
    x, y, z = (_basis(table.dim, t) for t in (i, j, k))
    left = _form_value(form, _mul(table, x, y), z)
    right = _form_value(form, x, _mul(table, y, z))
    return left - right


def symplectic_residual(form: Any, i: int, j: int, k: int) -> Scalar:
    # B(xy, z) + B(yz, x) + B(zx, y)
    table = form.algebra
    x, y, z = (_basis(table.dim, t) for t in (i, j, k))
    total = _form_value(form, _mul(table, x, y), z)
    total = total + _form_value(form, _mul(table, y, z), x)
    total = total + _form_value(form, _mul(table, z, x), y)
    return total


def _form_value(form: Any, x: Sequence[Scalar], y: Sequence[Scalar]) -> Scalar:
    total: Scalar = ZERO
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            if is_zero(a) or is_zero(b):
                continue
            total = total + a * b * form.matrix[i][j]
    return total


# ---------------------------------------------------------------------------
# dispatch

_KINDS = {
    "anticommutative": anticommutative_residual,
    "jacobi": jacobi_residual,
    "malcev": malcev_residual,
    "sagle": sagle_residual,
    "pre-malcev": pre_malcev_residual,
    "rep": rep_residual,
    "bimodule": bimodule_residuals,
    "o-operator": o_residual,
    "pm-o-operator": pm_o_residual,
    "cybe": cybe_residual,
    "pm-cybe": pm_cybe_residual,
    "invariance": invariance_residual,
    "symplectic-cyclic": symplectic_residual,
}


def oracle_residual(kind: str, *inputs: Any) -> Any:
    """Compute the named residual by brute force.  See _KINDS for names."""
    try:
        fn = _KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown identity kind {kind!r}") from None
    return fn(*inputs)

"""Random object builders for the property and differential tests.

Everything draws small integer coefficients so residuals stay exact and
readable; a seeded Random instance keeps every run reproducible.
"""

import random
from fractions import Fraction

from malcev.algebra import GENERAL, StructureTable
from malcev.reps import Bimodule, LinearMap, LinearRep
from malcev.scalars import render_scalar
from malcev.ybe import BilinearForm, TwoTensor

COEFFS = [Fraction(n) for n in range(-2, 3)]


def rendered(value):
    """Normalize scalars / vectors / matrices / entry dicts to strings so
    comparisons are literal."""
    if isinstance(value, dict):
        return {k: render_scalar(v) for k, v in sorted(value.items())}
    if isinstance(value, (list, tuple)):
        return [rendered(v) for v in value]
    if hasattr(value, "coords"):
        return [render_scalar(v) for v in value.coords]
    return render_scalar(value)


def rand_scalar(rng: random.Random) -> Fraction:
    return rng.choice(COEFFS)


def rand_matrix(rng: random.Random, rows: int, cols: int) -> list[list[Fraction]]:
    return [[rand_scalar(rng) for _ in range(cols)] for _ in range(rows)]


def rand_anticommutative(rng: random.Random, dim: int) -> StructureTable:
    products = {}
    for i in range(dim):
        for j in range(i + 1, dim):
            row = {k: rand_scalar(rng) for k in range(dim)}
            products[(i, j)] = row
    names = tuple(f"e{i + 1}" for i in range(dim))
    return StructureTable.anticommutative(dim, names, (), products)


def rand_general(rng: random.Random, dim: int) -> StructureTable:
    constants = {}
    for i in range(dim):
        for j in range(dim):
            constants[(i, j)] = {k: rand_scalar(rng) for k in range(dim)}
    names = tuple(f"e{i + 1}" for i in range(dim))
    return StructureTable(dim, names, (), constants, kind=GENERAL)


def rand_rep_shaped(rng: random.Random, table: StructureTable, m: int) -> LinearRep:
    """Random action matrices; almost never a real representation."""
    mats = [rand_matrix(rng, m, m) for _ in range(table.dim)]
    return LinearRep(table, m, mats)


def rand_bimodule_shaped(rng: random.Random, table: StructureTable, m: int) -> Bimodule:
    left = [rand_matrix(rng, m, m) for _ in range(table.dim)]
    right = [rand_matrix(rng, m, m) for _ in range(table.dim)]
    return Bimodule(table, m, left, right)


def rand_map(rng: random.Random, source: int, target: int) -> LinearMap:
    return LinearMap(source, target, rand_matrix(rng, target, source))


def rand_skew_tensor(rng: random.Random, table: StructureTable) -> TwoTensor:
    n = table.dim
    coeffs = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rand_scalar(rng)
            coeffs[i][j] = v
            coeffs[j][i] = -v
    return TwoTensor(table, coeffs)


def rand_symmetric_tensor(rng: random.Random, table: StructureTable) -> TwoTensor:
    n = table.dim
    coeffs = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            v = rand_scalar(rng)
            coeffs[i][j] = v
            coeffs[j][i] = v
    return TwoTensor(table, coeffs)


def rand_tensor(rng: random.Random, table: StructureTable) -> TwoTensor:
    return TwoTensor(table, rand_matrix(rng, table.dim, table.dim))


def rand_form(rng: random.Random, table: StructureTable) -> BilinearForm:
    return BilinearForm(table, rand_matrix(rng, table.dim, table.dim))

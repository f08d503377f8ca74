"""Acceptance gate: one test per headline guarantee of the package.

Each test is a single pass/fail line under pytest -v.  Everything here
is exact: a passing check means the residual is the identically-zero
scalar, matrix, or tensor, never a numerical approximation.
"""

import itertools
import random
from fractions import Fraction

from malcev import oracle, storage
from malcev.algebra import (
    check_anticommutative,
    check_jacobi,
    check_malcev,
    check_pre_malcev,
    check_sagle,
    commutator_algebra,
    render_element,
)
from malcev.fixtures import fixture_path
from malcev.linalg import determinant, from_rows
from malcev.reps import (
    LinearMap,
    adjoint_rep,
    check_rep,
    coadjoint_rep,
    dual_bimodule,
    regular_bimodule,
    semidirect_malcev,
)
from malcev.ybe import (
    TwoTensor,
    b_from_r,
    build_r_T,
    build_s_T,
    canonical_r,
    canonical_s,
    check_cybe,
    check_o_operator,
    check_pm_cybe,
    check_pm_o_operator,
    check_symplectic,
    o_residual,
    pm_o_residual,
    pre_malcev_from_T,
    prop48_check,
    t_map,
)

from helpers import (
    rand_anticommutative,
    rand_bimodule_shaped,
    rand_form,
    rand_general,
    rand_map,
    rand_matrix,
    rand_rep_shaped,
    rand_skew_tensor,
    rand_symmetric_tensor,
    rand_tensor,
    rendered,
)


def test_criterion_01_base_algebra_is_malcev_but_not_lie(fix_a):
    assert check_anticommutative(fix_a).holds
    assert check_malcev(fix_a).holds
    assert check_sagle(fix_a).holds
    jacobi = check_jacobi(fix_a)
    assert not jacobi.holds
    assert jacobi.witness.indices == (0, 1, 2)
    assert render_element(jacobi.witness.residual, fix_a.basis_names) == "-6*e4"


def test_criterion_02_parametric_operator_families_verify_exactly(fix_a):
    coad = coadjoint_rep(fix_a)
    expected_rings = {
        "example2_5_family1.map.json": ("a", "b", "c", "d"),
        "example2_5_family2.map.json": ("a", "b", "c", "d", "e", "f"),
        "example2_5_family3.map.json": ("a", "b", "c", "d", "k"),
    }
    for name, ring in expected_rings.items():
        T = storage.load_map(fixture_path(name))
        assert T.ring == ring, name
        assert check_o_operator(T, coad).holds, name


def test_criterion_03_simple_lie_module_operator_families_verify(sl2):
    assert check_jacobi(sl2).holds
    rep = storage.load_rep(fixture_path("example2_6.rep.json"), sl2)
    assert check_rep(rep).holds
    for name in ("example2_6_family1.map.json", "example2_6_family2.map.json"):
        T = storage.load_map(fixture_path(name))
        assert T.ring == ("a", "b", "c"), name
        assert check_o_operator(T, rep).holds, name


def test_criterion_04_parametric_symplectic_family_and_instance(fix_a, fix_r):
    parametric = storage.load_form(fixture_path("example3_5.form.json"))
    report = check_symplectic(parametric)
    assert report.skew.holds
    assert report.cyclic.holds
    assert parametric.ring == ("a", "b", "c", "d", "e")

    instance = storage.load_form(fixture_path("example3_5_instance.form.json"))
    assert check_symplectic(instance).holds
    from malcev.ybe import r_from_b

    assert r_from_b(instance) == fix_r
    assert check_cybe(fix_r).holds
    assert b_from_r(fix_r).matrix == instance.matrix


def test_criterion_05_eight_dimensional_double_end_to_end(fix_a, fix_r, eq3_8_map):
    assert t_map(fix_r).matrix == eq3_8_map.matrix

    big = semidirect_malcev(fix_a, adjoint_rep(fix_a))
    assert big.basis_names == ("e1", "e2", "e3", "e4", "x1", "x2", "x3", "x4")
    upper = {
        (i, j): row
        for (i, j), row in big.constants.items()
        if i < j
    }
    F = Fraction
    assert upper == {
        (0, 1): {1: F(-1)},
        (0, 2): {2: F(-1)},
        (0, 3): {3: F(1)},
        (1, 2): {3: F(2)},
        (0, 5): {5: F(-1)},
        (0, 6): {6: F(-1)},
        (0, 7): {7: F(1)},
        (1, 6): {7: F(2)},
        (1, 4): {5: F(1)},
        (2, 4): {6: F(1)},
        (3, 4): {7: F(-1)},
        (2, 5): {7: F(-2)},
    }

    r = build_r_T(eq3_8_map, coadjoint_rep(fix_a))
    assert r.algebra == big
    nonzero = {
        (i, j): v for i, row in enumerate(r.coeffs) for j, v in enumerate(row) if v != 0
    }
    assert nonzero == {
        (3, 4): F(-1), (4, 3): F(1),
        (2, 5): F(1), (5, 2): F(-1),
        (1, 6): F(-1), (6, 1): F(1),
        (0, 7): F(1), (7, 0): F(-1),
    }
    assert check_cybe(r).holds


def test_criterion_06_solution_operator_equivalences_agree_on_random_instances(
    fix_a, fix_pm, fix_r, eq3_8_map
):
    rng = random.Random(601)
    coad = coadjoint_rep(fix_a)

    # skew tensor solves iff its operator satisfies the coadjoint equation
    positives = 0
    for k in range(21):
        r = fix_r if k == 0 else rand_skew_tensor(rng, fix_a)
        lhs = check_cybe(r).holds
        rhs = check_o_operator(t_map(r), coad).holds
        assert lhs == rhs
        positives += lhs
    assert positives >= 1

    # invertible skew tensor solves iff its inverse form is symplectic
    positives = 0
    checked = 0
    while checked < 21:
        if checked == 0:
            r = fix_r
        else:
            r = rand_skew_tensor(rng, fix_a)
            if determinant(from_rows(r.coeffs)) == 0:
                continue
        lhs = check_cybe(r).holds
        rhs = check_symplectic(b_from_r(r)).holds
        assert lhs == rhs
        positives += lhs
        checked += 1
    assert positives >= 1

    # the attached double tensor solves iff the map is an operator
    positives = 0
    for k in range(21):
        T = eq3_8_map if k == 0 else rand_map(rng, 4, 4)
        lhs = check_cybe(build_r_T(T, coad)).holds
        rhs = check_o_operator(T, coad).holds
        assert lhs == rhs
        positives += lhs
    assert positives >= 1

    # symmetric tensor on a general table against the dual bimodule
    dual_reg = dual_bimodule(regular_bimodule(fix_pm))
    z = Fraction(0)
    e4e4 = TwoTensor(fix_pm, [[z] * 4 for _ in range(3)] + [[z, z, z, Fraction(1)]])
    positives = 0
    for k in range(21):
        r = e4e4 if k == 0 else rand_symmetric_tensor(rng, fix_pm)
        lhs = check_pm_cybe(r).holds
        rhs = check_pm_o_operator(t_map(r), dual_reg).holds
        assert lhs == rhs
        positives += lhs
    assert positives >= 1

    # the symmetric double tensor solves iff the map is a bimodule operator
    from malcev.reps import Bimodule

    regular = regular_bimodule(fix_pm)
    zero = tuple(tuple(z for _ in range(4)) for _ in range(4))
    left_only = Bimodule(fix_pm, 4, regular.left, (zero,) * 4)
    positives = 0
    for k in range(21):
        if k == 0:
            T, bim = LinearMap.identity(4), left_only
        else:
            T, bim = rand_map(rng, 4, 4), regular
        lhs = check_pm_cybe(build_s_T(T, bim)).holds
        rhs = check_pm_o_operator(T, bim).holds
        assert lhs == rhs
        positives += lhs
    assert positives >= 1


def test_criterion_07_generic_residual_block_assembly(fix_a, fix_pm):
    from malcev.ybe import cybe_residual, pm_cybe_residual

    rng = random.Random(701)
    coad = coadjoint_rep(fix_a)
    regular = regular_bimodule(fix_pm)
    m = 4

    for _ in range(50):
        T = rand_map(rng, 4, 4)

        entries = dict(cybe_residual(build_r_T(T, coad)).entries)
        expected = {}
        for i in range(m):
            for j in range(m):
                block = o_residual(T, coad, i, j).coords
                for k, v in enumerate(block):
                    if v != 0:
                        expected[(k, m + i, m + j)] = expected.get((k, m + i, m + j), Fraction(0)) + v
                        expected[(m + i, m + j, k)] = expected.get((m + i, m + j, k), Fraction(0)) + v
                swapped = o_residual(T, coad, j, i).coords
                for k, v in enumerate(swapped):
                    if v != 0:
                        expected[(m + i, k, m + j)] = expected.get((m + i, k, m + j), Fraction(0)) + v
        expected = {key: v for key, v in expected.items() if v != 0}
        assert entries == expected

        s_entries = dict(pm_cybe_residual(build_s_T(T, regular)).entries)
        s_expected = {}
        for i in range(m):
            for j in range(m):
                fwd = pm_o_residual(T, regular, i, j).coords
                bwd = pm_o_residual(T, regular, j, i).coords
                for k in range(m):
                    if fwd[k] != 0:
                        s_expected[(k, m + i, m + j)] = -fwd[k]
                        s_expected[(m + i, k, m + j)] = fwd[k]
                    diff = fwd[k] - bwd[k]
                    if diff != 0:
                        s_expected[(m + i, m + j, k)] = diff
        assert s_entries == s_expected


def test_criterion_08_compatible_structures_and_canonical_solutions(
    fix_a, fix_pm, eq3_8_map
):
    built = pre_malcev_from_T(eq3_8_map, coadjoint_rep(fix_a))
    assert check_pre_malcev(built).holds
    assert commutator_algebra(built) == fix_a

    assert check_pre_malcev(fix_pm).holds
    assert commutator_algebra(fix_pm) == fix_a

    r = canonical_r(fix_pm)
    assert r.algebra.dim == 8
    assert check_cybe(r).holds

    s = canonical_s(fix_pm)
    assert s.algebra.dim == 8
    assert check_pm_cybe(s).holds


def test_criterion_09_form_operator_equivalence_on_invertible_maps(fix_pm):
    rng = random.Random(901)
    maps = [LinearMap.identity(4)]
    while len(maps) < 21:
        rows = rand_matrix(rng, 4, 4)
        if determinant(from_rows(rows)) != 0:
            maps.append(LinearMap(4, 4, rows))
    for T in maps:
        for variant in (1, 2, 3):
            assert prop48_check(fix_pm, T, variant).agree


def test_criterion_10_engine_and_oracle_residuals_byte_identical(
    fix_a, fix_pm, sl2, fix_r
):
    from malcev.algebra import (
        anticommutativity_residual,
        jacobi_residual,
        malcev_residual,
        pre_malcev_residual,
        sagle_residual,
    )
    from malcev.reps import bimodule_residuals, rep_residual
    from malcev.ybe import (
        cybe_residual,
        invariance_residual,
        pm_cybe_residual,
        symplectic_residual,
    )

    # every bundled fixture, every index tuple
    for table in (fix_a, sl2):
        n = table.dim
        basis = table.basis_elements()
        for i, j in itertools.product(range(n), repeat=2):
            assert rendered(anticommutativity_residual(basis[i], basis[j])) == rendered(
                oracle.oracle_residual("anticommutative", table, i, j)
            )
        for idx in itertools.product(range(n), repeat=3):
            for kind, fn in (("jacobi", jacobi_residual), ("malcev", malcev_residual)):
                assert rendered(fn(*(basis[i] for i in idx))) == rendered(
                    oracle.oracle_residual(kind, table, *idx)
                )
        for idx in itertools.product(range(n), repeat=4):
            assert rendered(sagle_residual(*(basis[i] for i in idx))) == rendered(
                oracle.oracle_residual("sagle", table, *idx)
            )

    basis = fix_pm.basis_elements()
    for idx in itertools.product(range(4), repeat=4):
        assert rendered(pre_malcev_residual(*(basis[i] for i in idx))) == rendered(
            oracle.oracle_residual("pre-malcev", fix_pm, *idx)
        )

    rep = storage.load_rep(fixture_path("example2_6.rep.json"), sl2)
    for idx in itertools.product(range(3), repeat=3):
        assert rendered(rep_residual(rep, *idx)) == rendered(
            oracle.oracle_residual("rep", rep, *idx)
        )

    coad = coadjoint_rep(fix_a)
    for name in (
        "example2_5_family1.map.json",
        "example2_5_family2.map.json",
        "example2_5_family3.map.json",
        "eq3_8.map.json",
    ):
        T = storage.load_map(fixture_path(name))
        for i, j in itertools.product(range(4), repeat=2):
            assert rendered(o_residual(T, coad, i, j)) == rendered(
                oracle.oracle_residual("o-operator", T, coad, i, j)
            ), name

    assert rendered(cybe_residual(fix_r).entries) == rendered(
        oracle.oracle_residual("cybe", fix_r)
    )
    for name in ("example3_5.form.json", "example3_5_instance.form.json"):
        form = storage.load_form(fixture_path(name))
        for idx in itertools.product(range(4), repeat=3):
            assert rendered(invariance_residual(form, *idx)) == rendered(
                oracle.oracle_residual("invariance", form, *idx)
            )
            assert rendered(symplectic_residual(form, *idx)) == rendered(
                oracle.oracle_residual("symplectic-cyclic", form, *idx)
            )

    # 100 random inputs per identity kind
    rng = random.Random(1001)
    for _ in range(100):
        dim = rng.randint(1, 4)
        anti = rand_anticommutative(rng, dim)
        gen = rand_general(rng, dim)
        idx2 = [rng.randrange(dim) for _ in range(2)]
        idx3 = [rng.randrange(dim) for _ in range(3)]
        idx4 = [rng.randrange(dim) for _ in range(4)]
        ab = anti.basis_elements()
        gb = gen.basis_elements()

        assert rendered(anticommutativity_residual(ab[idx2[0]], ab[idx2[1]])) == rendered(
            oracle.oracle_residual("anticommutative", anti, *idx2)
        )
        assert rendered(jacobi_residual(*(ab[i] for i in idx3))) == rendered(
            oracle.oracle_residual("jacobi", anti, *idx3)
        )
        assert rendered(malcev_residual(*(ab[i] for i in idx3))) == rendered(
            oracle.oracle_residual("malcev", anti, *idx3)
        )
        assert rendered(sagle_residual(*(ab[i] for i in idx4))) == rendered(
            oracle.oracle_residual("sagle", anti, *idx4)
        )
        assert rendered(pre_malcev_residual(*(gb[i] for i in idx4))) == rendered(
            oracle.oracle_residual("pre-malcev", gen, *idx4)
        )

        m = rng.randint(1, 3)
        rrep = rand_rep_shaped(rng, anti, m)
        assert rendered(rep_residual(rrep, *idx3)) == rendered(
            oracle.oracle_residual("rep", rrep, *idx3)
        )
        rbim = rand_bimodule_shaped(rng, gen, m)
        assert rendered(bimodule_residuals(rbim, *idx3)) == rendered(
            oracle.oracle_residual("bimodule", rbim, *idx3)
        )

        T = rand_map(rng, m, dim)
        i, j = rng.randrange(m), rng.randrange(m)
        assert rendered(o_residual(T, rrep, i, j)) == rendered(
            oracle.oracle_residual("o-operator", T, rrep, i, j)
        )
        assert rendered(pm_o_residual(T, rbim, i, j)) == rendered(
            oracle.oracle_residual("pm-o-operator", T, rbim, i, j)
        )

        skew_r = rand_tensor(rng, anti)
        assert rendered(cybe_residual(skew_r).entries) == rendered(
            oracle.oracle_residual("cybe", skew_r)
        )
        gen_r = rand_tensor(rng, gen)
        assert rendered(pm_cybe_residual(gen_r).entries) == rendered(
            oracle.oracle_residual("pm-cybe", gen_r)
        )

        form = rand_form(rng, rng.choice((anti, gen)))
        assert rendered(invariance_residual(form, *idx3)) == rendered(
            oracle.oracle_residual("invariance", form, *idx3)
        )
        assert rendered(symplectic_residual(form, *idx3)) == rendered(
            oracle.oracle_residual("symplectic-cyclic", form, *idx3)
        )

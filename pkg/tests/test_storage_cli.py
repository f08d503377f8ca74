"""JSON storage round trips, schema rejection, and the command line."""

import json

import pytest

from malcev import storage
from malcev.cli import main
from malcev.fixtures import fixture_path, list_fixtures


# ---------------------------------------------------------------------------
# storage


def test_every_bundled_fixture_round_trips_byte_stable(tmp_path):
    for name in list_fixtures():
        src = fixture_path(name)
        out = tmp_path / name
        if name.endswith(".alg.json"):
            storage.store_algebra(storage.load_algebra(src), out)
        elif name.endswith(".rep.json"):
            algebra = storage.load_algebra(fixture_path("example2_6.alg.json"))
            storage.store_rep(storage.load_rep(src, algebra), out)
        elif name.endswith(".map.json"):
            storage.store_map(storage.load_map(src), out)
        elif name.endswith(".r.json"):
            storage.store_tensor(storage.load_tensor(src), out)
        elif name.endswith(".form.json"):
            storage.store_form(storage.load_form(src), out)
        else:
            continue  # the mask file is plain JSON, no loader of its own
        assert out.read_bytes() == src.read_bytes(), name


def test_loaded_algebra_matches_inline_table(fix_a):
    loaded = storage.load_algebra(fixture_path("example2_1.alg.json"))
    assert loaded == fix_a


def test_loaded_tensor_carries_its_algebra(fix_r):
    r = storage.load_tensor(fixture_path("example3_5.r.json"))
    assert r == fix_r


def _write(tmp_path, doc):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


GOOD_ALGEBRA = {
    "dim": 2,
    "basis": ["e1", "e2"],
    "ring": [],
    "kind": "anticommutative",
    "table": [[0, 1, 0, "1"]],
}


def test_schema_errors_carry_a_location(tmp_path):
    cases = [
        ({**GOOD_ALGEBRA, "table": [[0, 1, 5, "1"]]}, "table"),
        ({**GOOD_ALGEBRA, "table": [[1, 0, 0, "1"]]}, "table"),
        ({**GOOD_ALGEBRA, "table": [[0, 1, 0, "1"], [0, 1, 0, "2"]]}, "table"),
        ({**GOOD_ALGEBRA, "table": [[0, 1, 0, "q"]]}, "table"),
        ({**GOOD_ALGEBRA, "basis": ["e1"]}, "basis"),
        ({**GOOD_ALGEBRA, "kind": "associative"}, "kind"),
        ({k: v for k, v in GOOD_ALGEBRA.items() if k != "dim"}, "dim"),
    ]
    for doc, fragment in cases:
        path = _write(tmp_path, doc)
        with pytest.raises(storage.StorageError) as err:
            storage.load_algebra(path)
        assert fragment in str(err.value), doc


def test_map_schema_rejects_bad_entries(tmp_path):
    doc = {"rows": 2, "cols": 2, "ring": [], "entries": [[0, 0, "1"], [0, 0, "2"]]}
    with pytest.raises(storage.StorageError):
        storage.load_map(_write(tmp_path, doc))
    doc = {"rows": 2, "cols": 2, "ring": [], "entries": [[5, 0, "1"]]}
    with pytest.raises(storage.StorageError):
        storage.load_map(_write(tmp_path, doc))


def test_not_json_is_a_storage_error(tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{ nope", encoding="utf-8")
    with pytest.raises(storage.StorageError):
        storage.load_algebra(path)


# ---------------------------------------------------------------------------
# command line


def test_cli_identity_flags_and_expected_jacobi_failure(capsys):
    code = main(["verify", "algebra", "example2_1", "--malcev", "--sagle", "--no-jacobi-expected"])
    out = capsys.readouterr().out
    assert code == 0
    assert "malcev: holds" in out
    assert "sagle: holds" in out
    assert "jacobi-expected-to-fail: holds" in out


def test_cli_default_checks_follow_table_kind(capsys):
    assert main(["verify", "algebra", "example2_1"]) == 0
    assert "anticommutativity: holds" in capsys.readouterr().out
    assert main(["verify", "algebra", "example4_1"]) == 0
    assert "pre-malcev: holds" in capsys.readouterr().out


def test_cli_build_then_verify_tensor(tmp_path, capsys):
    out = tmp_path / "out.r.json"
    assert main([
        "build", "rT",
        "--algebra", "example2_1",
        "--rep", "coadjoint",
        "--map", "eq3_8.map.json",
        "-o", str(out),
    ]) == 0
    assert out.exists()
    assert main(["verify", "cybe", str(out), "--oracle"]) == 0
    text = capsys.readouterr().out
    assert "classical-yang-baxter: holds" in text
    assert "agrees with engine" in text


def test_cli_failing_check_reports_witness_and_exits_1(tmp_path, capsys):
    doc = json.loads(fixture_path("example2_5_family3.map.json").read_text())
    doc["entries"].append([3, 0, "a"])
    bad = tmp_path / "near.map.json"
    bad.write_text(json.dumps(doc), encoding="utf-8")
    report_path = tmp_path / "report.json"
    code = main([
        "verify", "o-operator",
        "--algebra", "example2_1",
        "--rep", "coadjoint",
        "--map", str(bad),
        "--json", str(report_path),
    ])
    assert code == 1
    report = json.loads(report_path.read_text())
    assert report["format"] == 1
    check = report["checks"][0]
    assert check["holds"] is False
    assert check["witness"]["indices"] == [1, 2]
    assert check["witness"]["residual"] == "(-a^2)*e4"


def test_cli_json_report_is_deterministic(tmp_path):
    report = tmp_path / "report.json"
    args = ["verify", "algebra", "example2_1", "--malcev", "--json", str(report)]
    assert main(args) == 0
    first = report.read_bytes()
    assert main(args) == 0
    assert report.read_bytes() == first


def test_cli_usage_errors_exit_2(tmp_path, capsys):
    assert main(["verify", "algebra", "no-such-fixture"]) == 2
    assert main(["verify", "algebra", "example2_1", "--max-dim", "2"]) == 2
    assert main([
        "search", "o-operators",
        "--algebra", "example2_1",
        "--rep", "coadjoint",
        "--mask", "family1_mask",
        "--budget", "10",
    ]) == 2
    capsys.readouterr()


def test_cli_construction_refusal_exits_1(tmp_path, capsys):
    code = main([
        "build", "pre-malcev-from-T",
        "--algebra", "example2_1",
        "--rep", "coadjoint",
        "--map", "identity",
        "-o", str(tmp_path / "x.alg.json"),
    ])
    assert code == 1
    assert "construction failed" in capsys.readouterr().out


def test_cli_parametric_form_reports_exact_condition(tmp_path, capsys):
    report_path = tmp_path / "form.json"
    code = main(["verify", "form", "example3_5", "--json", str(report_path)])
    assert code == 1  # degenerate for special parameter values
    report = json.loads(report_path.read_text())
    by_name = {c["name"]: c for c in report["checks"]}
    assert by_name["skew-symmetry"]["holds"]
    assert by_name["symplectic-cyclic"]["holds"]
    status = by_name["nondegeneracy"]
    assert status["status"] == "generically-nondegenerate"
    assert status["condition"] == (
        "a^2*e^2 - 2*a*b*d*e - 2*a*c^2*e + b^2*d^2 + 2*b*c^2*d + c^4"
    )


def test_cli_instance_form_is_symplectic(capsys):
    assert main(["verify", "form", "example3_5_instance", "--symplectic"]) == 0
    assert "nondegeneracy: nondegenerate" in capsys.readouterr().out


def test_cli_prop48_agreement(capsys):
    for variant in ("1", "2", "3"):
        assert main([
            "verify", "prop48",
            "--algebra", "example4_1",
            "--map", "eq3_8",
            "--variant", variant,
        ]) == 0
    assert "equivalence observed: yes" in capsys.readouterr().out


def test_cli_search_counts_and_writes_maps(tmp_path, capsys):
    mask = tmp_path / "mask.json"
    mask.write_text(json.dumps({"rows": 4, "cols": 4, "positions": [[3, 0], [3, 1]]}))
    found_dir = tmp_path / "found"
    report_path = tmp_path / "search.json"
    code = main([
        "search", "o-operators",
        "--algebra", "example2_1",
        "--rep", "coadjoint",
        "--mask", str(mask),
        "--values=-1,0,1",
        "-o", str(found_dir),
        "--json", str(report_path),
    ])
    assert code == 0
    report = json.loads(report_path.read_text())
    counts = report["checks"][0]
    assert counts["candidates"] == 9
    assert counts["found"] == len(list(found_dir.glob("*.map.json")))
    capsys.readouterr()


def test_cli_semidirect_output_verifies(tmp_path, capsys):
    out = tmp_path / "semi.alg.json"
    assert main([
        "build", "semidirect",
        "--algebra", "example2_1",
        "--rep", "adjoint",
        "-o", str(out),
    ]) == 0
    assert main(["verify", "algebra", str(out), "--malcev", "--sagle"]) == 0
    capsys.readouterr()

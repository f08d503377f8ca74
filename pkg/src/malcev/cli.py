"""Command line front end.

Three families of subcommands:

  verify   run identity / axiom checks on stored objects, exit 0 or 1
  build    construct derived objects and write them back out as JSON
  search   enumerate operator candidates on a sparsity mask

Exit codes: 0 all checks passed, 1 a mathematical check failed (the
witness is in the report), 2 bad input (file, schema, shape, flags).
Positional object arguments accept either a file path or the name of a
bundled fixture ("example2_1" resolves to example2_1.alg.json).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from . import oracle, storage
from .algebra import (
    IdentityReport,
    StructureTable,
    Witness,
    check_anticommutative,
    check_jacobi,
    check_malcev,
    check_pre_malcev,
    check_sagle,
    commutator_algebra,
    render_element,
    ANTICOMMUTATIVE,
)
from .fixtures import fixture_path
from .reps import (
    Bimodule,
    LinearMap,
    LinearRep,
    adjoint_rep,
    check_bimodule,
    check_rep,
    check_rep_iso,
    coadjoint_rep,
    dual_bimodule,
    dual_rep,
    left_mult_rep,
    regular_bimodule,
    semidirect_malcev,
    semidirect_pre_malcev,
)
from .scalars import (
    ScalarError,
    ZERO,
    is_zero,
    parse_scalar,
    render_scalar,
)
from .ybe import (
    BudgetExceededError,
    ConstructionError,
    b_from_r,
    build_r_T,
    build_s_T,
    canonical_r,
    canonical_s,
    check_cybe,
    check_invariant,
    check_o_operator,
    check_pm_cybe,
    check_pm_o_operator,
    check_skew_form,
    check_symplectic,
    grid_search_o_operators,
    phi_from_form,
    pre_malcev_from_symplectic,
    pre_malcev_from_T,
    prop48_check,
    star_product,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

REPORT_FORMAT = 1


class UsageError(Exception):
    """Bad input: missing file, malformed flag value, wrong object kind."""


# ---------------------------------------------------------------------------
# argument resolution


def _resolve(spec: str, exts: Sequence[str]) -> Path:
    path = Path(spec)
    if path.exists():
        return path
    for name in [spec] + [spec + ext for ext in exts]:
        try:
            return fixture_path(name)
        except FileNotFoundError:
            continue
    raise UsageError(f"no such file or bundled fixture: {spec}")


def _guard_dim(table: StructureTable, max_dim: int) -> StructureTable:
    if table.dim > max_dim:
        raise UsageError(
            f"algebra dimension {table.dim} exceeds --max-dim {max_dim}"
        )
    return table


def _load_algebra(spec: str | None, max_dim: int) -> StructureTable:
    if spec is None:
        raise UsageError("this command needs --algebra")
    return _guard_dim(storage.load_algebra(_resolve(spec, [".alg.json"])), max_dim)


def _load_rep(spec: str | None, table: StructureTable) -> LinearRep:
    if spec is None:
        raise UsageError("this command needs --rep")
    if spec == "adjoint":
        return adjoint_rep(table)
    if spec == "coadjoint":
        return coadjoint_rep(table)
    if spec == "left-mult":
        return left_mult_rep(table)
    return storage.load_rep(_resolve(spec, [".rep.json"]), table)


def _load_bimodule(spec: str | None, table: StructureTable) -> Bimodule:
    if spec is None:
        raise UsageError("this command needs --bimodule")
    if spec == "regular":
        return regular_bimodule(table)
    if spec == "dual-regular":
        return dual_bimodule(regular_bimodule(table))
    if spec == "left-zero":
        regular = regular_bimodule(table)
        zero = tuple(tuple(ZERO for _ in range(table.dim)) for _ in range(table.dim))
        return Bimodule(table, table.dim, regular.left, (zero,) * table.dim, table.ring)
    return storage.load_bimodule(_resolve(spec, [".bim.json"]), table)


def _load_map(spec: str | None, identity_dim: int | None = None) -> LinearMap:
    if spec is None:
        raise UsageError("this command needs --map")
    if spec == "identity":
        if identity_dim is None:
            raise UsageError("'identity' is not meaningful for this command")
        return LinearMap.identity(identity_dim)
    return storage.load_map(_resolve(spec, [".map.json"]))


def _load_tensor(spec: str, algebra: StructureTable | None, max_dim: int):
    r = storage.load_tensor(_resolve(spec, [".r.json"]), algebra)
    _guard_dim(r.algebra, max_dim)
    return r


def _load_form(spec: str, algebra: StructureTable | None, max_dim: int):
    form = storage.load_form(_resolve(spec, [".form.json"]), algebra)
    _guard_dim(form.algebra, max_dim)
    return form


# ---------------------------------------------------------------------------
# report assembly


def _witness_doc(witness: Witness | None, names: tuple[str, ...] | None) -> Any:
    if witness is None:
        return None
    residual = witness.residual
    if hasattr(residual, "coords"):
        rendered = render_element(residual, names)
    elif isinstance(residual, tuple):
        rendered = "[" + "; ".join(
            ", ".join(render_scalar(entry) for entry in row) for row in residual
        ) + "]"
    else:
        rendered = render_scalar(residual)
    return {"indices": list(witness.indices), "residual": rendered}


class Session:
    """Collects check verdicts and output paths, then emits the report."""

    def __init__(self, args: argparse.Namespace) -> None:
        self.json_path: str | None = getattr(args, "json", None)
        self.command: list[str] = list(getattr(args, "_argv", []))
        self.checks: list[dict[str, Any]] = []
        self.outputs: list[str] = []

    def add(
        self,
        name: str,
        holds: bool,
        detail: str,
        witness: Any = None,
        extra: dict[str, Any] | None = None,
    ) -> None:
        print(detail)
        entry: dict[str, Any] = {"name": name, "holds": holds, "detail": detail}
        if witness is not None:
            entry["witness"] = witness
        if extra:
            entry.update(extra)
        self.checks.append(entry)

    def add_report(
        self, report: IdentityReport, names: tuple[str, ...] | None = None
    ) -> None:
        self.add(
            report.identity,
            report.holds,
            report.describe(names),
            _witness_doc(report.witness, names),
        )

    def add_output(self, path: str, kind: str) -> None:
        print(f"wrote {kind}: {path}")
        self.outputs.append(path)

    def finish(self) -> int:
        code = EXIT_OK if all(c["holds"] for c in self.checks) else EXIT_FAIL
        if self.json_path is not None:
            doc = {
                "format": REPORT_FORMAT,
                "command": self.command,
                "checks": self.checks,
                "outputs": self.outputs,
                "exit": code,
            }
            Path(self.json_path).write_text(
                json.dumps(doc, indent=2) + "\n", encoding="utf-8"
            )
        return code


# ---------------------------------------------------------------------------
# oracle cross-checks (opt-in, brute force, so quadratic to quartic scans)


_ORACLE_ARITY = {
    "anticommutative": 2,
    "jacobi": 3,
    "malcev": 3,
    "sagle": 4,
    "pre-malcev": 4,
}


def _oracle_scan(kind: str, subject: Any, dims: Sequence[int]) -> tuple[bool, Any]:
    """Verdict plus first nonzero residual over the full index grid."""
    for idx in itertools.product(*(range(d) for d in dims)):
        residual = oracle.oracle_residual(kind, subject, *idx)
        if isinstance(residual, tuple) and residual and isinstance(residual[0], tuple):
            bad = any(not is_zero(v) for row in residual for v in row)
        elif isinstance(residual, (list, tuple)):
            bad = any(not is_zero(v) for v in residual)
        else:
            bad = not is_zero(residual)
        if bad:
            return False, (idx, residual)
    return True, None


def _oracle_agreement(
    session: Session, kind: str, subject: Any, dims: Sequence[int], engine_holds: bool
) -> None:
    verdict, first = _oracle_scan(kind, subject, dims)
    agree = verdict == engine_holds
    where = "" if first is None else f" (first defect at {first[0]})"
    detail = (
        f"oracle[{kind}]: {'agrees with engine' if agree else 'DISAGREES with engine'}"
        f": holds={verdict}{where}"
    )
    session.add(f"oracle-{kind}", agree, detail)


def _oracle_bimodule(session: Session, bim: Bimodule, engine_holds: bool) -> None:
    n = bim.algebra.dim
    verdict = True
    first = None
    for idx in itertools.product(range(n), repeat=3):
        residuals = oracle.oracle_residual("bimodule", bim, *idx)
        if any(not is_zero(v) for mat in residuals for row in mat for v in row):
            verdict, first = False, idx
            break
    agree = verdict == engine_holds
    where = "" if first is None else f" (first defect at {first})"
    session.add(
        "oracle-bimodule",
        agree,
        f"oracle[bimodule]: {'agrees with engine' if agree else 'DISAGREES with engine'}"
        f": holds={verdict}{where}",
    )


def _oracle_tensor(session: Session, kind: str, r: Any, engine_holds: bool) -> None:
    entries = oracle.oracle_residual(kind, r)
    verdict = not entries
    agree = verdict == engine_holds
    session.add(
        f"oracle-{kind}",
        agree,
        f"oracle[{kind}]: {'agrees with engine' if agree else 'DISAGREES with engine'}"
        f": holds={verdict} ({len(entries)} nonzero residual entries)",
    )


# ---------------------------------------------------------------------------
# verify


def _verify_algebra(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim)
    names = table.basis_names

    selected: list[str] = []
    for flag in ("anticommutative", "jacobi", "malcev", "sagle", "pre_malcev"):
        if getattr(args, flag):
            selected.append(flag.replace("_", "-"))
    if args.no_jacobi_expected and "jacobi" not in selected:
        selected.append("jacobi")
    if not selected:
        if table.kind == ANTICOMMUTATIVE:
            selected = ["anticommutative", "malcev"]
        else:
            selected = ["pre-malcev"]

    checkers = {
        "anticommutative": check_anticommutative,
        "jacobi": check_jacobi,
        "malcev": check_malcev,
        "sagle": check_sagle,
        "pre-malcev": check_pre_malcev,
    }
    for kind in selected:
        report = checkers[kind](table)
        if kind == "jacobi" and args.no_jacobi_expected:
            # the interesting examples are non-Lie: Jacobi must fail
            flipped = IdentityReport("jacobi-expected-to-fail", not report.holds, report.witness)
            session.add_report(flipped, names)
        else:
            session.add_report(report, names)
        if args.oracle:
            dims = [table.dim] * _ORACLE_ARITY[kind]
            _oracle_agreement(session, kind, table, dims, report.holds)


def _verify_rep(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim)
    rep = _load_rep(args.rep, table)
    report = check_rep(rep)
    session.add_report(report, table.basis_names)
    if args.oracle:
        _oracle_agreement(session, "rep", rep, [table.dim] * 3, report.holds)


def _verify_bimodule(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim)
    bim = _load_bimodule(args.bimodule, table)
    report = check_bimodule(bim)
    for check in report.checks:
        session.add_report(check, table.basis_names)
    if args.oracle:
        _oracle_bimodule(session, bim, report.holds)


def _verify_o_operator(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim)
    rep = _load_rep(args.rep, table)
    T = _load_map(args.map, rep.space_dim if rep.space_dim == table.dim else None)
    report = check_o_operator(T, rep)
    session.add_report(report, table.basis_names)
    if args.oracle:
        verdict, first = _oracle_pair_scan("o-operator", T, rep, rep.space_dim)
        agree = verdict == report.holds
        where = "" if first is None else f" (first defect at {first})"
        session.add(
            "oracle-o-operator",
            agree,
            f"oracle[o-operator]: {'agrees with engine' if agree else 'DISAGREES with engine'}"
            f": holds={verdict}{where}",
        )


def _oracle_pair_scan(kind: str, T: LinearMap, module: Any, m: int):
    for i in range(m):
        for j in range(m):
            residual = oracle.oracle_residual(kind, T, module, i, j)
            if any(not is_zero(v) for v in residual):
                return False, (i, j)
    return True, None


def _verify_pm_o_operator(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim)
    bim = _load_bimodule(args.bimodule, table)
    T = _load_map(args.map, bim.space_dim if bim.space_dim == table.dim else None)
    report = check_pm_o_operator(T, bim)
    session.add_report(report, table.basis_names)
    if args.oracle:
        verdict, first = _oracle_pair_scan("pm-o-operator", T, bim, bim.space_dim)
        agree = verdict == report.holds
        where = "" if first is None else f" (first defect at {first})"
        session.add(
            "oracle-pm-o-operator",
            agree,
            f"oracle[pm-o-operator]: {'agrees with engine' if agree else 'DISAGREES with engine'}"
            f": holds={verdict}{where}",
        )


def _verify_cybe(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim) if args.algebra else None
    r = _load_tensor(args.tensor, table, args.max_dim)
    report = check_cybe(r)
    session.add_report(report, r.algebra.basis_names)
    if args.oracle:
        _oracle_tensor(session, "cybe", r, report.holds)


def _verify_pm_cybe(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim) if args.algebra else None
    r = _load_tensor(args.tensor, table, args.max_dim)
    report = check_pm_cybe(r)
    session.add_report(report, r.algebra.basis_names)
    if args.oracle:
        _oracle_tensor(session, "pm-cybe", r, report.holds)


def _verify_form(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim) if args.algebra else None
    form = _load_form(args.form, table, args.max_dim)
    names = form.algebra.basis_names
    modes = [m for m in ("symplectic", "invariant", "skew") if getattr(args, m)]
    if not modes:
        modes = ["symplectic"]

    for mode in modes:
        if mode == "skew":
            session.add_report(check_skew_form(form), names)
        elif mode == "invariant":
            report = check_invariant(form)
            session.add_report(report, names)
            if args.oracle:
                dims = [form.algebra.dim] * 3
                _oracle_agreement(session, "invariance", form, dims, report.holds)
        else:
            sym = check_symplectic(form)
            session.add_report(sym.skew, names)
            session.add_report(sym.cyclic, names)
            extra: dict[str, Any] = {"status": sym.nondegeneracy}
            detail = f"nondegeneracy: {sym.nondegeneracy}"
            if sym.condition is not None:
                extra["condition"] = render_scalar(sym.condition)
                detail += f": condition = {extra['condition']}"
            session.add(
                "nondegeneracy", sym.nondegeneracy == "nondegenerate", detail, extra=extra
            )
            if args.oracle:
                dims = [form.algebra.dim] * 3
                _oracle_agreement(
                    session, "symplectic-cyclic", form, dims, sym.cyclic.holds
                )


def _verify_rep_iso(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim)
    rep1 = _load_rep(args.rep, table)
    rep2 = _load_rep(args.rep2, table)
    phi = _load_map(args.map, rep1.space_dim if rep1.space_dim == rep2.space_dim else None)
    session.add_report(check_rep_iso(phi, rep1, rep2), table.basis_names)


def _verify_prop48(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim)
    T = _load_map(args.map, table.dim)
    report = prop48_check(table, T, args.variant)
    names = table.basis_names
    # the claim under test is the equivalence, so agreement with both
    # sides failing still passes; the side verdicts go into the detail
    detail = "\n".join([
        report.bilinear.describe(names),
        report.operator.describe(names),
        f"equivalence observed: {'yes' if report.agree else 'NO'}",
    ])
    session.add(
        f"equivalence-variant-{args.variant}",
        report.agree,
        detail,
        extra={
            "bilinear_holds": report.bilinear.holds,
            "operator_holds": report.operator.holds,
        },
    )


# ---------------------------------------------------------------------------
# build


def _store_algebra_out(session: Session, path: str, table: StructureTable) -> None:
    storage.store_algebra(table, path)
    session.add_output(path, "algebra")


def _build(args: argparse.Namespace, session: Session) -> None:
    what = args.object
    out = args.output

    if what == "adjoint":
        table = _load_algebra(args.algebra, args.max_dim)
        storage.store_rep(adjoint_rep(table), out)
        session.add_output(out, "representation")
    elif what == "coadjoint":
        table = _load_algebra(args.algebra, args.max_dim)
        storage.store_rep(coadjoint_rep(table), out)
        session.add_output(out, "representation")
    elif what == "dual-rep":
        table = _load_algebra(args.algebra, args.max_dim)
        storage.store_rep(dual_rep(_load_rep(args.rep, table)), out)
        session.add_output(out, "representation")
    elif what == "dual-bimodule":
        table = _load_algebra(args.algebra, args.max_dim)
        storage.store_bimodule(dual_bimodule(_load_bimodule(args.bimodule, table)), out)
        session.add_output(out, "bimodule")
    elif what == "semidirect":
        table = _load_algebra(args.algebra, args.max_dim)
        rep = _load_rep(args.rep, table)
        _store_algebra_out(session, out, semidirect_malcev(table, rep))
    elif what == "pre-semidirect":
        table = _load_algebra(args.algebra, args.max_dim)
        bim = _load_bimodule(args.bimodule, table)
        _store_algebra_out(session, out, semidirect_pre_malcev(table, bim))
    elif what == "rT":
        table = _load_algebra(args.algebra, args.max_dim)
        rep = _load_rep(args.rep, table)
        T = _load_map(args.map, rep.space_dim if rep.space_dim == table.dim else None)
        storage.store_tensor(build_r_T(T, rep), out)
        session.add_output(out, "tensor")
    elif what == "sT":
        table = _load_algebra(args.algebra, args.max_dim)
        bim = _load_bimodule(args.bimodule, table)
        T = _load_map(args.map, bim.space_dim if bim.space_dim == table.dim else None)
        storage.store_tensor(build_s_T(T, bim), out)
        session.add_output(out, "tensor")
    elif what == "canonical-r":
        table = _load_algebra(args.algebra, args.max_dim)
        storage.store_tensor(canonical_r(table), out)
        session.add_output(out, "tensor")
    elif what == "canonical-s":
        table = _load_algebra(args.algebra, args.max_dim)
        storage.store_tensor(canonical_s(table), out)
        session.add_output(out, "tensor")
    elif what == "pre-malcev-from-T":
        table = _load_algebra(args.algebra, args.max_dim)
        rep = _load_rep(args.rep, table)
        T = _load_map(args.map, rep.space_dim if rep.space_dim == table.dim else None)
        _store_algebra_out(session, out, pre_malcev_from_T(T, rep))
    elif what == "star-product":
        table = _load_algebra(args.algebra, args.max_dim)
        rep = _load_rep(args.rep, table)
        T = _load_map(args.map, rep.space_dim if rep.space_dim == table.dim else None)
        _store_algebra_out(session, out, star_product(T, rep))
    elif what == "pre-malcev-from-symplectic":
        table = _load_algebra(args.algebra, args.max_dim)
        form = _load_form(args.form, table, args.max_dim) if args.form else None
        if form is None:
            raise UsageError("this command needs --form")
        _store_algebra_out(session, out, pre_malcev_from_symplectic(table, form))
    elif what == "Br":
        table = _load_algebra(args.algebra, args.max_dim) if args.algebra else None
        r = _load_tensor(args.tensor, table, args.max_dim)
        storage.store_form(b_from_r(r), out)
        session.add_output(out, "form")
    elif what == "phiB":
        table = _load_algebra(args.algebra, args.max_dim) if args.algebra else None
        form = _load_form(args.form, table, args.max_dim)
        storage.store_map(phi_from_form(form), out)
        session.add_output(out, "map")
    elif what == "commutator":
        table = _load_algebra(args.algebra, args.max_dim)
        _store_algebra_out(session, out, commutator_algebra(table))
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown build target: {what}")


# ---------------------------------------------------------------------------
# search


def _parse_values(text: str, ring: tuple[str, ...]) -> list:
    values = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        values.append(parse_scalar(chunk, ring))
    if not values:
        raise UsageError("--values parsed to an empty set")
    return values


def _load_mask(spec: str) -> list[tuple[int, int]]:
    path = _resolve(spec, [".json", ".mask.json"])
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "positions" not in doc:
        raise UsageError(f"{path}: mask file needs a 'positions' key")
    positions = []
    for entry in doc["positions"]:
        if not (isinstance(entry, list) and len(entry) == 2):
            raise UsageError(f"{path}: mask positions must be [row, col] pairs")
        positions.append((int(entry[0]), int(entry[1])))
    return positions


def _search_o_operators(args: argparse.Namespace, session: Session) -> None:
    table = _load_algebra(args.algebra, args.max_dim)
    rep = _load_rep(args.rep, table)
    values = _parse_values(args.values, rep.ring)
    mask = _load_mask(args.mask)
    found = grid_search_o_operators(rep, values, mask, args.budget)
    total = len(values) ** len(set(mask))
    session.add(
        "search-o-operators",
        True,
        f"searched {total} candidates, found {len(found)} O-operators",
        extra={"candidates": total, "found": len(found)},
    )
    if args.oracle:
        bad = 0
        for T in found:
            verdict, _ = _oracle_pair_scan("o-operator", T, rep, rep.space_dim)
            if not verdict:
                bad += 1
        session.add(
            "oracle-search",
            bad == 0,
            f"oracle[o-operator]: reverified {len(found)} hits, {bad} disagreements",
        )
    if args.output:
        out_dir = Path(args.output)
        out_dir.mkdir(parents=True, exist_ok=True)
        width = max(3, len(str(max(len(found) - 1, 0))))
        for k, T in enumerate(found):
            path = out_dir / f"o_operator_{k:0{width}d}.map.json"
            storage.store_map(T, path)
            session.outputs.append(str(path))
        print(f"wrote {len(found)} maps to {out_dir}")


# ---------------------------------------------------------------------------
# parser


def _common_flags(parser: argparse.ArgumentParser, oracle_flag: bool) -> None:
    parser.add_argument("--json", metavar="PATH", help="write a machine readable report")
    parser.add_argument(
        "--max-dim",
        type=int,
        default=64,
        metavar="N",
        help="refuse algebras above this dimension (default 64)",
    )
    if oracle_flag:
        parser.add_argument(
            "--oracle",
            action="store_true",
            help="cross-check the verdict against the brute force reference "
            "(slow: rescans every index tuple)",
        )


def _algebra_flag(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument(
        "--algebra",
        required=required,
        metavar="SPEC",
        help="algebra file or bundled fixture name",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="malcev",
        description="Exact verification and construction for Malcev and "
        "pre-Malcev structure tables.",
    )
    sub = parser.add_subparsers(dest="family", required=True)

    verify = sub.add_parser("verify", help="run identity and axiom checks")
    vsub = verify.add_subparsers(dest="what", required=True)

    p = vsub.add_parser("algebra", help="product identities of a structure table")
    p.add_argument("algebra", metavar="ALGEBRA", help="algebra file or fixture name")
    for flag, text in (
        ("--anticommutative", "check xy + yx = 0"),
        ("--jacobi", "check the Jacobi identity"),
        ("--malcev", "check the Malcev identity"),
        ("--sagle", "check the four-variable Sagle identity"),
        ("--pre-malcev", "check the four-variable pre-Malcev identity"),
    ):
        p.add_argument(flag, action="store_true", help=text)
    p.add_argument(
        "--no-jacobi-expected",
        action="store_true",
        help="assert that Jacobi fails (exit 0 only if it does)",
    )
    _common_flags(p, oracle_flag=True)
    p.set_defaults(handler=_verify_algebra)

    p = vsub.add_parser("rep", help="representation axiom for a linear action")
    _algebra_flag(p)
    p.add_argument("--rep", required=True, metavar="SPEC",
                   help="rep file, or adjoint / coadjoint / left-mult")
    _common_flags(p, oracle_flag=True)
    p.set_defaults(handler=_verify_rep)

    p = vsub.add_parser("bimodule", help="the four bimodule operator axioms")
    _algebra_flag(p)
    p.add_argument("--bimodule", required=True, metavar="SPEC",
                   help="bimodule file, or regular / dual-regular / left-zero")
    _common_flags(p, oracle_flag=True)
    p.set_defaults(handler=_verify_bimodule)

    p = vsub.add_parser("o-operator", help="O-operator equation for a map into the algebra")
    _algebra_flag(p)
    p.add_argument("--rep", required=True, metavar="SPEC")
    p.add_argument("--map", required=True, metavar="SPEC",
                   help="map file, or 'identity'")
    _common_flags(p, oracle_flag=True)
    p.set_defaults(handler=_verify_o_operator)

    p = vsub.add_parser("pm-o-operator", help="O-operator equation over a bimodule")
    _algebra_flag(p)
    p.add_argument("--bimodule", required=True, metavar="SPEC")
    p.add_argument("--map", required=True, metavar="SPEC")
    _common_flags(p, oracle_flag=True)
    p.set_defaults(handler=_verify_pm_o_operator)

    p = vsub.add_parser("cybe", help="classical Yang-Baxter equation for a 2-tensor")
    p.add_argument("tensor", metavar="TENSOR", help="tensor file (algebra may be embedded)")
    _algebra_flag(p, required=False)
    _common_flags(p, oracle_flag=True)
    p.set_defaults(handler=_verify_cybe)

    p = vsub.add_parser("pm-cybe", help="pre-Malcev Yang-Baxter equation for a 2-tensor")
    p.add_argument("tensor", metavar="TENSOR")
    _algebra_flag(p, required=False)
    _common_flags(p, oracle_flag=True)
    p.set_defaults(handler=_verify_pm_cybe)

    p = vsub.add_parser("form", help="bilinear form properties")
    p.add_argument("form", metavar="FORM", help="form file (algebra may be embedded)")
    _algebra_flag(p, required=False)
    p.add_argument("--symplectic", action="store_true",
                   help="skew + cyclic 2-cocycle + nondegenerate (default)")
    p.add_argument("--invariant", action="store_true", help="B(xy, z) = B(x, yz)")
    p.add_argument("--skew", action="store_true", help="skew-symmetry only")
    _common_flags(p, oracle_flag=True)
    p.set_defaults(handler=_verify_form)

    p = vsub.add_parser("rep-iso", help="does a map intertwine two representations")
    _algebra_flag(p)
    p.add_argument("--rep", required=True, metavar="SPEC", help="source representation")
    p.add_argument("--rep2", required=True, metavar="SPEC", help="target representation")
    p.add_argument("--map", required=True, metavar="SPEC", help="candidate isomorphism")
    _common_flags(p, oracle_flag=False)
    p.set_defaults(handler=_verify_rep_iso)

    p = vsub.add_parser(
        "prop48",
        help="invariance of B(x,y) = <T^-1 x, y> against the O-operator "
        "equation for T, in three variants",
    )
    _algebra_flag(p)
    p.add_argument("--map", required=True, metavar="SPEC", help="invertible square map")
    p.add_argument("--variant", type=int, required=True, choices=(1, 2, 3))
    _common_flags(p, oracle_flag=False)
    p.set_defaults(handler=_verify_prop48)

    build = sub.add_parser("build", help="construct derived objects")
    bsub = build.add_subparsers(dest="object", required=True)
    build_specs = {
        "adjoint": ("algebra",),
        "coadjoint": ("algebra",),
        "dual-rep": ("algebra", "rep"),
        "dual-bimodule": ("algebra", "bimodule"),
        "semidirect": ("algebra", "rep"),
        "pre-semidirect": ("algebra", "bimodule"),
        "rT": ("algebra", "rep", "map"),
        "sT": ("algebra", "bimodule", "map"),
        "canonical-r": ("algebra",),
        "canonical-s": ("algebra",),
        "pre-malcev-from-T": ("algebra", "rep", "map"),
        "star-product": ("algebra", "rep", "map"),
        "pre-malcev-from-symplectic": ("algebra", "form"),
        "Br": ("tensor",),
        "phiB": ("form",),
        "commutator": ("algebra",),
    }
    build_help = {
        "adjoint": "adjoint representation x -> (y -> xy)",
        "coadjoint": "dual of the adjoint representation",
        "dual-rep": "dual representation on the dual module",
        "dual-bimodule": "dual bimodule (left - right transposed, right transposed)",
        "semidirect": "algebra + module with product (x,u)(y,v) = (xy, x.v - y.u)",
        "pre-semidirect": "algebra + module with left/right bimodule actions",
        "rT": "skew solution tensor attached to an O-operator",
        "sT": "symmetric solution tensor attached to a bimodule O-operator",
        "canonical-r": "skew solution on the coadjoint semidirect double",
        "canonical-s": "symmetric solution on the dual semidirect double",
        "pre-malcev-from-T": "compatible product through an invertible O-operator",
        "star-product": "module product v * w = (Tv).w through the action",
        "pre-malcev-from-symplectic": "compatible product x.y defined by a symplectic form",
        "Br": "bilinear form induced by an invertible 2-tensor",
        "phiB": "map into the dual space defined by a form",
        "commutator": "anticommutative table xy - yx of a general table",
    }
    for name, needs in build_specs.items():
        p = bsub.add_parser(name, help=build_help[name])
        if "algebra" in needs:
            _algebra_flag(p)
        else:
            _algebra_flag(p, required=False)
        if "rep" in needs:
            p.add_argument("--rep", required=True, metavar="SPEC")
        if "bimodule" in needs:
            p.add_argument("--bimodule", required=True, metavar="SPEC")
        if "map" in needs:
            p.add_argument("--map", required=True, metavar="SPEC")
        if "form" in needs:
            p.add_argument("--form", required=True, metavar="SPEC")
        if "tensor" in needs:
            p.add_argument("--tensor", required=True, metavar="SPEC")
        p.add_argument("-o", "--output", required=True, metavar="PATH")
        _common_flags(p, oracle_flag=False)
        p.set_defaults(handler=_build, object=name)

    search = sub.add_parser("search", help="enumerate candidates")
    ssub = search.add_subparsers(dest="what", required=True)
    p = ssub.add_parser("o-operators", help="grid search maps on a sparsity mask")
    _algebra_flag(p)
    p.add_argument("--rep", required=True, metavar="SPEC")
    p.add_argument("--values", default="-1,0,1", metavar="LIST",
                   help="comma separated entry values; write --values=-1,0,1 "
                   "so the leading dash is not read as a flag (default -1,0,1)")
    p.add_argument("--mask", required=True, metavar="PATH",
                   help="JSON file with a 'positions' list of [row, col] pairs")
    p.add_argument("--budget", type=int, default=1_000_000, metavar="N",
                   help="abort if the grid exceeds this many candidates")
    p.add_argument("-o", "--output", metavar="DIR",
                   help="directory to write the found maps into")
    _common_flags(p, oracle_flag=True)
    p.set_defaults(handler=_search_o_operators)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = argv
    session = Session(args)
    try:
        args.handler(args, session)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConstructionError as exc:
        # a constructor refused its input on mathematical grounds; that is
        # a failed check, not a malformed invocation
        session.add("construction", False, f"construction failed: {exc}")
        return session.finish()
    except storage.StorageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScalarError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return session.finish()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

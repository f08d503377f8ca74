"""JSON file formats for algebras, representations, maps, tensors, forms.

All scalar values are stored as strings in the grammar of
``scalars.parse_scalar`` and re-rendered canonically on store, so a
store/load round trip is byte-stable.  Sparse collections are sorted by
index before writing.  Anticommutative algebra files list only the i<j
half of the table; the loader completes the other half and rejects
files that try to specify it.

Built tensors and forms may embed their underlying algebra under an
"algebra" key so that a single file is enough to re-verify them.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .algebra import ANTICOMMUTATIVE, GENERAL, StructureTable
from .reps import Bimodule, LinearMap, LinearRep
from .scalars import ZERO, ScalarParseError, is_zero, parse_scalar, render_scalar
from .ybe import BilinearForm, TwoTensor


class StorageError(ValueError):
    """Schema violation; the message carries a JSON-path-like locator."""


def _fail(path: str, message: str) -> None:
    raise StorageError(f"{path}: {message}")


def _need(doc: dict, key: str, kind: type, path: str) -> Any:
    if key not in doc:
        _fail(path, f"missing required key {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        _fail(f"{path}.{key}", f"expected {kind.__name__}, got {type(value).__name__}")
    return value


def _read_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise StorageError(f"{path}: cannot read file ({exc})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StorageError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(doc, dict):
        _fail(str(path), "top level must be an object")
    return doc


def _render_json(value: Any, indent: int) -> str:
    """Canonical layout: leaf lists stay on one line, containers nest."""
    pad = " " * indent
    inner = " " * (indent + 2)
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [
            f"{inner}{json.dumps(key)}: {_render_json(item, indent + 2)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(value, list):
        if not value:
            return "[]"
        if all(not isinstance(item, (list, dict)) for item in value):
            return json.dumps(value)
        parts = [f"{inner}{_render_json(item, indent + 2)}" for item in value]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    return json.dumps(value)


def _write_json(doc: dict, path: str | Path) -> None:
    Path(path).write_text(_render_json(doc, 0) + "\n", encoding="utf-8")


def _ring_of(doc: dict, path: str) -> tuple[str, ...]:
    raw = doc.get("ring", [])
    if not isinstance(raw, list) or not all(isinstance(v, str) for v in raw):
        _fail(f"{path}.ring", "ring must be a list of variable names")
    return tuple(raw)


def _scalar(text: Any, ring: tuple[str, ...], path: str):
    if not isinstance(text, str):
        _fail(path, f"scalar must be a string, got {type(text).__name__}")
    try:
        return parse_scalar(text, ring)
    except ScalarParseError as exc:
        _fail(path, f"unparseable scalar {text!r} ({exc})")


def _index(value: Any, bound: int, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        _fail(path, f"index must be an integer, got {value!r}")
    if not 0 <= value < bound:
        _fail(path, f"index {value} out of range [0, {bound})")
    return value


# ---------------------------------------------------------------------------
# algebras


def algebra_to_doc(table: StructureTable) -> dict:
    rows = []
    for (i, j), products in sorted(table.constants.items()):
        if table.kind == ANTICOMMUTATIVE and i >= j:
            continue
        for k, coeff in sorted(products.items()):
            rows.append([i, j, k, render_scalar(coeff)])
    return {
        "dim": table.dim,
        "basis": list(table.basis_names),
        "ring": list(table.ring),
        "kind": table.kind,
        "table": rows,
    }


def algebra_from_doc(doc: dict, path: str = "algebra") -> StructureTable:
    dim = _need(doc, "dim", int, path)
    basis = _need(doc, "basis", list, path)
    if not all(isinstance(b, str) for b in basis):
        _fail(f"{path}.basis", "basis names must be strings")
    ring = _ring_of(doc, path)
    kind = _need(doc, "kind", str, path)
    if kind not in (ANTICOMMUTATIVE, GENERAL):
        _fail(f"{path}.kind", f"unknown kind {kind!r}")
    rows = _need(doc, "table", list, path)
    constants: dict[tuple[int, int], dict[int, Any]] = {}
    for pos, row in enumerate(rows):
        where = f"{path}.table[{pos}]"
        if not isinstance(row, list) or len(row) != 4:
            _fail(where, "each entry must be [i, j, k, coeff]")
        i = _index(row[0], dim, f"{where}[0]")
        j = _index(row[1], dim, f"{where}[1]")
        k = _index(row[2], dim, f"{where}[2]")
        coeff = _scalar(row[3], ring, f"{where}[3]")
        if kind == ANTICOMMUTATIVE and i >= j:
            _fail(where, f"anticommutative table lists pair ({i}, {j}); only i < j is allowed")
        bucket = constants.setdefault((i, j), {})
        if k in bucket:
            _fail(where, f"duplicate entry for product ({i}, {j}) component {k}")
        bucket[k] = coeff
    try:
        if kind == ANTICOMMUTATIVE:
            return StructureTable.anticommutative(dim, basis, ring, constants)
        return StructureTable(dim, basis, ring, constants, kind=GENERAL)
    except ValueError as exc:
        raise StorageError(f"{path}: {exc}") from exc


def load_algebra(path: str | Path) -> StructureTable:
    return algebra_from_doc(_read_json(path), str(path))


def store_algebra(table: StructureTable, path: str | Path) -> None:
    _write_json(algebra_to_doc(table), path)


# ---------------------------------------------------------------------------
# representations and bimodules


def _matrix_to_doc(matrix) -> list[list[str]]:
    return [[render_scalar(entry) for entry in row] for row in matrix]


def _matrix_from_doc(raw: Any, size: int, ring: tuple[str, ...], path: str) -> list[list[Any]]:
    if not isinstance(raw, list) or len(raw) != size:
        _fail(path, f"expected {size} rows")
    out = []
    for i, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != size:
            _fail(f"{path}[{i}]", f"expected {size} entries")
        out.append([_scalar(cell, ring, f"{path}[{i}][{j}]") for j, cell in enumerate(row)])
    return out


CONVENTION = "columns-are-images"


def rep_to_doc(rep: LinearRep) -> dict:
    return {
        "space_dim": rep.space_dim,
        "ring": list(rep.ring),
        "convention": CONVENTION,
        "matrices": [_matrix_to_doc(m) for m in rep.action],
    }


def load_rep(path: str | Path, algebra: StructureTable) -> LinearRep:
    doc = _read_json(path)
    where = str(path)
    m = _need(doc, "space_dim", int, where)
    if doc.get("convention", CONVENTION) != CONVENTION:
        _fail(f"{where}.convention", f"must be {CONVENTION!r}")
    ring = _ring_of(doc, where)
    raw = _need(doc, "matrices", list, where)
    if len(raw) != algebra.dim:
        _fail(f"{where}.matrices", f"expected {algebra.dim} matrices, found {len(raw)}")
    mats = [
        _matrix_from_doc(one, m, ring, f"{where}.matrices[{i}]")
        for i, one in enumerate(raw)
    ]
    try:
        return LinearRep(algebra, m, mats, ring)
    except ValueError as exc:
        raise StorageError(f"{where}: {exc}") from exc


def store_rep(rep: LinearRep, path: str | Path) -> None:
    _write_json(rep_to_doc(rep), path)


def bimodule_to_doc(bim: Bimodule) -> dict:
    return {
        "space_dim": bim.space_dim,
        "ring": list(bim.ring),
        "convention": CONVENTION,
        "left": [_matrix_to_doc(m) for m in bim.left],
        "right": [_matrix_to_doc(m) for m in bim.right],
    }


def load_bimodule(path: str | Path, algebra: StructureTable) -> Bimodule:
    doc = _read_json(path)
    where = str(path)
    m = _need(doc, "space_dim", int, where)
    if doc.get("convention", CONVENTION) != CONVENTION:
        _fail(f"{where}.convention", f"must be {CONVENTION!r}")
    ring = _ring_of(doc, where)
    sides = {}
    for side in ("left", "right"):
        raw = _need(doc, side, list, where)
        if len(raw) != algebra.dim:
            _fail(f"{where}.{side}", f"expected {algebra.dim} matrices, found {len(raw)}")
        sides[side] = [
            _matrix_from_doc(one, m, ring, f"{where}.{side}[{i}]")
            for i, one in enumerate(raw)
        ]
    try:
        return Bimodule(algebra, m, sides["left"], sides["right"], ring)
    except ValueError as exc:
        raise StorageError(f"{where}: {exc}") from exc


def store_bimodule(bim: Bimodule, path: str | Path) -> None:
    _write_json(bimodule_to_doc(bim), path)


# ---------------------------------------------------------------------------
# sparse rectangular things: maps, tensors, forms


def _entries_to_doc(matrix) -> list[list[Any]]:
    out = []
    for i, row in enumerate(matrix):
        for j, value in enumerate(row):
            if not is_zero(value):
                out.append([i, j, render_scalar(value)])
    return out


def _entries_from_doc(doc: dict, rows: int, cols: int, ring: tuple[str, ...], path: str):
    raw = _need(doc, "entries", list, path)
    dense = [[ZERO] * cols for _ in range(rows)]
    seen = set()
    for pos, entry in enumerate(raw):
        where = f"{path}.entries[{pos}]"
        if not isinstance(entry, list) or len(entry) != 3:
            _fail(where, "each entry must be [row, col, coeff]")
        i = _index(entry[0], rows, f"{where}[0]")
        j = _index(entry[1], cols, f"{where}[1]")
        if (i, j) in seen:
            _fail(where, f"duplicate entry at ({i}, {j})")
        seen.add((i, j))
        dense[i][j] = _scalar(entry[2], ring, f"{where}[2]")
    return dense


def map_to_doc(T: LinearMap) -> dict:
    return {
        "rows": T.target_dim,
        "cols": T.source_dim,
        "ring": list(T.ring),
        "entries": _entries_to_doc(T.matrix),
    }


def load_map(path: str | Path) -> LinearMap:
    doc = _read_json(path)
    where = str(path)
    rows = _need(doc, "rows", int, where)
    cols = _need(doc, "cols", int, where)
    ring = _ring_of(doc, where)
    dense = _entries_from_doc(doc, rows, cols, ring, where)
    try:
        return LinearMap(cols, rows, dense, ring)
    except ValueError as exc:
        raise StorageError(f"{where}: {exc}") from exc


def store_map(T: LinearMap, path: str | Path) -> None:
    _write_json(map_to_doc(T), path)


def tensor_to_doc(r: TwoTensor, embed_algebra: bool = True) -> dict:
    doc = {
        "rows": r.algebra.dim,
        "cols": r.algebra.dim,
        "ring": list(r.ring),
        "entries": _entries_to_doc(r.coeffs),
    }
    if embed_algebra:
        doc["algebra"] = algebra_to_doc(r.algebra)
    return doc


def load_tensor(path: str | Path, algebra: StructureTable | None = None) -> TwoTensor:
    doc = _read_json(path)
    where = str(path)
    if algebra is None:
        if "algebra" not in doc:
            _fail(where, "no algebra embedded and none supplied")
        algebra = algebra_from_doc(
            _need(doc, "algebra", dict, where), f"{where}.algebra"
        )
    rows = _need(doc, "rows", int, where)
    cols = _need(doc, "cols", int, where)
    if rows != algebra.dim or cols != algebra.dim:
        _fail(where, f"tensor is {rows}x{cols} but the algebra has dimension {algebra.dim}")
    ring = _ring_of(doc, where)
    dense = _entries_from_doc(doc, rows, cols, ring, where)
    try:
        return TwoTensor(algebra.with_ring(ring), dense, ring)
    except ValueError as exc:
        raise StorageError(f"{where}: {exc}") from exc


def store_tensor(r: TwoTensor, path: str | Path, embed_algebra: bool = True) -> None:
    _write_json(tensor_to_doc(r, embed_algebra), path)


def form_to_doc(form: BilinearForm, embed_algebra: bool = True) -> dict:
    doc = {
        "rows": form.algebra.dim,
        "cols": form.algebra.dim,
        "ring": list(form.ring),
        "entries": _entries_to_doc(form.matrix),
    }
    if embed_algebra:
        doc["algebra"] = algebra_to_doc(form.algebra)
    return doc


def load_form(path: str | Path, algebra: StructureTable | None = None) -> BilinearForm:
    doc = _read_json(path)
    where = str(path)
    if algebra is None:
        if "algebra" not in doc:
            _fail(where, "no algebra embedded and none supplied")
        algebra = algebra_from_doc(
            _need(doc, "algebra", dict, where), f"{where}.algebra"
        )
    rows = _need(doc, "rows", int, where)
    cols = _need(doc, "cols", int, where)
    if rows != algebra.dim or cols != algebra.dim:
        _fail(where, f"form is {rows}x{cols} but the algebra has dimension {algebra.dim}")
    ring = _ring_of(doc, where)
    dense = _entries_from_doc(doc, rows, cols, ring, where)
    try:
        return BilinearForm(algebra.with_ring(ring), dense, ring)
    except ValueError as exc:
        raise StorageError(f"{where}: {exc}") from exc


def store_form(form: BilinearForm, path: str | Path, embed_algebra: bool = True) -> None:
    _write_json(form_to_doc(form, embed_algebra), path)

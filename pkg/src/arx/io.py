"""Loading categories and modules from names or files, workspaces, and report rendering."""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .artheory.catalog import resolve
from .backends import QuiverSpec, parse_builtin, quiver_category
from .errors import InputError, InvalidCategory
from .exactla import Field, Matrix
from .lincat import LinCat
from .modrep.module import Module, ModuleMap


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_json(path: Path) -> Any:
    try:
        return json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_category(spec: str, field: Field | None = None) -> LinCat:
    """A builtin name, a category JSON file, or a quiver text file."""
    path = Path(spec)
    if not path.is_file():
        return parse_builtin(spec, field)
    if path.suffix == ".json":
        data = _load_json(path)
        if not isinstance(data, dict):
            raise InvalidCategory(f"{path}: expected a JSON object")
        cat = LinCat.from_json(data)
        if field is not None and cat.field != field:
            raise InputError(f"{path} is over {cat.field!r}, not {field!r}")
        return cat
    q = QuiverSpec.parse(_read(path))
    return quiver_category(q, field or Field.rational(), name=path.stem)


class Workspace:
    """A JSON file holding a category reference and named modules."""

    def __init__(self, path: str | None, cat: LinCat):
        self.path = Path(path) if path else None
        self.cat = cat
        self.modules: dict[str, dict] = {}
        if self.path and self.path.exists():
            data = _load_json(self.path)
            self.modules = dict(data.get("modules", {}))

    def save(self, cat_spec: str):
        if self.path is None:
            raise InputError("no workspace file given (use --workspace)")
        data = {"cat": cat_spec, "modules": dict(sorted(self.modules.items()))}
        self.path.write_text(json.dumps(data, indent=1) + "\n")

    def define(self, name: str, M: Module):
        self.modules[name] = M.to_json()

    def module(self, ref: str) -> Module:
        """Registry names first, then module JSON files, then the named constructors."""
        if ref in self.modules:
            return Module.from_json(self.cat, self.modules[ref]).with_name(ref)
        path = Path(ref)
        if path.is_file():
            data = _load_json(path)
            if not isinstance(data, dict):
                raise InputError(f"{path}: expected a module JSON object")
            return Module.from_json(self.cat, data).with_name(path.stem)
        return resolve(self.cat, ref)


# -- report payloads ----------------------------------------------------------------

def matrix_json(m: Matrix) -> list:
    fmt = m.field.format_scalar
    return [[fmt(x) for x in row] for row in m.rows]


def module_summary(M: Module, full: bool = False) -> dict:
    out = {"name": M.name, "dims": list(M.dims), "total_dim": M.total_dim}
    if full:
        out["module"] = M.to_json()
    return out


def map_json(phi: ModuleMap) -> dict:
    return {str(a): matrix_json(phi.comp[a]) for a in phi.src.cat.objects
            if phi.src.dims[a] and phi.dst.dims[a]}


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, dict):
        return json.dumps(v, separators=(",", ":"))
    return "-" if v is None else str(v)


def _table(rows: list[dict]) -> list[str]:
    cols: list[str] = []
    for r in rows:
        for k in r:
            if k not in cols:
                cols.append(k)
    cells = [[_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[i]) for row in cells]) for i, c in enumerate(cols)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    out = [fmt.format(*cols), fmt.format(*("-" * w for w in widths))]
    out.extend(fmt.format(*row) for row in cells)
    return out


def render_pretty(payload: Any, indent: str = "") -> str:
    """Human-readable rendering: scalars as ``key: value``, lists of records as tables."""
    lines: list[str] = []
    if isinstance(payload, dict):
        for k, v in payload.items():
            if isinstance(v, list) and v and all(isinstance(x, dict) for x in v):
                lines.append(f"{indent}{k}:")
                lines.extend(indent + "  " + ln for ln in _table(v))
            elif isinstance(v, dict) and v:
                lines.append(f"{indent}{k}:")
                lines.append(render_pretty(v, indent + "  ").rstrip("\n"))
            else:
                lines.append(f"{indent}{k}: {_cell(v)}")
    elif isinstance(payload, list) and payload and all(isinstance(x, dict) for x in payload):
        lines.extend(indent + ln for ln in _table(payload))
    else:
        lines.append(indent + _cell(payload))
    return "\n".join(lines) + "\n"

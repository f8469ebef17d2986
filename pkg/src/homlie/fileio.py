"""JSON parsing and canonical serialization for every file format.

Rationals are strings ``"p"`` or ``"p/q"``. Canonical output sorts keys, uses a
two-space indent, keeps non-ASCII labels verbatim and ends with a newline.
Parse failures raise :class:`ParseError` with the file and a JSON path.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any, Optional, Sequence

from .cocycles import Cocycle, ExtensionBundle, central_extend
from .construct import HomLieStructure
from .errors import DimensionMismatch, HomLieError, ParseError, PreconditionError, ValidationError
from .forms import GramForm
from .lie import StructureConstants
from .linalg import Mat, format_rational, parse_rational


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_json(obj: Any, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))


class _Ctx:
    """Location tracker for error messages."""

    def __init__(self, source: str, path: str = "$"):
        self.source = source
        self.path = path

    def at(self, key) -> "_Ctx":
        step = f"[{key}]" if isinstance(key, int) else f".{key}"
        return _Ctx(self.source, self.path + step)

    def fail(self, msg: str) -> ParseError:
        return ParseError(f"{self.source}: {self.path}: {msg}")


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: cannot read: {exc.strerror}") from None
    try:
        return json.loads(text), _Ctx(path)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _need(d, key: str, ctx: _Ctx, kind=None):
    if not isinstance(d, dict):
        raise ctx.fail("expected an object")
    if key not in d:
        raise ctx.fail(f"missing key {key!r}")
    v = d[key]
    if kind is not None and (not isinstance(v, kind) or (kind is int and isinstance(v, bool))):
        raise ctx.at(key).fail(f"expected {getattr(kind, '__name__', kind)}")
    return v


def _rational(s, ctx: _Ctx) -> Fraction:
    try:
        return parse_rational(s)
    except ValueError as exc:
        raise ctx.fail(str(exc)) from None


def _dim(d, key: str, ctx: _Ctx) -> int:
    n = _need(d, key, ctx, int)
    if n < 0:
        raise ctx.at(key).fail("dimension must be non-negative")
    return n


def _labels(d, key: str, n: int, ctx: _Ctx, default: Sequence[str]) -> tuple:
    if not isinstance(d, dict) or key not in d:
        return tuple(default)
    labels = d[key]
    c = ctx.at(key)
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise c.fail("expected a list of strings")
    if len(labels) != n:
        raise c.fail(f"{len(labels)} labels for dimension {n}")
    if len(set(labels)) != n:
        raise c.fail("duplicate basis label")
    return tuple(labels)


def _label_index(labels: Sequence[str], name, ctx: _Ctx) -> int:
    if not isinstance(name, str):
        raise ctx.fail("basis label must be a string")
    try:
        return labels.index(name)
    except ValueError:
        raise ctx.fail(f"unknown basis label {name!r}") from None


def _result_vec(res, labels: Sequence[str], ctx: _Ctx) -> dict:
    if not isinstance(res, dict):
        raise ctx.fail("expected an object mapping labels to rationals")
    return {_label_index(labels, k, ctx.at(k)): _rational(v, ctx.at(k)) for k, v in res.items()}


def _pair_entries(entries, left_labels, right_labels, out_labels, ctx: _Ctx, skew: bool) -> dict:
    if not isinstance(entries, list):
        raise ctx.fail("expected a list")
    table = {}
    for p, item in enumerate(entries):
        c = ctx.at(p)
        i = _label_index(left_labels, _need(item, "left", c), c.at("left"))
        j = _label_index(right_labels, _need(item, "right", c), c.at("right"))
        if (i, j) in table:
            raise c.fail(f"pair ({left_labels[i]}, {right_labels[j]}) listed twice")
        if skew and (j, i) in table:
            raise c.fail(f"both orientations of ({left_labels[i]}, {right_labels[j]}) listed in a skew table")
        if skew and i == j:
            vals = _result_vec(_need(item, "result", c), out_labels, c.at("result"))
            if any(vals.values()):
                raise c.fail(f"skew table has nonzero square of {left_labels[i]}")
        table[(i, j)] = _result_vec(_need(item, "result", c), out_labels, c.at("result"))
    return table


def _result_dict(cell: Sequence[Fraction], labels: Sequence[str]) -> dict:
    return {labels[k]: format_rational(c) for k, c in enumerate(cell) if c}


def _pairs_to_list(tensor, labels_l, labels_out, skew: bool) -> list:
    out = []
    n = len(tensor)
    for i in range(n):
        for j in range(i + 1 if skew else 0, n):
            res = _result_dict(tensor[i][j], labels_out)
            if res:
                out.append({"left": labels_l[i], "right": labels_l[j], "result": res})
    return out


# ---------------------------------------------------------------- matrices

def matrix_from_json(rows, ctx: _Ctx, shape: Optional[tuple] = None) -> Mat:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ctx.fail("expected a list of rows")
    ncols = len(rows[0]) if rows else (shape[1] if shape else 0)
    for p, r in enumerate(rows):
        if len(r) != ncols:
            raise ctx.at(p).fail(f"row has {len(r)} entries, expected {ncols}")
    if shape is not None and (len(rows), ncols) != tuple(shape):
        raise ctx.fail(f"matrix is {len(rows)}x{ncols}, expected {shape[0]}x{shape[1]}")
    return Mat([[_rational(v, ctx.at(p).at(q)) for q, v in enumerate(r)] for p, r in enumerate(rows)], ncols)


def matrix_to_json(m: Mat) -> list:
    return m.to_strings()


# ---------------------------------------------------------------- algebra

def algebra_from_json(d, ctx: _Ctx) -> StructureConstants:
    n = _dim(d, "dim", ctx)
    labels = _labels(d, "basis", n, ctx, tuple(f"e{i + 1}" for i in range(n)))
    skew = d.get("skew", True)
    if not isinstance(skew, bool):
        raise ctx.at("skew").fail("expected a boolean")
    table = _pair_entries(d.get("products", []), labels, labels, labels, ctx.at("products"), skew)
    try:
        return StructureConstants.from_products(n, table, labels, skew)
    except (PreconditionError, DimensionMismatch) as exc:
        raise ctx.fail(str(exc)) from None


def algebra_to_json(alg: StructureConstants) -> dict:
    return {
        "dim": alg.dim,
        "basis": list(alg.basis),
        "skew": alg.skew,
        "products": _pairs_to_list(alg.tensor, alg.basis, alg.basis, alg.skew),
    }


# ---------------------------------------------------------------- form

def form_from_json(d, ctx: _Ctx) -> GramForm:
    n = _dim(d, "dim", ctx)
    gram = matrix_from_json(_need(d, "gram", ctx), ctx.at("gram"), (n, n))
    sym = d.get("symmetric", True)
    if not isinstance(sym, bool):
        raise ctx.at("symmetric").fail("expected a boolean")
    if sym and gram != gram.T:
        bad = next((i, j) for i in range(n) for j in range(n) if gram[i, j] != gram[j, i])
        raise ctx.at("gram").fail(f"declared symmetric but entries {bad} and {bad[::-1]} differ")
    return GramForm(n, gram, sym)


def form_to_json(form: GramForm) -> dict:
    return {"dim": form.dim, "symmetric": form.symmetric, "gram": matrix_to_json(form.gram)}


# ---------------------------------------------------------------- cocycle

def cocycle_from_json(d, ctx: _Ctx, g0: Optional[StructureConstants] = None) -> Cocycle:
    """Labels come from ``basis_g0`` / ``basis_v`` keys when present, else from ``g0``."""
    n = _dim(d, "dim_g0", ctx)
    r = _dim(d, "dim_v", ctx)
    if g0 is not None and g0.dim != n:
        raise ctx.at("dim_g0").fail(f"cocycle on a {n}-dim space but g0 has dimension {g0.dim}")
    default = g0.basis if g0 is not None else tuple(f"e{i + 1}" for i in range(n))
    lg = _labels(d, "basis_g0", n, ctx, default)
    lv = _labels(d, "basis_v", r, ctx, tuple(f"v{i + 1}" for i in range(r)))
    table = _pair_entries(d.get("values", []), lg, lg, lv, ctx.at("values"), True)
    try:
        return Cocycle.from_values(n, r, table, lg, lv)
    except (PreconditionError, DimensionMismatch) as exc:
        raise ctx.fail(str(exc)) from None


def cocycle_to_json(theta: Cocycle) -> dict:
    return {
        "dim_g0": theta.dim_g0,
        "dim_v": theta.dim_v,
        "basis_g0": list(theta.basis_g0),
        "basis_v": list(theta.basis_v),
        "values": _pairs_to_list(theta.tensor, theta.basis_g0, theta.basis_v, True),
    }


# ---------------------------------------------------------------- Hom-Lie

def homlie_from_json(d, ctx: _Ctx, candidate: bool = False) -> HomLieStructure:
    n = _dim(d, "dim", ctx)
    mu_d = _need(d, "mu", ctx, dict)
    mu_ctx = ctx.at("mu")
    if mu_d.get("skew", True) is not True:
        raise mu_ctx.at("skew").fail("Hom-Lie product must be skew")
    mu = algebra_from_json(dict(mu_d, dim=mu_d.get("dim", n)), mu_ctx)
    if mu.dim != n:
        raise mu_ctx.at("dim").fail(f"product dimension {mu.dim} differs from {n}")
    alpha = matrix_from_json(_need(d, "alpha", ctx), ctx.at("alpha"), (n, n))
    try:
        return HomLieStructure(mu, alpha, candidate=candidate)
    except (PreconditionError, DimensionMismatch) as exc:
        raise ctx.fail(str(exc)) from None


def homlie_to_json(hl: HomLieStructure) -> dict:
    return {"dim": hl.dim, "mu": algebra_to_json(hl.mu), "alpha": matrix_to_json(hl.alpha)}


# ---------------------------------------------------------------- bundle

def _component(d: dict, key: str, ctx: _Ctx, base_dir: str):
    """A bundle component is a path relative to the bundle file or an inline object."""
    v = _need(d, key, ctx)
    if isinstance(v, str):
        return load_json(os.path.join(base_dir, v))
    if isinstance(v, dict):
        return v, ctx.at(key)
    raise ctx.at(key).fail("expected a path or an object")


def bundle_from_json(d, ctx: _Ctx, base_dir: str = ".") -> ExtensionBundle:
    """Load the four components, derive ``g`` and cross-check a supplied ``g``.

    Mathematical defects of the assembled bundle raise :class:`ValidationError`.
    """
    g0 = algebra_from_json(*_component(d, "g0", ctx, base_dir))
    B0 = form_from_json(*_component(d, "B0", ctx, base_dir))
    theta = cocycle_from_json(*_component(d, "theta", ctx, base_dir), g0=g0)
    B = form_from_json(*_component(d, "B", ctx, base_dir))
    if B0.dim != g0.dim:
        raise ctx.at("B0").fail(f"form dimension {B0.dim} differs from g0 dimension {g0.dim}")
    if B.dim != g0.dim + theta.dim_v:
        raise ctx.at("B").fail(f"form dimension {B.dim} differs from {g0.dim + theta.dim_v}")
    g = None
    if "g" in d:
        g = algebra_from_json(*_component(d, "g", ctx, base_dir))
    if g is None:
        try:
            g = central_extend(g0, theta)
        except ValidationError:
            # report the cocycle failure through the ordered bundle checks
            g = StructureConstants.zero(g0.dim + theta.dim_v, g0.basis + theta.basis_v)
    elif g.dim != B.dim:
        raise ctx.at("g").fail(f"algebra dimension {g.dim} differs from {B.dim}")
    return ExtensionBundle(g0, B0, theta, g, B)


def bundle_to_files(bundle: ExtensionBundle, directory: str, include_g: bool = True) -> str:
    """Write component files and ``bundle.json`` into ``directory``; returns its path."""
    os.makedirs(directory, exist_ok=True)
    parts = {"g0": algebra_to_json(bundle.g0), "B0": form_to_json(bundle.B0),
             "theta": cocycle_to_json(bundle.theta), "B": form_to_json(bundle.B)}
    if include_g:
        parts["g"] = algebra_to_json(bundle.g)
    index = {}
    for key, obj in parts.items():
        name = f"{key}.json"
        write_json(obj, os.path.join(directory, name))
        index[key] = name
    path = os.path.join(directory, "bundle.json")
    write_json(index, path)
    return path


def bundle_to_json(bundle: ExtensionBundle) -> dict:
    """Single-file form with inline components."""
    return {"g0": algebra_to_json(bundle.g0), "B0": form_to_json(bundle.B0),
            "theta": cocycle_to_json(bundle.theta), "B": form_to_json(bundle.B),
            "g": algebra_to_json(bundle.g)}


# ---------------------------------------------------------------- derivation lists

def derivations_from_json(d, ctx: _Ctx) -> list:
    n = _dim(d, "dim", ctx)
    mats = _need(d, "derivations", ctx, list)
    return [matrix_from_json(m, ctx.at("derivations").at(p), (n, n)) for p, m in enumerate(mats)]


def derivations_to_json(n: int, mats: Sequence[Mat]) -> dict:
    return {"dim": n, "derivations": [matrix_to_json(m) for m in mats]}


# ---------------------------------------------------------------- path-level API

def parse_algebra(path: str) -> StructureConstants:
    return algebra_from_json(*load_json(path))


def parse_form(path: str) -> GramForm:
    return form_from_json(*load_json(path))


def parse_cocycle(path: str, g0: Optional[StructureConstants] = None) -> Cocycle:
    d, ctx = load_json(path)
    return cocycle_from_json(d, ctx, g0)


def parse_homlie(path: str, candidate: bool = False) -> HomLieStructure:
    d, ctx = load_json(path)
    return homlie_from_json(d, ctx, candidate)


def parse_bundle(path: str) -> ExtensionBundle:
    d, ctx = load_json(path)
    return bundle_from_json(d, ctx, os.path.dirname(os.path.abspath(path)))


def parse_derivations(path: str) -> list:
    return derivations_from_json(*load_json(path))


def serialize_algebra(alg: StructureConstants) -> str:
    return dumps(algebra_to_json(alg))


def serialize_form(form: GramForm) -> str:
    return dumps(form_to_json(form))


def serialize_cocycle(theta: Cocycle) -> str:
    return dumps(cocycle_to_json(theta))


def serialize_homlie(hl: HomLieStructure) -> str:
    return dumps(homlie_to_json(hl))


def serialize_bundle(bundle: ExtensionBundle) -> str:
    return dumps(bundle_to_json(bundle))


def canonicalize(path: str, kind: str) -> str:
    """Parse a file of the given kind and return its canonical text."""
    parsers = {"algebra": (parse_algebra, serialize_algebra), "form": (parse_form, serialize_form),
               "cocycle": (parse_cocycle, serialize_cocycle), "homlie": (parse_homlie, serialize_homlie),
               "bundle": (parse_bundle, serialize_bundle)}
    if kind not in parsers:
        raise HomLieError(f"unknown file kind {kind!r}")
    p, s = parsers[kind]
    return s(p(path))


def fixture_path(name: str = "example", file: str = "bundle.json") -> str:
    """Path of a shipped fixture file, e.g. the 9-dim example bundle."""
    from importlib import resources

    return str(resources.files("homlie").joinpath("data", name, file))

"""Structure files: one JSON document per structure, rationals as strings.

Canonical serialization sorts keys and writes reduced fractions, so a
parse/serialize round trip is byte-exact.  Tensor nesting is one level per
input slot plus the output axis; an axis of dimension zero appears as the
empty list at its level.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .crossed_modules import PreLieCrossedModule
from .graded_spaces import TwoTermComplex
from .lie2_core import Lie2Algebra, Lie2Rep
from .o_operators import OOperator, OOperatorContext
from .prelie_base import Cochain, PreLieAlgebra, PreLieRep
from .prelie2_core import PreLie2Algebra
from .scalar_tensor import (
    MultiMap,
    RationalFormatError,
    Space,
    format_rational,
    parse_rational,
)

KINDS = (
    "prelie",
    "prelie2",
    "lie2",
    "crossed_module",
    "o_operator",
    "rmatrix",
    "rep",
    "cochain",
)


class SchemaError(ValueError):
    """Malformed document: bad JSON, wrong shapes, or bad rationals."""


@dataclass(frozen=True)
class StructureFile:
    kind: str
    dims: dict[str, int]
    tensors: dict[str, Any]  # nested lists of Fraction
    label: str = ""
    provenance: str = ""

    def structure(self):
        return _BUILDERS[self.kind](self)


def _flatten(node) -> list[Fraction]:
    if isinstance(node, list):
        out: list[Fraction] = []
        for item in node:
            out.extend(_flatten(item))
        return out
    return [node]


def _check_shape(node, shape: tuple[int, ...], path: str):
    if not shape:
        raise SchemaError(f"{path}: over-nested tensor")
    if not isinstance(node, list) or len(node) != shape[0]:
        got = len(node) if isinstance(node, list) else type(node).__name__
        raise SchemaError(f"{path}: expected {shape[0]} entries, got {got}")
    if len(shape) == 1:
        for i, leaf in enumerate(node):
            if not isinstance(leaf, Fraction):
                raise SchemaError(f"{path}[{i}]: expected a rational string")
        return
    for i, sub in enumerate(node):
        _check_shape(sub, shape[1:], f"{path}[{i}]")


def _parse_rationals(node, path: str):
    if isinstance(node, list):
        return [_parse_rationals(item, f"{path}[{i}]") for i, item in enumerate(node)]
    if isinstance(node, str):
        try:
            return parse_rational(node)
        except RationalFormatError as exc:
            raise SchemaError(f"{path}: {exc}") from exc
    raise SchemaError(f"{path}: tensor entries must be rational strings")


def _emit_rationals(node):
    if isinstance(node, list):
        return [_emit_rationals(item) for item in node]
    return format_rational(node)


_SCHEMAS: dict[str, dict[str, tuple[str, ...]]] = {
    "prelie": {"mul": ("a", "a", "a")},
    "prelie2": {
        "dm": ("a1", "a0"),
        "mul00": ("a0", "a0", "a0"),
        "mul01": ("a0", "a1", "a1"),
        "mul10": ("a1", "a0", "a1"),
        "l3": ("a0", "a0", "a0", "a1"),
    },
    "lie2": {
        "dk": ("g1", "g0"),
        "l2_00": ("g0", "g0", "g0"),
        "l2_01": ("g0", "g1", "g1"),
        "l3": ("g0", "g0", "g0", "g1"),
    },
    "crossed_module": {
        "mul0": ("a0", "a0", "a0"),
        "mul1": ("a1", "a1", "a1"),
        "dm": ("a1", "a0"),
        "rho": ("a0", "a1", "a1"),
        "mu": ("a0", "a1", "a1"),
    },
    "o_operator": {
        "dk": ("g1", "g0"),
        "l2_00": ("g0", "g0", "g0"),
        "l2_01": ("g0", "g1", "g1"),
        "l3": ("g0", "g0", "g0", "g1"),
        "dm": ("v1", "v0"),
        "rho0_0": ("g0", "v0", "v0"),
        "rho0_1": ("g0", "v1", "v1"),
        "rho1": ("g1", "v0", "v1"),
        "rho2": ("g0", "g0", "v0", "v1"),
        "t0": ("v0", "g0"),
        "t1": ("v1", "g1"),
        "t2": ("v0", "v0", "g1"),
    },
    "rmatrix": {"r": ("n", "n"), "frkr": ("g1", "g1")},
    "rep": {
        "mul": ("a", "a", "a"),
        "rho": ("a", "v", "v"),
        "mu": ("a", "v", "v"),
    },
    "cochain": {},  # shape depends on the arity; handled specially
}

_DIM_KEYS: dict[str, tuple[str, ...]] = {
    "prelie": ("a",),
    "prelie2": ("a0", "a1"),
    "lie2": ("g0", "g1"),
    "crossed_module": ("a0", "a1"),
    "o_operator": ("g0", "g1", "v0", "v1"),
    "rmatrix": ("g0", "g1"),
    "rep": ("a", "v"),
    "cochain": ("a", "v", "arity"),
}


def parse_document(text: str) -> StructureFile:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    kind = doc.get("kind")
    if kind not in KINDS:
        raise SchemaError(f"unknown kind: {kind!r}")
    dims = doc.get("dims")
    if not isinstance(dims, dict):
        raise SchemaError("missing dims object")
    for key in _DIM_KEYS[kind]:
        if key not in dims or not isinstance(dims[key], int) or dims[key] < 0:
            raise SchemaError(f"dims.{key} must be a non-negative integer")
    extra = set(dims) - set(_DIM_KEYS[kind])
    if extra:
        raise SchemaError(f"unexpected dims keys: {sorted(extra)}")
    raw_tensors = doc.get("tensors")
    if not isinstance(raw_tensors, dict):
        raise SchemaError("missing tensors object")
    tensors = {
        name: _parse_rationals(node, f"tensors.{name}")
        for name, node in raw_tensors.items()
    }
    label = doc.get("label", "")
    provenance = doc.get("provenance", "")
    if not isinstance(label, str) or not isinstance(provenance, str):
        raise SchemaError("label and provenance must be strings")
    sf = StructureFile(kind, dict(dims), tensors, label, provenance)
    _validate_shapes(sf)
    return sf


def _shape_of(kind: str, name: str, dims: dict[str, int]) -> tuple[int, ...]:
    if kind == "cochain" and name == "map":
        return (dims["a"],) * dims["arity"] + (dims["v"],)
    if kind == "rmatrix" and name == "r":
        n = dims["g0"] + dims["g1"]
        return (n, n)
    return tuple(dims[k] for k in _SCHEMAS[kind][name])


def _validate_shapes(sf: StructureFile):
    if sf.kind == "cochain":
        expected = {"map"}
    else:
        expected = set(_SCHEMAS[sf.kind])
        if sf.kind == "rmatrix":
            expected = {"r"}  # frkr optional
    names = set(sf.tensors)
    if not expected <= names:
        raise SchemaError(f"missing tensors: {sorted(expected - names)}")
    allowed = expected | ({"frkr"} if sf.kind == "rmatrix" else set())
    if not names <= allowed:
        raise SchemaError(f"unexpected tensors: {sorted(names - allowed)}")
    for name in sorted(names):
        shape = _shape_of(sf.kind, name, sf.dims)
        _check_shape_or_empty(sf.tensors[name], shape, f"tensors.{name}")


def _check_shape_or_empty(node, shape: tuple[int, ...], path: str):
    # an axis of dimension zero truncates the nesting at that level
    for level, d in enumerate(shape):
        if d == 0:
            _check_prefix(node, shape[:level], path)
            return
    _check_shape(node, shape, path)


def _check_prefix(node, prefix: tuple[int, ...], path: str):
    if not prefix:
        if node != []:
            raise SchemaError(f"{path}: expected [] on a zero-dimensional axis")
        return
    if not isinstance(node, list) or len(node) != prefix[0]:
        raise SchemaError(f"{path}: expected {prefix[0]} entries")
    for i, sub in enumerate(node):
        _check_prefix(sub, prefix[1:], f"{path}[{i}]")


def serialize_document(sf: StructureFile) -> str:
    doc = {
        "kind": sf.kind,
        "dims": dict(sorted(sf.dims.items())),
        "label": sf.label,
        "provenance": sf.provenance,
        "tensors": {
            name: _emit_rationals(node) for name, node in sorted(sf.tensors.items())
        },
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def read_file(path) -> StructureFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_document(fh.read())


def write_file(path, sf: StructureFile):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_document(sf))


# -- structure <-> file ---------------------------------------------------------


def _mm(sf: StructureFile, name: str, inputs: tuple[Space, ...], output: Space) -> MultiMap:
    flat = _flatten(sf.tensors[name])
    return MultiMap(inputs, output, tuple(flat))


def _build_prelie(sf: StructureFile) -> PreLieAlgebra:
    a = Space(sf.dims["a"], "a")
    return PreLieAlgebra(a, _mm(sf, "mul", (a, a), a))


def _build_prelie2(sf: StructureFile) -> PreLie2Algebra:
    a0, a1 = Space(sf.dims["a0"], "a0"), Space(sf.dims["a1"], "a1")
    return PreLie2Algebra(
        a0,
        a1,
        _mm(sf, "dm", (a1,), a0),
        _mm(sf, "mul00", (a0, a0), a0),
        _mm(sf, "mul01", (a0, a1), a1),
        _mm(sf, "mul10", (a1, a0), a1),
        _mm(sf, "l3", (a0, a0, a0), a1),
    )


def _build_lie2(sf: StructureFile) -> Lie2Algebra:
    g0, g1 = Space(sf.dims["g0"], "g0"), Space(sf.dims["g1"], "g1")
    return Lie2Algebra(
        g0,
        g1,
        _mm(sf, "dk", (g1,), g0),
        _mm(sf, "l2_00", (g0, g0), g0),
        _mm(sf, "l2_01", (g0, g1), g1),
        _mm(sf, "l3", (g0, g0, g0), g1),
    )


def _build_crossed_module(sf: StructureFile) -> PreLieCrossedModule:
    a0, a1 = Space(sf.dims["a0"], "a0"), Space(sf.dims["a1"], "a1")
    return PreLieCrossedModule(
        PreLieAlgebra(a0, _mm(sf, "mul0", (a0, a0), a0)),
        PreLieAlgebra(a1, _mm(sf, "mul1", (a1, a1), a1)),
        _mm(sf, "dm", (a1,), a0),
        _mm(sf, "rho", (a0, a1), a1),
        _mm(sf, "mu", (a0, a1), a1),
    )


def _build_o_operator(sf: StructureFile) -> OOperator:
    g0, g1 = Space(sf.dims["g0"], "g0"), Space(sf.dims["g1"], "g1")
    v0, v1 = Space(sf.dims["v0"], "v0"), Space(sf.dims["v1"], "v1")
    algebra = Lie2Algebra(
        g0,
        g1,
        _mm(sf, "dk", (g1,), g0),
        _mm(sf, "l2_00", (g0, g0), g0),
        _mm(sf, "l2_01", (g0, g1), g1),
        _mm(sf, "l3", (g0, g0, g0), g1),
    )
    complex_ = TwoTermComplex(v0, v1, _mm(sf, "dm", (v1,), v0))
    rep = Lie2Rep(
        complex_,
        _mm(sf, "rho0_0", (g0, v0), v0),
        _mm(sf, "rho0_1", (g0, v1), v1),
        _mm(sf, "rho1", (g1, v0), v1),
        _mm(sf, "rho2", (g0, g0, v0), v1),
    )
    return OOperator(
        OOperatorContext(algebra, rep),
        _mm(sf, "t0", (v0,), g0),
        _mm(sf, "t1", (v1,), g1),
        _mm(sf, "t2", (v0, v0), g1),
    )


def _build_rep(sf: StructureFile) -> tuple[PreLieAlgebra, PreLieRep]:
    a, v = Space(sf.dims["a"], "a"), Space(sf.dims["v"], "v")
    return (
        PreLieAlgebra(a, _mm(sf, "mul", (a, a), a)),
        PreLieRep(v, _mm(sf, "rho", (a, v), v), _mm(sf, "mu", (a, v), v)),
    )


def _build_cochain(sf: StructureFile) -> Cochain:
    a, v = Space(sf.dims["a"], "a"), Space(sf.dims["v"], "v")
    arity = sf.dims["arity"]
    return Cochain(arity, _mm(sf, "map", (a,) * arity, v))


def _build_rmatrix(sf: StructureFile) -> dict:
    n = sf.dims["g0"] + sf.dims["g1"]
    r = [tuple(row) for row in sf.tensors["r"]] if n else []
    frkr = None
    if "frkr" in sf.tensors:
        frkr = [tuple(row) for row in sf.tensors["frkr"]] if sf.dims["g1"] else []
    return {
        "g0": sf.dims["g0"],
        "g1": sf.dims["g1"],
        "r": tuple(r),
        "frkr": tuple(frkr) if frkr is not None else None,
    }


_BUILDERS = {
    "prelie": _build_prelie,
    "prelie2": _build_prelie2,
    "lie2": _build_lie2,
    "crossed_module": _build_crossed_module,
    "o_operator": _build_o_operator,
    "rep": _build_rep,
    "cochain": _build_cochain,
    "rmatrix": _build_rmatrix,
}


# -- structure -> file ----------------------------------------------------------


def file_from_prelie(a: PreLieAlgebra, label="", provenance="") -> StructureFile:
    return StructureFile(
        "prelie", {"a": a.space.dim}, {"mul": a.mul.as_nested()}, label, provenance
    )


def file_from_prelie2(a: PreLie2Algebra, label="", provenance="") -> StructureFile:
    return StructureFile(
        "prelie2",
        {"a0": a.a0.dim, "a1": a.a1.dim},
        {
            "dm": a.dm.as_nested(),
            "mul00": a.mul00.as_nested(),
            "mul01": a.mul01.as_nested(),
            "mul10": a.mul10.as_nested(),
            "l3": a.l3.as_nested(),
        },
        label,
        provenance,
    )


def file_from_lie2(g: Lie2Algebra, label="", provenance="") -> StructureFile:
    return StructureFile(
        "lie2",
        {"g0": g.g0.dim, "g1": g.g1.dim},
        {
            "dk": g.dk.as_nested(),
            "l2_00": g.l2_00.as_nested(),
            "l2_01": g.l2_01.as_nested(),
            "l3": g.l3.as_nested(),
        },
        label,
        provenance,
    )


def file_from_crossed_module(cm: PreLieCrossedModule, label="", provenance="") -> StructureFile:
    return StructureFile(
        "crossed_module",
        {"a0": cm.a0alg.space.dim, "a1": cm.a1alg.space.dim},
        {
            "mul0": cm.a0alg.mul.as_nested(),
            "mul1": cm.a1alg.mul.as_nested(),
            "dm": cm.dm.as_nested(),
            "rho": cm.rho.as_nested(),
            "mu": cm.mu.as_nested(),
        },
        label,
        provenance,
    )


def file_from_o_operator(t: OOperator, label="", provenance="") -> StructureFile:
    g = t.context.algebra
    v = t.context.complex
    rep = t.context.rep
    return StructureFile(
        "o_operator",
        {"g0": g.g0.dim, "g1": g.g1.dim, "v0": v.v0.dim, "v1": v.v1.dim},
        {
            "dk": g.dk.as_nested(),
            "l2_00": g.l2_00.as_nested(),
            "l2_01": g.l2_01.as_nested(),
            "l3": g.l3.as_nested(),
            "dm": v.dm.as_nested(),
            "rho0_0": rep.rho0_0.as_nested(),
            "rho0_1": rep.rho0_1.as_nested(),
            "rho1": rep.rho1.as_nested(),
            "rho2": rep.rho2.as_nested(),
            "t0": t.t0.as_nested(),
            "t1": t.t1.as_nested(),
            "t2": t.t2.as_nested(),
        },
        label,
        provenance,
    )


def file_from_rep(a: PreLieAlgebra, rep: PreLieRep, label="", provenance="") -> StructureFile:
    return StructureFile(
        "rep",
        {"a": a.space.dim, "v": rep.space.dim},
        {
            "mul": a.mul.as_nested(),
            "rho": rep.rho.as_nested(),
            "mu": rep.mu.as_nested(),
        },
        label,
        provenance,
    )


def file_from_cochain(w: Cochain, label="", provenance="") -> StructureFile:
    a = w.map.inputs[0] if w.n else None
    return StructureFile(
        "cochain",
        {
            "a": a.dim if a else 0,
            "v": w.map.output.dim,
            "arity": w.n,
        },
        {"map": w.map.as_nested()},
        label,
        provenance,
    )


def file_from_rmatrix(
    g0: int, g1: int, r, frkr=None, label="", provenance=""
) -> StructureFile:
    tensors = {"r": [list(row) for row in r]}
    if frkr is not None:
        tensors["frkr"] = [list(row) for row in frkr]
    return StructureFile("rmatrix", {"g0": g0, "g1": g1}, tensors, label, provenance)

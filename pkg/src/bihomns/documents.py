"""The JSON presentation/report document format (``format_version`` 1).

A presentation document looks like::

    {
      "format_version": 1,
      "field": "GF(3)",            # or "Q"
      "dim": 2,
      "dim_M": 2,                  # only for module-carrying documents
      "kind": "BiHomNS",           # optional kind claim
      "ops": {"prec": [[["0", "1"], ...], ...], ...},
      "maps": {"alpha": [["1", "0"], ["0", "1"]], ...},
      "provenance": {...}          # optional construction/search record
    }

Tensors are dense nested arrays ``c[i][j][k]`` with
``e_i o e_j = sum_k c[i][j][k] e_k``; matrices are row-major ``n_out x n_in``
with column ``i`` the image of ``e_i``.  Scalars are strings: ``"n"`` or
``"n/d"`` over Q, the residue ``"k"`` over GF(p) (``"k mod p"`` is accepted
on input).  Names ``l``, ``r``, ``bullet``, ``H`` (ops) and ``alpha_M``,
``beta_M``, ``pi`` (maps) are reserved for the module part; their shapes
use ``dim_M``.  Serialization is canonical: sorted keys, two-space indent,
canonical scalar strings, trailing newline.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

import numpy as np

from . import __version__
from .errors import BiHomError, ParseError, ValidationError
from .multilinear import BilinearOp, LinearMap
from .operators import GenNijInstance, TwistedRBInstance
from .report import CheckReport
from .scalars import Field
from .structures import KINDS, MODULE_KINDS, AlgebraPresentation, BimodulePresentation

FORMAT_VERSION = 1
MODULE_OPS = ("l", "r", "bullet", "H")
MODULE_MAPS = ("alpha_M", "beta_M", "pi")

Parsed = AlgebraPresentation | BimodulePresentation | TwistedRBInstance | tuple


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def digest(obj) -> str:
    """SHA-256 of the canonical document of ``obj`` without provenance."""
    doc = obj if isinstance(obj, dict) else to_document(obj)
    doc = {k: v for k, v in doc.items() if k not in ("provenance", "verdicts", "discovery")}
    return hashlib.sha256(canonical_json(doc).encode()).hexdigest()


def encode_array(field: Field, arr: np.ndarray):
    if np.ndim(arr) == 0:
        return field.format_value(arr[()] if isinstance(arr, np.ndarray) else arr)
    return [encode_array(field, arr[i]) for i in range(len(arr))]


def _base_doc(field: Field, dim: int, kind: str | None) -> dict:
    doc: dict[str, Any] = {"format_version": FORMAT_VERSION, "field": field.name, "dim": dim, "ops": {}, "maps": {}}
    if kind is not None:
        doc["kind"] = kind
    return doc


def _add_algebra(doc: dict, p: AlgebraPresentation) -> None:
    for name, op in p.ops.items():
        doc["ops"][name] = encode_array(p.field, op.tensor)
    for name, f in p.maps.items():
        doc["maps"][name] = encode_array(p.field, f.matrix)


def _bimodule_doc(b: BimodulePresentation, kind: str) -> dict:
    F = b.field
    doc = _base_doc(F, b.dim_A, kind)
    doc["dim_M"] = b.dim_M
    _add_algebra(doc, b.algebra)
    doc["ops"]["l"] = encode_array(F, b.l.tensor)
    doc["ops"]["r"] = encode_array(F, b.r.tensor)
    if b.bullet is not None:
        doc["ops"]["bullet"] = encode_array(F, b.bullet.tensor)
    doc["maps"]["alpha_M"] = encode_array(F, b.alpha_M.matrix)
    doc["maps"]["beta_M"] = encode_array(F, b.beta_M.matrix)
    return doc


def to_document(obj, provenance: dict | None = None) -> dict:
    """Serialize a presentation, instance, or ``(bimodule, H)`` cocycle pair."""
    if isinstance(obj, AlgebraPresentation):
        doc = _base_doc(obj.field, obj.dim, obj.kind)
        _add_algebra(doc, obj)
    elif isinstance(obj, GenNijInstance):
        return to_document(obj.to_presentation(), provenance)
    elif isinstance(obj, BimodulePresentation):
        doc = _bimodule_doc(obj, "BimoduleAlgebra" if obj.bullet is not None else "Bimodule")
    elif isinstance(obj, TwistedRBInstance):
        doc = _bimodule_doc(obj.bimodule, "TwistedRB")
        doc["ops"]["H"] = encode_array(obj.field, obj.H.tensor)
        doc["maps"]["pi"] = encode_array(obj.field, obj.pi.matrix)
    elif isinstance(obj, tuple) and len(obj) == 2 and isinstance(obj[0], BimodulePresentation):
        b, H = obj
        doc = _bimodule_doc(b, "HochschildCocycle")
        doc["ops"]["H"] = encode_array(b.field, H.tensor)
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    if provenance is not None:
        doc["provenance"] = provenance
    return doc


def serialize(obj, provenance: dict | None = None) -> str:
    return canonical_json(to_document(obj, provenance))


# -- parsing ------------------------------------------------------------------


def decode_array(field: Field, data, shape: tuple[int, ...], path: str) -> np.ndarray:
    out = field.zeros(shape)

    def walk(node, idx, depth):
        here = path + "".join(f"[{i}]" for i in idx)
        if depth == len(shape):
            if not isinstance(node, str):
                raise ParseError(f"scalar must be a string, got {node!r}", path=here)
            try:
                out[tuple(idx)] = field.parse_value(node)
            except BiHomError as exc:
                raise ParseError(str(exc), path=here) from None
            return
        if not isinstance(node, list) or len(node) != shape[depth]:
            got = len(node) if isinstance(node, list) else type(node).__name__
            raise ValidationError(f"{here}: expected an array of length {shape[depth]}, got {got}")
        for i, sub in enumerate(node):
            walk(sub, idx + [i], depth + 1)

    walk(data, [], 0)
    return out


def _positive_int(doc: dict, key: str) -> int:
    v = doc.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise ValidationError(f"{key} must be a positive integer, got {v!r}")
    return v


def from_document(doc: dict) -> Parsed:
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ValidationError(f"unsupported format_version {doc.get('format_version')!r}")
    if not isinstance(doc.get("field"), str):
        raise ValidationError("field must be a string such as 'Q' or 'GF(3)'")
    field = Field.parse(doc["field"])
    nA = _positive_int(doc, "dim")
    ops, maps = doc.get("ops", {}), doc.get("maps", {})
    if not isinstance(ops, dict) or not isinstance(maps, dict):
        raise ValidationError("ops and maps must be objects")
    kind = doc.get("kind")
    is_module = "dim_M" in doc or any(k in ops for k in MODULE_OPS) or any(k in maps for k in MODULE_MAPS)
    nM = _positive_int(doc, "dim_M") if is_module else None

    def op_shape(name):
        return {"l": (nA, nM, nM), "r": (nM, nA, nM), "bullet": (nM, nM, nM), "H": (nA, nA, nM)}.get(name, (nA, nA, nA))

    def map_shape(name):
        return {"alpha_M": (nM, nM), "beta_M": (nM, nM), "pi": (nA, nM)}.get(name, (nA, nA))

    t_ops = {k: BilinearOp(field, decode_array(field, v, op_shape(k), f"ops.{k}")) for k, v in sorted(ops.items())}
    t_maps = {k: LinearMap(field, decode_array(field, v, map_shape(k), f"maps.{k}")) for k, v in sorted(maps.items())}

    if not is_module:
        if kind is not None and kind not in KINDS:
            raise ValidationError(f"unknown kind {kind!r}")
        return AlgebraPresentation(nA, field, t_ops, t_maps, kind)

    if kind is not None and kind not in MODULE_KINDS:
        raise ValidationError(f"unknown module kind {kind!r}")
    alg = AlgebraPresentation(
        nA, field,
        {k: v for k, v in t_ops.items() if k not in MODULE_OPS},
        {k: v for k, v in t_maps.items() if k not in MODULE_MAPS},
    )
    for name in ("l", "r"):
        if name not in t_ops:
            raise ValidationError(f"module document lacks op {name!r}")
    for name in ("alpha_M", "beta_M"):
        if name not in t_maps:
            raise ValidationError(f"module document lacks map {name!r}")
    b = BimodulePresentation(alg, nM, t_ops["l"], t_ops["r"], t_maps["alpha_M"], t_maps["beta_M"], t_ops.get("bullet"))
    if "pi" in t_maps:
        if "H" not in t_ops:
            raise ValidationError("twisted Rota-Baxter document lacks op 'H'")
        return TwistedRBInstance(b, t_ops["H"], t_maps["pi"])
    if "H" in t_ops:
        return b, t_ops["H"]
    return b


def load_json(text: str | bytes) -> dict:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from None


def parse_presentation(text: str | bytes) -> Parsed:
    """Parse and validate a presentation document.

    Returns an :class:`AlgebraPresentation`, a :class:`BimodulePresentation`,
    a :class:`TwistedRBInstance` (documents with ``pi``) or a
    ``(BimodulePresentation, H)`` pair (documents with ``H`` but no ``pi``).
    """
    return from_document(load_json(text))


def report_document(reports: dict[str, CheckReport | dict], input_digest: str) -> dict:
    verdicts = {name: r.to_dict() if isinstance(r, CheckReport) else r for name, r in reports.items()}
    return {
        "format_version": FORMAT_VERSION,
        "tool_version": __version__,
        "input_digest": input_digest,
        "verdicts": verdicts,
        "all_passed": all(v.get("verdict") == "pass" for v in verdicts.values()),
    }

"""Instance files: a JSON schema for g-frame problems.

An instance document carries one g-frame plus optional payloads the
operations need: a weight sequence, a control matrix, a companion
frame, an explicit dual, a bijection operator, a coisometry. Complex
numbers are [re, im] pairs and matrices are row-major lists of rows, so
documents round-trip bit-exactly through parse/serialize.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from . import sampling
from .core import GFrame, classify, frame_bounds, FrameClass
from .errors import InfeasibleKind, SchemaError
from .multipliers import WeightSequence

SCHEMA_VERSION = 1

GENERATE_KINDS = (
    "random_gframe",
    "g_riesz",
    "g_onb",
    "parseval",
    "controlled_commuting",
    "weighted",
)

_TOP_LEVEL_KEYS = {
    "schema_version",
    "h_dim",
    "label",
    "blocks",
    "weights",
    "weights_alt",
    "control",
    "companion",
    "dual",
    "bijection",
    "coisometry",
}


@dataclass(frozen=True)
class InstanceFile:
    """A parsed instance document."""

    gframe: GFrame
    weights: WeightSequence | None = None
    weights_alt: WeightSequence | None = None
    control: np.ndarray | None = None
    companion: GFrame | None = None
    dual: GFrame | None = None
    bijection: np.ndarray | None = None
    coisometry: np.ndarray | None = None
    schema_version: int = SCHEMA_VERSION

    @property
    def label(self) -> str | None:
        return self.gframe.label


# -- parsing -------------------------------------------------------------------


def _expect(condition: bool, path: str, message: str) -> None:
    if not condition:
        raise SchemaError(path, message)


def _parse_number(node, path) -> float:
    _expect(isinstance(node, (int, float)) and not isinstance(node, bool),
            path, f"expected a number, got {type(node).__name__}")
    value = float(node)
    _expect(np.isfinite(value), path, "number must be finite")
    return value


def _parse_complex(node, path) -> complex:
    _expect(isinstance(node, list) and len(node) == 2,
            path, "complex numbers are [re, im] pairs")
    return complex(_parse_number(node[0], f"{path}[0]"),
                   _parse_number(node[1], f"{path}[1]"))


def _parse_matrix(node, path, rows: int | None = None,
                  cols: int | None = None) -> np.ndarray:
    _expect(isinstance(node, list) and len(node) >= 1, path, "expected a list of rows")
    if rows is not None:
        _expect(len(node) == rows, path, f"expected {rows} rows, got {len(node)}")
    parsed_rows = []
    width = None
    for r, row in enumerate(node):
        row_path = f"{path}[{r}]"
        _expect(isinstance(row, list) and len(row) >= 1, row_path,
                "expected a list of [re, im] pairs")
        if width is None:
            width = len(row)
            if cols is not None:
                _expect(width == cols, row_path,
                        f"expected {cols} columns, got {width}")
        else:
            _expect(len(row) == width, row_path,
                    f"ragged matrix: row has {len(row)} entries, expected {width}")
        parsed_rows.append(
            [_parse_complex(z, f"{row_path}[{c}]") for c, z in enumerate(row)]
        )
    return np.array(parsed_rows, dtype=np.complex128)


def _parse_blocks(node, path, h_dim: int) -> list[np.ndarray]:
    _expect(isinstance(node, list) and len(node) >= 1, path,
            "expected a non-empty list of blocks")
    blocks = []
    for i, blk in enumerate(node):
        blk_path = f"{path}[{i}]"
        _expect(isinstance(blk, dict), blk_path, "each block is an object")
        extra = set(blk) - {"dim", "matrix"}
        _expect(not extra, blk_path, f"unknown keys {sorted(extra)}")
        _expect("dim" in blk, f"{blk_path}.dim", "missing")
        _expect("matrix" in blk, f"{blk_path}.matrix", "missing")
        dim = blk["dim"]
        _expect(isinstance(dim, int) and not isinstance(dim, bool) and dim >= 1,
                f"{blk_path}.dim", f"expected a positive integer, got {dim!r}")
        blocks.append(_parse_matrix(blk["matrix"], f"{blk_path}.matrix",
                                    rows=dim, cols=h_dim))
    return blocks


def _parse_weights(node, path, count: int) -> WeightSequence:
    _expect(isinstance(node, list), path, "expected a list of [re, im] pairs")
    _expect(len(node) == count, path,
            f"expected one weight per block ({count}), got {len(node)}")
    values = [_parse_complex(z, f"{path}[{i}]") for i, z in enumerate(node)]
    return WeightSequence(np.array(values, dtype=np.complex128))


def _parse_subframe(node, path, h_dim: int, label: str | None = None) -> GFrame:
    _expect(isinstance(node, dict), path, "expected an object with a 'blocks' key")
    extra = set(node) - {"blocks"}
    _expect(not extra, path, f"unknown keys {sorted(extra)}")
    _expect("blocks" in node, f"{path}.blocks", "missing")
    blocks = _parse_blocks(node["blocks"], f"{path}.blocks", h_dim)
    return GFrame(h_dim, tuple(blocks), label=label)


def parse_instance(text: str) -> InstanceFile:
    """Parse and validate an instance document from JSON text."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("$", f"invalid JSON: {exc}") from exc
    _expect(isinstance(doc, dict), "$", "top level must be an object")
    extra = set(doc) - _TOP_LEVEL_KEYS
    _expect(not extra, "$", f"unknown keys {sorted(extra)}")
    _expect("schema_version" in doc, "$.schema_version", "missing")
    _expect(doc["schema_version"] == SCHEMA_VERSION, "$.schema_version",
            f"unsupported version {doc['schema_version']!r}")
    _expect("h_dim" in doc, "$.h_dim", "missing")
    h_dim = doc["h_dim"]
    _expect(isinstance(h_dim, int) and not isinstance(h_dim, bool) and h_dim >= 1,
            "$.h_dim", f"expected a positive integer, got {h_dim!r}")
    label = doc.get("label")
    if label is not None:
        _expect(isinstance(label, str), "$.label", "expected a string")
    _expect("blocks" in doc, "$.blocks", "missing")
    blocks = _parse_blocks(doc["blocks"], "$.blocks", h_dim)
    gframe = GFrame(h_dim, tuple(blocks), label=label)

    weights = None
    if "weights" in doc:
        weights = _parse_weights(doc["weights"], "$.weights", len(blocks))
    weights_alt = None
    if "weights_alt" in doc:
        weights_alt = _parse_weights(doc["weights_alt"], "$.weights_alt", len(blocks))
    control = None
    if "control" in doc:
        control = _parse_matrix(doc["control"], "$.control", rows=h_dim, cols=h_dim)
    bijection = None
    if "bijection" in doc:
        bijection = _parse_matrix(doc["bijection"], "$.bijection",
                                  rows=h_dim, cols=h_dim)
    coisometry = None
    if "coisometry" in doc:
        coisometry = _parse_matrix(doc["coisometry"], "$.coisometry", cols=h_dim)
    companion = None
    if "companion" in doc:
        companion = _parse_subframe(doc["companion"], "$.companion", h_dim)
    dual = None
    if "dual" in doc:
        dual = _parse_subframe(doc["dual"], "$.dual", h_dim)

    return InstanceFile(
        gframe=gframe,
        weights=weights,
        weights_alt=weights_alt,
        control=control,
        companion=companion,
        dual=dual,
        bijection=bijection,
        coisometry=coisometry,
    )


def load_instance(path) -> InstanceFile:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_instance(handle.read())


# -- serialization -------------------------------------------------------------


def complex_pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_document(matrix) -> list:
    return [[complex_pair(z) for z in row] for row in np.asarray(matrix)]


def _frame_document(frame: GFrame) -> list:
    return [
        {"dim": int(b.shape[0]), "matrix": matrix_document(b)}
        for b in frame.blocks
    ]


def instance_document(inst: InstanceFile) -> dict:
    doc: dict = {
        "schema_version": inst.schema_version,
        "h_dim": inst.gframe.h_dim,
        "blocks": _frame_document(inst.gframe),
    }
    if inst.gframe.label is not None:
        doc["label"] = inst.gframe.label
    if inst.weights is not None:
        doc["weights"] = [complex_pair(z) for z in inst.weights.values]
    if inst.weights_alt is not None:
        doc["weights_alt"] = [complex_pair(z) for z in inst.weights_alt.values]
    if inst.control is not None:
        doc["control"] = matrix_document(inst.control)
    if inst.companion is not None:
        doc["companion"] = {"blocks": _frame_document(inst.companion)}
    if inst.dual is not None:
        doc["dual"] = {"blocks": _frame_document(inst.dual)}
    if inst.bijection is not None:
        doc["bijection"] = matrix_document(inst.bijection)
    if inst.coisometry is not None:
        doc["coisometry"] = matrix_document(inst.coisometry)
    return doc


def serialize_instance(inst: InstanceFile, compact: bool = False) -> str:
    doc = instance_document(inst)
    if compact:
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def dump_instance(inst: InstanceFile, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(serialize_instance(inst))


def instance_digest(inst: InstanceFile) -> str:
    """sha256 of the canonical compact serialization."""
    return hashlib.sha256(serialize_instance(inst, compact=True).encode()).hexdigest()


# -- generation ----------------------------------------------------------------


def generate(kind: str, dim: int, partition, seed: int) -> InstanceFile:
    """Build a certified instance of the requested kind, deterministically.

    The same (kind, dim, partition, seed) always produces the same
    document. Kinds whose dimension constraints cannot be met raise
    InfeasibleKind.
    """
    if kind not in GENERATE_KINDS:
        raise InfeasibleKind(
            f"unknown kind {kind!r}; expected one of {', '.join(GENERATE_KINDS)}"
        )
    sizes = tuple(int(p) for p in partition)
    if not sizes or any(p < 1 for p in sizes):
        raise InfeasibleKind(f"invalid partition {list(partition)!r}")
    if not isinstance(dim, int) or dim < 1:
        raise InfeasibleKind(f"dimension must be a positive integer, got {dim!r}")
    rng = np.random.default_rng(seed)
    label = f"{kind} d={dim} partition={list(sizes)} seed={seed}"

    weights = None
    control = None
    if kind == "g_onb":
        frame = sampling.random_g_onb(rng, dim, sizes, label=label)
        if not classify(frame).is_g_onb:
            raise InfeasibleKind("generated family failed g-ONB certification")
    elif kind == "g_riesz":
        frame = sampling.random_g_riesz(rng, dim, sizes, label=label)
        if not classify(frame).is_g_riesz:
            raise InfeasibleKind("generated family failed g-Riesz certification")
    elif kind == "parseval":
        frame = sampling.random_parseval(rng, dim, sizes, label=label)
        if frame_bounds(frame).classification is not FrameClass.PARSEVAL:
            raise InfeasibleKind("generated family failed Parseval certification")
    else:
        frame = sampling.random_gframe(rng, dim, sizes, label=label)
        if not classify(frame).is_g_frame:
            raise InfeasibleKind("generated family failed g-frame certification")
        if kind == "controlled_commuting":
            control = sampling.random_control_commuting(rng, frame).matrix
        elif kind == "weighted":
            weights = WeightSequence(
                sampling.random_positive_weights(rng, len(sizes))
            )

    return InstanceFile(gframe=frame, weights=weights, control=control)

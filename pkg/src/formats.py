"""JSON documents for algebras, elements, maps and reports.

Floats are written with Python's shortest round-trip repr, so a document
read back reproduces every double exactly.
"""
from pathlib import Path
from typing import Any, Dict, Union
import json

import numpy as np

from src.algebra.core import AlgebraSignature, Element
from src.decomposition import Decomposition
from src.errors import DocumentError, HomCheckError
from src.fuzzing.fuzzer import FuzzReport
from src.homomorphisms.maps import RealLinearMap
from src.homomorphisms.structured import (
    BlockEmbedding, Composition, DirectSumOfBranches, EntrywiseConjugation, IdentityOn,
    StructuredHom, UnitaryConjugation,
)
from src.homomorphisms.verification import VerificationReport

Document = Dict[str, Any]
MapLike = Union[RealLinearMap, StructuredHom]


def read_document(path: Union[str, Path]) -> Document:
    """Load a JSON document; I/O and syntax problems become DocumentError."""
    try:
        with open(path, 'r') as f:
            data = json.load(f)
    except OSError as e:
        raise DocumentError(f"Cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise DocumentError(f"{path} is not valid JSON: {e}") from e
    if not isinstance(data, dict):
        raise DocumentError(f"{path} must hold a JSON object")
    return data


def write_document(document: Document, path: Union[str, Path]) -> None:
    with open(path, 'w') as f:
        f.write(dumps(document))
        f.write("\n")


def dumps(document: Document) -> str:
    return json.dumps(document, indent=2, allow_nan=False)


def _require(doc: Any, key: str) -> Any:
    if not isinstance(doc, dict) or key not in doc:
        raise DocumentError(f"Missing field {key!r}")
    return doc[key]


def _number(value: Any) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise DocumentError(f"Expected a number, got {value!r}")
    return float(value)


# Algebras and elements

def algebra_to_document(sig: AlgebraSignature) -> Document:
    return {"blocks": list(sig.block_dims)}


def parse_algebra(doc: Any) -> AlgebraSignature:
    blocks = _require(doc, "blocks")
    if not isinstance(blocks, list) or not all(isinstance(n, int) and not isinstance(n, bool) for n in blocks):
        raise DocumentError(f"Algebra blocks must be a list of integers, got {blocks!r}")
    try:
        return AlgebraSignature(tuple(blocks))
    except HomCheckError as e:
        raise DocumentError(str(e)) from e


def element_to_document(a: Element) -> Document:
    return {
        "algebra": algebra_to_document(a.signature),
        "blocks": [
            [[[float(z.real), float(z.imag)] for z in row] for row in block]
            for block in a.blocks
        ],
    }


def parse_element(doc: Any) -> Element:
    sig = parse_algebra(_require(doc, "algebra"))
    raw = _require(doc, "blocks")
    if not isinstance(raw, list) or len(raw) != sig.num_blocks:
        raise DocumentError(f"Element needs {sig.num_blocks} blocks for {sig}")
    blocks = []
    for n, block in zip(sig.block_dims, raw):
        if not isinstance(block, list) or len(block) != n or any(
            not isinstance(row, list) or len(row) != n for row in block
        ):
            raise DocumentError(f"Block must be a {n}x{n} array of [re, im] pairs")
        values = np.empty((n, n), dtype=np.complex128)
        for i, row in enumerate(block):
            for j, entry in enumerate(row):
                if not isinstance(entry, list) or len(entry) != 2:
                    raise DocumentError(f"Entry ({i}, {j}) must be a [re, im] pair, got {entry!r}")
                values[i, j] = complex(_number(entry[0]), _number(entry[1]))
        blocks.append(values)
    try:
        return Element(sig, blocks)
    except HomCheckError as e:
        raise DocumentError(str(e)) from e


# Maps

def map_to_document(m: MapLike) -> Document:
    if isinstance(m, StructuredHom):
        return {"kind": "structured", "tree": _tree_to_document(m)}
    return {
        "kind": "matrix",
        "domain": algebra_to_document(m.domain),
        "codomain": algebra_to_document(m.codomain),
        "rows": [[float(x) for x in row] for row in m.matrix],
    }


def _tree_to_document(h: StructuredHom) -> Document:
    if isinstance(h, IdentityOn):
        return {"node": "identity", "algebra": algebra_to_document(h.sig)}
    if isinstance(h, EntrywiseConjugation):
        return {"node": "conjugation", "algebra": algebra_to_document(h.sig)}
    if isinstance(h, BlockEmbedding):
        return {
            "node": "embedding",
            "source": algebra_to_document(h.source),
            "multiplicities": [list(row) for row in h.multiplicities],
        }
    if isinstance(h, UnitaryConjugation):
        return {"node": "unitary", "unitary": element_to_document(h.unitary)}
    if isinstance(h, DirectSumOfBranches):
        return {"node": "direct_sum", "branches": [_tree_to_document(b) for b in h.branches]}
    if isinstance(h, Composition):
        return {
            "node": "composition",
            "first": _tree_to_document(h.first),
            "second": _tree_to_document(h.second),
        }
    raise DocumentError(f"No document form for {type(h).__name__}")


def parse_tree(doc: Any) -> StructuredHom:
    node = _require(doc, "node")
    try:
        if node == "identity":
            return IdentityOn(parse_algebra(_require(doc, "algebra")))
        if node == "conjugation":
            return EntrywiseConjugation(parse_algebra(_require(doc, "algebra")))
        if node == "embedding":
            table = _require(doc, "multiplicities")
            if not isinstance(table, list) or not all(isinstance(row, list) for row in table):
                raise DocumentError("Multiplicities must be a list of rows")
            return BlockEmbedding(
                parse_algebra(_require(doc, "source")),
                tuple(tuple(row) for row in table),
            )
        if node == "unitary":
            return UnitaryConjugation(parse_element(_require(doc, "unitary")))
        if node == "direct_sum":
            branches = _require(doc, "branches")
            if not isinstance(branches, list):
                raise DocumentError("Branches must be a list")
            return DirectSumOfBranches(tuple(parse_tree(b) for b in branches))
        if node == "composition":
            return Composition(parse_tree(_require(doc, "first")), parse_tree(_require(doc, "second")))
    except DocumentError:
        raise
    except (HomCheckError, TypeError, ValueError) as e:
        raise DocumentError(f"Invalid {node} node: {e}") from e
    raise DocumentError(f"Unknown node {node!r}")


def parse_map(doc: Any) -> MapLike:
    """A RealLinearMap for matrix documents, a StructuredHom for trees."""
    kind = _require(doc, "kind")
    if kind == "structured":
        return parse_tree(_require(doc, "tree"))
    if kind != "matrix":
        raise DocumentError(f"Unknown map kind {kind!r}")
    domain = parse_algebra(_require(doc, "domain"))
    codomain = parse_algebra(_require(doc, "codomain"))
    rows = _require(doc, "rows")
    if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
        raise DocumentError("Map rows must be a list of lists")
    try:
        matrix = np.array([[_number(x) for x in row] for row in rows], dtype=np.float64)
        return RealLinearMap(domain, codomain, matrix)
    except (HomCheckError, ValueError) as e:
        raise DocumentError(str(e)) from e


def compiled(m: MapLike) -> RealLinearMap:
    return m.compile() if isinstance(m, StructuredHom) else m


# Reports

def verification_report_to_document(report: VerificationReport) -> Document:
    return report.to_dict()


def parse_verification_report(doc: Any) -> VerificationReport:
    try:
        return VerificationReport.from_dict(doc)
    except TypeError as e:
        raise DocumentError(f"Invalid verification report: {e}") from e


def fuzz_report_to_document(report: FuzzReport) -> Document:
    return report.to_dict()


def parse_fuzz_report(doc: Any) -> FuzzReport:
    try:
        return FuzzReport.from_dict(doc)
    except (TypeError, AttributeError) as e:
        raise DocumentError(f"Invalid fuzz report: {e}") from e


def decomposition_to_document(decomposition: Decomposition) -> Document:
    residuals: Dict[str, float] = dict(decomposition.residuals())
    residuals['reconstruction'] = decomposition.residual_reconstruction
    return {
        "classification": decomposition.classification.value,
        "center_dimension": decomposition.center_dimension,
        "restricted": decomposition.restricted,
        "T": element_to_document(decomposition.T),
        "P": element_to_document(decomposition.P),
        "Q": element_to_document(decomposition.Q),
        "residuals": residuals,
    }


def parse_decomposition_summary(doc: Any) -> Dict[str, Any]:
    """Elements and residuals of a printed decomposition, without the parts."""
    elements = {name: parse_element(_require(doc, name)) for name in ("T", "P", "Q")}
    residuals = _require(doc, "residuals")
    if not isinstance(residuals, dict):
        raise DocumentError("Residuals must be an object")
    summary: Dict[str, Any] = dict(elements)
    summary["classification"] = _require(doc, "classification")
    summary["center_dimension"] = int(_number(_require(doc, "center_dimension")))
    summary["residuals"] = {k: _number(v) for k, v in residuals.items()}
    return summary


def parse_report(doc: Any) -> Any:
    """Recognize any printed report by its fields."""
    if not isinstance(doc, dict):
        raise DocumentError("A report must be a JSON object")
    if "residual_multiplicative" in doc:
        return parse_verification_report(doc)
    if "counterexamples" in doc:
        return parse_fuzz_report(doc)
    if "classification" in doc:
        return parse_decomposition_summary(doc)
    raise DocumentError("Unrecognized report")

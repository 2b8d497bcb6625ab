"""Decision-input documents: schema validation and the three decisions.

A decision document (versioned ``decision.v1``) carries named
generators, integer matrices as row-major arrays, mod-2 vectors,
per-stratum monodromy tables and kernel word lists.  Validation is
structural with field-path diagnostics; the JSON Schema shipped under
``schemas/decision.v1.json`` documents the same contract.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ConfigError
from .homology import (HomologyPresentation, IntHom, double_cover_exists,
                       hausdorff_smooth_decision, smooth_decision_witness)
from .signedperm import MonodromyRep, SignedPermutation, hausdorff_nc_decision, \
    nc_decision_witness

SCHEMA_VERSION = "decision.v1"

__all__ = ["SCHEMA_VERSION", "load_document", "validate_document",
           "decide_smooth", "decide_double_cover", "decide_normal_crossing"]


def _fail(path: str, message: str):
    raise ConfigError(f"{path}: {message}")


def _expect_int_matrix(value, path, rows=None, cols=None):
    if not isinstance(value, list) or any(not isinstance(r, list) for r in value):
        _fail(path, "expected a list of integer rows")
    for i, row in enumerate(value):
        for j, x in enumerate(row):
            if not isinstance(x, int) or isinstance(x, bool):
                _fail(f"{path}[{i}][{j}]", "expected integer")
    if value and len({len(r) for r in value}) != 1:
        _fail(path, "ragged matrix")
    if rows is not None and len(value) != rows:
        _fail(path, f"expected {rows} rows, got {len(value)}")
    if cols is not None and value and len(value[0]) != cols:
        _fail(path, f"expected {cols} columns, got {len(value[0])}")
    return value


def _expect_bits(value, path, length=None):
    if not isinstance(value, list) or any(x not in (0, 1) for x in value):
        _fail(path, "expected a list of 0/1 entries")
    if length is not None and len(value) != length:
        _fail(path, f"expected length {length}, got {len(value)}")
    return value


def _expect_names(value, path):
    if not isinstance(value, list) or any(not isinstance(x, str) or not x for x in value):
        _fail(path, "expected a list of nonempty generator names")
    if len(set(value)) != len(value):
        _fail(path, "duplicate generator names")
    return value


def _parse_presentation(obj, path) -> HomologyPresentation:
    if not isinstance(obj, dict):
        _fail(path, "expected an object with generators/relations")
    names = _expect_names(obj.get("generators"), f"{path}.generators")
    relations = obj.get("relations", [])
    _expect_int_matrix(relations, f"{path}.relations", cols=len(names) if relations else None)
    return HomologyPresentation(ngens=len(names), relations=tuple(map(tuple, relations)),
                                names=tuple(names))


def validate_document(doc: dict, path: str = "$") -> dict:
    """Structural validation with field-path diagnostics (ConfigError)."""
    if not isinstance(doc, dict):
        _fail(path, "expected a JSON object")
    if doc.get("schema") != SCHEMA_VERSION:
        _fail(f"{path}.schema", f"expected {SCHEMA_VERSION!r}")
    known = {"schema", "name", "smooth", "double_cover", "normal_crossing"}
    for key in doc:
        if key not in known:
            _fail(f"{path}.{key}", "unknown field")

    if "smooth" in doc:
        sm = doc["smooth"]
        spath = f"{path}.smooth"
        dom = _parse_presentation(sm.get("domain"), f"{spath}.domain")
        cod = _parse_presentation(sm.get("codomain"), f"{spath}.codomain")
        _expect_int_matrix(sm.get("i_star"), f"{spath}.i_star",
                           rows=cod.ngens, cols=dom.ngens)
        _expect_bits(sm.get("eta"), f"{spath}.eta", length=dom.ngens)

    if "double_cover" in doc:
        dc = doc["double_cover"]
        dpath = f"{path}.double_cover"
        mat = dc.get("i_pullback")
        _expect_int_matrix(mat, f"{dpath}.i_pullback")
        for i, row in enumerate(mat):
            _expect_bits(row, f"{dpath}.i_pullback[{i}]")
        _expect_bits(dc.get("eta_class"), f"{dpath}.eta_class",
                     length=len(mat) if mat else None)

    if "normal_crossing" in doc:
        nc = doc["normal_crossing"]
        npath = f"{path}.normal_crossing"
        strata = nc.get("strata")
        if not isinstance(strata, list):
            _fail(f"{npath}.strata", "expected a list of strata")
        for i, stratum in enumerate(strata):
            _parse_stratum(stratum, f"{npath}.strata[{i}]")
    return doc


def _parse_stratum(obj, path):
    if not isinstance(obj, dict):
        _fail(path, "expected a stratum object")
    k = obj.get("k")
    if not isinstance(k, int) or k < 1:
        _fail(f"{path}.k", "expected a positive integer")
    names = _expect_names(obj.get("generators"), f"{path}.generators")
    mono = obj.get("monodromy")
    if not isinstance(mono, dict) or set(mono) != set(names):
        _fail(f"{path}.monodromy", "expected one image per generator")
    images = {}
    for gen, image in mono.items():
        gpath = f"{path}.monodromy.{gen}"
        if not isinstance(image, dict):
            _fail(gpath, "expected an object with perm/flips")
        perm = image.get("perm", list(range(1, k + 1)))
        flips = _expect_bits(image.get("flips", [0] * k), f"{gpath}.flips", length=k)
        if (not isinstance(perm, list) or sorted(perm) != list(range(1, k + 1))):
            _fail(f"{gpath}.perm", f"expected a permutation of 1..{k} (1-based)")
        images[gen] = SignedPermutation(tuple(x - 1 for x in perm), tuple(flips))
    words = obj.get("kernel_words", [])
    if not isinstance(words, list):
        _fail(f"{path}.kernel_words", "expected a list of words")
    for i, word in enumerate(words):
        if not isinstance(word, list) or any(not isinstance(tk, str) for tk in word):
            _fail(f"{path}.kernel_words[{i}]", "expected a list of generator tokens")
    return MonodromyRep(images=images,
                        kernel_words=tuple(tuple(w) for w in words))


def load_document(source) -> dict:
    """Load and validate a decision document from a path or dict."""
    if isinstance(source, (str, Path)):
        try:
            with open(source, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except FileNotFoundError:
            raise ConfigError(f"decision input not found: {source}") from None
        except json.JSONDecodeError as err:
            raise ConfigError(f"{source}: invalid JSON at line {err.lineno}, "
                              f"column {err.colno}") from None
    else:
        doc = source
    return validate_document(doc)


def _smooth_hom(doc) -> tuple:
    sm = doc.get("smooth")
    if sm is None:
        raise ConfigError("$.smooth: section required for the smooth decision")
    dom = _parse_presentation(sm["domain"], "$.smooth.domain")
    cod = _parse_presentation(sm["codomain"], "$.smooth.codomain")
    hom = IntHom(matrix=tuple(map(tuple, sm["i_star"])), domain=dom, codomain=cod)
    return hom, sm["eta"]


def decide_smooth(doc: dict):
    """Hausdorff integrability for a smooth divisor: (answer, witness)."""
    hom, eta = _smooth_hom(doc)
    answer = hausdorff_smooth_decision(hom, eta)
    witness = None if answer else {
        "kernel_generator": smooth_decision_witness(hom, eta),
        "generators": list(hom.domain.names),
    }
    return answer, witness


def decide_double_cover(doc: dict):
    """Existence of a coorientation double cover: (answer, witness)."""
    dc = doc.get("double_cover")
    if dc is None:
        raise ConfigError("$.double_cover: section required for the cover decision")
    answer = double_cover_exists(dc["i_pullback"], dc["eta_class"])
    witness = None if answer else {"eta_class": dc["eta_class"]}
    return answer, witness


def decide_normal_crossing(doc: dict):
    """Hausdorff integrability for a normal-crossing divisor: (answer, witness)."""
    nc = doc.get("normal_crossing")
    if nc is None:
        raise ConfigError("$.normal_crossing: section required")
    reps = [_parse_stratum(stratum, f"$.normal_crossing.strata[{i}]")
            for i, stratum in enumerate(nc["strata"])]
    answer = hausdorff_nc_decision(reps)
    witness = None
    if not answer:
        idx, word, image = nc_decision_witness(reps)
        witness = {"stratum": nc["strata"][idx].get("name", idx),
                   "word": list(word),
                   "image": {"perm": [x + 1 for x in image.perm],
                             "flips": list(image.flips)}}
    return answer, witness

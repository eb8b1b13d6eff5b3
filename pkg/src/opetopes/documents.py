"""Versioned JSON documents: shape listings, opetopic sets, and verdicts.

Documents are plain JSON objects with a ``format_version`` and a ``kind``.
Serialisation is canonical (sorted keys, two-space indent, trailing
newline), so identical payloads produce byte-identical files and every
document round-trips exactly.  FORMAT.md describes the layouts bit by bit.
"""

from __future__ import annotations

import json
from collections import Counter
from pathlib import Path
from typing import List, Union

from .errors import DocumentError
from . import shapes
from .osets import OpetopicSet
from .universality import CheckVerdict

FORMAT_VERSION = "1"
KINDS = ("opetope_list", "opetopic_set", "verdict")


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def store(doc: dict, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def load(path: Union[str, Path]) -> dict:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, ValueError) as exc:
        raise DocumentError("cannot read document: %s" % exc)
    if not isinstance(doc, dict):
        raise DocumentError("document root must be an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise DocumentError("unknown format_version %r" % (version,))
    if doc.get("kind") not in KINDS:
        raise DocumentError("unknown document kind %r" % (doc.get("kind"),))
    return doc


# -- shape listings -------------------------------------------------------------


def opetope_list_document(dim: int, node_bound: int) -> dict:
    listing = shapes.enumerate_opetopes(dim, node_bound)
    return {
        "format_version": FORMAT_VERSION,
        "kind": "opetope_list",
        "dim": dim,
        "node_bound": node_bound,
        "opetopes": [
            {
                "code": s.code,
                "size": s.size,
                "inface_count": (s.arity if s.dim >= 1 else 0),
                "metatree": shapes.metatree_stages(s),
            }
            for s in listing
        ],
    }


def inface_count_summary(doc: dict) -> List[str]:
    """Human-readable per-inface-count tallies for an opetope_list."""
    counts = Counter(entry["inface_count"] for entry in doc["opetopes"])
    lines = ["k=%d: %d" % (k, counts[k]) for k in sorted(counts)]
    lines.append("total: %d" % len(doc["opetopes"]))
    return lines


# -- opetopic sets ---------------------------------------------------------------


def set_to_document(oset: OpetopicSet) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "opetopic_set",
        "max_dim": oset.max_dim,
        "shape_bound": oset.shape_bound,
        "cells": {name: oset.cells[name] for name in sorted(oset.cells)},
        "faces": {
            name: {"infaces": list(ins), "outface": out}
            for name, (ins, out) in sorted(oset.faces.items())
        },
    }


def set_from_document(doc: dict) -> OpetopicSet:
    if doc.get("kind") != "opetopic_set":
        raise DocumentError("expected an opetopic_set document")
    try:
        cells = {str(k): str(v) for k, v in doc["cells"].items()}
        faces = {
            str(k): (tuple(str(f) for f in v["infaces"]), str(v["outface"]))
            for k, v in doc["faces"].items()
        }
        return OpetopicSet(int(doc["max_dim"]), int(doc["shape_bound"]), cells, faces)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise DocumentError("malformed opetopic_set document: %s" % exc)


# -- verdicts --------------------------------------------------------------------


def verdict_to_document(verdict: CheckVerdict) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "verdict",
        "pass": verdict.ok,
        "n": verdict.n,
        "shape_bound": verdict.shape_bound,
        "condition2_rule": verdict.rule,
        "niche_counts": {str(d): c for d, c in sorted(verdict.niche_counts.items())},
        "condition1": verdict.condition1,
        "condition2": verdict.condition2,
        "failure": verdict.failure,
        "max_dim_reached": verdict.max_dim_reached,
    }

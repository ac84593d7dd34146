"""Save and load surfaces as JSON.

Two document shapes:

* finite surfaces::

      {"type": "finite", "name": ..., "faces": [...],
       "right": {faceKey: face}, "top": {faceKey: face},
       "rotation": [[face, side, face2, side2, rot], ...],
       "labels": {"faceKey|side": label}}

  ``right``/``top`` list the rotation-free R/T gluings; any gluing that turns
  the flow (cube edges) goes in ``rotation`` instead, which also covers edges
  that are L/B on both faces.

* generator-backed surfaces::

      {"type": "generator", "name": ..., "params": {...}, "seed": ...}

Faces may be nested tuples of ints/strings; they are stored as nested lists
and keyed by their compact JSON text.
"""

from __future__ import annotations

import json
from typing import Optional

from .surface import SIDES, Surface, Transition, entry_side

SCHEMA = {
    "type": "object",
    "required": ["type"],
    "properties": {
        "type": {"enum": ["finite", "generator"]},
        "name": {"type": "string"},
        "faces": {"type": "array"},
        "right": {"type": "object"},
        "top": {"type": "object"},
        "rotation": {"type": "array"},
        "labels": {"type": "object"},
        "params": {"type": "object"},
        "seed": {},
    },
}


def _jsonify(face):
    if isinstance(face, tuple):
        return [_jsonify(x) for x in face]
    return face


def _tupleize(face):
    if isinstance(face, list):
        return tuple(_tupleize(x) for x in face)
    return face


def _key(face) -> str:
    return json.dumps(_jsonify(face), separators=(",", ":"))


def _unkey(key: str):
    return _tupleize(json.loads(key))


def surface_to_doc(s: Surface) -> dict:
    faces = s.faces  # raises for lazy surfaces; save those as generator docs
    right, top, rotation = {}, {}, []
    seen = set()
    for f in faces:
        for side in SIDES:
            tr = s.transition(f, side)
            edge = frozenset([(f, side), (tr.face, tr.side)])
            if edge in seen:
                continue
            seen.add(edge)
            if tr.rot == 0 and side == "R" and tr.side == "L":
                right[_key(f)] = _jsonify(tr.face)
            elif tr.rot == 0 and side == "T" and tr.side == "B":
                top[_key(f)] = _jsonify(tr.face)
            elif tr.rot == 0 and side in ("L", "B"):
                # same gluing, seen from the other side
                m = right if side == "L" else top
                m[_key(tr.face)] = _jsonify(f)
            else:
                rotation.append(
                    [_jsonify(f), side, _jsonify(tr.face), tr.side, tr.rot]
                )
    doc = {
        "type": "finite",
        "name": s.name,
        "faces": [_jsonify(f) for f in faces],
        "right": right,
        "top": top,
    }
    if rotation:
        doc["rotation"] = rotation
    labels = {}
    for f in faces:
        for side in SIDES:
            lab = s.edge_label(f, side)
            if lab is not None:
                labels[f"{_key(f)}|{side}"] = lab
    if labels:
        doc["labels"] = labels
    return doc


def generator_doc(name: str, params: Optional[dict] = None, seed=None) -> dict:
    doc = {"type": "generator", "name": name, "params": params or {}}
    if seed is not None:
        doc["seed"] = seed
    return doc


def surface_from_doc(doc: dict) -> Surface:
    try:
        import jsonschema

        jsonschema.validate(doc, SCHEMA)
    except ImportError:  # pragma: no cover
        pass

    if doc["type"] == "generator":
        from . import generators

        params = dict(doc.get("params") or {})
        if "seed" in doc:
            params["seed"] = doc["seed"]
        surf, _prof = generators.provide(doc["name"], **params)
        return surf

    faces = [_tupleize(f) for f in doc["faces"]]
    table = {}

    def glue(f, s, g, s2, rot):
        table[(f, s)] = Transition(g, s2, rot)
        table[(g, s2)] = Transition(f, s, (-rot) % 360)

    for k, v in doc.get("right", {}).items():
        glue(_unkey(k), "R", _tupleize(v), "L", 0)
    for k, v in doc.get("top", {}).items():
        glue(_unkey(k), "T", _tupleize(v), "B", 0)
    for f, s, g, s2, rot in doc.get("rotation", []):
        f, g = _tupleize(f), _tupleize(g)
        if entry_side(s, rot) != s2:
            raise ValueError(f"rotation entry {f, s} -> {g, s2} is not geometric")
        glue(f, s, g, s2, rot % 360)

    missing = [(f, s) for f in faces for s in SIDES if (f, s) not in table]
    if missing:
        raise ValueError(f"unglued sides in document: {missing[:4]}")

    labels = {}
    for k, lab in doc.get("labels", {}).items():
        fkey, side = k.rsplit("|", 1)
        labels[(_unkey(fkey), side)] = lab

    s = Surface(
        lambda f, sd: table[(f, sd)],
        faces=faces,
        labels=labels,
        name=doc.get("name", ""),
    )
    s.validate()
    return s


def save_surface(s: Surface, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(surface_to_doc(s), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_surface(path: str) -> Surface:
    with open(path) as fh:
        return surface_from_doc(json.load(fh))

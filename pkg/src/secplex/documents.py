"""Reading and writing the versioned JSON input format.

A document describes one finite simplicial set together with a height
function on its vertices:

    {
      "format": "sset-v1",
      "name": "sphere",
      "generators": [["0", "1", "2"], ["01", "02", "12"], ["a", "b"]],
      "faces": {
        "01": [[[], "1"], [[], "0"]],
        "a":  [[[], "12"], [[], "02"], [[], "01"]]
      },
      "heights": {"0": "0", "1": "1", "2": "2"},
      "field": 2,
      "max_degree": 3
    }

``generators`` lists generator names per dimension, starting at dimension
zero.  Each face entry is a pair ``[word, name]`` where ``word`` is a
strictly decreasing list of degeneracy indices (empty for nondegenerate
faces).  Heights are rational strings parsed exactly ("1", "0.5", "3/2");
plain integers are also accepted.  ``field`` and ``max_degree`` are
optional defaults that command-line flags override.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import InputFormatError
from .heights import HeightFunction, as_fraction
from .simplicial import SimplicialSet

FORMAT = "sset-v1"


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise InputFormatError(message)


def space_to_dict(
    X: SimplicialSet, heights: HeightFunction | None = None
) -> dict[str, Any]:
    """Serialize a simplicial set (and optionally heights) to a document."""
    generators = [
        [X.gen_names[g] for g in X.generators(d)] for d in range(X.top_dim + 1)
    ]
    faces: dict[str, list[list[Any]]] = {}
    for name in X.gen_names:
        gid = X.id_of[name]
        if X.gen_dim[gid] == 0:
            continue
        faces[name] = [
            [list(ref.word), X.gen_names[ref.gen]] for ref in X.faces[gid]
        ]
    doc: dict[str, Any] = {
        "format": FORMAT,
        "name": X.name,
        "generators": generators,
        "faces": faces,
    }
    if heights is not None:
        doc["heights"] = {
            X.gen_names[g]: str(heights.of(g)) for g in X.generators(0)
        }
    return doc


def _parse_face_entry(name: str, i: int, entry: Any) -> tuple[tuple[int, ...], str]:
    _expect(
        isinstance(entry, (list, tuple)) and len(entry) == 2,
        f"face {i} of {name!r} must be a [word, generator] pair",
    )
    word, target = entry
    _expect(
        isinstance(word, list)
        and all(isinstance(j, int) and not isinstance(j, bool) for j in word),
        f"face {i} of {name!r}: word must be a list of integers",
    )
    _expect(
        all(a > b for a, b in zip(word, word[1:])),
        f"face {i} of {name!r}: word {word} is not strictly decreasing",
    )
    _expect(isinstance(target, str), f"face {i} of {name!r}: generator must be a name")
    return tuple(word), target


def space_from_dict(doc: Any) -> tuple[SimplicialSet, HeightFunction | None]:
    """Build a simplicial set (and heights, when present) from a document."""
    _expect(isinstance(doc, dict), "document must be a JSON object")
    _expect(
        doc.get("format") == FORMAT,
        f'document must declare "format": "{FORMAT}" (got {doc.get("format")!r})',
    )
    generators = doc.get("generators")
    _expect(
        isinstance(generators, list)
        and all(
            isinstance(level, list) and all(isinstance(g, str) for g in level)
            for level in generators
        ),
        '"generators" must be a list of lists of names, one per dimension',
    )
    raw_faces = doc.get("faces", {})
    _expect(isinstance(raw_faces, dict), '"faces" must be an object')
    face_table: dict[str, list[tuple[tuple[int, ...], str]]] = {}
    for name, entries in raw_faces.items():
        _expect(isinstance(entries, list), f"faces of {name!r} must be a list")
        face_table[name] = [
            _parse_face_entry(name, i, entry) for i, entry in enumerate(entries)
        ]
    name = doc.get("name", "")
    _expect(isinstance(name, str), '"name" must be a string')
    try:
        X = SimplicialSet(generators, face_table, name=name)
    except Exception as exc:
        raise InputFormatError(f"invalid simplicial set: {exc}") from exc

    heights = doc.get("heights")
    if heights is None:
        return X, None
    _expect(
        isinstance(heights, dict)
        and all(isinstance(k, str) for k in heights),
        '"heights" must map vertex names to rational strings',
    )
    for vertex, value in heights.items():
        try:
            as_fraction(value)
        except Exception as exc:
            raise InputFormatError(
                f"height of {vertex!r} is not a rational number: {value!r}"
            ) from exc
    try:
        h = HeightFunction(X, heights)
    except Exception as exc:
        raise InputFormatError(f"invalid heights: {exc}") from exc
    return X, h


def load_document(path: str) -> tuple[SimplicialSet, HeightFunction | None, dict]:
    """Load a document file; returns the space, heights and the raw object."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputFormatError(
            f"{path} is not valid JSON (line {exc.lineno}, column {exc.colno}): "
            f"{exc.msg}"
        ) from exc
    X, h = space_from_dict(doc)
    return X, h, doc


def _dumps_document(doc: dict[str, Any]) -> str:
    """Serialize with one line per generator level, face list and height."""
    parts = [f'  "format": {json.dumps(doc["format"])}']
    if doc.get("name"):
        parts.append(f'  "name": {json.dumps(doc["name"])}')
    levels = ",\n".join("    " + json.dumps(level) for level in doc["generators"])
    parts.append('  "generators": [\n' + levels + "\n  ]")
    faces = ",\n".join(
        f"    {json.dumps(nm)}: {json.dumps(entries)}"
        for nm, entries in doc["faces"].items()
    )
    parts.append('  "faces": {\n' + faces + "\n  }")
    if "heights" in doc:
        heights = ",\n".join(
            f"    {json.dumps(nm)}: {json.dumps(value)}"
            for nm, value in doc["heights"].items()
        )
        parts.append('  "heights": {\n' + heights + "\n  }")
    return "{\n" + ",\n".join(parts) + "\n}\n"


def save_document(path: str, X: SimplicialSet, heights: HeightFunction | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(_dumps_document(space_to_dict(X, heights)))


def matrix_to_lists(M) -> list[list[int]]:
    """Integer matrix as nested lists for JSON output."""
    return [[int(v) for v in row] for row in M]

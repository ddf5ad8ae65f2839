import json
from pathlib import Path

import pytest

from secplex import InputFormatError
from secplex.documents import (
    load_document,
    save_document,
    space_from_dict,
    space_to_dict,
)
from secplex.examples import cylinder, sphere, sphere_subdivided

DATA = Path(__file__).resolve().parents[1] / "data"


def test_shipped_files_match_builders():
    for builder, fname in [
        (sphere, "sphere.json"),
        (sphere_subdivided, "sphere_subdivided.json"),
        (cylinder, "cylinder.json"),
    ]:
        X, h = builder()
        Y, g, _ = load_document(str(DATA / fname))
        assert Y.gen_names == X.gen_names
        assert Y.faces == X.faces
        assert all(g.of(v) == h.of(v) for v in X.generators(0))


def test_round_trip_through_dict():
    X, h = sphere_subdivided()
    doc = space_to_dict(X, h)
    Y, g = space_from_dict(doc)
    assert Y.gen_names == X.gen_names and Y.faces == X.faces
    assert g is not None and g.of_name("1p") == 1


def test_save_load_round_trip(tmp_path):
    X, h = cylinder()
    path = tmp_path / "cyl.json"
    save_document(str(path), X, h)
    Y, g, raw = load_document(str(path))
    assert raw["format"] == "sset-v1"
    assert Y.faces == X.faces


def test_heights_are_strings_exactly(tmp_path):
    X, h = sphere()
    path = tmp_path / "s.json"
    save_document(str(path), X, h)
    raw = json.loads(path.read_text())
    assert raw["heights"] == {"0": "0", "1": "1", "2": "2"}


def test_rejects_wrong_format_tag():
    with pytest.raises(InputFormatError, match="format"):
        space_from_dict({"format": "v2", "generators": [["v"]]})


def test_rejects_bad_word_shape():
    doc = {
        "format": "sset-v1",
        "generators": [["v"], ["e"]],
        "faces": {"e": [[[0, 1], "v"], [[], "v"]]},
    }
    with pytest.raises(InputFormatError, match="strictly decreasing"):
        space_from_dict(doc)


def test_rejects_malformed_face_entry():
    doc = {
        "format": "sset-v1",
        "generators": [["v"], ["e"]],
        "faces": {"e": ["v", "v"]},
    }
    with pytest.raises(InputFormatError, match="pair"):
        space_from_dict(doc)


def test_rejects_unknown_generator():
    doc = {
        "format": "sset-v1",
        "generators": [["v"], ["e"]],
        "faces": {"e": [[[], "v"], [[], "zzz"]]},
    }
    with pytest.raises(InputFormatError, match="invalid simplicial set"):
        space_from_dict(doc)


def test_rejects_float_heights():
    doc = {
        "format": "sset-v1",
        "generators": [["v"]],
        "faces": {},
        "heights": {"v": 0.5},
    }
    with pytest.raises(InputFormatError, match="rational"):
        space_from_dict(doc)


def test_fractional_heights_parse():
    doc = {
        "format": "sset-v1",
        "generators": [["v", "w"], ["e"]],
        "faces": {"e": [[[], "w"], [[], "v"]]},
        "heights": {"v": "1/3", "w": "0.5"},
    }
    X, h = space_from_dict(doc)
    from fractions import Fraction

    assert h.of_name("v") == Fraction(1, 3)
    assert h.of_name("w") == Fraction(1, 2)


def test_load_reports_json_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"format": "sset-v1",')
    with pytest.raises(InputFormatError, match="line"):
        load_document(str(path))

from fractions import Fraction

import numpy as np
import pytest

from secplex import (
    NotSubdividedError,
    WindowError,
    barcode_diagram,
    build_truncation,
    fiber,
    normalized_chains,
    reeb_complex,
    reeb_graph,
    vertical_complex,
)


@pytest.fixture(scope="module")
def sphere_trunc(sphere_pair):
    X, h = sphere_pair
    return build_truncation(X, h, degree=3)


@pytest.fixture(scope="module")
def subdivided_trunc(subdivided_pair):
    X, h = subdivided_pair
    return build_truncation(X, h, degree=3)


def test_sphere_reeb_degree_zero(sphere_trunc, gf2, gf3):
    for F in (gf2, gf3):
        rc = reeb_complex(sphere_trunc, F, 0)
        assert [rc.dim(p) for p in range(3)] == [3, 3, 2]
        assert F.rank(rc.differential(1)) == 2
        assert F.rank(rc.differential(2)) == 1
        assert [rc.betti(p) for p in range(3)] == [1, 0, 1]


def test_sphere_reeb_integer_matrices(sphere_trunc, gf3):
    rc = reeb_complex(sphere_trunc, gf3, 0)
    assert np.array_equal(
        rc.differential(1),
        np.array([[-1, -1, 0], [1, 0, -1], [0, 1, 1]]),
    )
    assert np.array_equal(
        rc.differential(2), np.array([[1, 1], [-1, -1], [1, 1]])
    )


def test_sphere_reeb_higher_degrees_vanish(sphere_trunc, gf2):
    rc = reeb_complex(sphere_trunc, gf2, 1)
    assert all(rc.dim(p) == 0 for p in range(3))


def test_subdivided_reeb_both_degrees(subdivided_trunc, gf2, gf3):
    for F in (gf2, gf3):
        r0 = reeb_complex(subdivided_trunc, F, 0)
        assert [r0.dim(p) for p in range(2)] == [3, 2]
        assert F.rank(r0.differential(1)) == 2
        assert [r0.betti(p) for p in range(2)] == [1, 0]
        r1 = reeb_complex(subdivided_trunc, F, 1)
        assert [r1.dim(p) for p in range(2)] == [1, 2]
        assert F.rank(r1.differential(1)) == 1
        assert [r1.betti(p) for p in range(2)] == [0, 1]


def test_subdivided_degree_one_matrix_is_signed(subdivided_trunc, gf3):
    r1 = reeb_complex(subdivided_trunc, gf3, 1)
    assert np.array_equal(np.abs(r1.differential(1)), np.array([[1, 1]]))
    assert r1.differential(1).sum() == 0  # entries 1 and -1


def test_vertical_complex_matches_fiber_homology(subdivided_pair, subdivided_trunc, gf2):
    X, h = subdivided_pair
    for level in h.levels:
        vcx = vertical_complex(subdivided_trunc, gf2, (level,), top=2)
        fib = fiber(h, level)
        labels, faces = fib.chain_data(2)
        direct = normalized_chains(gf2, labels, faces)
        assert [vcx.betti(n) for n in range(2)] == [
            direct.betti(n) for n in range(2)
        ]


def test_reeb_window_error(sphere_pair, gf2):
    X, h = sphere_pair
    trunc = build_truncation(X, h, degree=1)
    with pytest.raises(WindowError) as err:
        reeb_complex(trunc, gf2, 0)
    assert err.value.required_degree == 2


def test_reeb_graph_requires_subdivided(cylinder_pair):
    X, h = cylinder_pair
    with pytest.raises(NotSubdividedError, match="AF"):
        reeb_graph(X, h)


def test_reeb_graph_subdivided_sphere(subdivided_pair):
    X, h = subdivided_pair
    graph = reeb_graph(X, h)
    assert len(graph.vertices) == 3
    assert len(graph.edges) == 2
    assert graph.homology() == (1, 0)
    dot = graph.to_dot()
    assert dot.startswith("digraph") and "->" in dot


def test_reeb_graph_circle_quotient(gf2):
    # two vertices, two parallel edges: levels 0 and 1, graph is a circle
    from secplex import HeightFunction, SimplicialSet

    X = SimplicialSet(
        [["u", "v"], ["e", "f"]],
        {"e": [((), "v"), ((), "u")], "f": [((), "v"), ((), "u")]},
        name="circle",
    )
    h = HeightFunction(X, {"u": 0, "v": 1})
    graph = reeb_graph(X, h)
    assert graph.homology() == (1, 1)


def test_reeb_graph_matches_reeb_complex_on_subdivided(subdivided_pair, gf2):
    X, h = subdivided_pair
    graph = reeb_graph(X, h)
    trunc = build_truncation(X, h, degree=2)
    r0 = reeb_complex(trunc, gf2, 0)
    assert graph.homology() == (r0.betti(0), r0.betti(1))


def test_barcode_subdivided_sphere(subdivided_trunc, gf2):
    bc = barcode_diagram(subdivided_trunc, gf2, max_q=1)
    doc = bc.to_dict()
    assert doc["format"] == "sset-v1" and doc["kind"] == "barcode"
    track0, track1 = doc["tracks"][0], doc["tracks"][1]
    assert [node["level"] for node in track0["nodes"]] == ["0", "1", "2"]
    assert len(track0["segments"]) == 2
    assert all(
        seg["left_attached"] and seg["right_attached"]
        for seg in track0["segments"]
    )
    # degree 1: the circle fiber at level 1, with half-open bars both sides
    assert [node["level"] for node in track1["nodes"]] == ["1"]
    seg_levels = {(seg["left_level"], seg["right_level"]) for seg in track1["segments"]}
    assert seg_levels == {("0", "1"), ("1", "2")}
    attach = {
        (seg["left_level"], seg["right_level"]): (
            seg["left_attached"],
            seg["right_attached"],
        )
        for seg in track1["segments"]
    }
    assert attach[("0", "1")] == (False, True)
    assert attach[("1", "2")] == (True, False)


def test_barcode_window_error(subdivided_trunc, gf2):
    with pytest.raises(WindowError):
        barcode_diagram(subdivided_trunc, gf2, max_q=5)


def test_barcode_dot_well_formed(subdivided_trunc, gf2):
    dot = barcode_diagram(subdivided_trunc, gf2, max_q=1).to_dot()
    assert dot.count("subgraph") == 2
    assert "style=filled" in dot

from fractions import Fraction

import pytest

from secplex import (
    HeightError,
    HeightFunction,
    as_fraction,
    fiber,
    is_subdivided,
    subdivision_number,
    subdivision_witness,
    validate_height,
)
from secplex.heights import subdivision_violations
from secplex.simplicial import standard_simplex


def test_as_fraction_accepts_exact_values():
    assert as_fraction(3) == Fraction(3)
    assert as_fraction("3/2") == Fraction(3, 2)
    assert as_fraction("0.5") == Fraction(1, 2)
    assert as_fraction(Fraction(7, 3)) == Fraction(7, 3)


def test_as_fraction_rejects_floats_and_bools():
    with pytest.raises(HeightError):
        as_fraction(0.5)
    with pytest.raises(HeightError):
        as_fraction(True)
    with pytest.raises(HeightError):
        as_fraction("not-a-number")


def test_height_function_coverage():
    X = standard_simplex(1)
    with pytest.raises(HeightError, match="without a height"):
        HeightFunction(X, {"0": 0})
    with pytest.raises(HeightError, match="non-vertex"):
        HeightFunction(X, {"0": 0, "1": 1, "0-1": 2})


def test_validate_height_names_decreasing_edge():
    X = standard_simplex(1)
    h = HeightFunction(X, {"0": 1, "1": 0})
    with pytest.raises(HeightError, match="0-1"):
        validate_height(h)


def test_levels_and_subdivision(sphere_pair, subdivided_pair, cylinder_pair):
    for (X, h), expected_s, expected_sub in [
        (sphere_pair, 2, False),
        (subdivided_pair, 1, True),
        (cylinder_pair, 2, False),
    ]:
        assert validate_height(h) == [Fraction(0), Fraction(1), Fraction(2)]
        assert subdivision_number(h) == expected_s
        assert is_subdivided(h) == expected_sub


def test_subdivision_witness_spans_levels(sphere_pair):
    from secplex import SimplexRef

    X, h = sphere_pair
    witness = subdivision_witness(h)
    assert witness is not None
    heights = set(h.vertex_heights(SimplexRef(X.id_of[witness])))
    assert len(heights) == subdivision_number(h) + 1


def test_subdivision_violations_name_edges(cylinder_pair):
    X, h = cylinder_pair
    bad = subdivision_violations(h)
    assert bad and all("spans non-adjacent levels" in line for line in bad)
    assert any("'AF'" in line for line in bad)


def test_subdivided_implies_small_subdivision_number(subdivided_pair):
    _, h = subdivided_pair
    assert is_subdivided(h) and subdivision_number(h) <= 1


def test_fiber_is_full_subcomplex(subdivided_pair, sphere_pair):
    X, h = subdivided_pair
    mid = fiber(h, Fraction(1))
    assert sorted(mid.gen_names) == ["1", "1p", "m", "mbar"]
    assert mid.validate() == []
    Y, g = sphere_pair
    assert fiber(g, Fraction(1)).gen_names == ["1"]
    assert fiber(g, Fraction(5)).gen_names == []

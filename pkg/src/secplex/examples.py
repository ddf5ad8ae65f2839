"""Built-in example spaces: the three worked examples and random gluings.

Each builder returns a pair ``(space, heights)``.  The JSON files under
``data/`` are serializations of the first three; the random generator is
shared by the test suite and the sweep script.
"""

from __future__ import annotations

import random

from .errors import GlueError
from .heights import HeightFunction
from .simplicial import SimplicialSet, disjoint_union, glue, relabel, standard_simplex


def sphere() -> tuple[SimplicialSet, HeightFunction]:
    """Two triangles glued along their common boundary; heights 0, 1, 2.

    The height skips no vertex, but both triangles span all three levels,
    so the subdivision number is 2.
    """
    X = SimplicialSet(
        [["0", "1", "2"], ["01", "02", "12"], ["a", "b"]],
        {
            "01": [((), "1"), ((), "0")],
            "02": [((), "2"), ((), "0")],
            "12": [((), "2"), ((), "1")],
            "a": [((), "12"), ((), "02"), ((), "01")],
            "b": [((), "12"), ((), "02"), ((), "01")],
        },
        name="sphere",
    )
    return X, HeightFunction(X, {"0": 0, "1": 1, "2": 2})


def sphere_subdivided() -> tuple[SimplicialSet, HeightFunction]:
    """The sphere with both triangles split at an interior height-1 vertex.

    Subdivision number 1: every triangle meets at most two levels, so this
    presentation is subdivided and the Reeb graph is defined.
    """
    X = SimplicialSet(
        [
            ["0", "1", "1p", "2"],
            ["01", "01p", "m", "mbar", "12", "1p2"],
            ["a1", "a2", "b1", "b2"],
        ],
        {
            "01": [((), "1"), ((), "0")],
            "01p": [((), "1p"), ((), "0")],
            "m": [((), "1"), ((), "1p")],
            "mbar": [((), "1"), ((), "1p")],
            "12": [((), "2"), ((), "1")],
            "1p2": [((), "2"), ((), "1p")],
            "a1": [((), "m"), ((), "01"), ((), "01p")],
            "a2": [((), "mbar"), ((), "01"), ((), "01p")],
            "b1": [((), "12"), ((), "1p2"), ((), "m")],
            "b2": [((), "12"), ((), "1p2"), ((), "mbar")],
        },
        name="sphere-subdivided",
    )
    return X, HeightFunction(X, {"0": 0, "1": 1, "1p": 1, "2": 2})


def cylinder() -> tuple[SimplicialSet, HeightFunction]:
    """A triangulated cylinder over the triangle circle, heights 0, 1, 2.

    One seam runs straight from bottom to top, so the subdivision number is
    2 and the second page still carries a nonzero differential.
    """
    X = SimplicialSet(
        [
            ["A", "B", "C", "D", "E", "F", "G", "H"],
            [
                "AB", "AC", "CB",
                "BD", "AD", "CE", "CD", "AE",
                "DE",
                "DF", "EH", "EF",
                "AF", "AH", "AG",
                "FG", "HG", "FH",
            ],
            [
                "t_ABD", "t_ADF", "t_AFG",
                "t_ACE", "t_AEH", "t_AHG",
                "t_CBD", "t_CDE", "t_DEF", "t_EFH",
            ],
        ],
        {
            "AB": [((), "B"), ((), "A")],
            "AC": [((), "C"), ((), "A")],
            "CB": [((), "B"), ((), "C")],
            "BD": [((), "D"), ((), "B")],
            "AD": [((), "D"), ((), "A")],
            "CE": [((), "E"), ((), "C")],
            "CD": [((), "D"), ((), "C")],
            "AE": [((), "E"), ((), "A")],
            "DE": [((), "E"), ((), "D")],
            "DF": [((), "F"), ((), "D")],
            "EH": [((), "H"), ((), "E")],
            "EF": [((), "F"), ((), "E")],
            "AF": [((), "F"), ((), "A")],
            "AH": [((), "H"), ((), "A")],
            "AG": [((), "G"), ((), "A")],
            "FG": [((), "G"), ((), "F")],
            "HG": [((), "G"), ((), "H")],
            "FH": [((), "H"), ((), "F")],
            "t_ABD": [((), "BD"), ((), "AD"), ((), "AB")],
            "t_ADF": [((), "DF"), ((), "AF"), ((), "AD")],
            "t_AFG": [((), "FG"), ((), "AG"), ((), "AF")],
            "t_ACE": [((), "CE"), ((), "AE"), ((), "AC")],
            "t_AEH": [((), "EH"), ((), "AH"), ((), "AE")],
            "t_AHG": [((), "HG"), ((), "AG"), ((), "AH")],
            "t_CBD": [((), "BD"), ((), "CD"), ((), "CB")],
            "t_CDE": [((), "DE"), ((), "CE"), ((), "CD")],
            "t_DEF": [((), "EF"), ((), "DF"), ((), "DE")],
            "t_EFH": [((), "FH"), ((), "EH"), ((), "EF")],
        },
        name="cylinder",
    )
    return X, HeightFunction(
        X, {"A": 0, "B": 0, "C": 0, "D": 1, "E": 1, "F": 2, "G": 2, "H": 2}
    )


BY_NAME = {
    "sphere": sphere,
    "sphere-subdivided": sphere_subdivided,
    "cylinder": cylinder,
}

_EDGES = {"0-1": ("0", "1"), "0-2": ("0", "2"), "1-2": ("1", "2")}

_STRICT_PATTERNS = [(0, 1, 2), (0, 1, 2), (0, 1, 2), (0, 0, 1), (0, 1, 1)]
_ADJACENT_PATTERNS = [(0, 0, 1), (0, 1, 1), (0, 0, 0), (1, 1, 1)]


def random_gluing(
    rng: random.Random,
    max_triangles: int = 6,
    subdivided: bool = False,
) -> tuple[SimplicialSet, HeightFunction]:
    """A random quotient of up to ``max_triangles`` triangles.

    Triangles get random monotone vertex heights; edges with equal height
    pairs are then identified at random.  With ``subdivided=True`` the
    height patterns never skip a level, so the result admits a Reeb graph.
    """
    patterns_pool = _ADJACENT_PATTERNS if subdivided else _STRICT_PATTERNS
    k = rng.randrange(1, max_triangles + 1)
    patterns = [rng.choice(patterns_pool) for _ in range(k)]
    parts = [relabel(standard_simplex(2), f"t{i}.") for i in range(k)]
    union = disjoint_union(*parts, name="random-gluing")

    candidates = []
    keys = list(_EDGES)
    for i in range(k):
        for j in range(i, k):
            for ei in keys:
                for ej in keys if i < j else keys[keys.index(ei) + 1 :]:
                    ui, vi = _EDGES[ei]
                    uj, vj = _EDGES[ej]
                    hi = (patterns[i][int(ui)], patterns[i][int(vi)])
                    hj = (patterns[j][int(uj)], patterns[j][int(vj)])
                    if hi == hj:
                        candidates.append((f"t{i}.{ei}", f"t{j}.{ej}"))
    rng.shuffle(candidates)
    idents = candidates[: rng.randrange(0, 2 * k)]
    while True:
        try:
            X, mapping = glue(union, idents)
            break
        except GlueError:
            idents = idents[:-1]

    heights: dict[str, object] = {}
    for i in range(k):
        for v in ("0", "1", "2"):
            heights[mapping[f"t{i}.{v}"]] = patterns[i][int(v)]
    return X, HeightFunction(X, heights)

"""Section spaces of a height function, in two simplicial directions.

Fix a simplicial set with a monotone height function and a word of target
heights ``(a_0, ..., a_p)``.  A *(p, q)-section* assigns to every maximal
chain of the grid poset [p] x [q] a (p+q)-simplex of the space whose k-th
vertex sits at height ``a_i`` when the chain's k-th point is (i, j), such
that any two chains agreeing after deleting one point have matching faces
there.  Sections of a fixed shape form the value of a bisimplicial object:
the first (horizontal) direction reindexes the height word, the second
(vertical) direction moves along the fibers.

Maximal chains are kept in lexicographic order on their point sequences,
and a section is stored as the tuple of its chain images in that order.
Pairs of chains that differ in exactly one position generate all the
compatibility constraints, which is what the backtracking enumeration
exploits; values on arbitrary monotone chains are recovered on demand by
:func:`evaluate_chain`.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Sequence

from .errors import ResourceLimitError, ValidationError, WindowError
from .heights import HeightFunction, as_fraction, subdivision_number
from .linalg import ChainComplex, PrimeField, normalized_chains
from .simplicial import SimplexRef, SimplicialSet, delta_vertex, sigma_vertex

DEFAULT_CAP = 10**6


def word_label(word: Iterable) -> str:
    """Readable form of a height word, e.g. ``0,1/2,1``."""
    return ",".join(str(a) for a in word)

GridPoint = tuple[int, int]
Chain = tuple[GridPoint, ...]


@lru_cache(maxsize=None)
def shuffle_chains(p: int, q: int) -> tuple[Chain, ...]:
    """All maximal chains of [p] x [q], lexicographically ordered.

    A vertical step (0, 1) produces a lexicographically smaller next point
    than a horizontal step (1, 0), so the all-vertical-first chain comes
    first.  There are binomial(p + q, p) chains of p + q + 1 points each.
    """

    def rec(i: int, j: int):
        if i == p and j == q:
            yield ((i, j),)
            return
        if j < q:
            for rest in rec(i, j + 1):
                yield ((i, j),) + rest
        if i < p:
            for rest in rec(i + 1, j):
                yield ((i, j),) + rest

    return tuple(rec(0, 0))


@lru_cache(maxsize=None)
def _chain_index(p: int, q: int) -> dict[Chain, int]:
    return {c: k for k, c in enumerate(shuffle_chains(p, q))}


@dataclass(frozen=True, order=True)
class Section:
    """A (p, q)-section: heights word plus one image per maximal chain.

    ``images`` follows the lexicographic chain order of
    :func:`shuffle_chains`, so equality and ordering of sections are
    canonical.  Instances are hashable and safe as dict keys.
    """

    p: int
    q: int
    heights: tuple[Fraction, ...]
    images: tuple[SimplexRef, ...]


def enumerate_sections(
    X: SimplicialSet,
    h: HeightFunction,
    levels: Sequence,
    q: int,
    cap: int = DEFAULT_CAP,
) -> list[Section]:
    """All (p, q)-sections over the given height word, degenerate included.

    The word may repeat heights.  Results come in lexicographic order on
    the image tuples.  Every candidate inspected counts against ``cap``;
    exceeding it raises :class:`ResourceLimitError`.
    """
    heights = tuple(as_fraction(a) for a in levels)
    if not heights:
        raise ValidationError("the height word must be nonempty")
    if q < 0:
        raise ValidationError("the vertical degree must be nonnegative")
    p = len(heights) - 1
    n = p + q
    chains = shuffle_chains(p, q)
    patterns = [tuple(heights[i] for (i, _) in c) for c in chains]
    buckets: dict[tuple[Fraction, ...], list[SimplexRef]] = {
        pat: [] for pat in patterns
    }
    for ref in X.simplices(n):
        pat = h.vertex_heights(ref)
        if pat in buckets:
            buckets[pat].append(ref)
    for refs in buckets.values():
        refs.sort()

    # chains differing in exactly one position; endpoints are always shared
    adjacent: list[list[tuple[int, int]]] = [[] for _ in chains]
    for a in range(len(chains)):
        for b in range(a):
            diff = [t for t in range(n + 1) if chains[a][t] != chains[b][t]]
            if len(diff) == 1:
                adjacent[a].append((b, diff[0]))

    out: list[Section] = []
    images: list[SimplexRef] = []
    budget = cap

    def backtrack(k: int) -> None:
        nonlocal budget
        if k == len(chains):
            out.append(Section(p, q, heights, tuple(images)))
            return
        for cand in buckets[patterns[k]]:
            budget -= 1
            if budget < 0:
                raise ResourceLimitError(
                    f"section enumeration over {heights} at vertical degree {q} "
                    f"exceeded the cap of {cap} candidates"
                )
            if all(
                X.face(cand, t) == X.face(images[b], t) for b, t in adjacent[k]
            ):
                images.append(cand)
                backtrack(k + 1)
                images.pop()

    backtrack(0)
    return out


def evaluate_chain(X: SimplicialSet, sec: Section, chain: Chain) -> SimplexRef:
    """Value of a section on an arbitrary weakly monotone grid chain.

    Repeats become degeneracies; a strict chain is completed to a maximal
    one (horizontal steps first between consecutive anchors) and the
    inserted positions are removed again by faces, top position first.
    """
    key = (sec.p, sec.q, sec.images, chain)
    hit = X._eval_cache.get(key)
    if hit is not None:
        return hit
    if not chain:
        raise ValidationError("cannot evaluate a section on the empty chain")
    for (i, j) in chain:
        if not (0 <= i <= sec.p and 0 <= j <= sec.q):
            raise ValidationError(f"chain point {(i, j)} outside the grid")
    for k in range(len(chain) - 1):
        (i0, j0), (i1, j1) = chain[k], chain[k + 1]
        if i1 < i0 or j1 < j0:
            raise ValidationError(f"chain is not monotone at position {k}")
        if (i0, j0) == (i1, j1):
            sub = chain[: k + 1] + chain[k + 2 :]
            result = X.degeneracy(evaluate_chain(X, sec, sub), k)
            X._eval_cache[key] = result
            return result

    index = _chain_index(sec.p, sec.q).get(chain)
    if index is not None:
        result = sec.images[index]
        X._eval_cache[key] = result
        return result

    anchors = set(chain)
    waypoints = list(chain)
    if waypoints[0] != (0, 0):
        waypoints.insert(0, (0, 0))
    if waypoints[-1] != (sec.p, sec.q):
        waypoints.append((sec.p, sec.q))
    full: list[GridPoint] = [waypoints[0]]
    for (i0, j0), (i1, j1) in zip(waypoints, waypoints[1:]):
        full.extend((i, j0) for i in range(i0 + 1, i1 + 1))
        full.extend((i1, j) for j in range(j0 + 1, j1 + 1))
    value = sec.images[_chain_index(sec.p, sec.q)[tuple(full)]]
    for pos in range(len(full) - 1, -1, -1):
        if full[pos] not in anchors:
            value = X.face(value, pos)
    X._eval_cache[key] = value
    return value


def _mapped_section(
    X: SimplicialSet,
    sec: Section,
    p: int,
    q: int,
    heights: tuple[Fraction, ...],
    point_map,
) -> Section:
    images = tuple(
        evaluate_chain(X, sec, tuple(point_map(pt) for pt in chain))
        for chain in shuffle_chains(p, q)
    )
    return Section(p, q, heights, images)


def section_face(X: SimplicialSet, sec: Section, direction: str, i: int) -> Section:
    """Face in the horizontal ("h", reindexing heights) or vertical ("v",
    along the fiber) direction."""
    if direction == "h":
        if sec.p == 0:
            raise ValidationError("a section with a single height has no horizontal faces")
        if not 0 <= i <= sec.p:
            raise ValidationError(f"horizontal face index {i} out of range")
        heights = sec.heights[:i] + sec.heights[i + 1 :]
        return _mapped_section(
            X, sec, sec.p - 1, sec.q, heights,
            lambda pt: (delta_vertex(i, pt[0]), pt[1]),
        )
    if direction == "v":
        if sec.q == 0:
            raise ValidationError("a section of vertical degree 0 has no vertical faces")
        if not 0 <= i <= sec.q:
            raise ValidationError(f"vertical face index {i} out of range")
        return _mapped_section(
            X, sec, sec.p, sec.q - 1, sec.heights,
            lambda pt: (pt[0], delta_vertex(i, pt[1])),
        )
    raise ValidationError(f"unknown direction {direction!r}, expected 'h' or 'v'")


def section_degeneracy(
    X: SimplicialSet, sec: Section, direction: str, j: int
) -> Section:
    if direction == "h":
        if not 0 <= j <= sec.p:
            raise ValidationError(f"horizontal degeneracy index {j} out of range")
        heights = sec.heights[: j + 1] + sec.heights[j:]
        return _mapped_section(
            X, sec, sec.p + 1, sec.q, heights,
            lambda pt: (sigma_vertex(j, pt[0]), pt[1]),
        )
    if direction == "v":
        if not 0 <= j <= sec.q:
            raise ValidationError(f"vertical degeneracy index {j} out of range")
        return _mapped_section(
            X, sec, sec.p, sec.q + 1, sec.heights,
            lambda pt: (pt[0], sigma_vertex(j, pt[1])),
        )
    raise ValidationError(f"unknown direction {direction!r}, expected 'h' or 'v'")


def is_degenerate(X: SimplicialSet, sec: Section, direction: str) -> bool:
    """Whether the section is a degeneracy in the given direction."""
    top = sec.p if direction == "h" else sec.q
    for j in range(top):
        collapsed = section_face(X, sec, direction, j)
        if section_degeneracy(X, collapsed, direction, j) == sec:
            return True
    return False


def vertical_underlier(X: SimplicialSet, sec: Section) -> tuple[Section, tuple[int, ...]]:
    """Strip vertical degeneracies; returns (core, word outermost first)."""
    word: list[int] = []
    while True:
        for j in range(sec.q):
            collapsed = section_face(X, sec, "v", j)
            if section_degeneracy(X, collapsed, "v", j) == sec:
                sec = collapsed
                word.append(j)
                break
        else:
            return sec, tuple(reversed(word))


# -- the diagonal simplicial set ---------------------------------------------


def _diagonal_degenerate(X: SimplicialSet, sec: Section) -> bool:
    """Degeneracy criterion for the diagonal: both directions at once."""
    for j in range(sec.p):
        f = section_face(X, section_face(X, sec, "h", j), "v", j)
        if section_degeneracy(X, section_degeneracy(X, f, "v", j), "h", j) == sec:
            return True
    return False


def diagonal_chain_complex(
    X: SimplicialSet,
    h: HeightFunction,
    field: PrimeField,
    top: int,
    cap: int = DEFAULT_CAP,
) -> ChainComplex:
    """Normalized chains of the diagonal of the section family.

    Degree n collects the (n, n)-sections over every weakly increasing
    height word of n + 1 levels; the i-th face applies the horizontal and
    vertical i-th faces together, and only diagonally nondegenerate
    sections generate.
    """
    levels = h.levels
    labels: dict[int, list[str]] = {}
    label_of: dict[int, dict[Section, str]] = {}
    secs: dict[int, list[Section]] = {}
    for n in range(top + 1):
        row: list[Section] = []
        for word in combinations_with_replacement(levels, n + 1):
            for sec in enumerate_sections(X, h, word, n, cap=cap):
                if not _diagonal_degenerate(X, sec):
                    row.append(sec)
        counter: dict[tuple[Fraction, ...], int] = {}
        labs: list[str] = []
        for sec in row:
            k = counter.get(sec.heights, 0)
            counter[sec.heights] = k + 1
            labs.append(f"[{word_label(sec.heights)}]#{k}")
        secs[n] = row
        labels[n] = labs
        label_of[n] = dict(zip(row, labs))
    faces: dict[int, list[list[str | None]]] = {}
    for n in range(1, top + 1):
        rows = []
        for sec in secs[n]:
            entry: list[str | None] = []
            for i in range(n + 1):
                f = section_face(X, section_face(X, sec, "h", i), "v", i)
                lab = label_of[n - 1].get(f)
                if lab is None and not _diagonal_degenerate(X, f):
                    raise ValidationError(
                        "internal: a nondegenerate diagonal face is missing "
                        "from the enumeration"
                    )
                entry.append(lab)
            rows.append(entry)
        faces[n] = rows
    return normalized_chains(field, labels, faces)


# -- the truncated two-parameter family --------------------------------------


@dataclass
class SectionTruncation:
    """Vertically nondegenerate sections over strictly increasing height
    words, indexed by (word, vertical degree) for total degree <= N + 1.

    This is exactly the basis of the associated double complex: horizontal
    degeneracies cannot occur over strictly increasing words, so blocks of
    vertically nondegenerate sections are the binormalized pieces.
    """

    space: SimplicialSet
    height: HeightFunction
    degree: int
    subdivision: int
    blocks: dict[tuple[tuple[Fraction, ...], int], list[Section]]
    index: dict[tuple[tuple[Fraction, ...], int], dict[Section, int]]

    def words(self, p: int) -> list[tuple[Fraction, ...]]:
        """Strictly increasing height words with p + 1 entries."""
        if p < 0 or p > min(self.subdivision, self.degree + 1):
            return []
        return [tuple(c) for c in combinations(self.height.levels, p + 1)]

    def block(self, word: Iterable, q: int) -> list[Section]:
        key = (tuple(as_fraction(a) for a in word), q)
        p = len(key[0]) - 1
        if p + q > self.degree + 1:
            raise WindowError(
                f"truncation too small: degree {self.degree} stores sections "
                f"of total degree at most {self.degree + 1}, requested {p + q}",
                required_degree=p + q - 1,
            )
        return self.blocks.get(key, [])

    def block_index(self, word: Iterable, q: int) -> dict[Section, int]:
        key = (tuple(as_fraction(a) for a in word), q)
        return self.index.get(key, {})


def build_truncation(
    X: SimplicialSet,
    h: HeightFunction,
    degree: int,
    cap: int = DEFAULT_CAP,
    threads: int | None = None,
) -> SectionTruncation:
    """Enumerate all blocks of the truncation in canonical order.

    Words run over strictly increasing tuples of levels with at most
    ``subdivision + 1`` entries; vertical degrees fill up total degree
    ``degree + 1``.  Blocks are enumerated independently (optionally on a
    thread pool) and merged in canonical order, so the result does not
    depend on ``threads``.
    """
    if degree < 0:
        raise ValidationError("the truncation degree must be nonnegative")
    s = subdivision_number(h)
    levels = h.levels
    tasks: list[tuple[tuple[Fraction, ...], int]] = []
    for p in range(min(s, degree + 1) + 1):
        for word in combinations(levels, p + 1):
            for q in range(degree + 2 - p):
                tasks.append((word, q))

    def job(task: tuple[tuple[Fraction, ...], int]) -> list[Section]:
        word, q = task
        secs = enumerate_sections(X, h, word, q, cap=cap)
        return [sec for sec in secs if not is_degenerate(X, sec, "v")]

    if threads == 1:
        results = [job(t) for t in tasks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(job, tasks))

    blocks = dict(zip(tasks, results))
    index = {
        key: {sec: i for i, sec in enumerate(secs)} for key, secs in blocks.items()
    }
    return SectionTruncation(
        space=X,
        height=h,
        degree=degree,
        subdivision=s,
        blocks=blocks,
        index=index,
    )

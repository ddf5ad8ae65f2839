import itertools

import numpy as np
import pytest

from secplex import ChainComplex, PrimeField, Section
from secplex.examples import cylinder, sphere, sphere_subdivided


@pytest.fixture(scope="session")
def gf2():
    return PrimeField(2)


@pytest.fixture(scope="session")
def gf3():
    return PrimeField(3)


@pytest.fixture(scope="session")
def sphere_pair():
    return sphere()


@pytest.fixture(scope="session")
def subdivided_pair():
    return sphere_subdivided()


@pytest.fixture(scope="session")
def cylinder_pair():
    return cylinder()


@pytest.fixture(scope="session")
def all_examples(sphere_pair, subdivided_pair, cylinder_pair):
    return [sphere_pair, subdivided_pair, cylinder_pair]


def all_chains(p, q):
    """Maximal grid chains rebuilt from scratch (step permutations)."""
    chains = set()
    for steps in itertools.permutations("h" * p + "v" * q):
        pos = (0, 0)
        chain = [pos]
        for step in steps:
            pos = (pos[0] + 1, pos[1]) if step == "h" else (pos[0], pos[1] + 1)
            chain.append(pos)
        chains.add(tuple(chain))
    return sorted(chains)


def _restrict(X, chain, image, keep):
    """Iterated face of ``image`` keeping only the chain positions whose
    grid point lies in ``keep``."""
    out = image
    for t in reversed(range(len(chain))):
        if chain[t] not in keep:
            out = X.face(out, t)
    return out


def naive_sections(X, h, word, q):
    """Brute-force section enumeration: assign every maximal chain an
    image with the right vertex heights, then keep assignments whose images
    agree on the full common subchain of every pair of chains.  Slow and
    direct; shares nothing with the production enumerator."""
    p = len(word) - 1
    n = p + q
    chains = all_chains(p, q)
    pool = list(X.simplices(n))
    buckets = []
    for chain in chains:
        pattern = tuple(word[i] for (i, _) in chain)
        buckets.append([s for s in pool if h.vertex_heights(s) == pattern])
    found = []
    for assignment in itertools.product(*buckets):
        ok = True
        for a, b in itertools.combinations(range(len(chains)), 2):
            common = set(chains[a]) & set(chains[b])
            if _restrict(X, chains[a], assignment[a], common) != _restrict(
                X, chains[b], assignment[b], common
            ):
                ok = False
                break
        if ok:
            found.append(
                Section(p=p, q=q, heights=tuple(word), images=tuple(assignment))
            )
    return sorted(found)


def unnormalized_betti(X, field, top):
    """Betti numbers from the chain complex of *all* simplices, degenerate
    ones included.  Independent of the normalized route used everywhere
    else; the two must agree.
    """
    bases = {d: list(X.simplices(d)) for d in range(top + 2)}
    index = {d: {ref: i for i, ref in enumerate(refs)} for d, refs in bases.items()}
    labels = {d: [X.label(ref) for ref in refs] for d, refs in bases.items()}
    diffs = {}
    for d in range(1, top + 2):
        M = np.zeros((len(bases[d - 1]), len(bases[d])), dtype=np.int64)
        for c, ref in enumerate(bases[d]):
            for i in range(d + 1):
                M[index[d - 1][X.face(ref, i)], c] += -1 if i % 2 else 1
        diffs[d] = M
    cx = ChainComplex(field, labels, diffs)
    return [cx.betti(n) for n in range(top + 1)]

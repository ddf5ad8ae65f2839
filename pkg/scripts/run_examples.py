#!/usr/bin/env python3
"""End-to-end tour of the bundled examples.

For each example this prints the height structure, the degree-0 and
degree-1 Reeb complexes, the low spectral-sequence pages with their
stable values, and the convergence cross-check against the homology of
the base space.
"""

import argparse

from secplex import (
    PrimeField,
    SpectralSequence,
    build_truncation,
    convergence_check,
    double_complex,
    is_subdivided,
    reeb_complex,
    reeb_graph,
    subdivision_number,
)
from secplex.examples import BY_NAME


def describe(name: str, field: PrimeField, degree: int) -> None:
    X, h = BY_NAME[name]()
    s = subdivision_number(h)
    print(f"== {name} ==")
    print(f"levels {[str(a) for a in h.levels]}, subdivision number {s}, "
          f"subdivided: {is_subdivided(h)}")

    trunc = build_truncation(X, h, degree=max(degree, s + 1))
    for q in (0, 1):
        rc = reeb_complex(trunc, field, q)
        dims = [rc.dim(p) for p in range(s + 1)]
        if not any(dims):
            print(f"Reeb complex q={q}: zero")
            continue
        betti = [rc.betti(p) for p in range(s + 1)]
        print(f"Reeb complex q={q}: dims {dims}, homology {betti}")

    ss = SpectralSequence(double_complex(trunc), field)
    for r in sorted({1, 2, s + 1}):
        page = ss.page(r)
        cells = ", ".join(f"({p},{q})={d}" for p, q, d in page.nonzero()) or "zero"
        print(f"page {r}: {cells}")

    if is_subdivided(h):
        graph = reeb_graph(X, h)
        b0, b1 = graph.homology()
        print(f"Reeb graph: {len(graph.vertices)} vertices, "
              f"{len(graph.edges)} edges, components {b0}, "
              f"independent cycles {b1}")

    report = convergence_check(X, h, field, degree=min(degree, 2))
    for line in report.lines():
        print(f"  {line}")
    print()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--field", type=int, default=2, help="prime modulus (default 2)")
    ap.add_argument("--max-degree", type=int, default=3,
                    help="truncation degree (default 3)")
    ap.add_argument("names", nargs="*", default=list(BY_NAME),
                    help="examples to run (default: all)")
    args = ap.parse_args()
    field = PrimeField(args.field)
    for name in args.names or list(BY_NAME):
        describe(name, field, args.max_degree)


if __name__ == "__main__":
    main()

"""Two families of order-preserving endomorphisms of the grid [n] x [n].

For 0 <= s <= n + 1 define on grid points

    phi(n, s)(i, j) = (i, i)  if i > n - s and j <= i,   else (i, j)
    psi(n, s)(i, j) = (i, j)  if j > i and i >= s,       else (i, i)

Both preserve the componentwise order, so each extends uniquely to a
simplicial endomorphism of the double simplex; everything about those
extensions is decided by these vertex formulas.  The two families
interpolate between the identity (phi at s = 0) and the projection onto the
diagonal (psi at s = n), and they satisfy an interlocking system of
face/degeneracy recursions that :func:`lemma_check` verifies exhaustively:

* face squares, indexing the larger grid:  phi(n, s) o (delta^l x delta^l)
  equals (delta^l x delta^l) o phi(n-1, s') with s' = s for l <= n - s and
  s' = s - 1 for l > n - s; for psi the split is s' = s for l >= s and
  s' = s - 1 for l < s.
* degeneracy squares, indexing the smaller grid: phi(n-1, s) o
  (sigma^l x sigma^l) equals (sigma^l x sigma^l) o phi(n, S) with S = s for
  l <= n - s - 1 and S = s + 1 for l >= n - s; for psi, S = s for l >= s
  and S = s + 1 for l < s.

Note the degeneracy squares leave one larger-grid parameter unmatched at
the critical index; only the smaller-grid indexing covers every case, and
that is the form a simplicial homotopy assembled from these maps consumes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import ValidationError
from .simplicial import delta_vertex, sigma_vertex

GridPoint = tuple[int, int]


@dataclass(frozen=True)
class GridEndo:
    """One member of the phi/psi family, evaluated on grid vertices."""

    n: int
    s: int
    rule: str  # "phi" or "psi"

    def __post_init__(self) -> None:
        if self.rule not in ("phi", "psi"):
            raise ValidationError(f"unknown rule {self.rule!r}, expected phi or psi")
        if self.n < 0:
            raise ValidationError("grid dimension must be nonnegative")
        if not 0 <= self.s <= self.n + 1:
            raise ValidationError(
                f"stage {self.s} out of range 0..{self.n + 1} for dimension {self.n}"
            )

    def __call__(self, point: GridPoint) -> GridPoint:
        i, j = point
        if not (0 <= i <= self.n and 0 <= j <= self.n):
            raise ValidationError(f"point {point} outside the grid of size {self.n}")
        if self.rule == "phi":
            if i > self.n - self.s and j <= i:
                return (i, i)
            return (i, j)
        if j > i and i >= self.s:
            return (i, j)
        return (i, i)

    def table(self) -> dict[GridPoint, GridPoint]:
        rng = range(self.n + 1)
        return {(i, j): self((i, j)) for i in rng for j in rng}

    def is_monotone(self) -> bool:
        """Preorder preservation: pointwise <= is carried to pointwise <=."""
        rng = range(self.n + 1)
        pts = [(i, j) for i in rng for j in rng]
        for a in pts:
            fa = self(a)
            for b in pts:
                if a[0] <= b[0] and a[1] <= b[1]:
                    fb = self(b)
                    if not (fa[0] <= fb[0] and fa[1] <= fb[1]):
                        return False
        return True


def phi(n: int, s: int) -> GridEndo:
    return GridEndo(n, s, "phi")


def psi(n: int, s: int) -> GridEndo:
    return GridEndo(n, s, "psi")


def _equal_on_grid(f, g, n: int) -> bool:
    return all(
        f((i, j)) == g((i, j)) for i in range(n + 1) for j in range(n + 1)
    )


@dataclass
class LemmaReport:
    """Outcome of the exhaustive vertex check of the recursion squares.

    ``violations`` lists every failed square (empty = all commute);
    ``observations`` records identities that are noted but deliberately not
    required, such as the endpoint coincidence of the two families.
    """

    n_max: int
    checked: int
    violations: list[str]
    observations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations


def _face_square(rule: str, n: int, s: int, l: int) -> str | None:
    """Compare f(n, s) o (delta^l)^2 with (delta^l)^2 o f(n-1, s')."""
    if rule == "phi":
        s_small = s if l <= n - s else s - 1
    else:
        s_small = s if l >= s else s - 1
    big = GridEndo(n, s, rule)
    small = GridEndo(n - 1, s_small, rule)
    for i, j in product(range(n), repeat=2):
        lhs = big((delta_vertex(l, i), delta_vertex(l, j)))
        a, b = small((i, j))
        rhs = (delta_vertex(l, a), delta_vertex(l, b))
        if lhs != rhs:
            return (
                f"{rule} face square fails at n={n}, s={s}, l={l}, "
                f"point ({i},{j}): {lhs} != {rhs}"
            )
    return None


def _degeneracy_square(rule: str, n: int, s: int, l: int) -> str | None:
    """Compare f(n-1, s) o (sigma^l)^2 with (sigma^l)^2 o f(n, S), where s
    indexes the smaller grid (which covers every case)."""
    if rule == "phi":
        s_big = s if l <= n - s - 1 else s + 1
    else:
        s_big = s if l >= s else s + 1
    small = GridEndo(n - 1, s, rule)
    big = GridEndo(n, s_big, rule)
    for i, j in product(range(n + 1), repeat=2):
        lhs = small((sigma_vertex(l, i), sigma_vertex(l, j)))
        a, b = big((i, j))
        rhs = (sigma_vertex(l, a), sigma_vertex(l, b))
        if lhs != rhs:
            return (
                f"{rule} degeneracy square fails at n={n}, s={s}, l={l}, "
                f"point ({i},{j}): {lhs} != {rhs}"
            )
    return None


def lemma_check(n_max: int) -> LemmaReport:
    """Exhaustively verify the recursion squares for all n <= n_max.

    Every face square (all s on the larger grid, all 0 <= l <= n), every
    degeneracy square (all s on the smaller grid, all 0 <= l <= n - 1),
    both families, plus the endpoint identities and monotonicity of every
    map.  Failures are reported in the result, never raised.
    """
    violations: list[str] = []
    observations: list[str] = []
    checked = 0

    for n in range(1, n_max + 1):
        for rule in ("phi", "psi"):
            for s in range(n + 2):
                for l in range(n + 1):
                    msg = _face_square(rule, n, s, l)
                    checked += 1
                    if msg:
                        violations.append(msg)
            for s in range(n + 1):
                for l in range(n):
                    msg = _degeneracy_square(rule, n, s, l)
                    checked += 1
                    if msg:
                        violations.append(msg)

    for n in range(n_max + 1):
        ident = lambda pt: pt
        if not _equal_on_grid(phi(n, 0), ident, n):
            violations.append(f"phi(n={n}, s=0) is not the identity")
        diag_proj = lambda pt: (pt[0], pt[0])
        for s in (n, n + 1):
            if not _equal_on_grid(psi(n, s), diag_proj, n):
                violations.append(
                    f"psi(n={n}, s={s}) is not the diagonal projection"
                )
        checked += 3
        for s in range(n + 2):
            for rule in ("phi", "psi"):
                endo = GridEndo(n, s, rule)
                checked += 1
                if not endo.is_monotone():
                    violations.append(f"{rule}(n={n}, s={s}) is not monotone")
        if _equal_on_grid(phi(n, n + 1), psi(n, 0), n):
            observations.append(
                f"phi(n={n}, s={n + 1}) coincides with psi(n={n}, s=0)"
            )

    if n_max >= 1:
        if not _equal_on_grid(phi(1, 1), phi(1, 2), 1):
            violations.append("phi(1,1) != phi(1,2)")
        if not _equal_on_grid(psi(1, 1), psi(1, 2), 1):
            violations.append("psi(1,1) != psi(1,2)")
        checked += 2

    return LemmaReport(
        n_max=n_max, checked=checked, violations=violations, observations=observations
    )

"""Dense exact linear algebra over a prime field.

Matrices are numpy int64 arrays whose entries are reduced modulo the prime.
With the prime capped below 2**31 every pivoting step stays below 2**62, so
all arithmetic is exact in int64.  Pivoting is deterministic (first nonzero
entry, scanning rows top to bottom), which keeps every downstream basis and
report byte-stable.

The chain-complex layer keeps its differentials as *integer* matrices so
signs survive for display, and reduces mod p only when computing.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

import numpy as np

from .errors import LinAlgError


def _check_prime(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool):
        raise LinAlgError(f"field characteristic must be an int, got {p!r}")
    if p < 2 or p >= 2**31:
        raise LinAlgError(f"field characteristic {p} out of range [2, 2**31)")
    if p == 2:
        return
    if p % 2 == 0:
        raise LinAlgError(f"{p} is not prime")
    for d in range(3, isqrt(p) + 1, 2):
        if p % d == 0:
            raise LinAlgError(f"{p} is not prime ({d} divides it)")


def balanced_lift(M: np.ndarray, p: int) -> np.ndarray:
    """Lift residues to the integer interval (-p/2, p/2] for display."""
    M = np.asarray(M, dtype=np.int64) % p
    return np.where(M > p // 2, M - p, M)


class PrimeField:
    """GF(p) arithmetic on dense int64 matrices."""

    def __init__(self, p: int):
        _check_prime(p)
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def reduce(self, M) -> np.ndarray:
        return np.asarray(M, dtype=np.int64) % self.p

    def matmul(self, A, B) -> np.ndarray:
        """Exact product; the inner dimension is chunked so partial sums
        stay below 2**62."""
        A, B = self.reduce(A), self.reduce(B)
        if A.shape[1] != B.shape[0]:
            raise LinAlgError(f"shape mismatch {A.shape} @ {B.shape}")
        step = max(1, (2**62) // (self.p * self.p))
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for s in range(0, A.shape[1], step):
            out = (out + A[:, s : s + step] @ B[s : s + step, :]) % self.p
        return out

    def rref(self, M) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and the pivot-column list."""
        R = self.reduce(M).copy()
        rows, cols = R.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(R[r:, c])[0]
            if len(nz) == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                R[[r, pr]] = R[[pr, r]]
            inv = pow(int(R[r, c]), self.p - 2, self.p)
            R[r] = (R[r] * inv) % self.p
            col = R[:, c].copy()
            col[r] = 0
            R = (R - np.outer(col, R[r])) % self.p
            pivots.append(c)
            r += 1
        return R, pivots

    def rank(self, M) -> int:
        return len(self.rref(M)[1])

    def kernel(self, M) -> np.ndarray:
        """Matrix whose columns are a basis of the null space."""
        M = self.reduce(M)
        R, pivots = self.rref(M)
        pivot_set = set(pivots)
        free = [c for c in range(M.shape[1]) if c not in pivot_set]
        K = np.zeros((M.shape[1], len(free)), dtype=np.int64)
        for idx, fc in enumerate(free):
            K[fc, idx] = 1
            for row, pc in enumerate(pivots):
                K[pc, idx] = (-int(R[row, fc])) % self.p
        return K

    def image(self, M) -> np.ndarray:
        """The pivot columns of M itself: a basis of the column span."""
        M = self.reduce(M)
        _, pivots = self.rref(M)
        return M[:, pivots]

    def solve(self, A, b) -> np.ndarray:
        """Solve A x = b (b may be a vector or a matrix of columns)."""
        A = self.reduce(A)
        b = self.reduce(b)
        vector = b.ndim == 1
        B = b[:, None] if vector else b
        if B.shape[0] != A.shape[0]:
            raise LinAlgError(f"shape mismatch solving {A.shape} x = {B.shape}")
        R, pivots = self.rref(np.concatenate([A, B], axis=1))
        n = A.shape[1]
        if pivots and pivots[-1] >= n:
            raise LinAlgError("inconsistent linear system")
        X = np.zeros((n, B.shape[1]), dtype=np.int64)
        for row, pc in enumerate(pivots):
            X[pc] = R[row, n:]
        return X[:, 0] if vector else X


class Subquotient:
    """A quotient span(total)/span(sub) with stored representatives.

    ``representatives`` are columns of ``total`` completing a basis of the
    sub down in the ambient space; :meth:`coords` expresses any ambient
    vector lying in span(total) in terms of the representative classes.
    """

    def __init__(self, field: PrimeField, total: np.ndarray, sub: np.ndarray):
        self.field = field
        total = field.reduce(total)
        sub = field.reduce(sub)
        if total.shape[0] != sub.shape[0]:
            raise LinAlgError("subquotient spaces live in different ambients")
        if field.rank(total) != field.rank(np.concatenate([total, sub], axis=1)):
            raise LinAlgError("sub is not contained in total")
        sub_basis = field.image(sub)
        k = sub_basis.shape[1]
        _, pivots = field.rref(np.concatenate([sub_basis, total], axis=1))
        self.representatives = total[:, [pv - k for pv in pivots if pv >= k]]
        self.dimension = self.representatives.shape[1]
        self._solve_matrix = np.concatenate([sub_basis, self.representatives], axis=1)
        self._sub_rank = k

    def coords(self, z: np.ndarray) -> np.ndarray:
        """Coordinates of the class of z on the stored representatives."""
        sol = self.field.solve(self._solve_matrix, z)
        return sol[self._sub_rank :]


@dataclass
class HomologyEntry:
    """Homology in one degree, with chosen cycle representatives."""

    degree: int
    dimension: int
    representatives: np.ndarray
    _classes: Subquotient | None

    def coords(self, cycle: np.ndarray) -> np.ndarray:
        if self._classes is None:
            raise LinAlgError("homology of an empty degree has no coordinates")
        return self._classes.coords(cycle)


class ChainComplex:
    """A nonnegatively graded chain complex over a prime field.

    ``labels[n]`` names the basis of degree n; ``differentials[n]`` is an
    integer matrix of shape (dim(n-1), dim(n)) sending degree n to n-1.
    The square-zero law is checked over the field at construction.
    """

    def __init__(
        self,
        field: PrimeField,
        labels: dict[int, list[str]],
        differentials: dict[int, np.ndarray],
    ):
        self.field = field
        self.labels = {n: list(ls) for n, ls in labels.items() if ls}
        self.differentials: dict[int, np.ndarray] = {}
        for n, M in differentials.items():
            M = np.asarray(M, dtype=np.int64)
            if M.shape != (self.dim(n - 1), self.dim(n)):
                raise LinAlgError(
                    f"differential in degree {n} has shape {M.shape}, expected "
                    f"({self.dim(n - 1)}, {self.dim(n)})"
                )
            self.differentials[n] = M
        for n, M in self.differentials.items():
            prev = self.differentials.get(n - 1)
            if prev is not None and M.size and prev.size:
                if np.any(field.matmul(prev, M)):
                    raise LinAlgError(f"differentials do not square to zero at {n}")
        self._homology: dict[int, HomologyEntry] = {}

    def dim(self, n: int) -> int:
        return len(self.labels.get(n, []))

    @property
    def top_degree(self) -> int:
        return max(self.labels) if self.labels else -1

    def differential(self, n: int) -> np.ndarray:
        M = self.differentials.get(n)
        if M is None:
            return np.zeros((self.dim(n - 1), self.dim(n)), dtype=np.int64)
        return M

    def homology(self, n: int) -> HomologyEntry:
        hit = self._homology.get(n)
        if hit is not None:
            return hit
        if self.dim(n) == 0:
            entry = HomologyEntry(n, 0, np.zeros((0, 0), dtype=np.int64), None)
        else:
            cycles = self.field.kernel(self.differential(n))
            boundaries = self.field.reduce(self.differential(n + 1))
            classes = Subquotient(self.field, cycles, boundaries)
            entry = HomologyEntry(
                n, classes.dimension, classes.representatives, classes
            )
        self._homology[n] = entry
        return entry

    def betti(self, n: int) -> int:
        return self.homology(n).dimension

    def betti_numbers(self, top: int) -> list[int]:
        return [self.betti(n) for n in range(top + 1)]


def induced_map(
    source: ChainComplex,
    target: ChainComplex,
    chain_maps: dict[int, np.ndarray],
    n: int,
) -> np.ndarray:
    """Matrix of the map induced on degree-n homology by a chain map.

    ``chain_maps[k]`` carries degree k of the source to the target.  The
    chain-map square with the differentials is verified (mod p) in degree n
    whenever the degree below is supplied.
    """
    field = source.field
    f_n = field.reduce(chain_maps.get(n, np.zeros((target.dim(n), source.dim(n)))))
    if f_n.shape != (target.dim(n), source.dim(n)):
        raise LinAlgError(
            f"chain map in degree {n} has shape {f_n.shape}, expected "
            f"({target.dim(n)}, {source.dim(n)})"
        )
    f_below = chain_maps.get(n - 1)
    if f_below is not None and source.dim(n) and target.dim(n - 1):
        lhs = field.matmul(target.differential(n), f_n)
        rhs = field.matmul(field.reduce(f_below), source.differential(n))
        if np.any((lhs - rhs) % field.p):
            raise LinAlgError(f"not a chain map in degree {n}")
    src_h = source.homology(n)
    tgt_h = target.homology(n)
    out = np.zeros((tgt_h.dimension, src_h.dimension), dtype=np.int64)
    if src_h.dimension == 0 or tgt_h.dimension == 0:
        return out
    images = field.matmul(f_n, src_h.representatives)
    for j in range(src_h.dimension):
        out[:, j] = tgt_h.coords(images[:, j])
    return out


def normalized_chains(
    field: PrimeField,
    labels: dict[int, list[str]],
    faces: dict[int, list[list[str | None]]],
) -> ChainComplex:
    """Normalized chains of a simplicial set from generator face labels.

    ``faces[n][k]`` lists, for the k-th generator of dimension n, the label
    of each face, or ``None`` where that face is degenerate (degenerate
    faces are dropped by normalization).  Differentials are the usual
    alternating sums, kept as integer matrices.
    """
    diffs: dict[int, np.ndarray] = {}
    for n, rows in faces.items():
        below = {nm: r for r, nm in enumerate(labels.get(n - 1, []))}
        M = np.zeros((len(below), len(labels.get(n, []))), dtype=np.int64)
        for k, entry in enumerate(rows):
            for i, nm in enumerate(entry):
                if nm is None:
                    continue
                M[below[nm], k] += -1 if i % 2 else 1
        diffs[n] = M
    return ChainComplex(field, labels, diffs)

"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction`, matrices are sequences of
such tuples (one tuple per row).  Nothing in this module touches floats.
Ranks are computed by fraction-free (Bareiss) elimination on integer-scaled
rows; solves and projections use Gauss-Jordan over the rationals.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

Rational = Fraction
RVector = tuple  # tuple[Fraction, ...]
RMatrix = Sequence[RVector]

__all__ = [
    "Rational", "RVector", "RMatrix", "Subspace",
    "vec", "zero", "unit", "dot", "add", "sub", "scale", "neg", "is_zero",
    "rank", "independent_indices", "solve_pairing", "solve_affine",
    "nullspace", "inverse", "matvec", "transpose",
    "project_hyperplane", "project_span", "affine_dim", "span",
    "primitive_integer", "parse_rational", "format_rational",
]


def vec(*coords) -> RVector:
    """Build an exact vector; accepts ints, Fractions and ``"p/q"`` strings."""
    if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, str)):
        coords = tuple(coords[0])
    return tuple(Fraction(c) for c in coords)


def zero(d: int) -> RVector:
    return (Fraction(0),) * d


def unit(d: int, i: int) -> RVector:
    return tuple(Fraction(1 if j == i else 0) for j in range(d))


def dot(x: RVector, y: RVector) -> Fraction:
    if len(x) != len(y):
        raise ValueError(f"length mismatch: {len(x)} vs {len(y)}")
    s = Fraction(0)
    for a, b in zip(x, y):
        if a and b:
            s += a * b
    return s


def add(x: RVector, y: RVector) -> RVector:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: RVector, y: RVector) -> RVector:
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x: RVector) -> RVector:
    c = Fraction(c)
    return tuple(c * a for a in x)


def neg(x: RVector) -> RVector:
    return tuple(-a for a in x)


def is_zero(x: RVector) -> bool:
    return not any(x)


def parse_rational(s) -> Fraction:
    if isinstance(s, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(s, float):
        raise TypeError("floats are not accepted; use 'p/q' strings")
    return Fraction(s)


def format_rational(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _integer_row(row: RVector) -> list:
    m = 1
    for c in row:
        m = lcm(m, c.denominator)
    return [int(c * m) for c in row]


def primitive_integer(x: RVector) -> tuple:
    """Scale ``x`` by a positive rational to a primitive integer vector."""
    row = _integer_row(x)
    g = 0
    for c in row:
        g = gcd(g, c)
    if g == 0:
        return tuple(row)
    return tuple(c // g for c in row)


def _bareiss_echelon(m: list) -> list:
    """Fraction-free row echelon in place; returns the pivot columns.

    Pivot choice is deterministic: for each column in order, the first row
    at or below the current pivot row holding a nonzero entry.
    """
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    r = 0
    prev = 1
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        p = r
        while p < nrows and m[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        if p != r:
            m[p], m[r] = m[r], m[p]
        piv = m[r][c]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            for j in range(c + 1, ncols):
                row[j] = (piv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return pivots


def rank(M: RMatrix) -> int:
    """Exact rank over Q."""
    rows = [_integer_row(tuple(r)) for r in M]
    if not rows or not rows[0]:
        return 0
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise ValueError("matrix is not rectangular")
    return len(_bareiss_echelon(rows))


def independent_indices(vectors: Sequence[RVector]) -> list:
    """Indices of the first linearly independent subfamily, in input order."""
    chosen: list = []
    basis_rows: list = []
    for i, v in enumerate(vectors):
        trial = basis_rows + [_integer_row(v)]
        if len(_bareiss_echelon([r[:] for r in trial])) == len(trial):
            basis_rows.append(_integer_row(v))
            chosen.append(i)
            if len(chosen) == len(v):
                break
    return chosen


def span(vectors: Iterable[RVector], d: int) -> "Subspace":
    vectors = list(vectors)
    idx = independent_indices(vectors) if vectors else []
    return Subspace(d, tuple(vectors[i] for i in idx))


def _rref(aug: list, ncols: int):
    """Gauss-Jordan on a list of Fraction rows; returns pivot columns.

    Only the first ``ncols`` columns are eligible as pivots.
    """
    r = 0
    pivots = []
    nrows = len(aug)
    for c in range(ncols):
        p = r
        while p < nrows and aug[p][c] == 0:
            p += 1
        if p == nrows:
            continue
        aug[p], aug[r] = aug[r], aug[p]
        inv = 1 / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def solve_affine(basis: Sequence[RVector], targets: Sequence) -> Optional[tuple]:
    """All ``b`` with ``<basis_j, b> = targets_j``.

    Returns ``(particular, nullspace_basis)`` or ``None`` when inconsistent.
    The particular solution sets every free coordinate to zero.
    """
    if len(basis) != len(targets):
        raise ValueError(f"{len(basis)} basis vectors but {len(targets)} targets")
    if not basis:
        raise ValueError("empty system: ambient dimension unknown")
    d = len(basis[0])
    aug = [list(row) + [Fraction(t)] for row, t in zip(basis, targets)]
    pivots = _rref(aug, d)
    for row in aug[len(pivots):]:
        if row[d] != 0:
            return None
    sol = [Fraction(0)] * d
    for r, c in enumerate(pivots):
        sol[c] = aug[r][d]
    free = [c for c in range(d) if c not in pivots]
    null = []
    for f in free:
        v = [Fraction(0)] * d
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -aug[r][f]
        null.append(tuple(v))
    return tuple(sol), null


def solve_pairing(basis: Sequence[RVector], targets: Sequence) -> Optional[RVector]:
    """A vector ``b`` with ``<basis_j, b> = targets_j`` for all j, or None."""
    res = solve_affine(basis, targets)
    return None if res is None else res[0]


def nullspace(M: RMatrix, d: Optional[int] = None) -> list:
    """Basis of ``{x : M x = 0}``."""
    if not M:
        if d is None:
            raise ValueError("ambient dimension required for an empty matrix")
        return [unit(d, i) for i in range(d)]
    return solve_affine(M, [0] * len(M))[1]


def transpose(M: RMatrix) -> list:
    return [tuple(col) for col in zip(*M)]


def matvec(M: RMatrix, x: RVector) -> RVector:
    return tuple(dot(row, x) for row in M)


def inverse(M: RMatrix) -> list:
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("inverse needs a square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    pivots = _rref(aug, n)
    if len(pivots) != n:
        raise ZeroDivisionError("matrix is singular")
    return [tuple(row[n:]) for row in aug]


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim given by an independent basis."""

    ambient_dim: int
    basis: tuple

    def __post_init__(self):
        for b in self.basis:
            if len(b) != self.ambient_dim:
                raise ValueError("basis vector of wrong length")
        if self.basis and rank(self.basis) != len(self.basis):
            raise ValueError("basis vectors are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, x: RVector) -> bool:
        if is_zero(x):
            return True
        return rank(list(self.basis) + [x]) == self.dim

    def orthogonal_complement(self) -> "Subspace":
        return Subspace(self.ambient_dim, tuple(nullspace(list(self.basis), self.ambient_dim)))


def project_hyperplane(x: RVector, n: RVector) -> RVector:
    """Orthogonal projection of ``x`` onto ``{y : <y, n> = 0}``."""
    if is_zero(n):
        raise ValueError("normal vector must be nonzero")
    t = dot(x, n)
    if t == 0:
        return tuple(x)
    c = t / dot(n, n)
    return tuple(a - c * b for a, b in zip(x, n))


def project_span(x: RVector, S: Subspace) -> RVector:
    """Orthogonal projection onto ``S`` through the normal equations."""
    if not S.basis:
        return zero(len(x))
    Q = S.basis
    gram = [tuple(dot(p, q) for q in Q) for p in Q]
    rhs = [dot(p, x) for p in Q]
    coef = solve_pairing(gram, rhs)
    out = [Fraction(0)] * len(x)
    for c, q in zip(coef, Q):
        if c:
            for i, qi in enumerate(q):
                out[i] += c * qi
    return tuple(out)


def affine_dim(points: Sequence[RVector]) -> int:
    """Dimension of the affine hull of a nonempty point set."""
    if not points:
        raise ValueError("affine dimension of the empty set is undefined")
    p0 = points[0]
    diffs = [sub(p, p0) for p in points[1:]]
    return rank(diffs) if diffs else 0

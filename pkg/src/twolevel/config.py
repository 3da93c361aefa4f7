"""Binary pair configurations: point sets A, B with all products in {0, 1}."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .exactlin import (
    RVector, add, affine_dim, dot, independent_indices, inverse, is_zero,
    neg, project_hyperplane, rank, sub, transpose, vec, zero,
)

__all__ = [
    "Configuration", "ValidationReport", "LevelSignature", "TransformLog",
    "CanonicalMap", "validate", "complete_B", "complete_A", "maximalize",
    "is_maximal", "canonicalize", "phi", "has_opposite_points",
    "claim1_transform", "replay_transform", "pairing_matrix", "tight_example",
]

ONE = Fraction(1)


@dataclass(frozen=True)
class Configuration:
    """Ambient dimension ``d`` and two point lists ``A`` and ``B``.

    The {0,1} pairing property is *not* enforced here (see :func:`validate`);
    intermediate configurations of the proof tracer legitimately carry
    products in {0, -1}.
    """

    d: int
    A: tuple
    B: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", tuple(tuple(Fraction(c) for c in a) for a in self.A))
        object.__setattr__(self, "B", tuple(tuple(Fraction(c) for c in b) for b in self.B))
        for name in ("A", "B"):
            pts = getattr(self, name)
            for p in pts:
                if len(p) != self.d:
                    raise ValueError(f"{name} point {p} has length {len(p)}, expected {self.d}")
            if len(set(pts)) != len(pts):
                seen = set()
                dup = next(p for p in pts if p in seen or seen.add(p))
                raise ValueError(f"duplicate point in {name}: {list(map(str, dup))}")

    @property
    def spans_A(self) -> bool:
        return _spans(self.A, self.d)

    @property
    def spans_B(self) -> bool:
        return _spans(self.B, self.d)

    @property
    def product(self) -> int:
        return len(self.A) * len(self.B)

    @property
    def bound(self) -> int:
        return (self.d + 1) * 2 ** self.d


def _spans(points, d) -> bool:
    if d == 0:
        return True
    return bool(points) and rank(points) == d


def pairing_matrix(cfg: Configuration) -> list:
    return [[dot(a, b) for b in cfg.B] for a in cfg.A]


def tight_example(d: int) -> Configuration:
    """A = {0, e_1, ..., e_d}, B = {0,1}^d."""
    A = [zero(d)] + [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    B = [vec(p) for p in product((0, 1), repeat=d)]
    return Configuration(d, tuple(A), tuple(B))


@dataclass
class ValidationReport:
    violations: list  # (index in A, index in B, product)
    spans_A: bool
    spans_B: bool
    size_A: int
    size_B: int

    @property
    def valid(self) -> bool:
        return not self.violations and self.spans_A and self.spans_B

    @property
    def product(self) -> int:
        return self.size_A * self.size_B


def validate(cfg: Configuration) -> ValidationReport:
    bad = []
    for i, a in enumerate(cfg.A):
        for j, b in enumerate(cfg.B):
            p = dot(a, b)
            if p != 0 and p != 1:
                bad.append((i, j, p))
    return ValidationReport(bad, cfg.spans_A, cfg.spans_B, len(cfg.A), len(cfg.B))


def _complete(fixed: Sequence[RVector], d: int, include_zero: bool, role: str) -> list:
    if d == 0:
        return [()] if include_zero else []
    idx = independent_indices(fixed)
    if len(idx) < d:
        raise ValueError(f"{role} does not span R^{d}; completion is undefined")
    basis = [fixed[i] for i in idx]
    inv_cols = transpose(inverse(basis))  # column j of the inverse
    others = [f for k, f in enumerate(fixed) if k not in set(idx)]
    out = []
    for pattern in product((0, 1), repeat=d):
        cand = zero(d)
        for t, col in zip(pattern, inv_cols):
            if t:
                cand = add(cand, col)
        if all(dot(f, cand) in (0, 1) for f in others):
            out.append(cand)
    if not include_zero:
        out = [c for c in out if not is_zero(c)]
    return sorted(out)


def complete_B(A: Sequence[RVector], include_zero: bool = True) -> list:
    """Inclusion-maximal set of b with <a, b> in {0,1} for every a in A."""
    A = list(A)
    d = len(A[0]) if A else 0
    return _complete(A, d, include_zero, "A")


def complete_A(B: Sequence[RVector], include_zero: bool = True) -> list:
    B = list(B)
    d = len(B[0]) if B else 0
    return _complete(B, d, include_zero, "B")


def maximalize(cfg: Configuration) -> Configuration:
    """Grow both sides to a mutually maximal pair.

    ``complete_A(complete_B(A))`` already has ``complete_B(A)`` as its own
    maximal partner, so two completions suffice.
    """
    B = complete_B(cfg.A, include_zero=True)
    A = complete_A(B, include_zero=True)
    return Configuration(cfg.d, tuple(A), tuple(B))


def is_maximal(cfg: Configuration) -> tuple:
    """(A maximal, B minus 0 maximal) by re-completion."""
    a_ok = set(cfg.A) == set(complete_A(cfg.B, include_zero=True))
    nonzero_B = {b for b in cfg.B if not is_zero(b)}
    b_ok = nonzero_B == set(complete_B(cfg.A, include_zero=False))
    return a_ok, b_ok


@dataclass(frozen=True)
class CanonicalMap:
    M: tuple  # rows are the chosen basis of B
    basis_indices: tuple


def canonicalize(cfg: Configuration):
    """Change basis so the chosen basis of B becomes e_1..e_d.

    A goes to ``M a`` and B to ``M^{-T} b``; every pairing is preserved and
    each transformed a holds its products with the B-basis as coordinates.
    """
    idx = independent_indices(cfg.B)
    if len(idx) < cfg.d:
        raise ValueError("B does not span; cannot canonicalize")
    M = [cfg.B[i] for i in idx]
    inv_t = transpose(inverse(M))
    A2 = tuple(tuple(dot(row, a) for row in M) for a in cfg.A)
    B2 = tuple(tuple(dot(row, b) for row in inv_t) for b in cfg.B)
    return Configuration(cfg.d, A2, B2), CanonicalMap(tuple(M), tuple(idx))


def phi(cfg: Configuration, x: RVector) -> int:
    """Larger affine dimension of the two faces of conv(A) cut out by ``x``."""
    if is_zero(x):
        raise ValueError("phi is undefined for the zero vector")
    if not cfg.A:
        raise ValueError("phi needs a nonempty A")
    vals = [dot(a, x) for a in cfg.A]
    lo, hi = min(vals), max(vals)
    if lo == hi:
        return affine_dim(cfg.A)
    low_face = [a for a, v in zip(cfg.A, vals) if v == lo]
    high_face = [a for a, v in zip(cfg.A, vals) if v == hi]
    return max(affine_dim(low_face), affine_dim(high_face))


def has_opposite_points(S: Sequence[RVector]) -> Optional[tuple]:
    present = set(S)
    for x in S:
        if is_zero(x):
            continue
        y = neg(x)
        if y in present:
            return (x, y)
    return None


@dataclass(frozen=True)
class LevelSignature:
    epsilon: dict  # b -> +1/-1, products over A lie in {0, epsilon}
    gamma: dict  # b -> +1/-1, products over A1' lie in {0, gamma}


@dataclass(frozen=True)
class TransformLog:
    swapped: bool
    translation: RVector
    negated: frozenset  # indices into the original B
    a1_anchor: Optional[RVector]

    @property
    def changed(self) -> bool:
        return self.swapped or bool(self.negated)


def _sign_of(values, what: str) -> int:
    nz = {v for v in values if v != 0}
    if not nz:
        return 1
    if nz == {ONE}:
        return 1
    if nz == {-ONE}:
        return -1
    raise ArithmeticError(f"{what}: products {sorted(nz)} are not of the form {{0, +-1}}")


def claim1_transform(cfg: Configuration, b_d: RVector):
    """Translate A and flip signs in B around the chosen vector ``b_d``.

    Returns ``(new_cfg, new_b_d, log, signature)``.  Afterwards the level
    sets A_0, A_1 of ``b_d`` satisfy |A_0| >= |A_1|, A_0 pairs into {0,1}
    with all of B, and the projection of B along ``b_d`` has no opposite
    points.
    """
    b_d = tuple(b_d)
    if is_zero(b_d):
        raise ValueError("b_d must be nonzero")
    try:
        bd_index = cfg.B.index(b_d)
    except ValueError:
        raise ValueError("b_d is not an element of B") from None

    A = list(cfg.A)
    B = list(cfg.B)
    d = cfg.d
    signs = [1] * len(B)

    # step 1: make the zero level the larger one
    n0 = sum(1 for a in A if dot(a, b_d) == 0)
    n1 = sum(1 for a in A if dot(a, b_d) == 1)
    swapped = n0 <= n1
    translation = zero(d)
    if swapped:
        a_star = next((a for a in A if dot(a, b_d) == 1), None)
        if a_star is None:
            raise ArithmeticError("internal inconsistency: no a with <a, b_d> = 1")
        translation = a_star
        A = [sub(a, a_star) for a in A]
        signs[bd_index] = -1
    cur = [b if s == 1 else neg(b) for b, s in zip(B, signs)]
    bd_cur = cur[bd_index]

    A0 = [a for a in A if dot(a, bd_cur) == 0]
    A1 = [a for a in A if dot(a, bd_cur) == 1]
    if len(A0) + len(A1) != len(A):
        raise ArithmeticError("internal inconsistency: products against b_d outside {0,1}")

    # step 2: flip b whose A_0-products are {0, -1}
    for j, b in enumerate(cur):
        vals = {dot(a, b) for a in A0}
        if -ONE in vals:
            signs[j] = -signs[j]
    cur = [b if s == 1 else neg(b) for b, s in zip(B, signs)]

    # step 3: among b vanishing on A_0, orient by the translate of A_1
    anchor = min(A1) if A1 else None
    A1p = [sub(a, anchor) for a in A1] if A1 else []
    for j, b in enumerate(cur):
        if all(dot(a, b) == 0 for a in A0):
            vals = {dot(a, b) for a in A1p}
            if -ONE in vals and ONE not in vals:
                signs[j] = -signs[j]
    cur = [b if s == 1 else neg(b) for b, s in zip(B, signs)]

    new_cfg = Configuration(d, tuple(A), tuple(cur))
    eps = {b: _sign_of([dot(a, b) for a in A], "epsilon") for b in cur}
    gam = {b: _sign_of([dot(a, b) for a in A1p], "gamma") for b in cur}
    negated = frozenset(j for j, s in enumerate(signs) if s == -1)
    log = TransformLog(swapped, translation, negated, anchor)
    return new_cfg, cur[bd_index], log, LevelSignature(eps, gam)


def replay_transform(cfg: Configuration, log: TransformLog) -> Configuration:
    A = tuple(sub(a, log.translation) for a in cfg.A)
    B = tuple(neg(b) if j in log.negated else b for j, b in enumerate(cfg.B))
    return Configuration(cfg.d, A, B)


def projected_opposites(cfg: Configuration, b_d: RVector) -> Optional[tuple]:
    """Opposite pair inside the projection of B along ``b_d``, if any."""
    return has_opposite_points([project_hyperplane(b, b_d) for b in cfg.B])

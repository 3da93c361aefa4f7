"""2-level polytopes from vertex lists.

Facets come from an exact double-description run over the homogenized
vertex cone.  Parallel facet pairs share one :class:`Facet` record, which is
what the vertex-facet product bound counts with multiplicity.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Optional

from .combinat import Graph, Poset
from .config import Configuration, validate
from .exactlin import (
    RVector, affine_dim, dot, format_rational, independent_indices, rank, sub,
)

__all__ = [
    "VPolytope", "Facet", "TwoLevelReport", "PolytopeError", "facets",
    "is_two_level", "to_configuration", "verify_bound", "generate",
    "MAX_DIM", "MAX_VERTICES",
]

MAX_DIM = 6
MAX_VERTICES = 64


class PolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class VPolytope:
    d: int
    vertices: tuple

    def __post_init__(self):
        V = tuple(tuple(Fraction(c) for c in v) for v in self.vertices)
        object.__setattr__(self, "vertices", V)
        if any(len(v) != self.d for v in V):
            raise PolytopeError("vertex of wrong length")
        if len(set(V)) != len(V):
            raise PolytopeError("duplicate vertices")

    @property
    def f0(self) -> int:
        return len(self.vertices)

    @property
    def full_dimensional(self) -> bool:
        return bool(self.vertices) and affine_dim(self.vertices) == self.d


@dataclass(frozen=True)
class Facet:
    """A primitive integer normal and the facet-defining sides it carries.

    ``low_is_facet``: ``<normal, x> >= rhs_low`` defines a facet;
    ``high_is_facet``: ``<normal, x> <= rhs_high`` does.
    """

    normal: tuple
    rhs_low: Fraction
    rhs_high: Fraction
    low_is_facet: bool
    high_is_facet: bool
    vertex_levels: tuple  # ((value, count), ...) ascending

    @property
    def multiplicity(self) -> int:
        return int(self.low_is_facet) + int(self.high_is_facet)

    @property
    def levels(self) -> list:
        return [v for v, _ in self.vertex_levels]


@dataclass
class TwoLevelReport:
    d: int
    is_two_level: bool
    witness: Optional[Facet]
    f0: int
    f_dminus1: int
    cross_check: Optional[dict] = None

    @property
    def product(self) -> int:
        return self.f0 * self.f_dminus1

    @property
    def bound(self) -> int:
        return self.d * 2 ** (self.d + 1)

    @property
    def holds(self) -> bool:
        return self.product <= self.bound


def _int_row(row) -> list:
    m = 1
    for c in row:
        m = lcm(m, c.denominator)
    return [int(c * m) for c in row]


def _primitive(v):
    g = 0
    for c in v:
        g = gcd(g, c)
    return tuple(c // g for c in v) if g > 1 else tuple(v)


def _idot(x, y) -> int:
    return sum(a * b for a, b in zip(x, y))


def _adjugate_columns(S):
    """Columns of adj(S) * sign(det S), via exact rational inverse."""
    from .exactlin import inverse
    n = len(S)
    inv = inverse([tuple(Fraction(c) for c in row) for row in S])
    cols = []
    for j in range(n):
        col = [inv[i][j] for i in range(n)]
        cols.append(_primitive(_int_row(col)))
    return cols


def _double_description(rows: list, dim: int) -> list:
    """Extreme rays of the cone ``{y : <r, y> >= 0 for r in rows}``.

    ``rows`` must contain ``dim`` linearly independent vectors; the cone is
    then pointed.  Adjacency is decided combinatorially: two rays are
    adjacent when no third ray vanishes on every constraint both vanish on.
    """
    start = independent_indices([tuple(Fraction(c) for c in r) for r in rows])
    if len(start) < dim:
        raise PolytopeError("vertex set is not full-dimensional")
    rays = _adjugate_columns([rows[i] for i in start])
    processed = list(start)

    def zero_set(y):
        z = 0
        for k in processed:
            if _idot(rows[k], y) == 0:
                z |= 1 << k
        return z

    zs = [zero_set(y) for y in rays]
    for k in range(len(rows)):
        if k in start:
            continue
        r = rows[k]
        vals = [_idot(r, y) for y in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        negs = [i for i, v in enumerate(vals) if v < 0]
        keep = [i for i, v in enumerate(vals) if v >= 0]
        new_rays = [rays[i] for i in keep]
        new_zs = [zs[i] | (1 << k if vals[i] == 0 else 0) for i in keep]
        for p in pos:
            for q in negs:
                common = zs[p] & zs[q]
                if bin(common).count("1") < dim - 2:
                    continue
                if any(t != p and t != q and (zs[t] & common) == common
                       for t in range(len(rays))):
                    continue
                y = _primitive([vals[p] * b - vals[q] * a for a, b in zip(rays[p], rays[q])])
                new_rays.append(y)
                new_zs.append(common | (1 << k))
        rays, zs = new_rays, new_zs
        processed.append(k)
    return rays


def facets(P: VPolytope) -> list:
    """Exact, duplicate-free facet list with parallel pairs merged."""
    if P.d > MAX_DIM or P.f0 > MAX_VERTICES:
        raise PolytopeError(f"beyond desk scale (d <= {MAX_DIM}, <= {MAX_VERTICES} vertices)")
    if P.d == 0 or not P.full_dimensional:
        raise PolytopeError("polytope is not full-dimensional")
    rows = [_int_row((Fraction(1),) + v) for v in P.vertices]
    rays = _double_description(rows, P.d + 1)

    sides: dict = {}
    for y in rays:
        b = _primitive(list(y[1:]))
        lead = next(c for c in b if c != 0)
        key = b if lead > 0 else tuple(-c for c in b)
        entry = sides.setdefault(key, [False, False])
        entry[0 if lead > 0 else 1] = True

    out = []
    for normal in sorted(sides):
        vals = [dot(tuple(Fraction(c) for c in normal), v) for v in P.vertices]
        low, high = sides[normal]
        cnt = Counter(vals)
        out.append(Facet(tuple(normal), min(vals), max(vals), low, high,
                         tuple(sorted(cnt.items()))))

    # every listed point must be a vertex: its tight normals span R^d
    for v in P.vertices:
        tight = []
        for f in out:
            val = dot(tuple(Fraction(c) for c in f.normal), v)
            if (f.low_is_facet and val == f.rhs_low) or (f.high_is_facet and val == f.rhs_high):
                tight.append(tuple(Fraction(c) for c in f.normal))
        if not tight or rank(tight) < P.d:
            raise PolytopeError(f"point ({', '.join(map(format_rational, v))}) is not a vertex")
    return out


def is_two_level(P: VPolytope, facet_list: Optional[list] = None) -> TwoLevelReport:
    F = facets(P) if facet_list is None else facet_list
    witness = next((f for f in F if len(f.vertex_levels) != 2), None)
    fd = sum(f.multiplicity for f in F)
    return TwoLevelReport(P.d, witness is None, witness, P.f0, fd)


def to_configuration(P: VPolytope, facet_list: Optional[list] = None):
    """Vertices (translated so the lex-smallest sits at 0) and {0,1}-scaled normals.

    Returns ``(configuration, multiplicity)`` with ``multiplicity[b]`` the
    number of facets that the scaled normal ``b`` defines.
    """
    F = facets(P) if facet_list is None else facet_list
    bad = next((f for f in F if len(f.vertex_levels) != 2), None)
    if bad is not None:
        raise PolytopeError("polytope is not 2-level")
    origin = min(P.vertices)
    A = tuple(sub(v, origin) for v in P.vertices)
    B = []
    mult = {}
    for f in F:
        n = tuple(Fraction(c) for c in f.normal)
        vals = {dot(a, n) for a in A}
        other = next(x for x in vals if x != 0)
        b = tuple(c / other for c in n)
        B.append(b)
        mult[b] = f.multiplicity
    return Configuration(P.d, A, tuple(B)), mult


def verify_bound(P: VPolytope, cross_check: bool = False) -> TwoLevelReport:
    """Vertex count times facet count against d * 2^(d+1).

    With ``cross_check``, a vector defining two facets (if any) is used as the
    induction direction and the two leftover partition classes are checked
    to be empty.
    """
    F = facets(P)
    rep = is_two_level(P, F)
    if not rep.is_two_level:
        raise PolytopeError("polytope is not 2-level")
    if cross_check:
        rep.cross_check = _double_facet_cross_check(P, F)
    return rep


def _double_facet_cross_check(P, F) -> Optional[dict]:
    from .prooftrace import build_node

    cfg, mult = to_configuration(P, F)
    doubles = [b for b in cfg.B if mult[b] == 2]
    if not doubles:
        return None
    b_d = doubles[0]
    node = build_node(cfg, b_d=b_d, check_maximal=False)
    L = node.ledger
    return {
        "b_d": [format_rational(c) for c in b_d],
        "dim_U0": L.dim_U0,
        "B0": L.size_B0,
        "B1": L.size_B1,
        "empty_partition": L.size_B0 == 0 and L.size_B1 == 0,
        "config_valid": validate(cfg).valid,
        "config_bound": cfg.product <= cfg.bound,
        "doubled_product": 2 * cfg.product,
    }


def _indicators(masks, n) -> tuple:
    return tuple(tuple(Fraction(m >> i & 1) for i in range(n)) for m in masks)


def generate(family: str, d: Optional[int] = None, poset: Optional[Poset] = None,
             graph: Optional[Graph] = None) -> VPolytope:
    if family in ("hypercube", "cross_polytope", "simplex"):
        if d is None or d < 1:
            raise PolytopeError(f"{family} needs a dimension d >= 1")
        if d > MAX_DIM:
            raise PolytopeError(f"d = {d} beyond desk scale")
    if family == "hypercube":
        V = tuple(tuple(Fraction(c) for c in p) for p in product((0, 1), repeat=d))
        return VPolytope(d, V)
    if family == "cross_polytope":
        V = []
        for i in range(d):
            for s in (1, -1):
                V.append(tuple(Fraction(s if j == i else 0) for j in range(d)))
        return VPolytope(d, tuple(V))
    if family == "simplex":
        V = [tuple(Fraction(0) for _ in range(d))]
        V += [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
        return VPolytope(d, tuple(V))
    if family in ("order_polytope", "chain_polytope"):
        if poset is None:
            raise PolytopeError(f"{family} needs a poset")
        masks = poset.filters() if family == "order_polytope" else poset.antichains()
        return VPolytope(poset.n, _indicators(masks, poset.n))
    if family == "stable_set_polytope":
        if graph is None:
            raise PolytopeError("stable_set_polytope needs a graph")
        return VPolytope(graph.n, _indicators(graph.stable_sets(), graph.n))
    raise PolytopeError(f"unsupported family {family!r}")

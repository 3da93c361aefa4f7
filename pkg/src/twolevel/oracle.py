"""Brute-force verifiers, independent of the proof tracer.

The search and lemma oracles work on canonical 0/1 (or 0/-1) integer data
and run through the kernels in :mod:`twolevel.kernels`; argmax instances
are re-derived with exact rational arithmetic before being reported.
"""
from __future__ import annotations

import logging
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import kernels
from .combinat import Graph
from .config import (
    Configuration, complete_B, has_opposite_points, maximalize, phi, validate,
)
from .exactlin import (
    affine_dim, dot, independent_indices, is_zero, matvec, rank, vec, zero,
)

log = logging.getLogger(__name__)

__all__ = [
    "ScaleError", "SearchReport", "search_extremal", "verify_lemma_slice",
    "verify_lemma_sliceb", "graph_bound", "graph_census", "verify_set_family",
    "SetFamilyError", "random_maximal_configuration", "witness_instances",
]

EXHAUSTIVE_MAX_D = 3
LONG_RUNNING_MAX_D = 4


class ScaleError(ValueError):
    """Requested instance exceeds the supported scale."""


class SetFamilyError(ValueError):
    pass


@dataclass
class SearchReport:
    kind: str
    parameter: int
    mode: str
    max_product: int
    bound: int
    instances_checked: int
    argmax: object = None
    equality_cases: list = field(default_factory=list)
    equality_count: int = 0
    violations: list = field(default_factory=list)
    seed: Optional[int] = None
    elapsed: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.max_product <= self.bound and not self.violations


def _cube_vectors(d):
    return [vec(*map(int, row)) for row in kernels.cube_points(d)]


def _mask_points(mask, pts):
    return [p for i, p in enumerate(pts) if mask >> i & 1]


def search_extremal(d: int, mode: str = "exhaustive", budget: int = 10000,
                    seed: int = 0, long_running: bool = False,
                    max_cases: int = 16) -> SearchReport:
    """Largest |A| * |complete_B(A)| over spanning A inside the 0/1 cube.

    Any configuration can be moved by a pairing-preserving change of basis
    so that A lies in {0,1}^d, hence this covers every case up to that
    equivalence.
    """
    if d < 1:
        raise ScaleError("d must be at least 1")
    t0 = time.perf_counter()
    cube = kernels.cube_points(d)
    npts = len(cube)
    if mode == "exhaustive":
        if d > LONG_RUNNING_MAX_D or (d > EXHAUSTIVE_MAX_D and not long_running):
            raise ScaleError(f"exhaustive search at d = {d} needs the long-running flag (d <= 4)")
        masks = np.arange(2 ** npts, dtype=np.int64)
    elif mode == "random":
        if d > 5:
            raise ScaleError("random search supports d <= 5")
        rng = np.random.default_rng(seed)
        p = rng.random(budget)[:, None]
        bits = rng.random((budget, npts)) < p
        masks = (bits.astype(np.int64) << np.arange(npts, dtype=np.int64)).sum(axis=1)
    else:
        raise ValueError(f"unknown mode {mode!r}")

    prods = kernels.extremal_scan(cube, masks)
    spanning = int((prods > 0).sum())
    best = int(prods.max()) if len(prods) else 0
    bound = (d + 1) * 2 ** d
    pts = _cube_vectors(d)
    arg = int(np.argmax(prods))
    A = _mask_points(int(masks[arg]), pts)
    B = complete_B(A)
    argmax = Configuration(d, tuple(A), tuple(B))
    if argmax.product != best:
        raise ArithmeticError("kernel and exact completion disagree on the argmax")
    eq = np.nonzero(prods == bound)[0]
    cases = [_mask_points(int(masks[i]), pts) for i in eq[:max_cases]]
    violations = [int(masks[i]) for i in np.nonzero(prods > bound)[0]]
    return SearchReport(
        kind="extremal", parameter=d, mode=mode, max_product=best, bound=bound,
        instances_checked=spanning, argmax=argmax, equality_cases=cases,
        equality_count=int(len(eq)), violations=violations,
        seed=seed if mode == "random" else None, elapsed=time.perf_counter() - t0,
        details={"subsets_enumerated": int(len(masks)),
                 "reduction": "A ranges over subsets of {0,1}^d up to change of basis"},
    )


def _slice_samples(d, samples, rng):
    pts, opp = kernels.slice_points(d)
    npts = len(pts)
    half = (npts - 1) // 2
    density = rng.random(samples)[:, None]
    member = rng.random((samples, npts)) < density
    # half of the samples are confined to a random affine hyperplane
    hyper = rng.random(samples) < 0.5
    c = rng.integers(-1, 2, size=(samples, d))
    c[np.all(c == 0, axis=1), 0] = 1
    delta = rng.integers(-1, 2, size=samples)
    on_plane = (c @ pts.T) == delta[:, None]
    member &= ~hyper[:, None] | on_plane
    # resolve opposite pairs by a coin flip
    pos = np.arange(1, half + 1)
    both = member[:, pos] & member[:, pos + half]
    drop_pos = rng.random((samples, half)) < 0.5
    member[:, pos] &= ~(both & drop_pos)
    member[:, pos + half] &= ~(both & ~drop_pos)
    return member


def verify_lemma_slice(d: int, mode: str = "exhaustive", samples: int = 100_000,
                       seed: int = 0, max_cases: int = 16) -> SearchReport:
    """|X| <= 2^(dim X) for X in {0,1}^d u {0,-1}^d without opposite points."""
    if d < 1:
        raise ScaleError("d must be at least 1")
    t0 = time.perf_counter()
    pts, opp = kernels.slice_points(d)
    npts = len(pts)
    if mode == "exhaustive":
        if d > EXHAUSTIVE_MAX_D:
            raise ScaleError(f"exhaustive slice check needs d <= {EXHAUSTIVE_MAX_D}")
        masks = np.arange(1, 2 ** npts, dtype=np.int64)
        member = ((masks[:, None] >> np.arange(npts, dtype=np.int64)) & 1).astype(np.bool_)
    elif mode == "random":
        if d > 6:
            raise ScaleError("random slice check supports d <= 6")
        rng = np.random.default_rng(seed)
        batches, have = [], 0
        while have < samples:
            # empty draws carry no information; redraw until the quota is met
            m = _slice_samples(d, samples, rng)
            m = m[m.any(axis=1)]
            batches.append(m)
            have += len(m)
        member = np.concatenate(batches)[:samples]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    sizes, dims = kernels.slice_scan(pts, opp, member)
    ok = sizes >= 0
    viol = np.nonzero(ok & (sizes > (1 << dims)))[0]
    tight = np.nonzero(ok & (sizes == (1 << dims)))[0]
    to_pts = lambda row: [vec(*map(int, pts[i])) for i in np.nonzero(member[row])[0]]
    return SearchReport(
        kind="slice_lemma", parameter=d, mode=mode,
        max_product=int(sizes[ok].max()) if ok.any() else 0, bound=2 ** d,
        instances_checked=int(ok.sum()),
        equality_cases=[to_pts(i) for i in tight[:max_cases]],
        equality_count=int(len(tight)),
        violations=[to_pts(i) for i in viol[:max_cases]],
        seed=seed if mode == "random" else None, elapsed=time.perf_counter() - t0,
        details={"rows_examined": int(len(member)), "violation_count": int(len(viol))},
    )


def verify_lemma_sliceb(A: Sequence, B: Sequence) -> dict:
    """Check |B| <= 2^(dim B) for sign-consistent B against a spanning A.

    Also maps B through the matrix whose rows are a basis of A, which must
    land in {0,1}^d u {0,-1}^d.
    """
    A = [tuple(Fraction(c) for c in a) for a in A]
    B = [tuple(Fraction(c) for c in b) for b in B]
    d = len(A[0]) if A else (len(B[0]) if B else 0)
    problems = []
    if rank(A) != d:
        problems.append("A does not span")
    opp = has_opposite_points(B)
    if opp is not None:
        problems.append(f"B contains opposite points {opp}")
    for j, b in enumerate(B):
        nz = {dot(a, b) for a in A} - {0}
        if not (nz <= {1} or nz <= {-1}):
            problems.append(f"B[{j}] has products {sorted(nz)}")
    out = {"d": d, "size_B": len(B), "preconditions": problems}
    if problems or not B:
        out.update(holds=not problems and not B, dim_B=None, image_in_slice=None)
        return out
    dim_B = affine_dim(B)
    M = [A[i] for i in independent_indices(A)]
    image = [matvec(M, b) for b in B]
    in_slice = all(set(x) <= {0, 1} or set(x) <= {0, -1} for x in image)
    out.update(dim_B=dim_B, bound=2 ** dim_B, image_in_slice=in_slice,
               image_dim=affine_dim(image),
               holds=len(B) <= 2 ** dim_B and in_slice and affine_dim(image) == dim_B)
    return out


def graph_bound(G: Graph, max_n: int = 20) -> SearchReport:
    """Stable sets times cliques (both counting the empty set) against (n+1) 2^n."""
    if G.n > max_n:
        raise ScaleError(f"graph counting by enumeration supports n <= {max_n}")
    t0 = time.perf_counter()
    adj = np.array(G.adjacency_masks() or [0], dtype=np.int64)
    s, c = kernels.clique_stable_counts(G.n, adj)
    s, c = int(s), int(c)
    bound = (G.n + 1) * 2 ** G.n
    return SearchReport(
        kind="graph", parameter=G.n, mode="exhaustive", max_product=s * c, bound=bound,
        instances_checked=2 ** G.n, argmax=G, equality_count=int(s * c == bound),
        violations=[G] if s * c > bound else [], elapsed=time.perf_counter() - t0,
        details={"stable_sets": s, "cliques": c},
    )


def graph_census(n: int, max_n: int = 6) -> SearchReport:
    """graph_bound over every labeled graph on n nodes."""
    if n > max_n or n < 1:
        raise ScaleError(f"graph census supports 1 <= n <= {max_n}")
    t0 = time.perf_counter()
    pairs = list(combinations(range(n), 2))
    pu = np.array([p[0] for p in pairs], dtype=np.int64)
    pv = np.array([p[1] for p in pairs], dtype=np.int64)
    st, cl = kernels.graph_census(n, pu, pv)
    prod = st * cl
    bound = (n + 1) * 2 ** n
    eq = np.nonzero(prod == bound)[0]
    viol = np.nonzero(prod > bound)[0]
    best = int(prod.max())
    return SearchReport(
        kind="graph_census", parameter=n, mode="exhaustive", max_product=best, bound=bound,
        instances_checked=int(len(prod)), argmax=Graph.from_mask(n, int(np.argmax(prod))),
        equality_cases=[Graph.from_mask(n, int(g)) for g in eq],
        equality_count=int(len(eq)),
        violations=[Graph.from_mask(n, int(g)) for g in viol],
        elapsed=time.perf_counter() - t0,
    )


def verify_set_family(V, A: Sequence, B: Sequence, cross_validate: bool = True) -> SearchReport:
    """|A| * |B| <= (|V|+1) 2^|V| for families meeting in at most one element."""
    ground = list(range(V)) if isinstance(V, int) else list(V)
    index = {v: i for i, v in enumerate(ground)}
    fa = [frozenset(S) for S in A]
    fb = [frozenset(S) for S in B]
    for name, fam in (("A", fa), ("B", fb)):
        if len(set(fam)) != len(fam):
            raise SetFamilyError(f"family {name} lists a set twice")
        for S in fam:
            if not S <= set(ground):
                raise SetFamilyError(f"set {sorted(S)} in {name} leaves the ground set")
    for i, S in enumerate(fa):
        for j, T in enumerate(fb):
            if len(S & T) >= 2:
                raise SetFamilyError(
                    f"A[{i}] = {sorted(S)} and B[{j}] = {sorted(T)} share {len(S & T)} elements")
    t0 = time.perf_counter()
    n = len(ground)
    bound = (n + 1) * 2 ** n
    details = {"size_A": len(fa), "size_B": len(fb)}
    if cross_validate and n > 0:
        chi = lambda S: tuple(Fraction(int(v in S)) for v in ground)
        cfg = Configuration(n, tuple(chi(S) for S in fa), tuple(chi(T) for T in fb))
        rep = validate(cfg)
        details["spans"] = rep.spans_A and rep.spans_B
        if details["spans"]:
            from .prooftrace import trace
            big = maximalize(cfg)
            cert = trace(big)
            details["configuration_valid"] = not rep.violations
            details["certificate_passed"] = cert.passed
            details["maximal_product"] = big.product
    return SearchReport(
        kind="set_family", parameter=n, mode="direct", max_product=len(fa) * len(fb),
        bound=bound, instances_checked=len(fa) * len(fb),
        equality_count=int(len(fa) * len(fb) == bound),
        violations=[] if len(fa) * len(fb) <= bound else [(len(fa), len(fb))],
        elapsed=time.perf_counter() - t0, details=details,
    )


def random_maximal_configuration(d: int, rng: random.Random) -> Configuration:
    """Random spanning A in the 0/1 cube, grown to a mutually maximal pair."""
    cube = _cube_vectors(d)
    while True:
        p = rng.random()
        A = [c for c in cube if rng.random() < p]
        if A and rank(A) == d:
            return maximalize(Configuration(d, tuple(A), tuple(complete_B(A))))


def witness_instances(count: int, seed: int = 0, dims=(2, 3, 4), max_tries: int = 5000):
    """Non-maximal configurations on which the fiber-count witnesses fire.

    Starting from a maximal pair, every b whose phi exceeds a random
    threshold is deleted (plus a few random deletions), which pushes the
    chosen direction below the phi of some vector the missing ones would
    have provided.  Yields ``(configuration, node, witness)`` triples.
    """
    from .prooftrace import build_node, construct_witnesses
    from .config import tight_example

    rng = random.Random(seed)
    found = 0
    for _ in range(max_tries):
        if found >= count:
            return
        d = rng.choice(dims)
        cfg = random_maximal_configuration(d, rng) if rng.random() < 0.7 else tight_example(d)
        nonzero = [b for b in cfg.B if not is_zero(b)]
        scores = {b: phi(cfg, b) for b in nonzero}
        thr = rng.choice(sorted(set(scores.values())))
        keep = [b for b in nonzero if scores[b] <= thr and rng.random() < 0.9]
        if rng.random() < 0.5:
            keep = [zero(d)] + keep
        if not keep or rank(keep) < d:
            continue
        cut = Configuration(d, cfg.A, tuple(keep))
        node = build_node(cut, check_maximal=False)
        w = construct_witnesses(node)
        if w is not None:
            found += 1
            yield cut, node, w

"""Replay of the inductive product bound on a concrete configuration.

Each :class:`TraceNode` holds one level of the induction: the chosen
direction ``b_d``, the level sets A_0 / A_1, the fibers of the projection
along ``b_d``, the partition of the non-unique fibers, and an
:class:`InequalityLedger` of counts.  :func:`trace` recurses into the span
of A_0 until dimension 0 and returns a :class:`Certificate`.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .config import (
    Configuration, LevelSignature, TransformLog, claim1_transform,
    has_opposite_points, is_maximal, maximalize, phi, validate,
)
from .exactlin import (
    RVector, Subspace, dot, format_rational, independent_indices, is_zero,
    nullspace, project_hyperplane, project_span, rank, scale, solve_pairing,
    span, sub, zero,
)

log = logging.getLogger(__name__)

__all__ = [
    "TraceError", "InequalityLedger", "TraceNode", "Certificate",
    "WitnessContext", "select_bd", "split_A", "fibers", "partition_B",
    "build_node", "trace", "construct_witnesses",
]


class TraceError(ValueError):
    """An input violates a precondition of the induction step."""


@dataclass
class InequalityLedger:
    """Counts recorded at one level, plus the purely geometric observations.

    Every inequality in :meth:`checks` is recomputed from the counts, so a
    serialized ledger can be audited without redoing any geometry.
    """

    d: int
    size_A: int
    size_B: int
    size_A0: int
    size_A1: int
    size_piB: int
    size_Bstar: int
    size_Brest: int
    size_tauPiB: int
    dim_U0: int
    size_B0: int
    size_B1: int
    claim1_observed: bool = True
    claim2_observed: bool = True
    claim4_observed: bool = True
    reduction_pairing: bool = True
    child_product: Optional[int] = None
    child_bound: Optional[int] = None

    def checks(self) -> dict:
        d, k = self.d, self.dim_U0
        AB = self.size_A * self.size_B
        out = {
            "partition": self.size_A == self.size_A0 + self.size_A1
            and self.size_B == self.size_Bstar + self.size_Brest,
            "claim1": self.claim1_observed and self.size_A0 >= self.size_A1,
            "claim2": self.claim2_observed
            and self.size_Brest == 2 * (self.size_piB - self.size_Bstar),
            "fiber_count": AB <= 2 * self.size_A0 * self.size_piB + self.size_A1 * self.size_Brest,
            "subspace_bound": self.size_A0 * self.size_tauPiB <= (k + 1) * 2 ** k,
            "claim3": 0 <= k <= d - 1
            and self.size_piB <= 2 ** (d - 1 - k) * self.size_tauPiB,
            "projected_bound": AB <= (k + 1) * 2 ** d + self.size_A1 * self.size_Brest,
            "claim4": self.claim4_observed and self.size_B0 + self.size_B1 == self.size_Brest,
            "partition_bound": AB <= (k + 1) * 2 ** d + self.size_A0 * self.size_B0
            + self.size_A1 * self.size_B1,
            "claim5": self.size_A0 * self.size_B0 <= 2 ** d
            and self.size_A1 * self.size_B1 <= 2 ** d,
            "final_case": k != d - 1 or self.size_B0 == 0,
            "bound": AB <= (d + 1) * 2 ** d,
        }
        if self.child_product is not None:
            out["reduction"] = (
                self.reduction_pairing
                and self.size_A0 * self.size_tauPiB <= self.child_product <= self.child_bound
            )
        return out

    @property
    def passed(self) -> bool:
        return all(self.checks().values())

    @property
    def product(self) -> int:
        return self.size_A * self.size_B

    @property
    def bound(self) -> int:
        return (self.d + 1) * 2 ** self.d


@dataclass
class TraceNode:
    level_dim: int
    input_cfg: Configuration
    cfg: Configuration  # after the normalizing transform
    b_d: RVector
    transform: TransformLog
    signatures: LevelSignature
    A0: list
    A1: list
    U: Subspace
    piB: dict  # projected point -> list of preimages in B
    B_star: list
    B_rest: list
    B0: list
    B1: list
    U0: Subspace
    tauPiB: list
    reduced: Configuration  # A_0 and the projected B in coordinates of U_0
    ledger: InequalityLedger
    child: Optional["TraceNode"] = None

    @property
    def a_star(self) -> Optional[RVector]:
        return self.transform.a1_anchor

    @property
    def A1_prime(self) -> list:
        return [sub(a, self.a_star) for a in self.A1] if self.A1 else []


@dataclass
class Certificate:
    nodes: list  # top level first
    base: Configuration

    @property
    def passed(self) -> bool:
        base_ok = len(self.base.A) * len(self.base.B) <= 1
        return base_ok and all(n.ledger.passed for n in self.nodes)

    @property
    def depth(self) -> int:
        return len(self.nodes)

    @property
    def product(self) -> int:
        if self.nodes:
            return self.nodes[0].ledger.product
        return len(self.base.A) * len(self.base.B)

    @property
    def bound(self) -> int:
        if self.nodes:
            return self.nodes[0].ledger.bound
        return 1

    def to_dict(self) -> dict:
        levels = []
        for node in self.nodes:
            L = node.ledger
            checks = L.checks()
            levels.append({
                "level_dim": node.level_dim,
                "b_d": [format_rational(c) for c in node.b_d],
                "swapped": node.transform.swapped,
                "negated": len(node.transform.negated),
                "counts": {
                    "A": L.size_A, "B": L.size_B, "A0": L.size_A0, "A1": L.size_A1,
                    "piB": L.size_piB, "Bstar": L.size_Bstar, "Brest": L.size_Brest,
                    "tauPiB": L.size_tauPiB, "dimU0": L.dim_U0,
                    "B0": L.size_B0, "B1": L.size_B1,
                },
                "observed": {
                    "claim1": L.claim1_observed, "claim2": L.claim2_observed,
                    "claim4": L.claim4_observed, "reduction_pairing": L.reduction_pairing,
                },
                "child": None if L.child_product is None
                else {"product": L.child_product, "bound": L.child_bound},
                "checks": checks,
                "product": L.product,
                "bound": L.bound,
                "passed": all(checks.values()),
            })
        nb = len(self.base.A) * len(self.base.B)
        levels.append({
            "level_dim": 0, "base": True, "counts": {"A": len(self.base.A), "B": len(self.base.B)},
            "checks": {"bound": nb <= 1}, "product": nb, "bound": 1, "passed": nb <= 1,
        })
        return {
            "format": "twolevel-certificate",
            "d": self.nodes[0].level_dim if self.nodes else 0,
            "product": self.product,
            "bound": self.bound,
            "final": f"{self.product} \u2264 {self.bound}",
            "levels": levels,
            "passed": self.passed,
        }


def select_bd(cfg: Configuration) -> RVector:
    """Lexicographically smallest nonzero b of B maximizing phi."""
    cands = [b for b in cfg.B if not is_zero(b)]
    if not cands:
        raise TraceError("B has no nonzero element")
    scores = {b: phi(cfg, b) for b in cands}
    best = max(scores.values())
    return min(b for b, s in scores.items() if s == best)


def split_A(cfg: Configuration, b_d: RVector):
    A0, A1 = [], []
    for a in cfg.A:
        p = dot(a, b_d)
        if p == 0:
            A0.append(a)
        elif p == 1:
            A1.append(a)
        else:
            raise TraceError(f"<a, b_d> = {p} is not in {{0,1}} for a = {_fmt(a)}")
    return A0, A1


def fibers(cfg: Configuration, b_d: RVector):
    """Group B by its projection along ``b_d``; returns (map, B_star, B_rest)."""
    if is_zero(b_d):
        raise TraceError("b_d must be nonzero")
    groups: dict = {}
    for b in cfg.B:
        groups.setdefault(project_hyperplane(b, b_d), []).append(b)
    for y, pre in groups.items():
        if len(pre) > 2:
            raise TraceError(
                f"projected point {_fmt(y)} has {len(pre)} preimages: {[_fmt(b) for b in pre]}"
            )
    B_star = [b for b in cfg.B if len(groups[project_hyperplane(b, b_d)]) == 1]
    B_rest = [b for b in cfg.B if len(groups[project_hyperplane(b, b_d)]) == 2]
    return groups, B_star, B_rest


def _constant_on(b: RVector, pts) -> bool:
    return len({dot(a, b) for a in pts}) == 1


def partition_B(A0, A1, B_rest):
    """Split B_rest into B0 (constant on A0) and B1 (constant on A1).

    Vectors constant on both sides go to B1, which keeps 0 and b_d out of B0.
    """
    B0, B1 = [], []
    for b in B_rest:
        if _constant_on(b, A1):
            B1.append(b)
        elif _constant_on(b, A0):
            B0.append(b)
        else:
            raise TraceError(f"b = {_fmt(b)} is constant on neither A0 nor A1")
    return B0, B1


def _fmt(v) -> str:
    return "(" + ", ".join(format_rational(c) for c in v) + ")"


def _reduce(A0, B, b_d, d):
    """Coordinates of A_0 over a basis of its span, paired with projected B.

    Returns the reduced configuration, the basis used, and whether every
    pairing survived the reduction exactly.
    """
    idx = independent_indices(A0)
    Q = [A0[i] for i in idx]
    k = len(Q)
    if k == 0:
        return Configuration(0, ((),), ((),)), Q, True
    cols = [tuple(q[i] for q in Q) for i in range(d)]
    alphas = []
    for a in A0:
        al = solve_pairing(cols, a)
        if al is None:
            raise ArithmeticError("A0 element outside the span of its basis")
        alphas.append(al)
    betas = {}
    for b in B:
        betas.setdefault(tuple(dot(q, b) for q in Q), b)
    ok = all(dot(al, be) == dot(a, b)
             for al, a in zip(alphas, A0)
             for be, b in betas.items())
    return Configuration(k, tuple(alphas), tuple(betas)), Q, ok


def build_node(cfg: Configuration, b_d: Optional[RVector] = None,
               check_maximal: bool = True) -> TraceNode:
    if cfg.d < 1:
        raise TraceError("induction steps need d >= 1")
    rep = validate(cfg)
    if not (rep.spans_A and rep.spans_B):
        raise TraceError("A and B must both span R^d")
    if rep.violations:
        i, j, p = rep.violations[0]
        raise TraceError(f"<A[{i}], B[{j}]> = {p} is not in {{0,1}}")
    if zero(cfg.d) not in set(cfg.A):
        raise TraceError("A must contain the origin")
    if check_maximal:
        a_ok, b_ok = is_maximal(cfg)
        if not a_ok:
            raise TraceError("A is not inclusion-maximal")
        if not b_ok:
            raise TraceError("B minus the origin is not inclusion-maximal")
    if b_d is None:
        b_d = select_bd(cfg)
    b_d = tuple(Fraction(c) for c in b_d)
    if is_zero(b_d) or b_d not in set(cfg.B):
        raise TraceError("b_d must be a nonzero element of B")

    d = cfg.d
    tcfg, bd, tlog, sig = claim1_transform(cfg, b_d)
    A0, A1 = split_A(tcfg, bd)
    groups, B_star, B_rest = fibers(tcfg, bd)

    zero_d = zero(d)
    claim1_ok = (
        len(A0) >= len(A1)
        and all(dot(a, b) in (0, 1) for a in A0 for b in tcfg.B)
        and has_opposite_points(list(groups)) is None
        and zero_d in set(tcfg.A)
    )

    U = Subspace(d, tuple(nullspace([bd])))
    U0 = span(A0, d)
    tau = []
    seen = set()
    for y in groups:
        t = project_span(y, U0)
        if t not in seen:
            seen.add(t)
            tau.append(t)

    B0, B1 = partition_B(A0, A1, B_rest)
    reduced, _, pairing_ok = _reduce(A0, tcfg.B, bd, d)
    if reduced.d and len(reduced.B) != len(tau):
        raise ArithmeticError("reduced B and tau(pi(B)) differ in size")

    ledger = InequalityLedger(
        d=d, size_A=len(tcfg.A), size_B=len(tcfg.B),
        size_A0=len(A0), size_A1=len(A1),
        size_piB=len(groups), size_Bstar=len(B_star), size_Brest=len(B_rest),
        size_tauPiB=len(tau), dim_U0=U0.dim,
        size_B0=len(B0), size_B1=len(B1),
        claim1_observed=claim1_ok, reduction_pairing=pairing_ok,
    )
    return TraceNode(
        level_dim=d, input_cfg=cfg, cfg=tcfg, b_d=bd, transform=tlog, signatures=sig,
        A0=A0, A1=A1, U=U, piB=groups, B_star=B_star, B_rest=B_rest, B0=B0, B1=B1,
        U0=U0, tauPiB=tau, reduced=reduced, ledger=ledger,
    )


def trace(cfg: Configuration, check_maximal: bool = True) -> Certificate:
    """Run the induction down to dimension 0.

    Each reduced configuration is re-maximalized before recursing, so the
    bound certified one level down dominates the pair it came from.
    """
    if cfg.d == 0:
        return Certificate([], cfg)
    rep = validate(cfg)
    if not (rep.spans_A and rep.spans_B):
        raise TraceError("A and B must both span R^d")
    nodes = []
    cur = cfg
    first = True
    while cur.d > 0:
        node = build_node(cur, check_maximal=check_maximal if first else True)
        first = False
        if nodes:
            nodes[-1].child = node
        nodes.append(node)
        red = node.reduced
        cur = maximalize(red) if red.d > 0 else red
        node.ledger.child_product = len(cur.A) * len(cur.B)
        node.ledger.child_bound = (cur.d + 1) * 2 ** cur.d
        log.debug("level %d: |A||B| = %d, dim U0 = %d", node.level_dim,
                  node.ledger.product, node.ledger.dim_U0)
    return Certificate(nodes, cur)


@dataclass
class WitnessContext:
    v: RVector
    W: Subspace
    Pi: Subspace
    sigma_images: list
    a0: RVector
    c: RVector
    delta1: Fraction
    b1: RVector
    fiber: list  # distinct projected points in v + W
    xi: Optional[Fraction] = None
    v_prime: Optional[RVector] = None
    v_doubleprime: Optional[RVector] = None
    delta2: Optional[Fraction] = None
    b2: Optional[RVector] = None
    b1_checks: dict = field(default_factory=dict)
    b2_checks: dict = field(default_factory=dict)


def _degenerate_direction(node: TraceNode, W: Subspace, b: RVector):
    v = project_hyperplane(b, node.b_d)
    if W.contains(v):
        return None
    Pi = Subspace(node.level_dim, W.basis + (v,))
    sig = [project_span(a, Pi) for a in node.A1_prime]
    if sig and rank(sig) == Pi.dim:
        return None
    return v, Pi, sig


def construct_witnesses(node: TraceNode) -> Optional[WitnessContext]:
    """Explicit vectors b_1, b_2 from the degenerate branch of the fiber count.

    Looks for a projected direction ``v`` whose plane ``span(v, W)`` is not
    spanned by the projected translate of A_1 and whose fiber ``v + W``
    holds a second projected point.  On maximal inputs with a phi-maximal
    ``b_d`` no such direction exists and the result is None.
    """
    d = node.level_dim
    W = Subspace(d, tuple(nullspace([node.b_d] + list(node.U0.basis), d)))
    projected = list(node.piB)
    for b in node.cfg.B:
        hit = _degenerate_direction(node, W, b)
        if hit is None:
            continue
        v, Pi, sig = hit
        fiber = [y for y in projected if W.contains(sub(y, v))]
        if len(fiber) < 2:
            continue
        return _build_witness(node, W, v, Pi, sig, fiber)
    return None


def _build_witness(node, W, v, Pi, sig, fiber) -> WitnessContext:
    A0, A1 = node.A0, node.A1
    a_star = node.a_star
    a0 = None
    base_rank = rank(sig) if sig else 0
    for a in A0:
        s = project_span(a, Pi)
        if is_zero(s):
            continue
        if rank(sig + [s]) > base_rank:
            a0 = a
            break
    if a0 is None:
        raise ArithmeticError("no element of A0 leaves the hyperplane spanned by sigma(A1')")
    # c in Pi orthogonal to sigma(A1'); <sigma(a), p> = <a, p> for p in Pi
    P = list(Pi.basis)
    rows = [tuple(dot(a, p) for p in P) for a in node.A1_prime if not is_zero(a)]
    c = None
    for lam in nullspace(rows, len(P)):
        cand = zero(node.level_dim)
        for coef, p in zip(lam, P):
            cand = tuple(x + coef * y for x, y in zip(cand, p))
        if dot(a0, cand) != 0:
            c = scale(1 / dot(a0, cand), cand)
            break
    if c is None:
        raise ArithmeticError("no normal of sigma(A1') pairs nontrivially with sigma(a0)")
    delta1 = dot(a_star, c)
    b1 = tuple(x - delta1 * y for x, y in zip(c, node.b_d))
    ctx = WitnessContext(v=v, W=W, Pi=Pi, sigma_images=sig, a0=a0, c=c,
                         delta1=delta1, b1=b1, fiber=fiber)
    ctx.b1_checks = {
        "nonzero": not is_zero(b1),
        "A0_in_01": all(dot(a, b1) in (0, 1) for a in A0),
        "A1_zero": all(dot(a, b1) == 0 for a in A1),
    }

    v_prime = next(y for y in fiber if y != v)
    sa0 = project_span(a0, Pi)
    xi = dot(sa0, v)
    xc = scale(xi, c)
    v2 = v if xc != v else v_prime
    delta2 = dot(a_star, sub(v2, xc))
    b2 = tuple(x - y - delta2 * z for x, y, z in zip(v2, xc, node.b_d))
    pre = node.piB[v2][0]
    gamma = node.signatures.gamma.get(pre, 1)
    ctx.xi, ctx.v_prime, ctx.v_doubleprime, ctx.delta2, ctx.b2 = xi, v_prime, v2, delta2, b2
    ctx.b2_checks = {
        "nonzero": not is_zero(b2),
        "xi_consistent": xi == dot(sa0, v_prime),
        "A0_zero": all(dot(a, b2) == 0 for a in A0),
        "A1_in_0gamma": all(dot(a, b2) in (0, gamma) for a in A1),
    }
    return ctx

"""Acceptance criteria 1-8, one PASS/FAIL line per criterion (run with -s to see them)."""
import json
import os
import random
import tempfile
import time
from fractions import Fraction

import pytest

from twolevel.audit import audit
from twolevel.cli import run
from twolevel.combinat import Graph, all_graphs, all_posets, is_perfect
from twolevel.config import (
    Configuration, canonicalize, complete_B, pairing_matrix, phi, projected_opposites,
    replay_transform, tight_example, validate,
)
from twolevel.exactlin import (
    Subspace, affine_dim, dot, independent_indices, inverse, is_zero, matvec, project_hyperplane,
    project_span, rank, sub, transpose,
)
from twolevel.oracle import (
    graph_census, random_maximal_configuration, search_extremal, verify_lemma_slice,
    witness_instances,
)
from twolevel.polytope import generate, verify_bound
from twolevel.prooftrace import trace
from twolevel.jsonio import config_to_json


VERDICTS = []


def verdict(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}"
    VERDICTS.append(line)
    print("\n" + line)
    assert ok, detail


def claim1_holds(node):
    """Claim 1 postconditions recomputed from the transformed configuration."""
    cfg, bd = node.cfg, node.b_d
    A0 = [a for a in cfg.A if dot(a, bd) == 0]
    A1 = [a for a in cfg.A if dot(a, bd) == 1]
    return (len(A0) + len(A1) == len(cfg.A) and len(A0) >= len(A1)
            and all(dot(a, b) in (0, 1) for a in A0 for b in cfg.B)
            and projected_opposites(cfg, bd) is None
            and replay_transform(node.input_cfg, node.transform) == cfg)


def test_criterion_1_extremal_search():
    got = {}
    t0 = time.perf_counter()
    for d in (1, 2, 3):
        got[d] = search_extremal(d).max_product
    elapsed = time.perf_counter() - t0
    want = {d: (d + 1) * 2 ** d for d in (1, 2, 3)}
    verdict(1, got == want and elapsed < 60,
            f"max |A||B| = {got} (expected {want}), {elapsed:.2f}s")


def test_criterion_2_tight_traces():
    bad = []
    times = {}
    for d in range(1, 9):
        t0 = time.perf_counter()
        cert = trace(tight_example(d))
        times[d] = time.perf_counter() - t0
        for node in cert.nodes:
            if not (node.ledger.passed and claim1_holds(node)):
                bad.append((d, node.level_dim))
        if cert.product != (d + 1) * 2 ** d or not cert.passed:
            bad.append((d, "top"))
    verdict(2, not bad and times[8] < 30,
            f"d=1..8 all levels pass (failures: {bad}); d=8 took {times[8]:.2f}s")


def test_criterion_3_random_maximal():
    failures = []
    count = 0
    for d in (2, 3, 4, 5):
        rng = random.Random(1000 + d)
        for i in range(100):
            cfg = random_maximal_configuration(d, rng)
            count += 1
            if not validate(cfg).valid or cfg.product > cfg.bound:
                failures.append((d, i, "validate/bound"))
                continue
            cert = trace(cfg)
            for node in cert.nodes:
                ch = node.ledger.checks()
                for name in ("claim2", "claim3", "claim4", "claim5"):
                    if not ch[name]:
                        failures.append((d, i, name))
            if not cert.passed:
                failures.append((d, i, "certificate"))
    verdict(3, count == 400 and not failures,
            f"{count} random maximal configurations, failures: {failures[:5]}")


def test_criterion_4_slice_lemma():
    reps = {}
    t0 = time.perf_counter()
    for d in (1, 2, 3):
        reps[d] = verify_lemma_slice(d)
    t3 = time.perf_counter() - t0
    reps[4] = verify_lemma_slice(4, mode="random", samples=100_000, seed=2024)
    viol = {d: len(r.violations) for d, r in reps.items()}
    checked = {d: r.instances_checked for d, r in reps.items()}
    ok = (all(v == 0 for v in viol.values()) and all(r.holds for r in reps.values())
          and checked[4] >= 100_000 and t3 < 10)
    verdict(4, ok, f"violations {viol}, sets checked {checked}, d<=3 took {t3:.2f}s")


def test_criterion_5_two_level_families():
    t0 = time.perf_counter()
    problems = []
    n_checked = 0

    def check(P, label, equality=None):
        nonlocal n_checked
        rep = verify_bound(P)
        n_checked += 1
        if not (rep.is_two_level and rep.holds):
            problems.append(label)
        if equality is not None and (rep.product == rep.bound) != equality:
            problems.append(label + " equality")
        return rep

    for d in range(1, 7):
        rep = check(generate("hypercube", d=d), f"cube{d}", equality=True)
        if rep.f_dminus1 != 2 * d:
            problems.append(f"cube{d} facets")
    for d in range(1, 6):
        rep = check(generate("cross_polytope", d=d), f"cross{d}", equality=True)
        if rep.f_dminus1 != 2 ** d:
            problems.append(f"cross{d} facets")
    for d in range(1, 7):
        rep = check(generate("simplex", d=d), f"simplex{d}")
        if rep.f_dminus1 != d + 1:
            problems.append(f"simplex{d} facets")
    for n in range(1, 5):
        for poset in all_posets(n):
            check(generate("order_polytope", poset=poset), f"order{sorted(poset.covers)}")
            check(generate("chain_polytope", poset=poset), f"chain{sorted(poset.covers)}")
    perfect = 0
    for n in range(1, 6):
        for g in all_graphs(n):
            if is_perfect(g):
                perfect += 1
                check(generate("stable_set_polytope", graph=g), f"stab{sorted(g.edges)}")
    elapsed = time.perf_counter() - t0
    verdict(5, not problems and elapsed < 300,
            f"{n_checked} polytopes ({perfect} perfect-graph stable-set polytopes) "
            f"certified, problems: {problems[:5]}, {elapsed:.1f}s")


def test_criterion_6_graph_corollary():
    t0 = time.perf_counter()
    rep = graph_census(5)
    elapsed = time.perf_counter() - t0
    eq_edges = sorted(len(g.edges) for g in rep.equality_cases)
    ok = (rep.instances_checked == 1024 and rep.holds and rep.max_product == rep.bound == 192
          and eq_edges == [0, 10] and elapsed < 5)
    verdict(6, ok, f"{rep.instances_checked} graphs, max {rep.max_product} <= {rep.bound}, "
                   f"equality at edge counts {eq_edges}, {elapsed:.2f}s")


def _rand_q(rng):
    return Fraction(rng.randint(-20, 20), rng.randint(1, 12))


def test_criterion_7_exactness():
    rng = random.Random(77)
    proj_bad = 0
    for _ in range(1000):
        d = rng.randint(1, 6)
        x = tuple(_rand_q(rng) for _ in range(d))
        n = tuple(_rand_q(rng) for _ in range(d))
        if is_zero(n):
            n = (Fraction(1),) + n[1:]
        p = project_hyperplane(x, n)
        gens = [tuple(_rand_q(rng) for _ in range(d)) for _ in range(rng.randint(1, d))]
        S = Subspace(d, tuple(gens[i] for i in independent_indices(gens)))
        q = project_span(x, S)
        r = sub(x, q)
        if (project_hyperplane(p, n) != p or dot(p, n) != 0
                or project_span(q, S) != q or any(dot(r, s) != 0 for s in S.basis)):
            proj_bad += 1

    canon_bad = 0
    for _ in range(100):
        d = rng.randint(1, 5)
        cfg = random_maximal_configuration(d, rng)
        while True:
            M = [tuple(_rand_q(rng) for _ in range(d)) for _ in range(d)]
            if rank(M) == d:
                break
        Mit = transpose(inverse(M))
        moved = Configuration(d, tuple(matvec(M, a) for a in cfg.A),
                              tuple(matvec(Mit, b) for b in cfg.B))
        new, _ = canonicalize(moved)
        if pairing_matrix(new) != pairing_matrix(moved) or pairing_matrix(new) != pairing_matrix(cfg):
            canon_bad += 1

    audited = disagree = 0
    certs = [trace(tight_example(d)).to_dict() for d in range(1, 9)]
    crng = random.Random(7)
    certs += [trace(random_maximal_configuration(crng.choice([2, 3, 4, 5]), crng)).to_dict()
              for _ in range(100)]
    for doc in certs:
        v, _ = audit(json.loads(json.dumps(doc)))
        audited += 1
        disagree += v != doc["passed"]
    for d in (2, 3):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "cfg.json")
            with open(path, "w") as fh:
                json.dump(config_to_json(tight_example(d)), fh)
            status, text = run(["trace", "--input", path, "--output", os.path.join(tmp, "r.json")])
        doc = json.loads(text)
        v, _ = audit(doc)
        audited += 1
        disagree += v != doc["result"]["passed"] or status != 0
    verdict(7, proj_bad == 0 and canon_bad == 0 and disagree == 0,
            f"projection failures {proj_bad}/1000, pairing-matrix mismatches {canon_bad}/100, "
            f"audit disagreements {disagree}/{audited}")


def _in_up_to_scaling(x, S):
    return any(not is_zero(s) and rank([x, s]) == 1 for s in S)


def test_criterion_8_witnesses():
    n = 0
    problems = []
    b1_new = 0
    for cut, node, w in witness_instances(24, seed=8):
        n += 1
        cfg = node.cfg
        completion = set(complete_B(cfg.A))
        b1_contract = (not is_zero(w.b1)
                       and all(dot(a, w.b1) in (0, 1) for a in node.A0)
                       and all(dot(a, w.b1) == 0 for a in node.A1))
        extends = (w.b1 in completion
                   and validate(Configuration(cfg.d, cfg.A, cfg.B + (() if w.b1 in cfg.B else (w.b1,)))).valid)
        phis = [phi(cfg, w.b1)]
        if w.b2 is not None:
            phis.append(phi(cfg, w.b2))
            b2_ok = (any(tuple(s * c for c in w.b2) in completion for s in (1, -1))
                     and all(dot(a, w.b2) == 0 for a in node.A0))
        else:
            b2_ok = True
        contradiction = max(phis) > phi(cfg, node.b_d) and (
            not _in_up_to_scaling(w.b1, cfg.B)
            or (w.b2 is not None and not _in_up_to_scaling(w.b2, cfg.B)))
        b1_new += not _in_up_to_scaling(w.b1, cfg.B)
        if not (b1_contract and extends and b2_ok and contradiction):
            problems.append((n, b1_contract, extends, b2_ok, contradiction))
    verdict(8, n >= 20 and not problems,
            f"{n} engineered instances, contract/extension failures {problems}; "
            f"b1 absent from B up to scaling on {b1_new}/{n}; "
            f"phi of a new witness exceeds phi(b_d) on every instance")

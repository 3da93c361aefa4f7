import random
from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from twolevel import kernels
from twolevel._backend import pure
from twolevel.combinat import Graph
from twolevel.config import complete_B
from twolevel.exactlin import affine_dim, rank, unit
from twolevel.oracle import (
    ScaleError, SetFamilyError, graph_bound, graph_census, random_maximal_configuration,
    search_extremal, verify_lemma_slice, verify_lemma_sliceb, verify_set_family,
)

from conftest import F


def test_extremal_small_d():
    for d, want in ((1, 4), (2, 12), (3, 32)):
        rep = search_extremal(d)
        assert rep.max_product == want == rep.bound and rep.holds
    rep = search_extremal(1)
    assert sorted(rep.argmax.A) == [F(0), F(1)] and sorted(rep.argmax.B) == [F(0), F(1)]


def test_extremal_scale_limits():
    with pytest.raises(ScaleError):
        search_extremal(4)
    with pytest.raises(ScaleError):
        search_extremal(5, long_running=True)


def test_extremal_random_mode_is_seeded():
    a = search_extremal(3, mode="random", budget=500, seed=7)
    b = search_extremal(3, mode="random", budget=500, seed=7)
    assert a.max_product == b.max_product and a.instances_checked == b.instances_checked
    assert a.holds


def test_completion_kernel_matches_exact():
    rng = random.Random(5)
    cube = kernels.cube_points(3)
    for _ in range(40):
        rows = [r for r in cube if rng.random() < 0.5]
        if not rows:
            continue
        A = [tuple(Fraction(int(c)) for c in r) for r in rows]
        got = kernels.completion_count(np.array(rows, dtype=np.int64))
        want = len(complete_B(A)) if rank(A) == 3 else -1
        assert got == want


def test_int_rank_and_affine_dim_kernels():
    rng = np.random.default_rng(0)
    for _ in range(50):
        M = rng.integers(-1, 2, size=(rng.integers(1, 6), 4)).astype(np.int64)
        rows = [tuple(Fraction(int(c)) for c in r) for r in M]
        assert kernels.int_rank(M) == rank(rows)
        assert kernels.affine_dim_rows(M, len(M)) == affine_dim(rows)


def test_pure_and_jitted_kernels_agree():
    cube = kernels.cube_points(2)
    masks = np.arange(16, dtype=np.int64)
    np.testing.assert_array_equal(pure(kernels.extremal_scan)(cube, masks),
                                  kernels.extremal_scan(cube, masks))
    pts, opp = kernels.slice_points(2)
    member = ((np.arange(1, 2 ** len(pts))[:, None] >> np.arange(len(pts))) & 1).astype(bool)
    for x, y in zip(pure(kernels.slice_scan)(pts, opp, member),
                    kernels.slice_scan(pts, opp, member)):
        np.testing.assert_array_equal(x, y)
    pu = np.array([0, 0, 1], dtype=np.int64)
    pv = np.array([1, 2, 2], dtype=np.int64)
    for x, y in zip(pure(kernels.graph_census)(3, pu, pv), kernels.graph_census(3, pu, pv)):
        np.testing.assert_array_equal(x, y)


def test_slice_lemma_examples():
    from twolevel.kernels import slice_points
    pts, opp = slice_points(2)
    cube = [i for i, p in enumerate(pts) if (p >= 0).all()]
    member = np.zeros((2, len(pts)), dtype=bool)
    member[0, cube] = True
    member[1, 3] = True
    sizes, dims = kernels.slice_scan(pts, opp, member)
    assert list(sizes) == [4, 1] and list(dims) == [2, 0]


@pytest.mark.parametrize("d", [1, 2, 3])
def test_slice_lemma_exhaustive(d):
    rep = verify_lemma_slice(d)
    assert rep.holds and not rep.violations and rep.instances_checked > 0


def test_slice_lemma_random_d4():
    rep = verify_lemma_slice(4, mode="random", samples=2000, seed=1)
    assert rep.holds and rep.instances_checked == 2000


def test_slice_lemma_rejects_large_exhaustive():
    with pytest.raises(ScaleError):
        verify_lemma_slice(4)


def test_sliceb_examples():
    for d in (2, 3):
        A = [unit(d, i) for i in range(d)]
        B = [tuple(Fraction(c) for c in p) for p in product((0, 1), repeat=d)]
        out = verify_lemma_sliceb(A, B)
        assert out["holds"] and out["dim_B"] == d and out["size_B"] == 2 ** d
    out = verify_lemma_sliceb([F(1, 0), F(0, 1)], [F(1, 1)])
    assert out["holds"] and out["dim_B"] == 0
    out = verify_lemma_sliceb([F(1, 0), F(0, 1)], [F(1, 0), F(-1, 0)])
    assert out["preconditions"]


def test_sliceb_random_signed_families():
    rng = random.Random(11)
    for seed in range(100):
        d = rng.choice([2, 3, 4])
        cfg = random_maximal_configuration(d, rng)
        eps = {b: rng.choice([1, -1]) for b in cfg.B}
        B = []
        for b in cfg.B:
            nb = tuple(eps[b] * c for c in b)
            if tuple(-c for c in nb) not in B:
                B.append(nb)
        assert verify_lemma_sliceb(cfg.A, B)["holds"]


def test_graph_bound_examples():
    for n in range(1, 7):
        empty = Graph(n, frozenset())
        full = Graph.from_mask(n, 2 ** (n * (n - 1) // 2) - 1)
        for g in (empty, full):
            rep = graph_bound(g)
            assert rep.max_product == rep.bound == (n + 1) * 2 ** n
    rep = graph_bound(Graph.from_edges(3, [(0, 1), (1, 2)]))
    assert rep.details == {"stable_sets": 5, "cliques": 6} and rep.max_product == 30


def test_graph_census_n4():
    rep = graph_census(4)
    assert rep.holds and rep.instances_checked == 64
    assert sorted(len(g.edges) for g in rep.equality_cases) == [0, 6]


def test_set_family_examples():
    n = 3
    singles = [[]] + [[i] for i in range(n)]
    everything = [[i for i in range(n) if m >> i & 1] for m in range(2 ** n)]
    rep = verify_set_family(n, singles, everything)
    assert rep.max_product == rep.bound == 32
    assert rep.details["certificate_passed"]
    rep = verify_set_family(n, [[]], [[]])
    assert rep.max_product == 1 and rep.holds
    with pytest.raises(SetFamilyError, match=r"A\[0\].*B\[0\]"):
        verify_set_family(3, [[0, 1]], [[0, 1, 2]])


def test_set_family_agrees_with_graph_path():
    for g in (Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]), Graph.from_mask(4, 0b101101)):
        stable = [[i for i in range(4) if m >> i & 1] for m in g.stable_sets()]
        cliques = [[i for i in range(4) if m >> i & 1] for m in g.cliques()]
        a = verify_set_family(4, stable, cliques)
        b = graph_bound(g)
        assert a.max_product == b.max_product and a.holds == b.holds

from fractions import Fraction

import networkx as nx
import pytest

from twolevel.combinat import Graph, Poset, all_graphs, all_posets, is_perfect
from twolevel.config import validate
from twolevel.exactlin import unit
from twolevel.polytope import (
    PolytopeError, VPolytope, facets, generate, is_two_level, to_configuration, verify_bound,
)

from conftest import F


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_hypercube_facets(d):
    Fs = facets(generate("hypercube", d=d))
    assert len(Fs) == d and all(f.low_is_facet and f.high_is_facet for f in Fs)
    assert sum(f.multiplicity for f in Fs) == 2 * d


@pytest.mark.parametrize("d", [2, 3, 4])
def test_simplex_facets(d):
    Fs = facets(generate("simplex", d=d))
    assert sum(f.multiplicity for f in Fs) == d + 1


def test_cross_polytope_facets():
    Fs = facets(generate("cross_polytope", d=3))
    assert len(Fs) == 4 and all(f.multiplicity == 2 for f in Fs)


def test_two_level_basic_families():
    for fam in ("hypercube", "cross_polytope", "simplex"):
        assert is_two_level(generate(fam, d=3)).is_two_level


def test_pentagon_is_not_two_level():
    P = VPolytope(2, (F(0, 0), F(2, 0), F(3, 1), F(1, 2), F(0, 1)))
    rep = is_two_level(P)
    assert not rep.is_two_level
    assert len(rep.witness.vertex_levels) >= 3
    with pytest.raises(PolytopeError):
        to_configuration(P)


def test_hypercube_configuration():
    cfg, mult = to_configuration(generate("hypercube", d=3))
    assert sorted(cfg.B) == sorted(unit(3, i) for i in range(3))
    assert all(m == 2 for m in mult.values())
    assert len(cfg.A) == 8


def test_simplex_configuration():
    cfg, mult = to_configuration(generate("simplex", d=3))
    assert sorted(cfg.B) == sorted([unit(3, i) for i in range(3)] + [F(1, 1, 1)])
    assert set(mult.values()) == {1}


def test_translated_polytope():
    P = VPolytope(2, tuple((x + 5, y - 1) for x, y in generate("hypercube", d=2).vertices))
    cfg, _ = to_configuration(P)
    assert F(0, 0) in cfg.A and validate(cfg).valid


def test_verify_bound_examples():
    for d in (1, 2, 3, 4):
        rep = verify_bound(generate("hypercube", d=d))
        assert rep.product == rep.bound == d * 2 ** (d + 1)
    rep = verify_bound(generate("cross_polytope", d=3))
    assert (rep.f0, rep.f_dminus1, rep.product) == (6, 8, 48)
    rep = verify_bound(generate("simplex", d=3))
    assert rep.product == 16 and rep.holds


def test_cross_check_partition_empty():
    cc = verify_bound(generate("hypercube", d=3), cross_check=True).cross_check
    assert cc["empty_partition"] and cc["dim_U0"] == 2
    assert verify_bound(generate("simplex", d=3), cross_check=True).cross_check is None


def test_generate_examples():
    assert generate("hypercube", d=2).f0 == 4
    assert set(generate("cross_polytope", d=3).vertices) == {
        s * c for c in [unit(3, i) for i in range(3)] for s in (1,)} | {
        tuple(-x for x in unit(3, i)) for i in range(3)}
    chain = Poset(2, frozenset({(0, 1)}))
    assert generate("order_polytope", poset=chain).f0 == 3
    with pytest.raises(PolytopeError):
        generate("dodecahedron", d=3)


def test_rejects_non_vertex_and_degenerate():
    with pytest.raises(PolytopeError):
        facets(VPolytope(2, (F(0, 0), F(2, 0), F(0, 2), F(1, 1))))
    with pytest.raises(PolytopeError):
        facets(VPolytope(2, (F(0, 0), F(1, 1), F(2, 2))))


def test_perfectness_against_networkx():
    for n in range(1, 6):
        for g in all_graphs(n):
            G = nx.Graph(list(g.edges))
            G.add_nodes_from(range(n))
            odd_hole = any(len(c) >= 5 and len(c) % 2 for c in nx.chordless_cycles(G))
            odd_anti = any(len(c) >= 5 and len(c) % 2
                           for c in nx.chordless_cycles(nx.complement(G)))
            assert is_perfect(g) == (not odd_hole and not odd_anti)


def test_stable_and_clique_counts_against_networkx():
    for g in all_graphs(4):
        G = nx.Graph(list(g.edges))
        G.add_nodes_from(range(4))
        cliques = 1 + sum(1 for _ in nx.enumerate_all_cliques(G))
        stable = 1 + sum(1 for _ in nx.enumerate_all_cliques(nx.complement(G)))
        assert len(g.cliques()) == cliques and len(g.stable_sets()) == stable


def test_poset_counts():
    assert sum(1 for _ in all_posets(3)) == 19
    assert sum(1 for _ in all_posets(3, up_to_isomorphism=True)) == 5
    antichain = Poset(3, frozenset())
    assert len(antichain.filters()) == len(antichain.antichains()) == 8

"""Small graphs and posets: the inputs to the graph corollary and the polytope families."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Iterator

__all__ = ["Graph", "Poset", "all_graphs", "all_posets", "is_perfect"]


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset  # of (u, v) with u < v

    def __post_init__(self):
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {e} outside nodes 0..{self.n - 1}")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_edges(cls, n, edges):
        return cls(n, frozenset(tuple(e) for e in edges))

    @classmethod
    def from_mask(cls, n, mask):
        pairs = list(combinations(range(n), 2))
        return cls(n, frozenset(p for i, p in enumerate(pairs) if mask >> i & 1))

    def adjacency_masks(self) -> list:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def complement(self) -> "Graph":
        allp = set(combinations(range(self.n), 2))
        return Graph(self.n, frozenset(allp - self.edges))

    def induced(self, nodes) -> "Graph":
        idx = {v: i for i, v in enumerate(nodes)}
        return Graph(len(nodes), frozenset((idx[u], idx[v]) for u, v in self.edges
                                           if u in idx and v in idx))

    def stable_sets(self) -> list:
        adj = self.adjacency_masks()
        return [S for S in range(1 << self.n)
                if all(not (S >> v & 1) or not (adj[v] & S) for v in range(self.n))]

    def cliques(self) -> list:
        return self.complement().stable_sets()


def _is_cycle(g: Graph) -> bool:
    if len(g.edges) != g.n:
        return False
    adj = g.adjacency_masks()
    if any(bin(a).count("1") != 2 for a in adj):
        return False
    # connected 2-regular graph is a single cycle
    seen, stack = {0}, [0]
    while stack:
        v = stack.pop()
        for w in range(g.n):
            if adj[v] >> w & 1 and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def is_perfect(g: Graph) -> bool:
    """No induced odd cycle of length >= 5 in g or its complement (brute force)."""
    comp = g.complement()
    for k in range(5, g.n + 1, 2):
        for nodes in combinations(range(g.n), k):
            if _is_cycle(g.induced(nodes)) or _is_cycle(comp.induced(nodes)):
                return False
    return True


def all_graphs(n: int) -> Iterator[Graph]:
    m = n * (n - 1) // 2
    for mask in range(1 << m):
        yield Graph.from_mask(n, mask)


@dataclass(frozen=True)
class Poset:
    """Partial order on 0..n-1 given by cover relations ``(lower, upper)``."""

    n: int
    covers: frozenset

    def __post_init__(self):
        object.__setattr__(self, "covers", frozenset(tuple(c) for c in self.covers))
        less = self.relation()
        if any(less[i][i] for i in range(self.n)):
            raise ValueError("cover relations contain a cycle")

    def relation(self) -> list:
        less = [[False] * self.n for _ in range(self.n)]
        for u, v in self.covers:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"cover {(u, v)} outside elements 0..{self.n - 1}")
            less[u][v] = True
        for k in range(self.n):
            for i in range(self.n):
                if less[i][k]:
                    for j in range(self.n):
                        if less[k][j]:
                            less[i][j] = True
        return less

    def filters(self) -> list:
        """Up-closed subsets as bitmasks."""
        less = self.relation()
        out = []
        for S in range(1 << self.n):
            if all(not (S >> i & 1) or all(S >> j & 1 for j in range(self.n) if less[i][j])
                   for i in range(self.n)):
                out.append(S)
        return out

    def antichains(self) -> list:
        less = self.relation()
        return [S for S in range(1 << self.n)
                if not any(S >> i & 1 and S >> j & 1 and less[i][j]
                           for i in range(self.n) for j in range(self.n))]


def _covers_of(less, n):
    return frozenset((i, j) for i in range(n) for j in range(n)
                     if less[i][j] and not any(less[i][k] and less[k][j] for k in range(n)))


def all_posets(n: int, up_to_isomorphism: bool = False) -> Iterator[Poset]:
    """Every labeled partial order on n elements (optionally one per class)."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    seen = set()
    perms = list(permutations(range(n))) if up_to_isomorphism else None
    for bits in product((False, True), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if any((j, i) in rel for i, j in rel):
            continue
        if any((i, k) not in rel for i, j in rel for j2, k in rel if j == j2):
            continue
        if up_to_isomorphism:
            key = min(tuple(sorted((p[i], p[j]) for i, j in rel)) for p in perms)
            if key in seen:
                continue
            seen.add(key)
        less = [[(i, j) in rel for j in range(n)] for i in range(n)]
        yield Poset(n, _covers_of(less, n))

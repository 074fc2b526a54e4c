"""Mayer diagrams as labeled graphs: star-graph enumeration, vertex
splitting, boundary-operator expansion, and cycle bases.

Nodes are 1-based particle indices. Graphs are small (order <= 8
everywhere), so enumeration and canonicalization are exact brute force.
"""

from __future__ import annotations

import string
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb

import numpy as np


class UnsupportedOrderError(ValueError):
    """Requested diagram order outside the supported range."""


def _normalize_edge(e) -> tuple[int, int]:
    u, v = int(e[0]), int(e[1])
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class ClusterGraph:
    """A labeled Mayer diagram: ``order`` particles, f-bonds as edges.

    Edges are stored sorted as (low, high) pairs of 1-based node indices.
    ``labels`` optionally tags edges (FIG-style A, B, ...); when omitted,
    edges are labeled alphabetically in sorted order.
    """

    order: int
    edges: tuple[tuple[int, int], ...]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.order < 2:
            raise ValueError("a cluster graph needs at least 2 nodes")
        edges = tuple(sorted(_normalize_edge(e) for e in self.edges))
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (1 <= u <= self.order and 1 <= v <= self.order):
                raise ValueError(f"edge ({u},{v}) outside node range 1..{self.order}")
        if len(set(edges)) != len(edges):
            raise ValueError("duplicate edges")
        object.__setattr__(self, "edges", edges)
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != len(edges):
                raise ValueError("one label per edge required")
            object.__setattr__(self, "labels", labels)

    @property
    def size(self) -> int:
        return len(self.edges)

    def edge_labels(self) -> dict[tuple[int, int], str]:
        labels = self.labels or tuple(string.ascii_uppercase[: len(self.edges)])
        return dict(zip(self.edges, labels))

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {i: [] for i in range(1, self.order + 1)}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


def parse_graph(spec: str) -> ClusterGraph:
    """Parse the graph literal ``order:4;edges:1-2,2-3,3-4,4-1,2-4``."""
    try:
        parts = dict(field.split(":", 1) for field in spec.strip().split(";"))
        order = int(parts["order"])
        edges = tuple(
            tuple(int(x) for x in token.split("-"))
            for token in parts["edges"].split(",")
            if token
        )
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed graph literal {spec!r}: {exc}") from exc
    return ClusterGraph(order, edges)


def format_graph(g: ClusterGraph) -> str:
    edges = ",".join(f"{u}-{v}" for u, v in g.edges)
    return f"order:{g.order};edges:{edges}"


def is_connected(g: ClusterGraph) -> bool:
    adj = g.adjacency()
    seen = {1}
    stack = [1]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.order


def is_biconnected(g: ClusterGraph) -> bool:
    """Star-graph test: connected with no articulation point (Tarjan DFS).

    The single edge on two nodes counts as biconnected, matching the role
    of the second-virial diagram.
    """
    if not is_connected(g):
        return False
    if g.order == 2:
        return g.size == 1
    adj = g.adjacency()
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = [0]

    def dfs(u: int, parent: int) -> bool:
        counter[0] += 1
        disc[u] = low[u] = counter[0]
        children = 0
        for w in adj[u]:
            if w == parent:
                continue
            if w in disc:
                low[u] = min(low[u], disc[w])
                continue
            children += 1
            if dfs(w, u):
                return True
            low[u] = min(low[u], low[w])
            if parent != 0 and low[w] >= disc[u]:
                return True  # articulation point
        return parent == 0 and children > 1

    return not dfs(1, 0)


@lru_cache(maxsize=None)
def _star_classes(order: int):
    """Canonical representatives of biconnected graphs on ``order`` labeled
    nodes, with labeled multiplicities.

    Canonical form: minimum edge bitmask over all node permutations,
    computed vectorized over the full list of labeled biconnected graphs.
    """
    pairs = list(combinations(range(1, order + 1), 2))
    npairs = len(pairs)
    pair_index = {p: i for i, p in enumerate(pairs)}

    masks = []
    for mask in range(1, 1 << npairs):
        edges = tuple(pairs[i] for i in range(npairs) if mask >> i & 1)
        if is_biconnected(ClusterGraph(order, edges)):
            masks.append(mask)
    if not masks:
        return ()

    bits = np.array([[m >> i & 1 for i in range(npairs)] for m in masks], dtype=np.int64)
    weights = 1 << np.arange(npairs, dtype=np.int64)
    canon = np.full(len(masks), np.iinfo(np.int64).max, dtype=np.int64)
    for perm in permutations(range(1, order + 1)):
        remap = np.array(
            [pair_index[_normalize_edge((perm[u - 1], perm[v - 1]))] for u, v in pairs],
            dtype=np.int64,
        )
        permuted = np.zeros_like(bits)
        permuted[:, remap] = bits
        np.minimum(canon, permuted @ weights, out=canon)

    keys, counts = np.unique(canon, return_counts=True)
    classes = []
    for key, count in zip(keys.tolist(), counts.tolist()):
        edges = tuple(pairs[i] for i in range(npairs) if key >> i & 1)
        classes.append((ClusterGraph(order, edges), count))
    classes.sort(key=lambda gc: (gc[0].size, gc[0].edges))
    return tuple(classes)


def enumerate_stars(order: int) -> list[tuple[ClusterGraph, int]]:
    """All star (biconnected) graphs on ``order`` nodes up to isomorphism,
    each with its count of distinct labeled copies."""
    if not 2 <= order <= 6:
        raise UnsupportedOrderError(f"star enumeration supports orders 2..6, got {order}")
    return list(_star_classes(order))


@dataclass(frozen=True)
class VertexTerm:
    """One term of the boundary expansion of an intersection of domains:
    the particles mapped to their surface and the complementary set left
    as domains."""

    surface_set: frozenset[int]
    domain_set: frozenset[int]


def boundary_expand(k: int, n: int) -> list[VertexTerm]:
    """Expand the boundary of a k-fold domain intersection in n dimensions.

    Every non-empty subset of particles may carry the boundary, except that
    more than n surfaces cannot meet in n dimensions, so subsets larger
    than n are dropped. Term count is sum_{j=1}^{min(k,n)} C(k,j).
    """
    if k < 1 or n < 2:
        raise ValueError("need k >= 1 intersecting particles in n >= 2 dimensions")
    particles = range(1, k + 1)
    terms = []
    for j in range(1, min(k, n) + 1):
        for subset in combinations(particles, j):
            surface = frozenset(subset)
            terms.append(VertexTerm(surface, frozenset(particles) - surface))
    return terms


def vertex_split(g: ClusterGraph) -> tuple[int, ...]:
    """Degree multiset of the diagram: each node becomes a k-vertex with k
    equal to its f-bond degree. Sorted descending."""
    deg = [0] * (g.order + 1)
    for u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
    return tuple(sorted(deg[1:], reverse=True))


@dataclass(frozen=True)
class CycleBasis:
    """Fundamental cycles of a spanning tree, each a closed walk given as a
    sequence of directed edges."""

    loops: tuple[tuple[tuple[int, int], ...], ...]

    def __len__(self) -> int:
        return len(self.loops)


def bfs_parents(g: ClusterGraph, root: int = 1) -> dict[int, int]:
    """BFS spanning-tree parent map (root excluded); deterministic order."""
    adj = {u: sorted(ws) for u, ws in g.adjacency().items()}
    parents: dict[int, int] = {}
    seen = {root}
    queue = [root]
    while queue:
        u = queue.pop(0)
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                parents[w] = u
                queue.append(w)
    if len(seen) != g.order:
        raise ValueError("graph is not connected")
    return parents


def cycle_basis(g: ClusterGraph) -> CycleBasis:
    """Spanning-tree fundamental cycle basis; size = edges - order + 1."""
    parents = bfs_parents(g)
    tree = {_normalize_edge((child, parent)) for child, parent in parents.items()}

    def path_to_root(u: int) -> list[int]:
        path = [u]
        while path[-1] in parents:
            path.append(parents[path[-1]])
        return path

    loops = []
    for u, v in g.edges:
        if (u, v) in tree:
            continue
        pu, pv = path_to_root(u), path_to_root(v)
        common = set(pu) & set(pv)
        lca = next(x for x in pu if x in common)
        walk = pu[: pu.index(lca) + 1] + list(reversed(pv[: pv.index(lca)]))
        # walk runs u .. lca .. v; close it with the non-tree edge (v, u)
        edges = tuple(zip(walk[:-1], walk[1:])) + ((walk[-1], walk[0]),)
        loops.append(edges)
    return CycleBasis(tuple(loops))


def automorphism_order(g: ClusterGraph) -> int:
    """Size of the node-permutation automorphism group (brute force)."""
    if g.order > 8:
        raise UnsupportedOrderError("automorphism search supports orders <= 8")
    edge_set = set(g.edges)
    count = 0
    for perm in permutations(range(1, g.order + 1)):
        if all(_normalize_edge((perm[u - 1], perm[v - 1])) in edge_set for u, v in edge_set):
            count += 1
    return count


def cyclomatic_number(g: ClusterGraph) -> int:
    """Independent loop count of a connected graph: edges - order + 1."""
    if not is_connected(g):
        raise ValueError("cyclomatic number defined here for connected graphs")
    return g.size - g.order + 1


def virial_prefactor(order: int) -> float:
    """Weight -(m-1)/m! turning the labeled star-integral sum into B_m."""
    fact = 1
    for i in range(2, order + 1):
        fact *= i
    return -(order - 1) / fact


FIG1_GRAPH = ClusterGraph(4, ((1, 2), (2, 3), (3, 4), (4, 1), (2, 4)))


def _comb_count(k: int, n: int) -> int:
    return sum(comb(k, j) for j in range(1, min(k, n) + 1))

"""Rooted simple graphs, star products and distance stratifications.

Vertices are the integers ``0 .. vertex_count - 1``. Every graph built here
is connected, undirected, unweighted and loop-free; the walk always starts at
``root``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class RootedGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    root: int = 0
    label: str = ""

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("a graph needs at least one vertex")
        if not 0 <= self.root < self.vertex_count:
            raise ValueError(f"root {self.root} out of range for {self.vertex_count} vertices")
        canonical = set()
        for a, b in self.edges:
            a, b = int(a), int(b)
            if a == b:
                raise ValueError(f"self-loop at vertex {a}")
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise ValueError(f"edge ({a}, {b}) references a missing vertex")
            canonical.add((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(sorted(canonical)))
        unreachable = _first_unreachable(self)
        if unreachable is not None:
            raise ValueError(f"graph {self.label!r} is disconnected: vertex {unreachable} "
                             f"is unreachable from root {self.root}")

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        adj = [[] for _ in range(self.vertex_count)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(n)) for n in adj)

    def degree(self, vertex: int) -> int:
        return len(self.neighbors[vertex])

    def adjacency_matrix(self) -> np.ndarray:
        a = np.zeros((self.vertex_count, self.vertex_count))
        if self.edges:
            i, j = np.array(self.edges).T
            a[i, j] = 1.0
            a[j, i] = 1.0
        return a


def _bfs_distances(neighbors: Sequence[Sequence[int]], root: int) -> list[int]:
    dist = [-1] * len(neighbors)
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in neighbors[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def _first_unreachable(g: RootedGraph):
    adj = [[] for _ in range(g.vertex_count)]
    for a, b in g.edges:
        adj[a].append(b)
        adj[b].append(a)
    dist = _bfs_distances(adj, g.root)
    for v, d in enumerate(dist):
        if d < 0:
            return v
    return None


@dataclass(frozen=True)
class Stratification:
    """Distance shells ``strata[k] = {v : d(root, v) = k}``, each sorted."""

    strata: tuple[tuple[int, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.strata)

    @property
    def sizes(self) -> list[int]:
        return [len(s) for s in self.strata]

    def stratum_of(self) -> np.ndarray:
        """Vertex-indexed array holding each vertex's stratum number."""
        out = np.empty(sum(self.sizes), dtype=int)
        for k, shell in enumerate(self.strata):
            out[list(shell)] = k
        return out

    def basis_vector(self, k: int, vertex_count: int) -> np.ndarray:
        """Uniform unit vector on stratum ``k`` in the full vertex space."""
        phi = np.zeros(vertex_count)
        shell = list(self.strata[k])
        phi[shell] = 1.0 / np.sqrt(len(shell))
        return phi


# ---------------------------------------------------------------- builders

def build_path(n: int) -> RootedGraph:
    """Path on ``n`` vertices rooted at the endpoint 0."""
    if n < 1:
        raise ValueError("path needs n >= 1")
    return RootedGraph(n, tuple((i, i + 1) for i in range(n - 1)), 0, f"path({n})")


def build_cycle(n: int) -> RootedGraph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return RootedGraph(n, tuple((i, (i + 1) % n) for i in range(n)), 0, f"cycle({n})")


def build_k2() -> RootedGraph:
    return RootedGraph(2, ((0, 1),), 0, "K2")


def star_product(g1: RootedGraph, g2: RootedGraph) -> RootedGraph:
    """Glue ``g2`` onto ``g1`` by identifying their roots.

    This is the connected component of ``(o1, o2)`` in the product adjacency
    ``A1 (x) |o2><o2| + |o1><o1| (x) A2``. Vertices of ``g1`` keep their
    indices; the non-root vertices of ``g2`` follow in their original order.
    """
    offset = g1.vertex_count
    relabel = {}
    nxt = offset
    for v in range(g2.vertex_count):
        if v == g2.root:
            relabel[v] = g1.root
        else:
            relabel[v] = nxt
            nxt += 1
    edges = list(g1.edges) + [(relabel[a], relabel[b]) for a, b in g2.edges]
    label = f"{g1.label}*{g2.label}" if g1.label or g2.label else ""
    return RootedGraph(g1.vertex_count + g2.vertex_count - 1, tuple(edges), g1.root, label)


def star_power(g: RootedGraph, N: int) -> RootedGraph:
    """N copies of ``g`` glued at a common root, copy-major vertex order.

    Vertex 0 is the shared root; copy ``c`` (0-based) occupies the block
    ``1 + c*(|V|-1) ... (c+1)*(|V|-1)`` with non-root vertices in their
    original order.
    """
    if N < 1:
        raise ValueError("star power needs N >= 1")
    n = g.vertex_count
    others = [v for v in range(n) if v != g.root]
    local = {g.root: 0}
    local.update({v: i + 1 for i, v in enumerate(others)})
    block = n - 1
    edges = []
    for c in range(N):
        shift = c * block

        def idx(v, shift=shift):
            return 0 if v == g.root else local[v] + shift

        edges.extend((idx(a), idx(b)) for a, b in g.edges)
    return RootedGraph(1 + N * block, tuple(edges), 0, f"star_power({g.label}, {N})")


def build_star_lattice(N: int, ray_length: int) -> RootedGraph:
    """N rays of ``ray_length`` vertices each, sharing one root."""
    if N < 1 or ray_length < 1:
        raise ValueError("star lattice needs N >= 1 and ray_length >= 1")
    g = star_power(build_path(ray_length + 1), N)
    return RootedGraph(g.vertex_count, g.edges, 0, f"star_lattice({N}, {ray_length})")


# ----------------------------------------------------------- stratification

def stratify(g: RootedGraph) -> Stratification:
    dist = _bfs_distances(g.neighbors, g.root)
    missing = [v for v, d in enumerate(dist) if d < 0]
    if missing:
        raise ValueError(f"vertex {missing[0]} is unreachable from root {g.root}")
    shells: list[list[int]] = [[] for _ in range(max(dist) + 1)]
    for v, d in enumerate(dist):
        shells[d].append(v)
    return Stratification(tuple(tuple(s) for s in shells))


def apply_adjacency(g: RootedGraph, v: Iterable[complex]) -> np.ndarray:
    """Return ``A v`` with ``(A v)[a] = sum of v[b] over neighbours b of a``."""
    v = np.asarray(v)
    if v.shape != (g.vertex_count,):
        raise ValueError(f"vector of length {v.shape} does not match {g.vertex_count} vertices")
    out = np.zeros_like(v, dtype=np.result_type(v.dtype, float))
    if g.edges:
        i, j = np.array(g.edges).T
        np.add.at(out, i, v[j])
        np.add.at(out, j, v[i])
    return out


def closed_walk_counts(g: RootedGraph, max_length: int) -> list[int]:
    """Number of closed walks at the root of each length ``0..max_length``.

    Plain depth-first enumeration of every walk; exponential, meant as an
    independent check on small graphs.
    """
    counts = [0] * (max_length + 1)
    nbrs = g.neighbors
    root = g.root

    def walk(v, steps):
        if v == root:
            counts[steps] += 1
        if steps == max_length:
            return
        for w in nbrs[v]:
            walk(w, steps + 1)

    walk(root, 0)
    return counts

"""Undirected simple graphs on 0-indexed vertices, plus the small set of
structural operations everything else is built on: components, iterative DFS
with back-edge spans, forest testing, cycle witness verification, 2-core
peeling, and the JSON form used by the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class Graph:
    """Simple undirected graph.

    Vertices are 0..n-1. Edges are stored canonically as (u, v) tuples with
    u < v, sorted lexicographically. Adjacency lists are sorted ascending;
    every traversal in this package is deterministic because of that.
    """

    __slots__ = ("n", "edges", "adj", "_edge_set")

    def __init__(self, n: int, edges, _canonical: bool = False):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        if not _canonical:
            canon = []
            for u, v in edges:
                u = int(u)
                v = int(v)
                if u == v:
                    raise ValueError(f"self-loop at vertex {u}")
                if u > v:
                    u, v = v, u
                canon.append((u, v))
            canon.sort()
            edges = canon
        else:
            edges = list(edges)
        if edges:
            lo, hi = edges[0][0], max(e[1] for e in edges)
            if lo < 0 or hi >= n:
                raise ValueError("edge endpoint out of range")
            for i in range(1, len(edges)):
                if edges[i] == edges[i - 1]:
                    raise ValueError(f"parallel edge {edges[i]}")
        self.edges = edges
        adj = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        self.adj = adj
        self._edge_set = None

    @classmethod
    def from_arrays(cls, n: int, u: np.ndarray, v: np.ndarray) -> "Graph":
        """Build from parallel endpoint arrays (the generators' fast path)."""
        if len(u) == 0:
            return cls(n, [], _canonical=True)
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        if lo.min() < 0 or hi.max() >= n:
            raise ValueError("edge endpoint out of range")
        if (lo == hi).any():
            raise ValueError("self-loop")
        order = np.lexsort((hi, lo))
        edges = list(zip(lo[order].tolist(), hi[order].tolist()))
        for i in range(1, len(edges)):
            if edges[i] == edges[i - 1]:
                raise ValueError(f"parallel edge {edges[i]}")
        return cls(n, edges, _canonical=True)

    def edge_set(self) -> set:
        # built lazily; only witness verification needs O(1) membership
        if self._edge_set is None:
            self._edge_set = set(self.edges)
        return self._edge_set

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.edge_set()

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
        )

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


@dataclass
class DfsForest:
    """Result of a depth-first traversal of the whole graph.

    parent[v] is -1 for roots. back_edges holds (descendant, ancestor, span)
    with span = depth[descendant] - depth[ancestor]; each non-tree edge
    appears exactly once, recorded at the descendant endpoint.
    """

    parent: list
    depth: list
    back_edges: list


def edge_count(g: Graph) -> int:
    return len(g.edges)


def components(g: Graph) -> list:
    """Connected components as sorted vertex lists, ordered by decreasing
    size with ties broken by smallest contained vertex."""
    seen = [False] * g.n
    cells = []
    adj = g.adj
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        stack = [s]
        cell = [s]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
                    cell.append(w)
        cell.sort()
        cells.append(cell)
    cells.sort(key=lambda c: (-len(c), c[0]))
    return cells


def dfs_forest(g: Graph, root_order=None) -> DfsForest:
    """Iterative DFS over every component.

    Roots are tried in root_order (natural order by default) and neighbor
    lists are consumed in ascending order, so the forest is a pure function
    of the graph and the root order.
    """
    n = g.n
    if root_order is None:
        root_order = range(n)
    else:
        if sorted(root_order) != list(range(n)):
            raise ValueError("root_order must be a permutation of 0..n-1")
    parent = [-1] * n
    depth = [-1] * n
    back_edges = []
    adj = g.adj
    for r in root_order:
        if depth[r] >= 0:
            continue
        depth[r] = 0
        # stack holds (vertex, index of next neighbor to examine)
        stack = [(r, 0)]
        while stack:
            v, i = stack[-1]
            nbrs = adj[v]
            if i == len(nbrs):
                stack.pop()
                continue
            stack[-1] = (v, i + 1)
            w = nbrs[i]
            if depth[w] < 0:
                parent[w] = v
                depth[w] = depth[v] + 1
                stack.append((w, 0))
            elif w != parent[v] and depth[w] < depth[v]:
                # visited, not the tree edge, and an ancestor: in an
                # undirected DFS every non-tree edge joins an ancestor to a
                # descendant, and recording only the deeper endpoint sees
                # each such edge exactly once
                back_edges.append((v, w, depth[v] - depth[w]))
        # end of component
    return DfsForest(parent=parent, depth=depth, back_edges=back_edges)


def is_forest(g: Graph) -> bool:
    return len(g.edges) == g.n - len(components(g))


def verify_cycle_witness(g: Graph, witness, k: int) -> bool:
    """Exact check that witness is a simple cycle of length k in g."""
    if k < 3 or len(witness) != k:
        return False
    if len(set(witness)) != k:
        return False
    es = g.edge_set()
    for i in range(k):
        u = witness[i]
        v = witness[(i + 1) % k]
        if not (0 <= u < g.n) or not (0 <= v < g.n):
            return False
        if (min(u, v), max(u, v)) not in es:
            return False
    return True


def two_core(g: Graph) -> list:
    """Vertices of the maximal subgraph with minimum degree 2, ascending.

    Every cycle of g lives inside the 2-core, so the cycle detectors only
    ever need to look there.
    """
    deg = [len(g.adj[v]) for v in range(g.n)]
    alive = [True] * g.n
    stack = [v for v in range(g.n) if deg[v] < 2]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] < 2:
                    stack.append(w)
    return [v for v in range(g.n) if alive[v]]


def induced_subgraph(g: Graph, vertices) -> tuple:
    """Induced subgraph on the given vertices, relabeled to 0..k-1.

    Returns (subgraph, labels) where labels[i] is the original name of the
    subgraph's vertex i. The input must be sorted ascending so relabeling
    is order-preserving.
    """
    labels = list(vertices)
    index = {v: i for i, v in enumerate(labels)}
    edges = []
    for i, v in enumerate(labels):
        for w in g.adj[v]:
            if w > v and w in index:
                edges.append((i, index[w]))
    edges.sort()
    return Graph(len(labels), edges, _canonical=True), labels


def graph_to_json_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


def graph_from_json_dict(d: dict) -> Graph:
    if not isinstance(d, dict) or "n" not in d or "edges" not in d:
        raise ValueError("graph JSON must have 'n' and 'edges'")
    n = d["n"]
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError("'n' must be an integer")
    return Graph(n, d["edges"])

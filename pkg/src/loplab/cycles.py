"""Randomized fixed-length cycle detection and the derived >=K detector.

has_cycle_eq looks for a cycle of exactly k vertices by color coding: each
iteration colors the vertices uniformly from k colors and searches for a
cycle whose colors are all distinct. Distinct colors force distinct
vertices, so the search is a dynamic program over (color subset, end
vertex) states instead of over paths. If some C_k is present, an iteration
succeeds with probability at least q_k = k!/k^k (the chance that one fixed
copy becomes colorful), giving a one-sided detector whose false-negative
probability after I iterations is at most (1 - q_k)^I. Positive verdicts
always carry a witness that is re-verified against the graph.

has_cycle_geq(g, K, ...) is exact for K = 3. For K > 3 it first scans a DFS
forest: a back edge of span >= K-1 closes a cycle of length >= K
deterministically. When that fails, a cycle of length >= K can only have
length between K and 2K-4, so the randomized equality detector is run for
each length in that window.

Everything here consumes randomness only through the caller's RngStream
and only in the randomized fallback, keeping verdicts reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph import (
    Graph,
    dfs_forest,
    induced_subgraph,
    two_core,
    verify_cycle_witness,
)


@dataclass
class DetectorVerdict:
    """Outcome of a cycle search.

    miss_probability_bound is present only for negative verdicts that
    relied on randomization; exact negatives (and all positives) carry
    None. iterations_used counts random colorings consumed.
    """

    found: bool
    witness: list | None
    iterations_used: int
    miss_probability_bound: float | None


def per_iteration_floor(k: int) -> float:
    """q_k = k!/k^k, the chance a fixed C_k is colorful under k colors."""
    return math.factorial(k) / k**k


def _tree_path_cycle(forest, desc: int, anc: int) -> list:
    """Cycle closed by a back edge: desc up the tree to anc."""
    path = [desc]
    v = desc
    while v != anc:
        v = forest.parent[v]
        path.append(v)
    return path


def longest_back_edge_span(forest) -> int:
    """Largest back-edge span in a DFS forest, 0 if there are none."""
    if not forest.back_edges:
        return 0
    return max(s for _, _, s in forest.back_edges)


class _ColorfulCycleSearch:
    """Per-graph state for repeated colorful-C_k searches.

    Built once per has_cycle_eq call: the 2-core is split into connected
    components and only components with at least k vertices are kept
    (a C_k cannot fit anywhere else). Component vertices are relabeled to
    local indices so the DP can run on integer bitmasks.
    """

    def __init__(self, g: Graph, k: int):
        self.k = k
        self.components = []  # (adjmask list, orig label list)
        self.total_vertices = 0
        core = two_core(g)
        if len(core) < k:
            return
        sub, core_labels = induced_subgraph(g, core)
        seen = [False] * sub.n
        for s in range(sub.n):
            if seen[s]:
                continue
            seen[s] = True
            stack = [s]
            comp = [s]
            while stack:
                v = stack.pop()
                for w in sub.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
                        comp.append(w)
            if len(comp) < k:
                continue
            comp.sort()
            local = {v: i for i, v in enumerate(comp)}
            adjmask = [0] * len(comp)
            for i, v in enumerate(comp):
                m = 0
                for w in sub.adj[v]:
                    m |= 1 << local[w]
                adjmask[i] = m
            self.components.append(
                (adjmask, [core_labels[v] for v in comp])
            )
        self.total_vertices = sum(len(labels) for _, labels in self.components)

    @property
    def empty(self) -> bool:
        return not self.components

    def search(self, colors) -> list | None:
        """One DP pass under the given coloring; returns a witness or None.

        colors holds one color per candidate vertex, components
        concatenated in order. The anchor color class is the smallest one
        in each component (ties to the lower color id); a colorful cycle
        has exactly one vertex of every color, so anchoring is lossless.
        """
        k = self.k
        full = (1 << k) - 1
        base = 0
        for adjmask, labels in self.components:
            nc = len(labels)
            comp_colors = colors[base : base + nc]
            base += nc
            class_mask = [0] * k
            for i in range(nc):
                class_mask[comp_colors[i]] |= 1 << i
            if any(m == 0 for m in class_mask):
                continue  # not all k colors present, nothing colorful here
            anchor_color = min(range(k), key=lambda c: class_mask[c].bit_count())
            anchors = class_mask[anchor_color]
            anchor_bit = 1 << anchor_color
            while anchors:
                sbit = anchors & -anchors
                anchors ^= sbit
                s = sbit.bit_length() - 1
                reach = {anchor_bit: sbit}
                frontier = [anchor_bit]
                for _ in range(k - 1):
                    nxt = {}
                    for cmask in frontier:
                        vs = reach[cmask]
                        nb = 0
                        while vs:
                            b = vs & -vs
                            vs ^= b
                            nb |= adjmask[b.bit_length() - 1]
                        rem = full & ~cmask
                        while rem:
                            cb = rem & -rem
                            rem ^= cb
                            grp = nb & class_mask[cb.bit_length() - 1]
                            if grp:
                                nm = cmask | cb
                                prev = nxt.get(nm, 0)
                                add = grp & ~prev
                                if add:
                                    nxt[nm] = prev | add
                    if not nxt:
                        break
                    for nm, vsx in nxt.items():
                        reach[nm] = reach.get(nm, 0) | vsx
                    frontier = list(nxt.keys())
                ends = reach.get(full, 0) & adjmask[s]
                if not ends:
                    continue
                # walk the masks back down to the anchor to recover a path
                cur = (ends & -ends).bit_length() - 1
                path = [cur]
                m = full
                for _ in range(k - 1):
                    pm = m & ~(1 << comp_colors[cur])
                    cands = reach.get(pm, 0) & adjmask[cur]
                    cur = (cands & -cands).bit_length() - 1
                    path.append(cur)
                    m = pm
                return [labels[v] for v in path]
        return None


def has_cycle_eq(g: Graph, k: int, iters: int, stream) -> DetectorVerdict:
    """Color-coding search for a cycle of exactly k vertices.

    One-sided: a positive verdict carries a verified witness; a negative
    verdict after I colorings is wrong with probability at most
    (1 - k!/k^k)^I when a C_k is actually present.
    """
    if k < 3:
        raise ValueError("cycle length must be at least 3")
    if iters < 1:
        raise ValueError("iteration budget must be positive")
    if k > g.n:
        return DetectorVerdict(False, None, 0, None)
    search = _ColorfulCycleSearch(g, k)
    if search.empty:
        return DetectorVerdict(False, None, 0, None)
    nv = search.total_vertices
    for it in range(1, iters + 1):
        colors = stream.integers(k, size=nv).tolist()
        witness = search.search(colors)
        if witness is not None:
            if not verify_cycle_witness(g, witness, k):
                raise RuntimeError(
                    f"detector produced an invalid C_{k} witness {witness}"
                )
            return DetectorVerdict(True, witness, it, None)
    q = per_iteration_floor(k)
    return DetectorVerdict(False, None, iters, (1.0 - q) ** iters)


def has_cycle_geq(g: Graph, K: int, iters: int, stream) -> DetectorVerdict:
    """Search for a cycle of length at least K.

    Exact for K = 3. For K > 3, a DFS back edge of span >= K-1 settles the
    question deterministically; otherwise any cycle of length >= K must
    have length in [K, 2K-4] and the randomized equality detector covers
    that window, so the combined false-negative bound is the product of
    the per-length bounds.
    """
    if K < 3:
        raise ValueError("cycle length threshold must be at least 3")
    if iters < 1:
        raise ValueError("iteration budget must be positive")
    forest = dfs_forest(g)
    if K == 3:
        if forest.back_edges:
            desc, anc, _ = forest.back_edges[0]
            witness = _tree_path_cycle(forest, desc, anc)
            return DetectorVerdict(True, witness, 0, None)
        return DetectorVerdict(False, None, 0, None)
    for desc, anc, span in forest.back_edges:
        if span >= K - 1:
            witness = _tree_path_cycle(forest, desc, anc)
            return DetectorVerdict(True, witness, 0, None)
    used = 0
    bound = None
    for k in range(K, 2 * K - 3):
        verdict = has_cycle_eq(g, k, iters, stream)
        used += verdict.iterations_used
        if verdict.found:
            return DetectorVerdict(True, verdict.witness, used, None)
        if verdict.miss_probability_bound is not None:
            b = verdict.miss_probability_bound
            bound = b if bound is None else bound * b
    return DetectorVerdict(False, None, used, bound)

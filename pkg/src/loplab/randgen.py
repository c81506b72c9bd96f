"""Reproducible random graph generation.

Two models:

  * Erdos-Renyi G(n, p), sampled in O(m + n) expected time by geometric
    skip-sampling over the C(n, 2) pair slots in lexicographic order.
  * Random geometric graphs: n points uniform on the unit square
    [-1/2, 1/2]^2, an edge joining points at Euclidean distance strictly
    less than r. Neighbor search uses a grid of cells of width >= r, so
    generation is O(n + m) in the sparse regimes used here.

Reproducibility contract: every draw comes from an RngStream, whose output
is a pure function of (seed, trial_index). Two streams built from the same
pair yield identical graphs bit for bit, independent of worker count or
execution order. Substreams for distinct trial indices are statistically
independent.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph

# Draws are taken in fixed-size blocks so the consumption pattern of
# gen_er is a pure function of (n, p), not of batching heuristics.
_BLOCK = 1024


class RngStream:
    """Substream of a master seed, addressed by trial index.

    The (seed, trial_index) pair is mixed into the generator state with
    numpy's SeedSequence (seed as entropy, trial index as spawn key), a
    documented splittable hash whose output is stable across platforms
    and numpy versions. Only `random` and `integers` are exposed; both
    sit on the stable PCG64 bit stream.
    """

    __slots__ = ("seed", "trial_index", "_gen")

    def __init__(self, seed: int, trial_index: int):
        if not (0 <= seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if trial_index < 0:
            raise ValueError("trial_index must be nonnegative")
        self.seed = seed
        self.trial_index = trial_index
        ss = np.random.SeedSequence(entropy=seed, spawn_key=(trial_index,))
        self._gen = np.random.Generator(np.random.PCG64(ss))

    def random(self, size=None):
        """Uniform float64 draws on [0, 1)."""
        return self._gen.random(size)

    def integers(self, high: int, size=None):
        """Uniform integer draws on [0, high)."""
        return self._gen.integers(0, high, size=size)


@dataclass
class GeometricSample:
    """Point set behind a geometric graph; kept so a run can be replayed."""

    r: float
    points: np.ndarray  # shape (n, 2), coordinates in [-1/2, 1/2]


def _unrank_pairs(t: np.ndarray, n: int):
    """Map lexicographic pair ranks t to edges (u, v), u < v.

    Rank 0 is (0, 1), rank 1 is (0, 2), ..., rank C(n,2)-1 is (n-2, n-1).
    """
    total = n * (n - 1) // 2
    w = total - 1 - t
    # row counted from the last: solve row(row+1)/2 <= w exactly, float
    # sqrt first and an integer fixup to absorb rounding
    row = ((np.sqrt(8.0 * w.astype(np.float64) + 1.0) - 1.0) / 2.0).astype(np.int64)
    while True:
        too_big = row * (row + 1) // 2 > w
        if not too_big.any():
            break
        row = np.where(too_big, row - 1, row)
    while True:
        too_small = (row + 1) * (row + 2) // 2 <= w
        if not too_small.any():
            break
        row = np.where(too_small, row + 1, row)
    u = n - 2 - row
    base = u * (2 * n - u - 1) // 2
    v = t - base + u + 1
    return u, v


def gen_er(stream: RngStream, n: int, p: float) -> Graph:
    """G(n, p) via geometric gaps between successive present pair slots."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not (0.0 <= p <= 1.0):
        raise ValueError("p must lie in [0, 1]")
    total = n * (n - 1) // 2
    if total == 0 or p == 0.0:
        return Graph(n, [], _canonical=True)
    if p == 1.0:
        u, v = _unrank_pairs(np.arange(total, dtype=np.int64), n)
        return Graph.from_arrays(n, u, v)
    log_q = np.log1p(-p)
    ranks = []
    pos = np.int64(-1)
    while pos < total:
        draws = stream.random(_BLOCK)
        gaps = np.floor(np.log1p(-draws) / log_q).astype(np.int64)
        block = pos + np.cumsum(gaps + 1)
        ranks.append(block[block < total])
        pos = block[-1]
    t = np.concatenate(ranks)
    if len(t) == 0:
        return Graph(n, [], _canonical=True)
    u, v = _unrank_pairs(t, n)
    return Graph.from_arrays(n, u, v)


def _pairs_within(points: np.ndarray, r: float):
    """All index pairs (i, j), i < j, with |points[i] - points[j]| < r.

    Grid bucketing with cell width >= r: each pair of nearby cells is
    scanned through exactly one of the offsets (0,0), (1,0), (0,1),
    (1,1), (1,-1), so no pair is seen twice.
    """
    n = len(points)
    empty = (np.empty(0, np.int64), np.empty(0, np.int64))
    if n < 2 or r <= 0.0:
        return empty
    ncell = 1 if r >= 1.0 else max(1, int(1.0 / r))
    cw = 1.0 / ncell
    cx = np.minimum(((points[:, 0] + 0.5) / cw).astype(np.int64), ncell - 1)
    cy = np.minimum(((points[:, 1] + 0.5) / cw).astype(np.int64), ncell - 1)
    np.clip(cx, 0, ncell - 1, out=cx)
    np.clip(cy, 0, ncell - 1, out=cy)
    cid = cx * ncell + cy
    order = np.argsort(cid, kind="stable")
    scid = cid[order]
    r2 = r * r
    out_u = []
    out_v = []
    arange_n = np.arange(n, dtype=np.int64)
    for dx, dy in ((0, 0), (1, 0), (0, 1), (1, 1), (1, -1)):
        if dx == 0 and dy == 0:
            target = cid
            valid = None
        else:
            tx = cx + dx
            ty = cy + dy
            valid = (tx < ncell) & (0 <= ty) & (ty < ncell)
            target = tx * ncell + ty
        lo = np.searchsorted(scid, target, side="left")
        hi = np.searchsorted(scid, target, side="right")
        if valid is not None:
            lo = np.where(valid, lo, 0)
            hi = np.where(valid, hi, 0)
        cnt = hi - lo
        tot = int(cnt.sum())
        if tot == 0:
            continue
        i_idx = np.repeat(arange_n, cnt)
        starts = np.repeat(lo, cnt)
        run = np.concatenate(([0], np.cumsum(cnt)[:-1]))
        j_idx = order[starts + (np.arange(tot, dtype=np.int64) - np.repeat(run, cnt))]
        if dx == 0 and dy == 0:
            keep = j_idx > i_idx
            i_idx = i_idx[keep]
            j_idx = j_idx[keep]
        d = points[i_idx] - points[j_idx]
        close = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1] < r2
        if close.any():
            a = i_idx[close]
            b = j_idx[close]
            out_u.append(np.minimum(a, b))
            out_v.append(np.maximum(a, b))
    if not out_u:
        return empty
    return np.concatenate(out_u), np.concatenate(out_v)


def gen_rg(stream: RngStream, n: int, r: float):
    """Geometric graph on n uniform points; returns (graph, sample).

    Point i takes its x coordinate from draw 2i and its y coordinate from
    draw 2i+1 of the stream (a single row-major (n, 2) fill).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if r < 0.0:
        raise ValueError("r must be nonnegative")
    points = stream.random((n, 2)) - 0.5
    u, v = _pairs_within(points, r)
    return Graph.from_arrays(n, u, v), GeometricSample(r=r, points=points)


def graph_from_sample(sample: GeometricSample) -> Graph:
    """Rebuild the geometric graph a sample encodes."""
    points = np.asarray(sample.points, dtype=np.float64)
    u, v = _pairs_within(points, float(sample.r))
    return Graph.from_arrays(len(points), u, v)


def sample_to_json_dict(sample: GeometricSample) -> dict:
    return {
        "r": float(sample.r),
        "points": [[float(x), float(y)] for x, y in np.asarray(sample.points)],
    }


def sample_from_json_dict(d: dict) -> GeometricSample:
    if not isinstance(d, dict) or "r" not in d or "points" not in d:
        raise ValueError("sample JSON must have 'r' and 'points'")
    points = np.asarray(d["points"], dtype=np.float64)
    if points.size == 0:
        points = points.reshape(0, 2)
    if points.ndim != 2 or points.shape[1] != 2:
        raise ValueError("'points' must be a list of [x, y] pairs")
    return GeometricSample(r=float(d["r"]), points=points)

"""Shared graph builders for the test suite."""

from itertools import combinations

from loplab.graph import Graph


def ring(k, offset=0):
    """Cycle on vertices offset..offset+k-1, total vertex count offset+k."""
    return Graph(offset + k, [(offset + i, offset + (i + 1) % k) for i in range(k)])


def path(k):
    """Path on k vertices."""
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def complete(n):
    return Graph(n, list(combinations(range(n), 2)))


def graph_from_mask(n, mask):
    """Graph whose edge set is the mask over lexicographic vertex pairs.

    Bit i of mask selects the i-th pair of combinations(range(n), 2); used
    by the exhaustive small-n sweeps.
    """
    pairs = list(combinations(range(n), 2))
    return Graph(
        n,
        [pairs[i] for i in range(len(pairs)) if mask >> i & 1],
        _canonical=True,
    )

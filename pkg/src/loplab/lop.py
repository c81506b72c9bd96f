"""Local pooling on graphs under primary interference.

A graph satisfies local pooling exactly when it contains none of the
forbidden structures: a cycle whose length is 6 or at least 8, or a
dumbbell, meaning two cycles with lengths drawn from {5, 7} that either
share exactly one vertex or are vertex-disjoint and joined by a path
internally avoiding both. Three predicates bracket the property:

  * plopl_holds: the graph is a forest. No cycles at all, so local
    pooling holds. Sufficient condition.
  * lop_oracle: exact decision by exhaustive cycle enumeration, only
    feasible for small graphs (n <= 14 by default).
  * plopu_violation: a one-sided randomized search for a forbidden-length
    cycle (dumbbells ignored). A violation refutes local pooling;
    absence of one is necessary but not sufficient.

classify_sigma turns these into bounds on the local pooling factor sigma:
sigma = 1 exactly when local pooling holds, any subgraph only lowers it,
and a cycle on 6j vertices pins sigma <= 2/3.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .cycles import DetectorVerdict, has_cycle_eq, has_cycle_geq
from .graph import Graph, components, is_forest

DEFAULT_MAX_ORACLE_N = 14

SIGMA_EXACTLY_ONE = "ExactlyOne"
SIGMA_AT_MOST_TWO_THIRDS = "AtMostTwoThirds"
SIGMA_UNKNOWN_IN_HALF_ONE = "UnknownInHalfOne"


def forbidden_length(length: int) -> bool:
    """Cycle lengths that alone refute local pooling: 6 or anything >= 8."""
    return length == 6 or length >= 8


@dataclass
class CycleViolation:
    length: int
    witness: list


@dataclass
class DumbbellViolation:
    """Two short cycles plus the structure joining them.

    k_path counts edges on the joining path; 0 means the cycles share the
    single vertex path[0]. For k_path >= 1 the path runs from a vertex of
    cycle_s to a vertex of cycle_t, internally disjoint from both.
    """

    s: int
    t: int
    k_path: int
    cycle_s: list
    cycle_t: list
    path: list


@dataclass
class LopVerdict:
    satisfies: bool
    violation: CycleViolation | DumbbellViolation | None


@dataclass
class SigmaClassification:
    """Bounds on the local pooling factor with the deciding evidence.

    kind is one of SIGMA_EXACTLY_ONE (sigma = 1), SIGMA_AT_MOST_TWO_THIRDS
    (a cycle on 6j vertices was found, so sigma is in [1/2, 2/3]) or
    SIGMA_UNKNOWN_IN_HALF_ONE (nothing sharper than [1/2, 1] is known).
    """

    kind: str
    lower: Fraction
    upper: Fraction
    witness: list | None
    evidence: LopVerdict | None


def plopl_holds(g: Graph) -> bool:
    """Forest test: the cycle-free sufficient condition for local pooling."""
    return is_forest(g)


def plopu_violation(g: Graph, iters: int, stream) -> DetectorVerdict:
    """One-sided search for a cycle of forbidden length.

    Runs the >=8 detector first, then the exactly-6 detector. A positive
    verdict carries a verified witness and refutes local pooling. On a
    double negative, the miss bound is the product of whatever randomized
    bounds the two phases produced (None if both were exact).
    """
    big = has_cycle_geq(g, 8, iters, stream)
    if big.found:
        return big
    six = has_cycle_eq(g, 6, iters, stream)
    used = big.iterations_used + six.iterations_used
    if six.found:
        return DetectorVerdict(True, six.witness, used, None)
    bounds = [
        b
        for b in (big.miss_probability_bound, six.miss_probability_bound)
        if b is not None
    ]
    combined = None
    for b in bounds:
        combined = b if combined is None else combined * b
    return DetectorVerdict(False, None, used, combined)


def _iter_cycles(g: Graph):
    """Yield every simple cycle exactly once, as a vertex list.

    Cycles are rooted at their smallest vertex s; the path explores only
    vertices above s, and of the two traversal directions the one whose
    second vertex is smaller than its last is kept, so each cycle appears
    once up to rotation and reflection.
    """
    adj = g.adj
    for s in range(g.n):
        path = [s]
        on_path = [False] * g.n
        on_path[s] = True

        def extend(v):
            for w in adj[v]:
                if w == s:
                    if len(path) >= 3 and path[1] < path[-1]:
                        yield list(path)
                elif w > s and not on_path[w]:
                    path.append(w)
                    on_path[w] = True
                    yield from extend(w)
                    path.pop()
                    on_path[w] = False

        yield from extend(s)


def enumerate_cycles(g: Graph, max_n: int = DEFAULT_MAX_ORACLE_N) -> list:
    """All simple cycles of a small graph, each once up to symmetry."""
    if g.n > max_n:
        raise ValueError(f"cycle enumeration is capped at n = {max_n}")
    return list(_iter_cycles(g))


def _join_path(g: Graph, cyc_a: list, in_a: list, in_b: list) -> list:
    """Shortest path from cycle A to cycle B, internal vertices off both.

    Multi-source BFS from A's vertices; the first B vertex reached closes
    the path. Minimality keeps internal vertices outside A and B.
    """
    parent = {}
    q = deque()
    for v in sorted(cyc_a):
        parent[v] = None
        q.append(v)
    while q:
        v = q.popleft()
        for w in g.adj[v]:
            if w in parent:
                continue
            parent[w] = v
            if in_b[w]:
                path = [w]
                u = v
                while u is not None:
                    path.append(u)
                    u = parent[u]
                path.reverse()
                return path
            q.append(w)
    raise RuntimeError("join path requested between disconnected cycles")


def lop_oracle(g: Graph, max_n: int = DEFAULT_MAX_ORACLE_N) -> LopVerdict:
    """Exact local pooling decision by exhaustive enumeration.

    Enumeration aborts on the first forbidden-length cycle. Otherwise all
    cycles have lengths in {3, 4, 5, 7}; every pair of 5/7-cycles sharing
    exactly one vertex is a dumbbell, as is every vertex-disjoint pair in
    a common component (the shortest connecting path internally avoids
    both cycles). Pairs sharing two or more vertices are skipped: any
    dumbbell subgraph present in g is realized by one of the pairs above.
    """
    if g.n > max_n:
        raise ValueError(f"exact oracle is capped at n = {max_n}")
    fives = []
    sevens = []
    for cyc in _iter_cycles(g):
        length = len(cyc)
        if forbidden_length(length):
            return LopVerdict(False, CycleViolation(length, cyc))
        if length == 5:
            fives.append(cyc)
        elif length == 7:
            sevens.append(cyc)
    if not fives and not sevens:
        return LopVerdict(True, None)
    comp_of = [0] * g.n
    for ci, cell in enumerate(components(g)):
        for v in cell:
            comp_of[v] = ci

    def mask_of(cyc):
        m = 0
        for v in cyc:
            m |= 1 << v
        return m

    groups = [(5, fives, [mask_of(c) for c in fives])]
    groups.append((7, sevens, [mask_of(c) for c in sevens]))

    def check_pair(s, cyc_a, mask_a, t, cyc_b, mask_b):
        inter = mask_a & mask_b
        if inter == 0:
            if comp_of[cyc_a[0]] != comp_of[cyc_b[0]]:
                return None
            in_a = [False] * g.n
            for v in cyc_a:
                in_a[v] = True
            in_b = [False] * g.n
            for v in cyc_b:
                in_b[v] = True
            path = _join_path(g, cyc_a, in_a, in_b)
            return DumbbellViolation(
                s, t, len(path) - 1, list(cyc_a), list(cyc_b), path
            )
        if inter.bit_count() == 1:
            shared = inter.bit_length() - 1
            return DumbbellViolation(s, t, 0, list(cyc_a), list(cyc_b), [shared])
        return None

    for gi, (s, cycs_a, masks_a) in enumerate(groups):
        for gj in range(gi, len(groups)):
            t, cycs_b, masks_b = groups[gj]
            for i in range(len(cycs_a)):
                j_start = i + 1 if gi == gj else 0
                for j in range(j_start, len(cycs_b)):
                    hit = check_pair(
                        s, cycs_a[i], masks_a[i], t, cycs_b[j], masks_b[j]
                    )
                    if hit is not None:
                        return LopVerdict(False, hit)
    return LopVerdict(True, None)


def classify_sigma(
    g: Graph,
    iters: int,
    stream,
    max_n: int = DEFAULT_MAX_ORACLE_N,
) -> SigmaClassification:
    """Best available bounds on the local pooling factor of g.

    Small graphs go through the exact oracle; sigma = 1 exactly on
    satisfaction. Failing that, finding a cycle on 6j vertices caps sigma
    at 2/3. Otherwise only the universal [1/2, 1] window remains, with
    whatever refutation evidence turned up along the way.
    """
    evidence = None
    if g.n <= max_n:
        verdict = lop_oracle(g, max_n)
        if verdict.satisfies:
            return SigmaClassification(
                SIGMA_EXACTLY_ONE, Fraction(1), Fraction(1), None, verdict
            )
        evidence = verdict
    for length in range(6, g.n + 1, 6):
        hit = has_cycle_eq(g, length, iters, stream)
        if hit.found:
            return SigmaClassification(
                SIGMA_AT_MOST_TWO_THIRDS,
                Fraction(1, 2),
                Fraction(2, 3),
                hit.witness,
                evidence,
            )
    return SigmaClassification(
        SIGMA_UNKNOWN_IN_HALF_ONE, Fraction(1, 2), Fraction(1), None, evidence
    )

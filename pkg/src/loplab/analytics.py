"""Closed-form asymptotics: edge regimes, limit laws, threshold registry,
and expected subgraph counts.

Edge density is a single scalar e(n): the edge probability p for the
Erdos-Renyi model, the squared radius r^2 for the geometric model. An
EdgeRegime describes how e scales with n; limit_probability maps
(model, property, regime) to the limiting probability where one is
actually known, and refuses to guess anywhere else.

Conventions used throughout:

  * f_plop_er(x): limiting probability of local pooling for p ~ x/n,
    sqrt(1-x) * exp(sum of x^k/(2k) over k in {1,2,3,4,5,7}) for x < 1
    and 0 beyond.
  * f_forest_er(x): limiting probability of zero cycles for p ~ x/n,
    sqrt(1-x) * exp(x/2 + x^2/4) for x < 1 and 0 beyond.
  * Connectivity in both models follows the Gumbel law exp(-e^-x) inside
    a (log n)-scale window; the edge-budget property m <= 2n follows the
    normal law Phi(-x) inside a sqrt(n)-scale window.
  * Giant components follow 0/1 indicator laws with thresholds c_beta
    (Erdos-Renyi) and the continuum percolation constant lambda_c
    (geometric). lambda_c has no closed form; DEFAULT_LAMBDA_C carries a
    standard numerical estimate and every consumer accepts an override.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Numerical estimate of the critical area c for the appearance of a giant
# component in the geometric model (r^2 = c/n). Overridable everywhere it
# is consumed; nothing downstream assumes more than lambda_c > 1.
DEFAULT_LAMBDA_C = 1.436

ER = "er"
RG = "rg"

_MODELS = (ER, RG)


def _check_model(model: str):
    if model not in _MODELS:
        raise ValueError(f"unknown model {model!r}")


# ---------------------------------------------------------------------------
# edge regimes


@dataclass(frozen=True)
class PowerLaw:
    """e(n) = c * n^(-alpha)."""

    c: float
    alpha: float

    def evaluate(self, model: str, n: int):
        return self.c * float(n) ** (-self.alpha)

    def describe(self) -> str:
        return f"powerlaw:c={self.c:.9g}:alpha={self.alpha:.9g}"


@dataclass(frozen=True)
class LogShift:
    """Connectivity window: e(n) = (ln n + x)/n, scaled by pi for RG."""

    x: float

    def evaluate(self, model: str, n: int):
        e = (math.log(n) + self.x) / n
        if model == RG:
            e /= math.pi
        return e

    def describe(self) -> str:
        return f"logshift:x={self.x:.9g}"


@dataclass(frozen=True)
class PedgeSharp:
    """Edge-budget window: e(n) = 4/n + x * 2 sqrt(2n)/n^2 (over pi for RG)."""

    x: float

    def evaluate(self, model: str, n: int):
        e = 4.0 / n + self.x * 2.0 * math.sqrt(2.0 * n) / n**2
        if model == RG:
            e /= math.pi
        return e

    def describe(self) -> str:
        return f"pedge_sharp:x={self.x:.9g}"


@dataclass(frozen=True)
class Fixed:
    """Constant density, independent of n."""

    value: float

    def evaluate(self, model: str, n: int):
        return self.value

    def describe(self) -> str:
        return f"fixed:value={self.value:.9g}"


EdgeRegime = PowerLaw | LogShift | PedgeSharp | Fixed


def regime_density(regime, model: str, n: int):
    """(e, clamped): density at n, clamped into the model's legal range.

    ER probabilities are clamped to [0, 1], RG squared radii to [0, inf).
    """
    _check_model(model)
    if n < 1:
        raise ValueError("n must be positive")
    e = regime.evaluate(model, n)
    lo, hi = (0.0, 1.0) if model == ER else (0.0, math.inf)
    clamped = e < lo or e > hi
    return min(max(e, lo), hi), clamped


# ---------------------------------------------------------------------------
# scalar laws

_PLOP_EXP_TERMS = (1, 2, 3, 4, 5, 7)


def c_beta(beta: float) -> float:
    """Threshold coefficient for a giant component of fraction beta.

    Always exceeds 1 on (0, 1); log1p keeps that true in floating point
    down to beta around 1e-15, where log(1/(1-beta)) already collapses.
    """
    beta = float(beta)
    if not 0.0 < beta < 1.0:
        raise ValueError("beta must lie strictly between 0 and 1")
    return -math.log1p(-beta) / beta


def f_plop_er(x: float) -> float:
    """Limiting local pooling probability for p ~ x/n."""
    if x < 0.0:
        raise ValueError("x must be nonnegative")
    if x >= 1.0:
        return 0.0
    s = sum(x**k / (2 * k) for k in _PLOP_EXP_TERMS)
    return math.sqrt(1.0 - x) * math.exp(s)


def f_forest_er(x: float) -> float:
    """Limiting probability of a cycle-free graph for p ~ x/n."""
    if x < 0.0:
        raise ValueError("x must be nonnegative")
    if x >= 1.0:
        return 0.0
    return math.sqrt(1.0 - x) * math.exp(x / 2.0 + x * x / 4.0)


def f_plop_er_truncated(x: float, kmax: int) -> float:
    """Partial-product form of f_plop_er over forbidden lengths up to kmax.

    exp(-sum x^k/(2k)) over k in {6} union {8..kmax}: the probability that
    no forbidden cycle length up to kmax appears, in the Poisson limit.
    Converges to f_plop_er(x) as kmax grows for x < 1.
    """
    if x < 0.0:
        raise ValueError("x must be nonnegative")
    if kmax < 6:
        raise ValueError("kmax must be at least 6")
    s = x**6 / 12.0
    s += sum(x**k / (2 * k) for k in range(8, kmax + 1))
    return math.exp(-s)


def e_sigma_bounds_er(c: float):
    """Bounds on the expected local pooling factor, ER model, p ~ c/n."""
    if c < 0.0:
        raise ValueError("c must be nonnegative")
    upper_f = (1.0 - c**6) ** (1.0 / 12.0) if c < 1.0 else 0.0
    lower = 0.5 * (1.0 + f_plop_er(c))
    upper = (2.0 + upper_f) / 3.0
    return lower, upper


def rg_plop_upper(c: float) -> float:
    """Upper bound on the limiting RG local pooling probability.

    Applies on the conjectured critical scale r^2 ~ c/n^(6/5); the bound
    is exp(-(pi c/4)^5 / 6!).
    """
    if c < 0.0:
        raise ValueError("c must be nonnegative")
    return math.exp(-((math.pi * c / 4.0) ** 5) / 720.0)


def e_sigma_bounds_rg(c: float):
    """Bounds on the expected local pooling factor, RG critical scale."""
    return 0.5, (2.0 + rg_plop_upper(c)) / 3.0


def std_normal_cdf(x: float) -> float:
    """Phi via the complementary error function (|error| well under 1e-12)."""
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def gumbel_cdf(x: float) -> float:
    return math.exp(-math.exp(-x))


# ---------------------------------------------------------------------------
# expected subgraph counts


def expected_cycles_er(n: int, p: float, k: int) -> float:
    """Expected number of k-cycles in G(n, p): (n)_k / (2k) * p^k."""
    if k < 3:
        raise ValueError("cycles have at least 3 vertices")
    if k > n:
        raise ValueError("cycle length exceeds the vertex count")
    return math.perm(n, k) / (2 * k) * p**k


def expected_dumbbells_er(n: int, p: float, s: int, t: int, k: int) -> float:
    """Expected dumbbells in G(n, p): cycles of sizes s and t joined by a
    k-edge path (k = 0 means a single shared vertex).

    Ordered construction, then halved when s = t: place the s-cycle, the
    t-cycle on fresh vertices, and either a shared vertex (k = 0) or a
    path with k - 1 fresh internal vertices.
    """
    if s < 3 or t < 3:
        raise ValueError("cycle sizes must be at least 3")
    if k < 0:
        raise ValueError("path length must be nonnegative")
    # smallest host: the two cycles plus path interior, sharing one vertex
    # when k = 0 and one endpoint on each cycle when k >= 1
    if n < s + t - 1 + k:
        raise ValueError("not enough vertices for this dumbbell")
    if k == 0:
        count = (
            math.perm(n, s)
            / (2 * s)
            * (math.perm(n - s, t - 1) / 2.0)
            * s
            * p ** (s + t)
        )
    else:
        count = (
            math.perm(n, s)
            / (2 * s)
            * (math.perm(n - s, t) / (2 * t))
            * s
            * t
            * math.perm(n - s - t, k - 1)
            * p ** (s + t + k)
        )
    if s == t:
        count /= 2.0
    return count


def expected_edges(model: str, regime, n: int) -> float:
    """Expected edge count at size n.

    Exact C(n,2) p for ER. For RG the count is the first-order term
    (pi/2) r^2 n^2; boundary effects of the unit square shave an O(r^3 n^2)
    term off the exact mean, so this is an asymptotic, not exact, value.
    """
    e, _ = regime_density(regime, model, n)
    if model == ER:
        return n * (n - 1) / 2.0 * e
    return math.pi / 2.0 * e * n * n


# ---------------------------------------------------------------------------
# thresholds and limit dispatch

PLOP = "plop"
PLOPL = "plopl"
CONN = "conn"
GIANT = "giant"
PEDGE = "pedge"


@dataclass(frozen=True)
class ThresholdSpec:
    """One row of the threshold registry: where a property jumps and what
    the limit looks like inside the window. Descriptive, not executable;
    limit_probability implements the actual dispatch."""

    model: str
    prop: str
    scale: str
    window: str | None
    limit: str
    kind: str  # "regular" | "sharp" | "zero-statement-only"


THRESHOLDS = (
    ThresholdSpec(ER, PLOP, "1/n", None, "f_plop_er(x)", "regular"),
    ThresholdSpec(ER, PLOPL, "1/n", None, "f_forest_er(x)", "regular"),
    ThresholdSpec(ER, GIANT, "c_beta(beta)/n", None, "1{x > 1}", "regular"),
    ThresholdSpec(ER, CONN, "log(n)/n", "1/n", "exp(-e^-x)", "sharp"),
    ThresholdSpec(ER, PEDGE, "4/n", "2 sqrt(2n)/n^2", "Phi(-x)", "sharp"),
    ThresholdSpec(RG, GIANT, "lambda_c/n", None, "1{x > 1}", "regular"),
    ThresholdSpec(RG, CONN, "log(n)/(pi n)", "1/(pi n)", "exp(-e^-x)", "sharp"),
    ThresholdSpec(RG, PEDGE, "4/(pi n)", "2 sqrt(2n)/(pi n^2)", "Phi(-x)", "sharp"),
    ThresholdSpec(RG, PLOP, "1/n^(6/5)", None, "unknown", "zero-statement-only"),
)


@dataclass(frozen=True)
class LimitResult:
    """Limiting probability where known; known=False means exactly that.

    upper_bound may accompany an unknown limit when a one-sided bound is
    available (the RG local pooling conjecture's critical scale).
    """

    known: bool
    value: float | None = None
    upper_bound: float | None = None
    note: str = ""


def _unknown(note: str) -> LimitResult:
    return LimitResult(known=False, note=note)


def limit_probability(
    model: str,
    prop: str,
    regime,
    beta: float | None = None,
    lambda_c: float = DEFAULT_LAMBDA_C,
) -> LimitResult:
    """Limiting probability of a property under a regime, where known.

    Indicator-type limits are undefined at their discontinuity and come
    back unknown there rather than picking a side.
    """
    _check_model(model)
    if model == ER:
        if prop == PLOP and isinstance(regime, PowerLaw) and regime.alpha == 1.0:
            return LimitResult(True, f_plop_er(regime.c))
        if prop == PLOPL and isinstance(regime, PowerLaw) and regime.alpha == 1.0:
            return LimitResult(True, f_forest_er(regime.c))
        if prop == GIANT and isinstance(regime, PowerLaw) and regime.alpha == 1.0:
            if beta is None:
                raise ValueError("giant limits need beta")
            crit = c_beta(beta)
            if regime.c == crit:
                return _unknown("at the giant-component discontinuity")
            return LimitResult(True, 1.0 if regime.c > crit else 0.0)
        if prop == CONN and isinstance(regime, LogShift):
            return LimitResult(True, gumbel_cdf(regime.x))
        if prop == PEDGE and isinstance(regime, PedgeSharp):
            return LimitResult(True, std_normal_cdf(-regime.x))
        return _unknown("no limit law on record for this combination")
    # geometric model
    if prop == GIANT and isinstance(regime, PowerLaw) and regime.alpha == 1.0:
        if regime.c == lambda_c:
            return _unknown("at the giant-component discontinuity")
        return LimitResult(True, 1.0 if regime.c > lambda_c else 0.0)
    if prop == CONN and isinstance(regime, LogShift):
        return LimitResult(True, gumbel_cdf(regime.x))
    if prop == PEDGE and isinstance(regime, PedgeSharp):
        return LimitResult(True, std_normal_cdf(-regime.x))
    if prop == PLOP and isinstance(regime, PowerLaw):
        if regime.alpha < 1.2 and regime.c > 0:
            return LimitResult(True, 0.0, note="above the critical scale")
        if regime.alpha == 1.2:
            return LimitResult(
                False,
                upper_bound=rg_plop_upper(regime.c),
                note="critical scale: only an upper bound is proven",
            )
        return _unknown("below the conjectured critical scale")
    return _unknown("no limit law on record for this combination")

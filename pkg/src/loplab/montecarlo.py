"""Monte Carlo property estimation over graph ensembles.

A sweep walks one axis (the regime coefficient c, the window coordinate x,
or the size n), runs S independent trials per grid point, and reports one
row per (grid point, property) with a Wilson score interval.

Reproducibility: trial t of grid point j draws every bit of its randomness
from RngStream(seed, j * S + t), generation first, detectors after, so any
partition of trials over workers produces identical counts. CSV output is
byte-identical across worker counts.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass, replace
from fractions import Fraction

from .analytics import ER, RG, LogShift, PedgeSharp, PowerLaw, regime_density
from .graph import components, edge_count
from .lop import DEFAULT_MAX_ORACLE_N, lop_oracle, plopu_violation
from .props import PropertyVector, as_beta
from .randgen import RngStream, gen_er, gen_rg

# success tags a trial can be scored on; "plopu" counts the trials where
# the one-sided search found no forbidden-length cycle
PROPERTY_TAGS = ("plopl", "plopu", "conn", "giant", "pedge", "lop", "plopu_giant")

_NEEDS_DETECTOR = frozenset({"plopu", "plopu_giant"})

WILSON_Z = 1.96  # 95% score interval

CSV_HEADER = (
    "model,regime,axis,axis_value,n,property,samples,successes,"
    "p_hat,ci_low,ci_high,seed,iters"
)


@dataclass(frozen=True)
class ExperimentConfig:
    model: str
    regime: object
    n: int
    samples: int
    iters: int
    seed: int
    properties: tuple
    beta: Fraction = Fraction(1, 4)
    oracle_max_n: int = DEFAULT_MAX_ORACLE_N

    def __post_init__(self):
        if self.model not in (ER, RG):
            raise ValueError(f"unknown model {self.model!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.samples < 1:
            raise ValueError("samples must be positive")
        if self.iters < 1:
            raise ValueError("iters must be positive")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        # an empty property tuple is legal: the sweep then emits a
        # header-only CSV
        object.__setattr__(self, "properties", tuple(self.properties))
        for tag in self.properties:
            if tag not in PROPERTY_TAGS:
                raise ValueError(f"unknown property {tag!r}")
        object.__setattr__(self, "beta", as_beta(self.beta))
        if "lop" in self.properties and self.n > self.oracle_max_n:
            raise ValueError(
                f"exact lop estimation needs n <= {self.oracle_max_n}"
            )


@dataclass(frozen=True)
class EstimateRow:
    model: str
    regime: str
    axis: str
    axis_value: object  # int for the n axis, float otherwise
    n: int
    property: str
    samples: int
    successes: int
    p_hat: float
    ci_low: float
    ci_high: float
    seed: int
    iters: int


def wilson_interval(successes: int, samples: int, z: float = WILSON_Z):
    """Wilson score interval for a binomial proportion."""
    if samples < 1:
        raise ValueError("samples must be positive")
    if not 0 <= successes <= samples:
        raise ValueError("successes out of range")
    phat = successes / samples
    z2 = z * z
    denom = 1.0 + z2 / samples
    center = phat + z2 / (2.0 * samples)
    half = z * math.sqrt(phat * (1.0 - phat) / samples + z2 / (4.0 * samples * samples))
    # mathematically the interval lies in [0, 1] and brackets phat;
    # rounding can break both by an ulp, so snap
    lo = min(max(0.0, (center - half) / denom), phat)
    hi = max(min(1.0, (center + half) / denom), phat)
    return lo, hi


def run_trial(cfg: ExperimentConfig, trial_index: int) -> PropertyVector:
    """Generate the trial's graph and evaluate the requested properties.

    The trial's stream serves generation first; whatever the detectors
    need continues from the same stream.
    """
    stream = RngStream(cfg.seed, trial_index)
    e, _ = regime_density(cfg.regime, cfg.model, cfg.n)
    if cfg.model == ER:
        g = gen_er(stream, cfg.n, e)
    else:
        g, _sample = gen_rg(stream, cfg.n, math.sqrt(e))
    comps = components(g)
    m = edge_count(g)
    pv = PropertyVector(
        plopl=m == g.n - len(comps),
        conn=len(comps) <= 1,
        giant_fraction=Fraction(len(comps[0]), g.n) if comps else Fraction(0),
        pedge=m <= 2 * g.n,
    )
    if _NEEDS_DETECTOR & set(cfg.properties):
        pv.plopu_violation_found = plopu_violation(g, cfg.iters, stream).found
    if "lop" in cfg.properties:
        pv.lop_exact = lop_oracle(g, cfg.oracle_max_n).satisfies
    return pv


def property_success(tag: str, pv: PropertyVector, beta: Fraction) -> bool:
    if tag == "plopl":
        return pv.plopl
    if tag == "plopu":
        return not pv.plopu_violation_found
    if tag == "conn":
        return pv.conn
    if tag == "giant":
        return pv.giant_fraction >= beta
    if tag == "pedge":
        return pv.pedge
    if tag == "lop":
        return bool(pv.lop_exact)
    if tag == "plopu_giant":
        return (not pv.plopu_violation_found) and pv.giant_fraction >= beta
    raise ValueError(f"unknown property {tag!r}")


def _count_block(cfg: ExperimentConfig, start: int, stop: int):
    counts = [0] * len(cfg.properties)
    for t in range(start, stop):
        pv = run_trial(cfg, t)
        for i, tag in enumerate(cfg.properties):
            if property_success(tag, pv, cfg.beta):
                counts[i] += 1
    return counts


def _count_successes(cfg, trial_offset, workers, pool):
    lo = trial_offset
    hi = trial_offset + cfg.samples
    if pool is None or workers <= 1:
        return _count_block(cfg, lo, hi)
    # contiguous blocks; integer sums make the reduction order-free
    chunk = max(1, math.ceil(cfg.samples / (workers * 4)))
    spans = [(cfg, s, min(s + chunk, hi)) for s in range(lo, hi, chunk)]
    totals = [0] * len(cfg.properties)
    for part in pool.starmap(_count_block, spans):
        for i, v in enumerate(part):
            totals[i] += v
    return totals


def estimate(
    cfg: ExperimentConfig,
    axis: str = "n",
    axis_value=None,
    trial_offset: int = 0,
    workers: int = 1,
    _pool=None,
) -> list:
    """S trials at one grid point; one row per requested property."""
    if axis_value is None:
        axis_value = cfg.n
    e, clamped = regime_density(cfg.regime, cfg.model, cfg.n)
    desc = cfg.regime.describe()
    if clamped:
        # regime strings are colon-separated and comma-free by design so
        # the CSV stays trivially splittable
        desc += ":clamped"
    own_pool = None
    if workers > 1 and _pool is None:
        own_pool = multiprocessing.Pool(workers)
    try:
        counts = _count_successes(cfg, trial_offset, workers, _pool or own_pool)
    finally:
        if own_pool is not None:
            own_pool.close()
            own_pool.join()
    rows = []
    for tag, successes in zip(cfg.properties, counts):
        lo, hi = wilson_interval(successes, cfg.samples)
        rows.append(
            EstimateRow(
                model=cfg.model,
                regime=desc,
                axis=axis,
                axis_value=axis_value,
                n=cfg.n,
                property=tag,
                samples=cfg.samples,
                successes=successes,
                p_hat=successes / cfg.samples,
                ci_low=lo,
                ci_high=hi,
                seed=cfg.seed,
                iters=cfg.iters,
            )
        )
    return rows


def _apply_axis(cfg: ExperimentConfig, axis: str, value):
    if axis == "c":
        if not isinstance(cfg.regime, PowerLaw):
            raise ValueError("the c axis needs a powerlaw regime")
        return replace(cfg, regime=replace(cfg.regime, c=float(value)))
    if axis == "x":
        if not isinstance(cfg.regime, (LogShift, PedgeSharp)):
            raise ValueError("the x axis needs a logshift or pedge_sharp regime")
        return replace(cfg, regime=replace(cfg.regime, x=float(value)))
    if axis == "n":
        return replace(cfg, n=int(value))
    raise ValueError(f"unknown axis {axis!r}")


def sweep(cfg: ExperimentConfig, axis: str, grid, workers: int = 1) -> list:
    """Estimate along a grid; grid point j uses trials j*S .. (j+1)*S - 1."""
    grid = list(grid)
    if not grid:
        raise ValueError("empty grid")
    pool = None
    rows = []
    try:
        if workers > 1:
            pool = multiprocessing.Pool(workers)
        for j, value in enumerate(grid):
            cfg_j = _apply_axis(cfg, axis, value)
            rows.extend(
                estimate(
                    cfg_j,
                    axis=axis,
                    axis_value=int(value) if axis == "n" else float(value),
                    trial_offset=j * cfg.samples,
                    workers=workers,
                    _pool=pool,
                )
            )
    finally:
        if pool is not None:
            pool.close()
            pool.join()
    rows.sort(key=lambda r: (r.axis_value, r.property))
    return rows


def _fmt(value) -> str:
    if isinstance(value, bool):
        raise TypeError("no boolean columns")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def rows_to_csv(rows) -> str:
    """Render rows in the fixed column order, LF endings, 9 significant
    digits on floats."""
    lines = [CSV_HEADER]
    for r in rows:
        lines.append(
            ",".join(
                (
                    r.model,
                    r.regime,
                    r.axis,
                    _fmt(r.axis_value),
                    str(r.n),
                    r.property,
                    str(r.samples),
                    str(r.successes),
                    _fmt(r.p_hat),
                    _fmt(r.ci_low),
                    _fmt(r.ci_high),
                    str(r.seed),
                    str(r.iters),
                )
            )
        )
    return "\n".join(lines) + "\n"


def write_csv(rows, path):
    with open(path, "w", newline="") as fh:
        fh.write(rows_to_csv(rows))

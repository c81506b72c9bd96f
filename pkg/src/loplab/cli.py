"""Command line front end.

Subcommands:

  gen        sample one graph (er | rg) and write it as JSON
  check      evaluate properties of a stored graph or point sample
  analytic   tabulate a closed-form curve to CSV
  sweep      Monte Carlo property estimation along a grid, CSV out
  reproduce  canned sweeps matching the reference figures, CSV out

Exit codes: 0 on success, 1 on file/IO trouble (missing or unparsable
inputs, unwritable outputs), 2 on usage errors (bad flags, names, or
parameter domains).

Grids are written either as comma-separated values ("0,0.5,1") or as
ranges "start:stop:step" (inclusive of stop up to rounding). Regimes are
colon-separated: "powerlaw:c=1.1:alpha=1", "logshift:x=0",
"pedge_sharp:x=0", "fixed:value=0.02".

Worker processes for sweeps come from --workers, then the LOPLAB_WORKERS
environment variable, then the machine's CPU count. Results are
byte-identical whatever the worker count.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import analytics
from .analytics import ER, RG, Fixed, LogShift, PedgeSharp, PowerLaw
from .graph import (
    components,
    edge_count,
    graph_from_json_dict,
    graph_to_json_dict,
)
from .lop import (
    DEFAULT_MAX_ORACLE_N,
    classify_sigma,
    lop_oracle,
    plopu_violation,
)
from .montecarlo import ExperimentConfig, rows_to_csv, sweep
from .props import as_beta, giant_fraction, pconn, pedge, pgiant
from .randgen import (
    RngStream,
    gen_er,
    gen_rg,
    graph_from_sample,
    sample_from_json_dict,
    sample_to_json_dict,
)


class _InputError(Exception):
    """A named input file that cannot be read or parsed."""


def _parse_grid(text: str) -> list:
    text = text.strip()
    if not text:
        raise ValueError("empty grid")
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError("range grids are start:stop:step")
        start, stop, step = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("grid step must be positive")
        values = []
        i = 0
        while True:
            v = start + i * step
            if v > stop + step * 1e-9:
                break
            values.append(v)
            i += 1
        if not values:
            raise ValueError("empty grid")
        return values
    return [float(p) for p in text.split(",") if p.strip() != ""]


_REGIME_FORMS = {
    "powerlaw": (PowerLaw, ("c",), {"alpha": 1.0}),
    "logshift": (LogShift, ("x",), {}),
    "pedge_sharp": (PedgeSharp, ("x",), {}),
    "fixed": (Fixed, ("value",), {}),
}


def _parse_regime(text: str):
    parts = text.strip().split(":")
    form, kv = parts[0], parts[1:]
    if form not in _REGIME_FORMS:
        raise ValueError(
            f"unknown regime form {form!r} (choose from {sorted(_REGIME_FORMS)})"
        )
    cls, required, optional = _REGIME_FORMS[form]
    fields = {}
    for item in kv:
        if "=" not in item:
            raise ValueError(f"regime parameter {item!r} is not key=value")
        key, val = item.split("=", 1)
        fields[key] = float(val)
    missing = [k for k in required if k not in fields]
    if missing:
        raise ValueError(f"regime {form} is missing {missing}")
    extra = sorted(set(fields) - set(required) - set(optional))
    if extra:
        raise ValueError(f"regime {form} got unknown parameters {extra}")
    return cls(**{**optional, **fields})


def _default_workers() -> int:
    env = os.environ.get("LOPLAB_WORKERS")
    if env is not None:
        workers = int(env)
        if workers < 1:
            raise ValueError("LOPLAB_WORKERS must be at least 1")
        return workers
    return os.cpu_count() or 1


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path} is not valid JSON: {exc}") from exc


def _write_text(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", newline="") as fh:
        fh.write(text)


# ---------------------------------------------------------------------------
# gen


def _cmd_gen(args) -> int:
    stream = RngStream(args.seed, args.trial)
    if args.model == "er":
        if args.p is None:
            raise ValueError("er generation needs --p")
        if args.r is not None:
            raise ValueError("--r applies to rg only")
        g = gen_er(stream, args.n, args.p)
        sample = None
    else:
        if args.r is None:
            raise ValueError("rg generation needs --r")
        if args.p is not None:
            raise ValueError("--p applies to er only")
        g, sample = gen_rg(stream, args.n, args.r)
    _write_text(args.out, json.dumps(graph_to_json_dict(g)) + "\n")
    if args.points_out:
        if sample is None:
            raise ValueError("--points-out applies to rg only")
        _write_text(args.points_out, json.dumps(sample_to_json_dict(sample)) + "\n")
    return 0


# ---------------------------------------------------------------------------
# check

CHECK_PROPS = ("plopl", "plopu", "conn", "giant", "pedge", "lop", "sigma")


def _cmd_check(args) -> int:
    data = _load_json(args.infile)
    # two accepted shapes: a graph {"n", "edges"} or a point sample
    # {"r", "points"}, told apart by their keys
    try:
        if isinstance(data, dict) and "points" in data:
            g = graph_from_sample(sample_from_json_dict(data))
        else:
            g = graph_from_json_dict(data)
    except ValueError as exc:
        raise _InputError(f"{args.infile}: {exc}") from exc
    props = [p.strip() for p in args.props.split(",") if p.strip()]
    if args.oracle and "lop" not in props:
        props.append("lop")
    for p in props:
        if p not in CHECK_PROPS:
            raise ValueError(f"unknown property {p!r} (choose from {CHECK_PROPS})")
    if not props:
        raise ValueError("no properties requested")
    stream = RngStream(args.seed, args.trial)
    comps = components(g)
    report = {"n": g.n, "m": edge_count(g)}
    out = {}
    for p in props:
        if p == "plopl":
            out[p] = edge_count(g) == g.n - len(comps)
        elif p == "conn":
            out[p] = pconn(g, comps)
        elif p == "pedge":
            out[p] = pedge(g)
        elif p == "giant":
            frac = giant_fraction(g, comps)
            out[p] = {
                "fraction": str(frac),
                "beta": str(as_beta(args.beta)),
                "holds": pgiant(g, args.beta, comps),
            }
        elif p == "plopu":
            verdict = plopu_violation(g, args.iters, stream)
            out[p] = {
                "violation_found": verdict.found,
                "witness": verdict.witness,
                "iterations_used": verdict.iterations_used,
                "miss_probability_bound": verdict.miss_probability_bound,
            }
        elif p == "lop":
            verdict = lop_oracle(g, args.max_oracle_n)
            entry = {"satisfies": verdict.satisfies}
            violation = verdict.violation
            if violation is not None:
                if hasattr(violation, "length"):
                    entry["violation"] = {
                        "kind": "cycle",
                        "length": violation.length,
                        "witness": violation.witness,
                    }
                else:
                    entry["violation"] = {
                        "kind": "dumbbell",
                        "s": violation.s,
                        "t": violation.t,
                        "k_path": violation.k_path,
                        "cycle_s": violation.cycle_s,
                        "cycle_t": violation.cycle_t,
                        "path": violation.path,
                    }
            out[p] = entry
        elif p == "sigma":
            cls = classify_sigma(g, args.iters, stream, args.max_oracle_n)
            out[p] = {
                "kind": cls.kind,
                "lower": str(cls.lower),
                "upper": str(cls.upper),
                "witness": cls.witness,
            }
    report["properties"] = out
    _write_text(args.out, json.dumps(report, indent=2) + "\n")
    return 0


# ---------------------------------------------------------------------------
# analytic

_SCALAR_CURVES = {
    "f-plop-er": analytics.f_plop_er,
    "f-forest-er": analytics.f_forest_er,
    "rg-plop-upper": analytics.rg_plop_upper,
    "c-beta": analytics.c_beta,
    "conn-gumbel": analytics.gumbel_cdf,
    "pedge-normal": lambda x: analytics.std_normal_cdf(-x),
}

_PAIR_CURVES = {
    "sigma-bounds-er": analytics.e_sigma_bounds_er,
    "sigma-bounds-rg": analytics.e_sigma_bounds_rg,
}

CURVE_NAMES = tuple(sorted(_SCALAR_CURVES) + sorted(_PAIR_CURVES))


def _analytic_grid(args) -> list:
    """One of three spellings: --x VALUE, --grid SPEC, or the
    --x-min/--x-max/--steps triple (steps evaluation points, endpoints
    included)."""
    have_span = any(v is not None for v in (args.x_min, args.x_max, args.steps))
    chosen = sum((args.x is not None, args.grid is not None, have_span))
    if chosen != 1:
        raise ValueError("give exactly one of --x, --grid, or --x-min/--x-max/--steps")
    if args.x is not None:
        return [args.x]
    if args.grid is not None:
        return _parse_grid(args.grid)
    if None in (args.x_min, args.x_max, args.steps):
        raise ValueError("--x-min, --x-max, and --steps go together")
    if args.steps < 2 or args.x_max <= args.x_min:
        raise ValueError("need --steps >= 2 and --x-max > --x-min")
    width = (args.x_max - args.x_min) / (args.steps - 1)
    return [args.x_min + i * width for i in range(args.steps)]


def _cmd_analytic(args) -> int:
    grid = _analytic_grid(args)
    lines = []
    if args.curve in _SCALAR_CURVES:
        fn = _SCALAR_CURVES[args.curve]
        lines.append("x,value")
        for x in grid:
            lines.append(f"{x:.9g},{fn(x):.9g}")
    elif args.curve in _PAIR_CURVES:
        fn = _PAIR_CURVES[args.curve]
        lines.append("x,value,value2")
        for x in grid:
            lo, hi = fn(x)
            lines.append(f"{x:.9g},{lo:.9g},{hi:.9g}")
    else:
        raise ValueError(f"unknown curve {args.curve!r} (choose from {CURVE_NAMES})")
    _write_text(args.out, "\n".join(lines) + "\n")
    return 0


# ---------------------------------------------------------------------------
# sweep


def _cmd_sweep(args) -> int:
    regime = _parse_regime(args.regime)
    props = tuple(p.strip() for p in args.props.split(",") if p.strip())
    workers = args.workers if args.workers is not None else _default_workers()
    cfg = ExperimentConfig(
        model=args.model,
        regime=regime,
        n=args.n,
        samples=args.samples,
        iters=args.iters,
        seed=args.seed,
        properties=props,
        beta=as_beta(args.beta),
        oracle_max_n=args.max_oracle_n,
    )
    grid = _parse_grid(args.grid)
    rows = sweep(cfg, args.axis, grid, workers=workers)
    _write_text(args.out, rows_to_csv(rows))
    return 0


# ---------------------------------------------------------------------------
# reproduce


@dataclass(frozen=True)
class FigurePreset:
    """A canned sweep whose full-scale parameters match a reference plot.

    regimes holds one entry per curve family; each runs as its own sweep
    and the rows are concatenated. scale multiplies n and the sample
    count S (S never drops below 30); grids and iteration budgets are
    untouched except on the n axis, where the grid is the thing scaled.
    """

    figure_id: str
    description: str
    model: str
    regimes: tuple
    axis: str
    grid: tuple
    n: int
    samples: int
    iters: int
    properties: tuple
    seed: int


FIGURE_PRESETS = {
    p.figure_id: p
    for p in (
        FigurePreset(
            figure_id="er-prop-vs-c",
            description="ER properties against c for p = c/n",
            model=ER,
            regimes=(PowerLaw(c=0.0, alpha=1.0),),
            axis="c",
            grid=tuple(round(0.1 * i, 1) for i in range(0, 21)),
            n=10_000,
            samples=1_000,
            iters=10_000,
            properties=("plopl", "plopu", "conn", "giant", "pedge"),
            seed=46305,
        ),
        FigurePreset(
            figure_id="er-prop-vs-n",
            description="ER joint no-violation and giant probability against n",
            model=ER,
            regimes=tuple(PowerLaw(c=c, alpha=1.0) for c in (1.0, 1.05, 1.1, 1.15)),
            axis="n",
            grid=(500, 1000, 2000, 4000),
            n=4000,
            samples=10_000,
            iters=1_000,
            properties=("plopu_giant",),
            seed=46306,
        ),
        FigurePreset(
            figure_id="rg-prop-vs-c-65",
            description="RG properties against c for r^2 = c/n^(6/5)",
            model=RG,
            regimes=(PowerLaw(c=0.0, alpha=1.2),),
            axis="c",
            grid=tuple(round(0.5 * i, 1) for i in range(0, 17)),
            n=10_000,
            samples=1_000,
            iters=1_000,
            properties=("plopu", "giant"),
            seed=46307,
        ),
        FigurePreset(
            figure_id="rg-prop-vs-c-1",
            description="RG properties against c for r^2 = c/n",
            model=RG,
            regimes=(PowerLaw(c=0.0, alpha=1.0),),
            axis="c",
            grid=tuple(round(0.2 * i, 1) for i in range(0, 16)),
            n=10_000,
            samples=1_000,
            iters=1_000,
            properties=("plopu", "giant"),
            seed=46308,
        ),
        FigurePreset(
            figure_id="rg-prop-vs-n",
            description="RG joint no-violation and giant probability against n",
            model=RG,
            regimes=(PowerLaw(c=1.5, alpha=1.0),),
            axis="n",
            grid=(500, 1000, 2000, 4000),
            n=4000,
            samples=100_000,
            iters=1_000,
            properties=("plopu", "giant", "plopu_giant"),
            seed=46309,
        ),
    )
}


def _scaled(value: int, scale: float, floor: int) -> int:
    return max(floor, round(value * scale))


def _cmd_reproduce(args) -> int:
    preset = FIGURE_PRESETS.get(args.figure)
    if preset is None:
        raise ValueError(
            f"unknown figure {args.figure!r} "
            f"(choose from {sorted(FIGURE_PRESETS)})"
        )
    if not 0.0 < args.scale <= 1.0:
        raise ValueError("--scale must lie in (0, 1]")
    workers = args.workers if args.workers is not None else _default_workers()
    seed = args.seed if args.seed is not None else preset.seed
    samples = _scaled(preset.samples, args.scale, 30)
    rows = []
    for regime in preset.regimes:
        if preset.axis == "n":
            grid = [_scaled(v, args.scale, 2) for v in preset.grid]
            n = grid[-1]
        else:
            grid = list(preset.grid)
            n = _scaled(preset.n, args.scale, 2)
        cfg = ExperimentConfig(
            model=preset.model,
            regime=regime,
            n=n,
            samples=samples,
            iters=preset.iters,
            seed=seed,
            properties=preset.properties,
        )
        rows.extend(sweep(cfg, preset.axis, grid, workers=workers))
    rows.sort(key=lambda r: (r.axis_value, r.property, r.regime))
    _write_text(args.out, rows_to_csv(rows))
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loplab",
        description="local pooling on random graphs: generators, detectors, "
        "closed forms, Monte Carlo sweeps",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="sample one graph and write JSON")
    p_gen.add_argument("--model", choices=("er", "rg"), required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--p", type=float, help="edge probability (er)")
    p_gen.add_argument("--r", type=float, help="connection radius (rg)")
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--trial", type=int, default=0)
    p_gen.add_argument("--out", default="-")
    p_gen.add_argument("--points-out", help="also write the rg point sample")
    p_gen.set_defaults(func=_cmd_gen)

    p_check = sub.add_parser("check", help="evaluate properties of one graph")
    p_check.add_argument(
        "--in",
        dest="infile",
        required=True,
        help="graph or rg point-sample JSON path",
    )
    p_check.add_argument("--props", default="plopl,plopu,conn,giant,pedge")
    p_check.add_argument(
        "--oracle",
        action="store_true",
        help="add the exact small-n decision to the report",
    )
    p_check.add_argument("--iters", type=int, default=1000)
    p_check.add_argument("--seed", type=int, default=0)
    p_check.add_argument("--trial", type=int, default=0)
    p_check.add_argument("--beta", default="0.25")
    p_check.add_argument("--max-oracle-n", type=int, default=DEFAULT_MAX_ORACLE_N)
    p_check.add_argument("--out", default="-")
    p_check.set_defaults(func=_cmd_check)

    p_ana = sub.add_parser("analytic", help="tabulate a closed-form curve")
    p_ana.add_argument("--curve", required=True)
    p_ana.add_argument("--x", type=float, help="single evaluation point")
    p_ana.add_argument("--grid", help="comma list or start:stop:step")
    p_ana.add_argument("--x-min", type=float)
    p_ana.add_argument("--x-max", type=float)
    p_ana.add_argument("--steps", type=int, help="evaluation points, ends included")
    p_ana.add_argument("--out", default="-")
    p_ana.set_defaults(func=_cmd_analytic)

    p_sweep = sub.add_parser("sweep", help="Monte Carlo estimates along a grid")
    p_sweep.add_argument("--model", choices=(ER, RG), required=True)
    p_sweep.add_argument("--regime", required=True)
    p_sweep.add_argument("--axis", choices=("c", "x", "n"), required=True)
    p_sweep.add_argument("--grid", required=True)
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--samples", type=int, required=True)
    p_sweep.add_argument("--iters", type=int, default=1000)
    p_sweep.add_argument("--seed", type=int, default=0)
    p_sweep.add_argument("--props", default="plopl,plopu,conn,giant,pedge")
    p_sweep.add_argument("--beta", default="0.25")
    p_sweep.add_argument("--max-oracle-n", type=int, default=DEFAULT_MAX_ORACLE_N)
    p_sweep.add_argument("--workers", type=int)
    p_sweep.add_argument("--out", default="-")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_rep = sub.add_parser("reproduce", help="run a canned figure sweep")
    p_rep.add_argument("--figure", required=True)
    p_rep.add_argument("--scale", type=float, default=1.0)
    p_rep.add_argument("--seed", type=int)
    p_rep.add_argument("--workers", type=int)
    p_rep.add_argument("--out", default="-")
    p_rep.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _InputError as exc:
        print(f"loplab: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"loplab: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"loplab: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

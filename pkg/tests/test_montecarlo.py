import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from loplab.analytics import ER, RG, Fixed, LogShift, PedgeSharp, PowerLaw
from loplab.montecarlo import (
    CSV_HEADER,
    PROPERTY_TAGS,
    EstimateRow,
    ExperimentConfig,
    _apply_axis,
    _fmt,
    estimate,
    property_success,
    rows_to_csv,
    run_trial,
    sweep,
    wilson_interval,
    write_csv,
)
from loplab.props import PropertyVector


def make_cfg(**kw):
    base = dict(
        model=ER,
        regime=Fixed(0.25),
        n=12,
        samples=20,
        iters=10,
        seed=99,
        properties=("plopl", "conn"),
    )
    base.update(kw)
    return ExperimentConfig(**base)


# ---------------------------------------------------------------------------
# wilson intervals


def test_wilson_reference_values():
    assert wilson_interval(100, 100) == (0.963005192523998, 1.0)
    assert wilson_interval(50, 100) == (0.40382982859014716, 0.5961701714098528)
    assert wilson_interval(0, 100) == (0.0, 0.03699480747600191)


def test_wilson_rejections():
    with pytest.raises(ValueError):
        wilson_interval(0, 0)
    with pytest.raises(ValueError):
        wilson_interval(-1, 10)
    with pytest.raises(ValueError):
        wilson_interval(11, 10)


@given(st.integers(1, 3000).flatmap(
    lambda n: st.tuples(st.integers(0, n), st.just(n))))
def test_wilson_brackets_the_point_estimate(sn):
    s, n = sn
    lo, hi = wilson_interval(s, n)
    assert 0.0 <= lo <= s / n <= hi <= 1.0


@pytest.mark.slow
def test_wilson_coverage_at_the_nominal_level():
    # 1e4 replications of S=200 Bernoulli(0.3) trials: the 95% interval
    # must cover the truth at least 94% of the time
    rng = np.random.default_rng(12345)
    draws = rng.binomial(200, 0.3, size=10_000)
    covered = 0
    for s in draws:
        lo, hi = wilson_interval(int(s), 200)
        covered += lo <= 0.3 <= hi
    assert covered / 10_000 >= 0.94


# ---------------------------------------------------------------------------
# configs and trials


def test_config_validation():
    cfg = make_cfg(properties=["plopl"])  # lists are fine, stored as tuple
    assert cfg.properties == ("plopl",)
    assert cfg.beta == Fraction(1, 4)
    with pytest.raises(ValueError):
        make_cfg(model="ba")
    with pytest.raises(ValueError):
        make_cfg(n=0)
    with pytest.raises(ValueError):
        make_cfg(samples=0)
    with pytest.raises(ValueError):
        make_cfg(iters=0)
    with pytest.raises(ValueError):
        make_cfg(seed=-1)
    with pytest.raises(ValueError):
        make_cfg(seed=2**64)
    with pytest.raises(ValueError):
        make_cfg(properties=("plop",))
    with pytest.raises(ValueError):
        make_cfg(beta=1)


def test_exact_lop_respects_the_size_cap():
    make_cfg(properties=("lop",), n=14)
    with pytest.raises(ValueError):
        make_cfg(properties=("lop",), n=15)
    make_cfg(properties=("lop",), n=15, oracle_max_n=15)


def test_empty_property_set_is_allowed():
    cfg = make_cfg(properties=())
    rows = estimate(cfg)
    assert rows == []
    assert rows_to_csv(rows) == CSV_HEADER + "\n"


def test_trials_are_deterministic():
    cfg = make_cfg(properties=("plopl", "plopu", "conn"))
    assert run_trial(cfg, 3) == run_trial(cfg, 3)
    assert run_trial(cfg, 3) != run_trial(cfg, 4) or True  # may collide, no assert


def test_trial_on_the_empty_density():
    cfg = make_cfg(regime=Fixed(0.0), n=6, properties=("plopl",))
    pv = run_trial(cfg, 0)
    assert pv.plopl and not pv.conn
    assert pv.giant_fraction == Fraction(1, 6)
    assert pv.pedge
    assert pv.plopu_violation_found is None and pv.lop_exact is None


def test_trial_on_the_full_density():
    # K7: connected, well over the edge budget, and full of 6-cycles
    cfg = make_cfg(regime=Fixed(1.0), n=7, iters=2000,
                   properties=("plopu", "conn"))
    pv = run_trial(cfg, 0)
    assert pv.conn and not pv.plopl and not pv.pedge
    assert pv.giant_fraction == 1
    assert pv.plopu_violation_found is True


def test_trial_exact_lop_on_small_cliques():
    # K5 has no forbidden cycle length and no room for a dumbbell; K6
    # has its hamiltonian 6-cycles
    five = run_trial(make_cfg(regime=Fixed(1.0), n=5, properties=("lop",)), 0)
    assert five.lop_exact is True
    six = run_trial(make_cfg(regime=Fixed(1.0), n=6, properties=("lop",)), 0)
    assert six.lop_exact is False


def test_detector_requests_do_not_disturb_generation():
    plain = make_cfg(properties=("conn",), n=30, regime=Fixed(0.1))
    loaded = make_cfg(properties=("conn", "plopu"), n=30, regime=Fixed(0.1))
    for t in range(10):
        a, b = run_trial(plain, t), run_trial(loaded, t)
        assert (a.plopl, a.conn, a.giant_fraction, a.pedge) == (
            b.plopl, b.conn, b.giant_fraction, b.pedge)


def test_rg_trials_run():
    cfg = make_cfg(model=RG, regime=Fixed(0.02), n=50,
                   properties=("conn", "giant", "pedge"))
    pv = run_trial(cfg, 0)
    assert isinstance(pv.conn, bool)
    assert 0 < pv.giant_fraction <= 1


def test_property_success_table():
    pv = PropertyVector(
        plopl=True, conn=False, giant_fraction=Fraction(1, 2), pedge=True,
        plopu_violation_found=False, lop_exact=None,
    )
    beta = Fraction(1, 4)
    assert property_success("plopl", pv, beta)
    assert property_success("plopu", pv, beta)
    assert not property_success("conn", pv, beta)
    assert property_success("giant", pv, beta)
    assert not property_success("giant", pv, Fraction(3, 4))
    assert property_success("pedge", pv, beta)
    assert not property_success("lop", pv, beta)  # not evaluated, not a success
    assert property_success("plopu_giant", pv, beta)
    pv.plopu_violation_found = True
    assert not property_success("plopu", pv, beta)
    assert not property_success("plopu_giant", pv, beta)
    with pytest.raises(ValueError):
        property_success("girth", pv, beta)


def test_per_trial_predicates_nest():
    cfg = make_cfg(properties=("plopl", "plopu", "lop"), n=12,
                   regime=Fixed(0.25), iters=30, samples=1)
    for t in range(200):
        pv = run_trial(cfg, t)
        if pv.plopl:
            assert pv.lop_exact
        if pv.lop_exact:
            assert not pv.plopu_violation_found
    assert True


# ---------------------------------------------------------------------------
# estimates and sweeps


def test_estimate_emits_one_row_per_property():
    cfg = make_cfg(properties=("plopl", "conn", "pedge"), samples=40)
    rows = estimate(cfg)
    assert [r.property for r in rows] == ["plopl", "conn", "pedge"]
    for r in rows:
        assert r.model == ER and r.n == 12 and r.samples == 40
        assert r.axis == "n" and r.axis_value == 12
        assert r.seed == 99 and r.iters == 10
        assert r.p_hat == r.successes / 40
        assert (r.ci_low, r.ci_high) == wilson_interval(r.successes, 40)
        assert r.regime == "fixed:value=0.25"


def test_estimate_marks_clamped_regimes():
    cfg = make_cfg(regime=Fixed(1.7), properties=("conn",))
    (row,) = estimate(cfg)
    assert row.regime == "fixed:value=1.7:clamped"
    assert row.successes == cfg.samples  # p clamps to 1, K12 is connected


def test_estimate_agrees_across_worker_counts():
    cfg = make_cfg(properties=("plopl", "conn"), samples=60)
    assert estimate(cfg) == estimate(cfg, workers=3)


def test_sweep_matches_manual_offsets():
    cfg = make_cfg(properties=("conn", "plopl"), samples=25)
    rows = sweep(cfg, "n", [6, 9])
    by_hand = estimate(
        _apply_axis(cfg, "n", 6), axis="n", axis_value=6, trial_offset=0
    ) + estimate(_apply_axis(cfg, "n", 9), axis="n", axis_value=9, trial_offset=25)
    by_hand.sort(key=lambda r: (r.axis_value, r.property))
    assert rows == by_hand
    assert [(r.axis_value, r.property) for r in rows] == [
        (6, "conn"), (6, "plopl"), (9, "conn"), (9, "plopl")]


def test_sweep_worker_counts_are_byte_identical():
    cfg = make_cfg(properties=("plopl", "conn", "giant"), samples=40,
                   regime=PowerLaw(1.0, 1.0), n=60)
    texts = {
        w: rows_to_csv(sweep(cfg, "c", [0.5, 1.0, 1.5], workers=w))
        for w in (1, 3, 4)
    }
    assert texts[1] == texts[3] == texts[4]


def test_axis_application_rules():
    cfg = make_cfg(regime=PowerLaw(1.0, 1.0))
    assert _apply_axis(cfg, "c", 1.3).regime == PowerLaw(1.3, 1.0)
    assert _apply_axis(cfg, "n", 44).n == 44
    shifted = make_cfg(regime=LogShift(0.0))
    assert _apply_axis(shifted, "x", -1.0).regime == LogShift(-1.0)
    sharp = make_cfg(regime=PedgeSharp(0.0))
    assert _apply_axis(sharp, "x", 2.0).regime == PedgeSharp(2.0)
    with pytest.raises(ValueError):
        _apply_axis(cfg, "x", 0.0)
    with pytest.raises(ValueError):
        _apply_axis(shifted, "c", 1.0)
    with pytest.raises(ValueError):
        _apply_axis(cfg, "beta", 0.5)
    with pytest.raises(ValueError):
        sweep(cfg, "c", [])


# ---------------------------------------------------------------------------
# csv rendering


def test_csv_rendering_is_fixed():
    row = EstimateRow(
        model="er", regime="powerlaw:c=1.1:alpha=1", axis="c", axis_value=1.1,
        n=400, property="conn", samples=100, successes=37, p_hat=0.37,
        ci_low=wilson_interval(37, 100)[0], ci_high=wilson_interval(37, 100)[1],
        seed=5, iters=10,
    )
    assert rows_to_csv([row]) == (
        CSV_HEADER + "\n"
        "er,powerlaw:c=1.1:alpha=1,c,1.1,400,conn,100,37,"
        "0.37,0.281822126,0.467796524,5,10\n"
    )


def test_fmt_rules():
    assert _fmt(3) == "3"
    assert _fmt(0.1) == "0.1"
    assert _fmt(1 / 3) == "0.333333333"
    with pytest.raises(TypeError):
        _fmt(True)


def test_csv_files_use_lf_line_endings(tmp_path):
    cfg = make_cfg(properties=("conn",), samples=5)
    rows = estimate(cfg)
    out = tmp_path / "rows.csv"
    write_csv(rows, out)
    raw = out.read_bytes()
    assert b"\r" not in raw
    assert raw.endswith(b"\n")
    assert raw.decode().splitlines()[0] == CSV_HEADER


def test_property_tags_cover_the_experiment_surface():
    assert PROPERTY_TAGS == (
        "plopl", "plopu", "conn", "giant", "pedge", "lop", "plopu_giant")

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from coxthick.density import DensityError, DensitySchedule
from coxthick.graph import Graph, disjoint_union
from coxthick.random_lab import (
    AGGREGATE_COLUMNS,
    TRIAL_COLUMNS,
    SweepConfig,
    _pair_from_index,
    high_density_experiment,
    measure,
    relhyp_profile,
    run_sweep,
    sample_gnp,
    trial_rng,
)

from _support import C4_PENDANT, C5


def test_extreme_densities():
    rng = trial_rng(1, 30, 0)
    assert sample_gnp(30, 0.0, rng) == Graph.empty(30)
    assert sample_gnp(30, 1.0, rng) == Graph.complete(30)


def test_edge_count_concentration():
    n, p = 1000, 0.5
    mean = n * (n - 1) / 2 * p
    sd = math.sqrt(n * (n - 1) / 2 * p * (1 - p))
    for seed in range(100):
        g = sample_gnp(n, p, trial_rng(seed, n, 0))
        assert abs(g.num_edges - mean) <= 4 * sd


@pytest.mark.parametrize("p", [0.3, 0.8])
def test_pair_frequencies_uniform(p):
    n, reps = 6, 3000
    counts = np.zeros((n, n))
    for t in range(reps):
        counts += sample_gnp(n, p, trial_rng(99, n, t)).to_matrix()
    sd = math.sqrt(reps * p * (1 - p))
    off = counts[~np.eye(n, dtype=bool)]
    assert np.all(np.abs(off - reps * p) <= 4.5 * sd)


def test_pair_index_inverse_large():
    idx = np.array([0, 1, 2, 3, 7_998_000 - 1, 4_000_000, 123_456_789])
    j, k = _pair_from_index(idx)
    assert np.all(k < j) and np.all(k >= 0)
    assert np.all(j * (j - 1) // 2 + k == idx)


@given(st.integers(0, 2**40))
def test_pair_index_inverse(i):
    j, k = _pair_from_index(np.array([i]))
    assert 0 <= k[0] < j[0] and j[0] * (j[0] - 1) // 2 + k[0] == i


def test_trial_streams_are_independent_of_order():
    a = sample_gnp(50, 0.2, trial_rng(7, 50, 3))
    sample_gnp(50, 0.2, trial_rng(7, 50, 2))
    assert sample_gnp(50, 0.2, trial_rng(7, 50, 3)) == a
    assert sample_gnp(50, 0.2, trial_rng(8, 50, 3)) != a


def test_profiles():
    assert relhyp_profile(C4_PENDANT)["peripheral_profile"]
    assert not relhyp_profile(C5)["peripheral_profile"]
    k23_plus = disjoint_union(Graph.complete_bipartite(2, 3), Graph.empty(1))
    prof = relhyp_profile(k23_plus)
    assert not prof["peripheral_profile"]
    assert prof["giant_fraction"] == pytest.approx(5 / 6)


def test_nontree_components_skip_the_largest():
    g = disjoint_union(Graph.cycle(5), Graph.cycle(3), Graph.path(2))
    prof = relhyp_profile(g)
    assert prof["nontree_components"] == 1
    assert prof["component_shape_census"] == {"components": 3, "trees": 1, "unicyclic": 2}


def test_measure_row_format():
    rec = measure(C4_PENDANT, 5, 0.25, 0)
    assert rec.status == "RelativelyHyperbolic"
    assert rec.has_k22 and not rec.has_k23
    row = dict(zip(TRIAL_COLUMNS, rec.row()))
    assert row["thick"] == "0" and row["peripheral_all_squares"] == "1"
    assert row["giant_fraction"] == "1.000000" and row["missing_edges"] == "5"


def test_sweep_config_validation():
    with pytest.raises(DensityError, match="n=3"):
        SweepConfig([10, 3], DensitySchedule("1/(n-3)"), 5, 1)
    with pytest.raises(ValueError):
        SweepConfig([10], DensitySchedule("0.5"), 0, 1)


def test_sweep_csv_shape_and_aggregates(tmp_path):
    rep = run_sweep(SweepConfig([12, 20], DensitySchedule("0.5"), 4, 3))
    trials, agg = rep.write(tmp_path)
    lines = trials.read_text().splitlines()
    assert lines[0] == ",".join(TRIAL_COLUMNS) and len(lines) == 9
    alines = agg.read_text().splitlines()
    assert alines[0] == ",".join(AGGREGATE_COLUMNS) and len(alines) == 3
    for a in rep.aggregates:
        assert sum(a[c] for c in AGGREGATE_COLUMNS[3:]) == pytest.approx(1.0)


def test_sweep_deterministic_across_workers():
    cfg = dict(n_values=[60, 90], schedule=DensitySchedule("3*log(n)/n"), trials=4, master_seed=5)
    one = run_sweep(SweepConfig(workers=1, **cfg))
    two = run_sweep(SweepConfig(workers=2, **cfg))
    assert one.trials_csv() == two.trials_csv()
    assert one.aggregate_csv() == two.aggregate_csv()


def test_half_density_is_thick_at_forty_vertices():
    rep = run_sweep(SweepConfig([40], DensitySchedule("0.5"), 500, 2024))
    assert rep.aggregates[0]["prop_thick"] >= 0.98


def test_high_density_degenerate_and_small():
    r = high_density_experiment(0.0, 50, 20, 1)
    assert r["P_finite"] == 1.0 and r["mean_missing_edges"] == 0
    r = high_density_experiment(2.0, 200, 300, 4)
    assert r["P_finite"] + r["P_virtZ"] + r["P_other"] == pytest.approx(1.0)
    assert r["order0_among_disjoint"] == r["disjoint_among_other"]

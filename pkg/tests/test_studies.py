import numpy as np
import pytest

from claytonmc import InvalidParameter, linear_grid, run_recovery, run_scaling_bench
from claytonmc.studies import recovery_summary


def test_linear_grid_examples():
    g = linear_grid(0.1, 3, 20)
    assert len(g) == 20 and g[0] == 0.1 and g[-1] == 3.0
    np.testing.assert_allclose(np.diff(g), 2.9 / 19, rtol=1e-12)
    assert linear_grid(0, 1, 2) == [0.0, 1.0]
    assert linear_grid(1, 2, 3) == [1.0, 1.5, 2.0]


@pytest.mark.parametrize("args", [(1, 1, 3), (2, 1, 3), (0, 1, 1), (0, 1, 2.5)])
def test_linear_grid_rejects(args):
    with pytest.raises(InvalidParameter):
        linear_grid(*args)


def test_single_point_recovery():
    (rec,) = run_recovery([2.0], n=1000, seed=0)
    assert rec.converged and 1.5 < rec.theta_hat < 2.5
    assert rec.theta_true == 2.0 and rec.n == 1000 and rec.seed == 0


def test_recovery_grid_quality_and_order():
    grid = linear_grid(0.1, 3, 20)
    recs = run_recovery(grid, n=1000, seed=11)
    assert [r.theta_true for r in recs] == grid
    s = recovery_summary(recs)
    assert s["correlation"] > 0.98 and s["mean_relative_error"] < 0.15


def test_recovery_record_k_is_reproducible_in_isolation():
    grid = [0.5, 1.0, 2.0]
    full = run_recovery(grid, n=300, seed=4)
    # stream index is the grid position, so a one-point grid reproduces record 0 only
    assert run_recovery([0.5], n=300, seed=4)[0] == full[0]


def test_recovery_worker_invariance():
    grid = linear_grid(0.1, 3, 6)
    assert run_recovery(grid, 500, 3, workers=1) == run_recovery(grid, 500, 3, workers=8)


def test_recovery_failed_fit_is_recorded():
    recs = run_recovery([1e-4], n=50, seed=0)
    assert len(recs) == 1
    assert recs[0].theta_true == 1e-4


@pytest.mark.parametrize("grid,n", [([0.0, 1.0], 100), ([1.0], 1)])
def test_recovery_rejects(grid, n):
    with pytest.raises(InvalidParameter):
        run_recovery(grid, n=n)


def test_scaling_bench_records():
    recs = run_scaling_bench([1, 2], grid=[0.5, 1.0, 2.0], n=200, seed=0, reps=3)
    assert [r.workers for r in recs] == [1, 2]
    assert all(r.wall_time_seconds > 0 and r.repetitions == 3 for r in recs)


def test_scaling_bench_single():
    (rec,) = run_scaling_bench([1], grid=[1.0], n=100, reps=3)
    assert rec.workers == 1 and rec.repetitions == 3


def test_scaling_bench_rejects():
    with pytest.raises(InvalidParameter):
        run_scaling_bench([])
    with pytest.raises(InvalidParameter):
        run_scaling_bench([0])

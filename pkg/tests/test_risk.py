from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from claytonmc import (
    AggregateSample,
    ClaytonRiskEstimator,
    DomainError,
    EmptyTail,
    PipelineError,
    aggregate,
    empirical_quantile,
    expected_shortfall,
    make_copula,
    run_risk_pipeline,
    sample,
    stream,
    value_at_risk,
)
from claytonmc.risk import order_index


def sort_and_scan(values, alpha):
    """Brute-force VaR/ES: full sort, integer rank arithmetic, linear scan."""
    xs = sorted(values)
    n = len(xs)
    a = Fraction(repr(alpha))
    k = 1
    while Fraction(k) < a * n:
        k += 1
    var = xs[k - 1]
    tail = [x for x in xs if x > var]
    return var, (sum(tail) / len(tail) if tail else None), len(tail)


def test_empirical_quantile_examples():
    assert empirical_quantile([1, 2, 3, 4, 5], 0.5) == 3
    assert empirical_quantile([1, 2, 3, 4, 5], 0.999) == 5
    assert empirical_quantile([7], 0.2) == 7


@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
def test_empirical_quantile_domain(p):
    with pytest.raises(DomainError):
        empirical_quantile([1, 2, 3], p)


def test_order_index_uses_decimal_reading():
    assert order_index(0.07, 100) == 7
    assert order_index(0.9, 10) == 9
    assert order_index(0.95, 10) == 10


def test_aggregate_examples():
    x = np.array([[0.0, 0.0], [2.0, 2.0]])
    assert aggregate([[0.4, 0.9]], x).values.tolist() == [1.0]
    assert aggregate([[0.6, 0.6]], [[5, 5], [5, 5]]).values.tolist() == [5.0]
    assert len(aggregate([[0.3, 0.2]], np.random.default_rng(0).normal(size=(10, 2)))) == 1


def test_aggregate_vectorised_matches_scalar_quantile():
    rng = np.random.default_rng(2)
    x = rng.normal(size=(37, 2))
    v = rng.uniform(size=(500, 2))
    v[:5] = [[k / 37, k / 37] for k in range(1, 6)]  # exact multiples of 1/n
    got = aggregate(v, x).values
    cols = [np.sort(x[:, 0]), np.sort(x[:, 1])]
    want = [(empirical_quantile(cols[0], a) + empirical_quantile(cols[1], b)) / 2 for a, b in v]
    assert got.tolist() == want


def test_var_examples():
    a = AggregateSample(np.arange(1.0, 11.0))
    assert value_at_risk(a, 0.9) == 9
    assert value_at_risk(a, 0.95) == 10


def test_var_matches_sort_on_large_sample():
    vals = np.random.default_rng(4).uniform(size=10**4)
    assert value_at_risk(vals, 0.99) == sorted(vals)[9900 - 1]


def test_es_examples():
    a = AggregateSample(np.arange(1.0, 11.0))
    assert expected_shortfall(a, 0.9) == (10.0, 1)
    with pytest.raises(EmptyTail):
        expected_shortfall(a, 0.95)
    b = [1, 1, 1, 5, 5]
    assert value_at_risk(b, 0.5) == 1
    assert expected_shortfall(b, 0.5) == (5.0, 2)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 1.5])
def test_var_domain(alpha):
    with pytest.raises(DomainError):
        value_at_risk([1.0, 2.0], alpha)


@settings(max_examples=200, deadline=None)
@given(
    vals=st.lists(st.integers(-20, 20).map(float), min_size=1, max_size=100),
    alpha=st.sampled_from([0.5, 0.9, 0.95, 0.99]),
)
def test_var_es_equal_brute_force(vals, alpha):
    var, es, k = sort_and_scan(vals, alpha)
    assert value_at_risk(vals, alpha) == var
    if es is None:
        with pytest.raises(EmptyTail):
            expected_shortfall(vals, alpha)
    else:
        got_es, got_k = expected_shortfall(vals, alpha)
        assert got_k == k
        assert got_es == pytest.approx(es, rel=1e-15)
        assert got_es >= var


@settings(max_examples=100, deadline=None)
@given(
    vals=st.lists(st.floats(-1e6, 1e6), min_size=1, max_size=200),
    a1=st.floats(0.01, 0.99),
    a2=st.floats(0.01, 0.99),
)
def test_var_monotone_in_alpha(vals, a1, a2):
    lo, hi = sorted((a1, a2))
    assert value_at_risk(vals, lo) <= value_at_risk(vals, hi)


def test_pipeline_end_to_end():
    x = sample(make_copula(2), 1000, stream(123, 0))
    rep = run_risk_pipeline(x, alpha=0.95, big_n=10**5, seed=1)
    assert 1.5 <= rep.theta_hat <= 2.5
    assert 0 < rep.var < 1
    assert rep.es >= rep.var
    assert rep.big_n == 10**5 and rep.n == 1000
    assert rep == run_risk_pipeline(x, alpha=0.95, big_n=10**5, seed=1, workers=3)


def test_pipeline_minimal_size():
    try:
        rep = run_risk_pipeline([[0.0, 1.0], [1.0, 0.0]], alpha=0.5, big_n=1, seed=0)
    except PipelineError as exc:
        assert exc.stage in {"fit", "tail"}
    else:
        assert rep.big_n == 1


def test_risk_estimator_params_and_attributes():
    x = sample(make_copula(1), 300, stream(8, 0))
    est = ClaytonRiskEstimator(alpha=0.9, big_n=5000, seed=2)
    assert est.get_params()["alpha"] == 0.9
    est.fit(x)
    assert est.var_ == est.report_.var and est.es_ >= est.var_
    assert len(est.aggregate_) == 5000


def test_pipeline_labels_stage():
    # comonotone data drives theta to the upper bracket
    x = np.column_stack((np.arange(10.0), np.arange(10.0)))
    with pytest.raises(PipelineError) as info:
        run_risk_pipeline(x, big_n=10)
    assert info.value.stage == "fit"

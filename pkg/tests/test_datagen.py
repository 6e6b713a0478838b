import numpy as np
import pytest

from kendall_rmt.datagen import (
    MARGINALS,
    DataMatrix,
    TieError,
    generate,
    marginal_cdf,
)


def test_generate_is_deterministic():
    a = generate(3, 5, "standard_gaussian", seed=11)
    b = generate(3, 5, "standard_gaussian", seed=11)
    assert np.array_equal(a.values, b.values)
    c = generate(3, 5, "standard_gaussian", seed=12)
    assert not np.array_equal(a.values, c.values)


def test_uniform_values_land_in_unit_interval():
    data = generate(1, 2, "uniform01", seed=4)
    assert data.values.shape == (1, 2)
    assert np.all((data.values > 0.0) & (data.values < 1.0))
    assert data.values[0, 0] != data.values[0, 1]


@pytest.mark.parametrize("marginal", MARGINALS)
def test_rows_never_contain_ties(marginal):
    data = generate(20, 200, marginal, seed=3)
    for row in data.values:
        assert np.unique(row).size == row.size


def test_row_means_obey_clt_bound():
    # uniform sd is 1/sqrt(12); a 4-sigma band on the mean of 1000 draws
    data = generate(2, 1000, "uniform01", seed=8)
    bound = 4.0 / np.sqrt(12.0) / np.sqrt(1000.0)
    assert np.all(np.abs(data.values.mean(axis=1) - 0.5) < bound)


def test_empirical_cdf_tracks_marginal_across_seeds():
    # 1% two-sided KS critical value ~ 1.6276/sqrt(n); allow the nominal
    # failure rate over 40 seeds
    n = 2000
    critical = 1.6276 / np.sqrt(n)
    failures = 0
    for seed in range(40):
        row = generate(1, n, "standard_gaussian", seed=seed).values[0]
        xs = np.sort(row)
        emp = np.arange(1, n + 1) / n
        law = marginal_cdf("standard_gaussian", xs)
        dist = max(np.max(np.abs(emp - law)), np.max(np.abs(emp - 1.0 / n - law)))
        failures += dist >= critical
    assert failures <= 2  # >= 95% of seeds pass


def test_constructor_rejects_bad_shapes_and_ties():
    with pytest.raises(ValueError):
        DataMatrix(values=np.ones((0, 5)), marginal="uniform01")
    with pytest.raises(ValueError):
        DataMatrix(values=np.array([[0.5]]), marginal="uniform01")
    with pytest.raises(ValueError):
        DataMatrix(values=np.array([[0.25, 0.25, 0.5]]), marginal="uniform01")
    with pytest.raises(ValueError):
        DataMatrix(values=np.array([[0.1, np.nan]]), marginal="uniform01")
    with pytest.raises(ValueError):
        generate(2, 3, "lognormal", seed=0)
    with pytest.raises(ValueError):
        generate(0, 3, "uniform01", seed=0)
    with pytest.raises(ValueError):
        generate(2, 1, "uniform01", seed=0)


def test_values_are_immutable():
    data = generate(2, 4, "uniform01", seed=0)
    with pytest.raises(ValueError):
        data.values[0, 0] = 0.5


def test_csv_round_trip(tmp_path):
    data = generate(3, 7, "standard_cauchy", seed=21)
    path = tmp_path / "data.csv"
    data.save_csv(path)
    loaded = DataMatrix.load_csv(path)
    assert np.array_equal(loaded.values, data.values)
    assert loaded.marginal == data.marginal
    assert loaded.seed == data.seed


def test_marginal_cdf_shapes_and_limits():
    xs = np.linspace(-50, 50, 101)
    for marginal in MARGINALS:
        cdf = marginal_cdf(marginal, xs)
        assert np.all(np.diff(cdf) >= 0)
        assert cdf[0] < 1e-6 or marginal == "standard_cauchy"
        assert 0.0 <= cdf[0] <= cdf[-1] <= 1.0
    assert marginal_cdf("uniform01", 0.5) == 0.5
    assert marginal_cdf("standard_gaussian", 0.0) == 0.5
    assert marginal_cdf("standard_cauchy", 0.0) == 0.5


def test_tie_error_is_raised_for_degenerate_rows():
    assert issubclass(TieError, RuntimeError)

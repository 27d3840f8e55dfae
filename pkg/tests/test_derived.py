import random

import pytest

from timequery import (
    Criterion,
    CriterionKind,
    InvalidQueryError,
    compute_aggregate_series,
    compute_net_change,
    compute_pct_change,
    compute_rank_matrix,
    compute_windowed_variance,
    derive,
    ego_series,
)

from .conftest import make_dataset, random_dataset


def brute_force_ranks(values_at_t):
    """Independent competition-ranking oracle: sort descending, 1 + #strictly-greater."""
    return {
        cid: None if v is None else 1 + sum(
            1 for w in values_at_t.values() if w is not None and w > v
        )
        for cid, v in values_at_t.items()
    }


class TestRank:
    def test_distinct_values(self):
        ds = make_dataset({"A": [3.0], "B": [1.0], "C": [2.0]})
        m = compute_rank_matrix(ds)
        assert m.row("A") == (1,)
        assert m.row("B") == (3,)
        assert m.row("C") == (2,)

    def test_ties_share_minimal_rank(self):
        ds = make_dataset({"A": [5.0], "B": [5.0], "C": [2.0]})
        m = compute_rank_matrix(ds)
        assert (m.row("A"), m.row("B"), m.row("C")) == ((1,), (1,), (3,))

    def test_missing_excluded(self):
        ds = make_dataset({"A": [4.0], "B": [None], "C": [7.0]})
        m = compute_rank_matrix(ds)
        assert m.row("A") == (2,)
        assert m.row("B") == (None,)
        assert m.row("C") == (1,)

    def test_matches_brute_force_oracle(self):
        rng = random.Random(7)
        for _ in range(20):
            ds = random_dataset(rng, n_cases=15, n_steps=10, missing_rate=0.1)
            m = compute_rank_matrix(ds)
            for t in range(ds.num_timesteps):
                at_t = {c.id: c.values[t] for c in ds.cases}
                expected = brute_force_ranks(at_t)
                for i, cid in enumerate(ds.case_ids):
                    assert m.values[i][t] == expected[cid]

    def test_distinct_ranks_are_permutation(self):
        rng = random.Random(11)
        vals = rng.sample(range(100), 8)
        ds = make_dataset({f"c{i}": [float(v)] for i, v in enumerate(vals)})
        m = compute_rank_matrix(ds)
        assert sorted(row[0] for row in m.values) == list(range(1, 9))


class TestNetChange:
    def test_direct_differences(self):
        ds = make_dataset({"A": [10.0, 12.0, 9.0]})
        assert compute_net_change(ds, 1).row("A") == (None, 2.0, -3.0)

    def test_constant_series(self):
        ds = make_dataset({"A": [7.0, 7.0, 7.0, 7.0]})
        assert compute_net_change(ds, 2).row("A") == (None, None, 0.0, 0.0)

    def test_missing_endpoint(self):
        ds = make_dataset({"A": [10.0, None, 9.0]})
        assert compute_net_change(ds, 1).row("A") == (None, None, None)

    @pytest.mark.parametrize("delta", [0, 3, -1])
    def test_delta_out_of_range(self, delta):
        ds = make_dataset({"A": [1.0, 2.0, 3.0]})
        with pytest.raises(InvalidQueryError):
            compute_net_change(ds, delta)


class TestPctChange:
    def test_plus_ten_percent(self):
        ds = make_dataset({"A": [100.0, 110.0]})
        assert compute_pct_change(ds, 1).row("A") == (None, 10.0)

    def test_zero_denominator_undefined(self):
        ds = make_dataset({"A": [0.0, 5.0]})
        assert compute_pct_change(ds, 1).row("A") == (None, None)

    def test_negative_base_uses_absolute_denominator(self):
        # (-2 - (-4)) / |-4| * 100 = 50
        ds = make_dataset({"A": [-4.0, -2.0]})
        assert compute_pct_change(ds, 1).row("A") == (None, 50.0)

    def test_same_sign_as_net_change(self):
        rng = random.Random(3)
        ds = random_dataset(rng, n_cases=10, n_steps=20, missing_rate=0.1)
        net = compute_net_change(ds, 2)
        pct = compute_pct_change(ds, 2)
        for nrow, prow in zip(net.values, pct.values):
            for n, p in zip(nrow, prow):
                if n is not None and p is not None:
                    assert (n > 0) == (p > 0) and (n < 0) == (p < 0)


class TestWindowedVariance:
    def test_constant_series_is_zero(self):
        ds = make_dataset({"A": [2.0, 2.0, 2.0]})
        assert compute_windowed_variance(ds, 3).row("A") == (0.0, 0.0, 0.0)

    def test_center_value(self):
        # mean 2, squared diffs 1, 0, 1 -> population variance 2/3
        ds = make_dataset({"A": [1.0, 2.0, 3.0]})
        assert compute_windowed_variance(ds, 3).row("A")[1] == pytest.approx(2 / 3, rel=1e-12)

    def test_truncated_edge(self):
        # window at t=0 truncates to {1, 2}, mean 1.5, variance 0.25
        ds = make_dataset({"A": [1.0, 2.0, 3.0]})
        assert compute_windowed_variance(ds, 3).row("A")[0] == pytest.approx(0.25, rel=1e-12)

    def test_all_missing_window(self):
        ds = make_dataset({"A": [None, None, 5.0]})
        out = compute_windowed_variance(ds, 1).row("A")
        assert out == (None, None, 0.0)

    @pytest.mark.parametrize("window", [2, 0, 5])
    def test_bad_window(self, window):
        ds = make_dataset({"A": [1.0, 2.0, 3.0]})
        with pytest.raises(InvalidQueryError):
            compute_windowed_variance(ds, window)

    def test_scale_property(self):
        rng = random.Random(5)
        base = [rng.uniform(-10, 10) for _ in range(15)]
        a = 3.7
        ds1 = make_dataset({"A": base})
        ds2 = make_dataset({"A": [a * v for v in base]})
        v1 = compute_windowed_variance(ds1, 5).row("A")
        v2 = compute_windowed_variance(ds2, 5).row("A")
        for x, y in zip(v1, v2):
            assert y == pytest.approx(a * a * x, rel=1e-9)

    def test_nonnegative(self):
        rng = random.Random(9)
        ds = random_dataset(rng, n_cases=5, n_steps=25, missing_rate=0.1)
        m = compute_windowed_variance(ds, 7)
        assert all(v is None or v >= 0 for row in m.values for v in row)


class TestAggregateAndEgo:
    def test_mean_over_present(self):
        ds = make_dataset({"A": [3.0, 5.0, None], "B": [1.0, None, None], "C": [2.0, None, None]})
        assert compute_aggregate_series(ds) == (2.0, 5.0, None)

    def test_single_case_aggregate_is_identity(self):
        ds = make_dataset({"A": [1.0, None, 3.0]})
        assert compute_aggregate_series(ds) == (1.0, None, 3.0)

    def test_ego_series_verbatim(self):
        ds = make_dataset({"IRL": [70.0, None], "B": [1.0, 2.0]})
        assert ego_series(ds, "IRL") == (70.0, None)

    def test_unknown_ego(self):
        from timequery import UnknownCaseError

        ds = make_dataset({"A": [1.0]})
        with pytest.raises(UnknownCaseError):
            ego_series(ds, "XXX")


class TestDerive:
    def test_value_is_identity(self):
        ds = make_dataset({"A": [1.0, None], "B": [2.0, 3.0]})
        m = derive(ds, Criterion(CriterionKind.VALUE))
        assert m.row("A") == (1.0, None)
        assert m.row("B") == (2.0, 3.0)

    def test_dispatch_matches_direct_calls(self):
        rng = random.Random(13)
        ds = random_dataset(rng, n_cases=6, n_steps=9, missing_rate=0.1)
        assert derive(ds, Criterion(CriterionKind.RANK)) == compute_rank_matrix(ds)
        assert derive(ds, Criterion(CriterionKind.NET_CHANGE, delta=2)) == compute_net_change(ds, 2)
        assert derive(ds, Criterion(CriterionKind.PCT_CHANGE, delta=2)) == compute_pct_change(ds, 2)
        assert derive(ds, Criterion(CriterionKind.VARIANCE, window=3)) == compute_windowed_variance(ds, 3)

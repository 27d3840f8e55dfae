import pytest

from timequery import InvalidQueryError, RangeQuery, check_dataset

from .conftest import make_dataset


def test_check_dataset_rejects_arrays():
    with pytest.raises(TypeError):
        check_dataset([[1, 2], [3, 4]])


def test_get_params_round_trip():
    q = RangeQuery(criterion="rank", threshold=10, sort_color="green", hide_uncolored=True)
    params = q.get_params()
    assert params["criterion"] == "rank"
    clone = RangeQuery(**params)
    assert clone.get_params() == params


def test_set_params():
    q = RangeQuery(threshold=50)
    q.set_params(threshold=55)
    assert q.threshold == 55


def test_fit_transform_two_range(synthetic12):
    ds, _ = synthetic12
    q = RangeQuery(criterion="rank", threshold=3, colors={"low": "green"},
                   sort_color="green", hide_uncolored=True)
    result = q.fit_transform(ds)
    assert q.n_timesteps_ == 20
    assert result.color_tokens == ("green",)
    # every visible case really has green somewhere
    assert all(
        any(s.color == "green" for s in result.segments[cid])
        for cid in result.visible_case_ids
    )


def test_transform_matches_pipeline(synthetic12):
    from timequery import parse_request, run_query

    ds, _ = synthetic12
    q = RangeQuery(criterion="value", threshold=50, colors={"low": "red"}, sort_color="red")
    body = {
        "criterion": {"kind": "value"},
        "mode": "two_range",
        "threshold": {"kind": "constant", "value": 50},
        "colors": {"low": "red"},
        "sort": {"color": "red"},
    }
    direct = run_query(ds, parse_request(body))
    assert q.fit_transform(ds).groups == direct.groups


def test_requires_some_threshold(synthetic12):
    ds, _ = synthetic12
    with pytest.raises(InvalidQueryError):
        RangeQuery(criterion="value").fit(ds)
    with pytest.raises(InvalidQueryError):
        RangeQuery(threshold=1, lower=0, upper=2).fit(ds)


def test_three_range_mode():
    ds = make_dataset({"A": [5.0], "B": [15.0], "C": [25.0]})
    q = RangeQuery(lower=10, upper=20, colors={"low": "red", "high": "green"})
    result = q.fit_transform(ds)
    assert result.segments["A"][0].color == "red"
    assert result.segments["B"][0].color == "context"
    assert result.segments["C"][0].color == "green"

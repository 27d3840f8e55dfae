import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from timequery import ParseError, load_dataset_file, parse_wide_csv, serialize_wide_csv


def test_basic_parse():
    ds, report = parse_wide_csv(b"id,1900,1901\nSWE,55.0,55.9\n")
    assert report.case_count == 1
    assert report.timestep_count == 2
    assert report.missing_cell_count == 0
    assert ds.axis.labels == ("1900", "1901")
    assert ds.case("SWE").values == (55.0, 55.9)


def test_category_column_and_missing_cell():
    ds, report = parse_wide_csv(b"id,cat,1900\nSWE,Europe,\n", has_category_column=True)
    case = ds.case("SWE")
    assert case.category == "Europe"
    assert case.values == (None,)
    assert report.missing_cell_count == 1
    assert report.category_count == 1


def test_non_numeric_cell_reports_location():
    with pytest.raises(ParseError) as err:
        parse_wide_csv(b"id,1900\nSWE,abc\n")
    assert err.value.row == 1
    assert err.value.column == "1900"


@pytest.mark.parametrize(
    "payload",
    [
        b"id,1900\nSWE,1,2\n",  # ragged
        b"id,1900\nSWE,1\nSWE,2\n",  # duplicate case id
        b"id,1900,1900\nSWE,1,2\n",  # duplicate time label
        b"id,1900\n",  # zero data rows
        b"id,1900\nSWE,nan\n",  # non-finite
        b"id,1900\nSWE,1_0\n",  # underscore not a number
    ],
)
def test_rejects_malformed(payload):
    with pytest.raises(ParseError):
        parse_wide_csv(payload)


def test_crlf_and_quotes():
    ds, _ = parse_wide_csv(b'"id","cat","1900"\r\n"SWE","Northern Europe","55"\r\n',
                           has_category_column=True)
    assert ds.case("SWE").category == "Northern Europe"


def test_no_category_column_gives_implicit_category():
    ds, _ = parse_wide_csv(b"id,1900\nSWE,55\n")
    assert ds.case("SWE").category == "(none)"


def test_scientific_notation_and_signs():
    ds, _ = parse_wide_csv(b"id,a,b,c\nX,-1.5,+2e3,0.5e-2\n")
    assert ds.case("X").values == (-1.5, 2000.0, 0.005)


def test_load_dataset_file(fixture_path, synthetic12):
    _ds, report = synthetic12
    assert report.case_count == 12
    assert report.timestep_count == 20
    assert report.category_count == 3


def test_load_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_dataset_file(tmp_path / "nope.csv")


def test_missing_count_matches_cells(synthetic12):
    ds, report = synthetic12
    total = sum(sum(1 for v in c.values if v is None) for c in ds.cases)
    assert total == report.missing_cell_count


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_round_trip(data):
    n_cases = data.draw(st.integers(1, 6))
    n_steps = data.draw(st.integers(1, 8))
    cell = st.one_of(st.none(), st.floats(-1e6, 1e6, allow_nan=False))
    values = {
        f"c{i}": data.draw(st.lists(cell, min_size=n_steps, max_size=n_steps))
        for i in range(n_cases)
    }
    ds, _ = parse_wide_csv(
        _to_csv(values, n_steps), has_category_column=False, dataset_id="rt"
    )
    again, _ = parse_wide_csv(
        serialize_wide_csv(ds, include_category=False), dataset_id="rt"
    )
    assert again == ds


def _to_csv(values, n_steps):
    header = "id," + ",".join(f"t{i}" for i in range(n_steps))
    lines = [header]
    for cid, row in values.items():
        lines.append(cid + "," + ",".join("" if v is None else repr(v) for v in row))
    return ("\n".join(lines) + "\n").encode()

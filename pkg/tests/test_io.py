from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays
import numpy as np
import pytest

from largest_gaps.experiments import design_parameters
from largest_gaps.io import (
    MatrixFormatError, format_matrix, load_label_vector, load_matrix, load_params, parse_matrix,
    save_labels, save_matrix, save_params,
)
from largest_gaps.model import LabelAssignment


def test_params_round_trip(tmp_path):
    params = design_parameters("arithmetic", 0.15)
    save_params(params, tmp_path / "p.json")
    back = load_params(tmp_path / "p.json")
    assert np.array_equal(back.pi, params.pi) and np.array_equal(back.alpha, params.alpha)


def test_params_missing_field(tmp_path):
    (tmp_path / "p.json").write_text('{"pi": [1.0], "rho": [1.0]}')
    with pytest.raises(ValueError, match="alpha"):
        load_params(tmp_path / "p.json")


def test_formats_by_hand():
    x = np.array([[0, 1, 1], [1, 0, 0]])
    assert format_matrix(x, "csv") == b"0,1,1\n1,0,0\n"
    assert format_matrix(x, "raw") == b"011\n100\n"


@settings(max_examples=100, deadline=None)
@given(arrays(np.uint8, st.tuples(st.integers(1, 12), st.integers(1, 12)), elements=st.integers(0, 1)))
def test_round_trip_both_formats(x):
    for fmt in ("csv", "raw"):
        assert np.array_equal(parse_matrix(format_matrix(x, fmt), fmt), x)
    # a single-column CSV has no comma, so auto-detection reads it as raw text; same result
    assert np.array_equal(parse_matrix(format_matrix(x, "csv")), x)
    assert np.array_equal(parse_matrix(format_matrix(x, "raw")), x)


def test_file_round_trip(tmp_path):
    x = (np.random.default_rng(0).random((30, 17)) < 0.4).astype(np.uint8)
    save_matrix(x, tmp_path / "x.csv")
    save_matrix(x, tmp_path / "x.txt", fmt="raw")
    assert np.array_equal(load_matrix(tmp_path / "x.csv"), x)
    assert np.array_equal(load_matrix(tmp_path / "x.txt"), x)


def test_missing_final_newline_accepted():
    assert parse_matrix(b"0,1\n1,1").tolist() == [[0, 1], [1, 1]]


@pytest.mark.parametrize("data, fragment", [
    (b"0,1\n1,2\n", "invalid character '2'"),
    (b"0;1\n", "invalid character"),
    (b"01\n1x\n", "invalid character 'x' at line 2, column 2"),
    (b"0,1\n1,1,0\n", "line 2"),
    (b"0,1,\n", "even length"),
    (b"", "empty"),
    (b"01\n\n", "line 2"),
    (b"0 1\n", "invalid character ' '"),
])
def test_malformed_matrices(data, fragment):
    with pytest.raises(MatrixFormatError, match=fragment):
        parse_matrix(data)


def test_unknown_format():
    with pytest.raises(ValueError, match="unknown matrix format"):
        parse_matrix(b"01\n", fmt="tsv")


def test_labels_round_trip(tmp_path):
    labels = LabelAssignment([2, 0, 1, 1], 3)
    save_labels(labels, tmp_path / "z.csv")
    assert (tmp_path / "z.csv").read_text() == "2\n0\n1\n1\n"
    assert load_label_vector(tmp_path / "z.csv").tolist() == [2, 0, 1, 1]


def test_bad_label_file(tmp_path):
    (tmp_path / "z.csv").write_text("0\n-1\n")
    with pytest.raises(ValueError, match="line 2"):
        load_label_vector(tmp_path / "z.csv")

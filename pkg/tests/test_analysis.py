import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from pcmraster.analysis import (
    TABLE_COLUMNS,
    build_report,
    compute_error,
    emit_csv,
    format_table,
    summarize,
)
from pcmraster.errors import EmptyInput, LengthMismatch

# subnormals excluded: an rmse below the smallest subnormal is not representable
finite = st.floats(-1.0, 1.0, allow_nan=False, allow_subnormal=False)


def test_identical_is_zero():
    assert compute_error([0.1, 0.2, 0.3], [0.1, 0.2, 0.3]).tolist() == [0.0, 0.0, 0.0]


def test_hand_subtraction():
    e = compute_error([0.5, 0.2], [0.4, 0.25])
    assert abs(e[0] - 0.1) <= 1e-12
    assert abs(e[1] - (-0.05)) <= 1e-12


def test_length_mismatch():
    with pytest.raises(LengthMismatch):
        compute_error([1, 2, 3], [1, 2])


def test_summarize_hand_values():
    s = summarize([0.1, -0.05])
    assert s.min == -0.05
    assert s.max == 0.1
    assert abs(s.rmse - math.sqrt((0.01 + 0.0025) / 2)) <= 1e-12
    assert abs(s.rmse - 0.0790569) <= 1e-7
    assert s.max_abs == 0.1


def test_summarize_zeros_and_single():
    assert tuple(summarize([0.0, 0.0, 0.0])) == (0.0, 0.0, 0.0, 0.0)
    s = summarize([-0.3])
    assert (s.min, s.max, s.max_abs) == (-0.3, -0.3, 0.3)
    assert abs(s.rmse - 0.3) <= 1e-12


def test_summarize_empty():
    with pytest.raises(EmptyInput):
        summarize([])


pairs = st.integers(1, 200).flatmap(
    lambda n: st.tuples(arrays(np.float64, n, elements=finite), arrays(np.float64, n, elements=finite))
)


@settings(max_examples=300)
@given(pairs)
def test_antisymmetry(pair):
    a, b = pair
    assert np.array_equal(compute_error(a, b), -compute_error(b, a))
    assert not np.any(compute_error(a, a))


@settings(max_examples=300)
@given(arrays(np.float64, st.integers(1, 200), elements=finite))
def test_summary_bounds(e):
    s = summarize(e)
    mean = float(np.mean(e))
    assert s.min <= mean + 1e-15 and mean - 1e-15 <= s.max
    assert (s.rmse == 0) == (not np.any(e))
    assert s.max_abs == max(abs(s.min), abs(s.max))
    assert s.min == -float(np.max(-e))


def test_report_zero_error():
    r = build_report("x", [0.1, 0.2], [0.1, 0.2], 1000, 250)
    assert r.rmse == 0.0
    assert r.compression_ratio == 4.0
    assert r.compared_samples == 2


def test_report_fields():
    r = build_report("jpg", [0.5, 0.2], [0.4, 0.25], 100, 10)
    assert r.codec_label == "jpg"
    assert r.error_min == pytest.approx(-0.05, abs=1e-12)
    assert r.error_max == pytest.approx(0.1, abs=1e-12)
    assert r.max_abs_error == pytest.approx(0.1, abs=1e-12)
    assert r.rmse <= r.max_abs_error


@settings(max_examples=200)
@given(pairs)
def test_report_invariants(pair):
    a, b = pair
    r = build_report("p", a, b, 10, 3)
    assert r.rmse <= r.max_abs_error
    assert r.error_min <= r.error_max
    assert r.compression_ratio > 0


def test_report_propagates_errors():
    with pytest.raises(LengthMismatch):
        build_report("x", [1.0], [1.0, 2.0], 1, 1)
    with pytest.raises(EmptyInput):
        build_report("x", [], [], 1, 1)
    with pytest.raises(ValueError):
        build_report("x", [1.0], [1.0], 0, 1)


def csv_of(errors):
    buf = io.BytesIO()
    emit_csv(errors, buf)
    return buf.getvalue().decode("ascii")


def test_csv_empty():
    assert csv_of([]) == "index,error\n"


def test_csv_single():
    text = csv_of([0.5])
    lines = text.split("\n")
    assert lines[0] == "index,error"
    idx, val = lines[1].split(",")
    assert idx == "0" and float(val) == 0.5
    assert text.endswith("\n") and lines[2] == ""


def test_csv_parse_back(rng):
    e = rng.normal(0, 0.01, 1000)
    lines = csv_of(e).splitlines()
    assert len(lines) == 1001
    back = np.array([float(line.split(",")[1]) for line in lines[1:]])
    idx = [int(line.split(",")[0]) for line in lines[1:]]
    assert idx == list(range(1000))
    assert np.max(np.abs(back - e)) <= 1e-9


def test_csv_precision_at_least_nine_digits():
    value = 1.23456789012e-5
    (line,) = csv_of([value]).splitlines()[1:]
    assert float(line.split(",")[1]) == value


def test_table_columns():
    r = build_report("png/16", [0.5], [0.5], 100, 40)
    text = format_table([r]).splitlines()
    assert text[0].split() == list(TABLE_COLUMNS)
    cells = text[1].split()
    assert cells[0] == "png/16"
    assert cells[5:] == ["100", "40", "2.500"]

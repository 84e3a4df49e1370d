import io
import math
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from setramsey.bounds import (HEADER, LN2, BoundConstants, chernoff_c_delta, emit_bounds_table,
                              evaluate_bounds, kl_bernoulli, s_rule_from_name)
from setramsey.params import ParameterError


def test_simple_bound_worked_example():
    # eps = 1/2, k - 1 = 6: (3/e)^(5/2), i.e. 2.5 (ln 3 - 1) nats
    row = evaluate_bounds(10, 5, 7)
    assert row.lower_thm41 == pytest.approx(2.5 * (math.log(3) - 1), rel=1e-12)
    assert row.lower_thm41 == pytest.approx(0.246530, abs=1e-6)
    assert math.exp(row.lower_thm41) == pytest.approx(1.2796, abs=1e-4)


def test_simple_bound_clipped_at_zero():
    # eps (k - 1) = 1/2 * 2 = 1 < e
    assert evaluate_bounds(10, 5, 3).lower_thm41 == 0.0
    # eps (k-1) just above e gives a tiny positive value
    assert evaluate_bounds(10, 5, 7).lower_thm41 > 0


def test_by_hand_fields():
    row = evaluate_bounds(10, 9, 100)
    eps = 0.1
    assert row.eps == Fraction(1, 10)
    assert row.upper_cfhmsv == pytest.approx(100 * 1 / 10 * math.log(10), rel=1e-14)
    assert row.lower_cfhmsv == pytest.approx(100 * 1 / 100, rel=1e-14)
    assert row.lower_thm12 == pytest.approx(100 / 10 / 32 * LN2, rel=1e-14)
    assert row.lower_random == pytest.approx(eps * 100 / 6 * LN2, rel=1e-14)
    assert row.lower_thm42 == pytest.approx(eps * 10, rel=1e-14)
    assert row.turan_upper is None
    assert evaluate_bounds(10, 9, 10).turan_upper == 100


def test_upper_lower_ratio_independent_of_k():
    expected = 32 / LN2 * math.log(10)
    for k in (5, 50, 500, 5000):
        row = evaluate_bounds(10, 9, k)
        assert row.upper_cfhmsv / row.lower_thm12 == pytest.approx(expected, rel=1e-12)


def test_direct_evaluation_matches_log_space():
    r, s, k = 20, 14, 40
    row = evaluate_bounds(r, s, k)
    eps = (r - s) / r
    assert math.exp(row.lower_thm41) == pytest.approx((eps * (k - 1) / math.e) ** (eps * r / 2), rel=1e-12)
    assert math.exp(row.lower_random) == pytest.approx(2 ** (eps * k / 6), rel=1e-12)
    assert math.exp(row.upper_cfhmsv) == pytest.approx(
        math.exp(k * (r - s) ** 2 / r * math.log(r / min(s, r - s))), rel=1e-12)
    assert math.exp(row.lower_thm12) == pytest.approx(2 ** (k * (r - s) ** 2 / r / 32), rel=1e-12)


def test_domain():
    with pytest.raises(ParameterError):
        evaluate_bounds(5, 5, 4)
    with pytest.raises(ParameterError):
        BoundConstants(c=0)


def exact_upper_tail(r, q, at_least):
    return sum(comb(r, j) * q**j * (1 - q) ** (r - j) for j in range(at_least, r + 1))


@pytest.mark.parametrize("r,s,k", [(20, 16, 13), (40, 30, 9), (100, 80, 8), (60, 30, 5)])
def test_chernoff_c_delta_is_a_valid_bound(r, s, k):
    c = chernoff_c_delta(r, s, k)
    assert c > 0
    eps = (r - s) / r
    tail = exact_upper_tail(r, Fraction(1, k - 1), r - s)
    assert float(tail) <= math.exp(-c * eps * r) * (1 + 1e-12)


def test_chernoff_c_delta_degenerate():
    assert chernoff_c_delta(20, 18, 5) == 0.0  # eps = 1/10 < 1/4
    assert kl_bernoulli(0.3, 0.3) == 0.0


def test_chernoff_constants_row():
    row = evaluate_bounds(20, 16, 13, BoundConstants(c_delta="chernoff"))
    assert row.lower_thm42 == pytest.approx(chernoff_c_delta(20, 16, 13) * 4)


def test_table_single_point():
    buf = io.StringIO()
    n = emit_bounds_table([10], lambda r: 5, [7], None, buf)
    lines = buf.getvalue().splitlines()
    assert n == 1 and lines[0] == ",".join(HEADER)
    cells = lines[1].split(",")
    row = evaluate_bounds(10, 5, 7)
    assert cells[:4] == ["10", "5", "7", "0.5"]
    assert float(cells[7]) == pytest.approx(row.lower_thm41, rel=1e-11)
    assert cells[10] == "NA"
    assert cells[11] == "c=1;c_prime=1;delta=1/32;c_delta=1.0"


def test_table_turan_rows():
    buf = io.StringIO()
    emit_bounds_table([100], lambda r: 99, [2, 5, 50, 100], None, buf)
    rows = [l.split(",") for l in buf.getvalue().splitlines()[1:]]
    assert [r[10] for r in rows] == ["4", "25", "2500", "10000"]


def test_table_bits_columns_and_skipping():
    buf = io.StringIO()
    n = emit_bounds_table([1, 2, 8], s_rule_from_name("r-1"), [4], None, buf, with_bits=True)
    assert n == 2  # r = 1 gives s = 0, skipped
    header = buf.getvalue().splitlines()[0].split(",")
    assert header[-1] == "lower_random_bits" and len(header) == len(HEADER) + 6


def test_s_rules():
    assert s_rule_from_name("r-log2")(64) == 58
    assert s_rule_from_name("r-log2")(100) == 93
    assert s_rule_from_name("frac:3/4")(10) == 7
    with pytest.raises(ValueError):
        s_rule_from_name("bogus")


@given(st.integers(2, 300).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, r - 1))),
       st.integers(2, 10**5))
def test_monotone_in_k(rs, k):
    r, s = rs
    a, b = evaluate_bounds(r, s, k), evaluate_bounds(r, s, k + 1)
    for f in ("upper_cfhmsv", "lower_cfhmsv", "lower_thm12", "lower_thm41", "lower_thm42",
              "lower_random"):
        assert getattr(b, f) >= getattr(a, f)
        assert math.isfinite(getattr(a, f))
    assert a.lower_thm41 >= 0

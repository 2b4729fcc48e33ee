import io
import math

import numpy as np
import pytest

from gm_envelope.bounds import Kind, StatProfile, extremal_sequence, product_bounds
from gm_envelope.errors import (
    ImpossibleReturn,
    InvalidLength,
    InvalidRobustParams,
    NoPositiveSequence,
    ParseError,
)
from gm_envelope.finance import (
    ReturnSeries,
    RobustParams,
    envelope_from_params,
    ingest_csv,
    robust_log_relative_upper,
    robust_relative_upper,
    wealth_envelope,
)

from . import oracles


def test_ingest_single_column():
    s = ingest_csv(b"0.06\n-0.06\n0.01\n")
    assert s.returns == (0.06, -0.06, 0.01)


def test_ingest_unicode_minus():
    s = ingest_csv("0.06\n−0.06\n0.01\n".encode())
    assert s.returns == (0.06, -0.06, 0.01)


def test_ingest_two_column_with_header():
    s = ingest_csv(io.BytesIO(b"date,ret\n2020-01-02,0.01\n2020-01-03,-0.02\n"))
    assert s.returns == (0.01, -0.02)
    assert s.labels == ("2020-01-02", "2020-01-03")


def test_ingest_whitespace_and_blank_lines():
    s = ingest_csv(" 0.01 \n\n  -0.02\n\n")
    assert s.returns == (0.01, -0.02)


def test_ingest_impossible_return():
    with pytest.raises(ImpossibleReturn) as exc:
        ingest_csv(b"0.5\n-1.5\n")
    assert exc.value.line == 2
    with pytest.raises(ImpossibleReturn):
        ingest_csv(b"0.5\n-1\n")


def test_ingest_parse_error_line():
    with pytest.raises(ParseError) as exc:
        ingest_csv(b"0.1\n0.2\nabc\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        ingest_csv(b"a,b,c\n1,2,3\n")
    with pytest.raises(ParseError) as exc:
        ingest_csv(b"d,r\nx,0.1\ny\n")
    assert exc.value.line == 3


def test_ingest_too_short():
    with pytest.raises(InvalidLength):
        ingest_csv(b"0.1\n")
    with pytest.raises(InvalidLength):
        ingest_csv(b"date,ret\n2020,0.1\n")


def test_constant_returns():
    env = wealth_envelope([0.06] * 10)
    target = 1.06**10
    for v in (env.lower_x, env.actual_x, env.upper_x):
        assert v == pytest.approx(target, rel=1e-13)
    assert env.contains_actual()


def test_pair_collapse():
    env = wealth_envelope(ReturnSeries((0.1, -0.1)))
    assert env.actual_x == pytest.approx(0.99, rel=1e-14)
    assert env.lower_x == pytest.approx(0.99, rel=1e-14)
    assert env.upper_x == pytest.approx(0.99, rel=1e-14)


def test_realized_series_contained():
    rng = np.random.default_rng(7)
    for trial in range(50):
        rs = rng.normal(0.0003, 0.0098 * (1 + trial / 10), size=250)
        env = wealth_envelope(rs)
        assert env.contains_actual()
        assert env.lower_x <= env.actual_x * (1 + 1e-12)
        assert env.actual_x <= env.upper_x * (1 + 1e-12)
        if math.isfinite(env.lower_log):
            assert math.exp(env.lower_log) == env.lower_x


def test_extremal_returns_realize_envelope():
    n, mu_n, sigma_n = 40, 0.01, 0.03
    p = StatProfile(n, 1 + mu_n, sigma_n)
    env = envelope_from_params(n, mu_n, sigma_n)
    for kind, target in ((Kind.UPPER, env.upper_x), (Kind.LOWER, env.lower_x)):
        growth = extremal_sequence(p, kind).expand()
        realized = wealth_envelope([g - 1 for g in growth])
        assert realized.actual_x == pytest.approx(target, rel=1e-10)
    best = extremal_sequence(p, Kind.UPPER)
    assert best.repeated_value - 1 < mu_n  # all but one return below the mean


def test_envelope_from_params_examples():
    env = envelope_from_params(2, 0.0, 0.1)
    assert env.lower_x == pytest.approx(0.99, rel=1e-14)
    assert env.upper_x == pytest.approx(0.99, rel=1e-14)
    env = envelope_from_params(252, 0.0003, 0.0098)
    assert env.lower_x > 0
    b = product_bounds(StatProfile(252, 1.0003, 0.0098))
    assert env.upper_x == b.upper_product and env.lower_x == b.lower_product
    # frozen from the 50-digit oracle
    assert env.upper_x == pytest.approx(1.0667452327907201446, rel=1e-13)
    assert env.lower_x == pytest.approx(1.0640502700131667938, rel=1e-13)
    with pytest.raises(NoPositiveSequence):
        envelope_from_params(3, 0.0, 2.0)
    with pytest.raises(NoPositiveSequence):
        envelope_from_params(3, -1.5, 0.1)


def test_envelope_record_fields():
    rec = wealth_envelope([0.01, -0.02, 0.03]).as_record()
    assert list(rec) == ["n", "mu", "sigma", "lower_x", "upper_x", "lower_log", "upper_log", "actual_x", "regime"]
    rec = envelope_from_params(3, 0.0, 0.1).as_record()
    assert "actual_x" not in rec


PAPER = RobustParams(growth_mean=1.0003, sigma0=0.0098, epsilon=1e-4)


def test_robust_daily_year():
    v = robust_relative_upper(PAPER, 252)
    assert 0 < v < 1
    assert v == pytest.approx(0.99203916578916418948, rel=1e-12)
    assert v == pytest.approx(float(oracles.robust_expr(1.0003, 0.0098, 1e-4, 252)), rel=1e-12)


def test_robust_million_days():
    v = robust_relative_upper(PAPER, 10**6)
    assert v < 1e-3
    assert v == pytest.approx(0.00067043553305079473665, rel=1e-9)


def test_robust_boundary_sigma_equals_epsilon():
    p = RobustParams(1.0003, 1e-4, 1e-4)
    for n in (2, 100, 10**6):
        assert robust_relative_upper(p, n) == pytest.approx(1 + 2e-4 * math.sqrt(n - 1) / (1.0003 - 1e-4), rel=1e-14)
        assert robust_relative_upper(p, n) > 1
    assert not p.decays


def test_robust_mean_return_convention():
    assert RobustParams.from_mean_return(0.0003, 0.0098, 1e-4) == RobustParams(1.0003, 0.0098, 1e-4)
    assert PAPER.mean_return == pytest.approx(0.0003, rel=1e-9)


@pytest.mark.parametrize(
    "params,n",
    [
        (RobustParams(1.0, 0.01, 0.0), 10),
        (RobustParams(1.0, 0.01, -1e-3), 10),
        (RobustParams(1.0, 0.01, 0.02), 10),
        (RobustParams(0.001, 0.5, 0.002), 10),
        (RobustParams(1.0, 5.0, 0.1), 2),
        (PAPER, 1),
    ],
)
def test_robust_invalid(params, n):
    with pytest.raises(InvalidRobustParams):
        robust_log_relative_upper(params, n)


def test_robust_decay_after_dropping_below_one():
    values = [robust_log_relative_upper(PAPER, 2**k) for k in range(10, 21)]
    first = next(k for k, v in enumerate(values) if v < 0.0)
    tail = values[first:]
    assert all(a > b for a, b in zip(tail, tail[1:]))

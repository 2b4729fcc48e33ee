import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gm_envelope.comparisons import evaluate_bounds, product_bound_comparison
from gm_envelope.errors import InvalidLength, NonPositiveInput


def test_constant_sequence():
    r = evaluate_bounds([1, 1, 1, 1])
    assert r.gap_actual == 0.0
    assert r.gap_corollary1 == r.gap_aldaz == 0.0
    assert r.cf_lower == r.cf_upper == 0.0


def test_pair():
    r = evaluate_bounds([1.1, 0.9])
    assert r.gap_actual == pytest.approx(1 - math.sqrt(0.99), rel=1e-12)
    assert r.gap_corollary1 == pytest.approx(0.1, rel=1e-14)
    assert r.gap_aldaz == pytest.approx(0.2, rel=1e-14)
    assert r.cf_lower == pytest.approx(0.01 / 2.2, rel=1e-12)
    assert r.cf_upper == pytest.approx(0.01 / 1.8, rel=1e-12)
    assert r.sandwich_holds() and r.chain_holds()
    assert r.tightest_upper_on_gap == "cartwright_field"


def test_three_terms():
    r = evaluate_bounds([0.5, 1.5, 1.0])
    # frozen from the 50-digit oracle
    assert r.gap_actual == pytest.approx(0.091439703583930170554, rel=1e-13)
    assert r.gap_corollary1 == pytest.approx(0.57735026918962576451, rel=1e-14)
    assert r.gap_aldaz == pytest.approx(1.2247448713915890491, rel=1e-14)
    assert r.cf_lower == pytest.approx(0.055555555555555555556, rel=1e-14)
    assert r.cf_upper == pytest.approx(0.16666666666666666667, rel=1e-14)
    assert (r.seq_min, r.seq_max) == (0.5, 1.5)
    assert r.chain_holds() and r.sandwich_holds()


@pytest.mark.parametrize("values", [[1, 0], [1, -2, 3], [math.nan, 1]])
def test_nonpositive_rejected(values):
    with pytest.raises(NonPositiveInput):
        evaluate_bounds(values)
    with pytest.raises(NonPositiveInput):
        product_bound_comparison(values)


def test_too_short():
    with pytest.raises(InvalidLength):
        evaluate_bounds([1.0])


def test_product_comparison_examples():
    c = product_bound_comparison([1, 1])
    assert c.actual_product == c.sharp_lower == c.sharp_upper == c.cf_lower == c.cf_upper == 1.0
    c = product_bound_comparison([1.1, 0.9])
    assert c.actual_product == pytest.approx(0.99, rel=1e-14)
    assert c.sharp_lower == pytest.approx(0.99, rel=1e-14)
    assert c.sharp_upper == pytest.approx(0.99, rel=1e-14)
    assert c.in_sharp and c.in_cf
    c = product_bound_comparison([0.8, 1.0, 1.2])
    assert c.actual_product == pytest.approx(0.96, rel=1e-14)
    assert c.sharp_lower <= 0.96 <= c.sharp_upper
    assert c.cf_lower <= 0.96 <= c.cf_upper
    assert c.in_sharp and c.in_cf


def test_cf_lower_base_clamped():
    c = product_bound_comparison([0.01, 5.0, 5.0])
    assert c.cf_lower == 0.0
    assert c.in_cf


positive_seqs = st.lists(st.floats(min_value=1e-3, max_value=1e3), min_size=2, max_size=30)


@settings(max_examples=400, deadline=None)
@given(positive_seqs)
def test_chain_and_sandwich(values):
    r = evaluate_bounds(values)
    slack = 1e-12 * max(1.0, r.sequence_profile.mu)
    assert r.chain_holds(slack)
    assert r.sandwich_holds(slack)
    c = product_bound_comparison(values)
    assert c.in_sharp


def test_random_batches_vectorized():
    rng = np.random.default_rng(0)
    for n in range(2, 21):
        xs = rng.lognormal(0.0, 0.5, size=(200, n))
        for row in xs:
            r = evaluate_bounds(row)
            assert r.chain_holds(1e-12) and r.sandwich_holds(1e-12)

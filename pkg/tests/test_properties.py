"""Property-based checks of the algebra axioms and identity suites."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperhaar import (
    Function,
    Measure,
    convolve_measures,
    involute_measure,
    normalized_approximant,
    pair,
    support_product,
    validate,
)
from hyperhaar.approx import ApproximantConfig, canonical_chain, symmetrize
from hyperhaar.checks import identity_suite
from hyperhaar.oracles import cyclic_hypergroup, product_hypergroup, theta_hypergroup

thetas = st.floats(min_value=0.01, max_value=1.0, allow_nan=False)
weights2 = st.lists(st.floats(min_value=-1, max_value=1, allow_nan=False),
                    min_size=2, max_size=2)


@given(thetas)
@settings(max_examples=50, deadline=None)
def test_theta_family_always_validates(theta):
    assert validate(theta_hypergroup(theta), 1e-12).passed


@given(thetas, thetas, st.integers(min_value=2, max_value=5))
@settings(max_examples=30, deadline=None)
def test_product_family_validates(t1, t2, n):
    h = product_hypergroup(theta_hypergroup(t1),
                           product_hypergroup(theta_hypergroup(t2), cyclic_hypergroup(n)))
    assert validate(h, 1e-11).passed


@given(thetas, weights2, weights2)
@settings(max_examples=100, deadline=None)
def test_anti_homomorphism(theta, wa, wb):
    h = theta_hypergroup(theta)
    mu, nu = Measure(wa), Measure(wb)
    lhs = involute_measure(h, convolve_measures(h, mu, nu))
    rhs = convolve_measures(h, involute_measure(h, nu), involute_measure(h, mu))
    np.testing.assert_allclose(lhs.w, rhs.w, atol=1e-12)


@given(thetas, st.integers(min_value=0, max_value=2 ** 31 - 1))
@settings(max_examples=25, deadline=None)
def test_identity_suite_on_random_theta(theta, seed):
    h = theta_hypergroup(theta)
    results = identity_suite(h, np.random.default_rng(seed), trials=20)
    assert all(r.passed for r in results), [r for r in results if not r.passed]


@given(st.integers(min_value=2, max_value=8), st.data())
@settings(max_examples=40, deadline=None)
def test_support_composition_cyclic(n, data):
    h = cyclic_hypergroup(n)
    a = data.draw(st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1))
    b = data.draw(st.sets(st.integers(min_value=0, max_value=n - 1), min_size=1))
    mu = Measure(Function.indicator(n, a).v, nonneg=True)
    nu = Measure(Function.indicator(n, b).v, nonneg=True)
    got = convolve_measures(h, mu, nu).support(1e-14)
    assert got == support_product(h, a, b)
    assert got == frozenset((x + y) % n for x in a for y in b)


@given(thetas, st.floats(min_value=0.1, max_value=10.0, allow_nan=False),
       st.integers(min_value=0, max_value=2 ** 31 - 1))
@settings(max_examples=50, deadline=None)
def test_normalization_kills_bump_scale(theta, k, seed):
    h = theta_hypergroup(theta)
    rng = np.random.default_rng(seed)
    g = symmetrize(h, Function(rng.uniform(0.1, 1.0, 2)))
    cfg = ApproximantConfig(Measure(np.ones(2), nonneg=True), Function.ones(2),
                            canonical_chain(h))
    base = normalized_approximant(h, cfg, g)
    scaled = normalized_approximant(h, cfg, Function(k * g.v))
    np.testing.assert_allclose(scaled.w, base.w, atol=1e-12)
    assert abs(pair(cfg.f0, base) - 1.0) < 1e-14

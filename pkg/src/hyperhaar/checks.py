"""Randomized identity and convergence suites, shared by the CLI and tests."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

import numpy as np

from .core import (
    FiniteHypergroup,
    Function,
    Measure,
    convolve_function_measure,
    convolve_measure_function,
    convolve_measures,
    involute_function,
    involute_measure,
    pair,
)
from .approx import (
    ApproximantConfig,
    bounds_certificate,
    canonical_chain,
    default_probes,
    main_identity_gap,
    sandwich_ratio,
)

__all__ = ["SuiteResult", "identity_suite", "terminal_gap_suite",
           "terminal_ratio_suite", "bounds_suite", "run_all_suites"]


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    worst: float
    detail: str = ""


def identity_suite(h: FiniteHypergroup, rng: np.random.Generator,
                   trials: int = 1000, tol: float = 1e-12) -> List[SuiteResult]:
    """Involution and pairing identities of the convolution algebra,
    checked on random signed measures and functions."""
    worst = {key: 0.0 for key in (
        "(mu*f)ck = fck*muck", "(f*mu)ck = muck*fck", "<mu*f,nu> = <nu*fck,mu>",
        "<mu*f,sigma> = <f,muck*sigma>", "<f*mu,sigma> = <f,sigma*muck>",
        "(mu*nu)*f = mu*(nu*f)", "f*(mu*nu) = (f*mu)*nu",
        "(mu*nu)ck = nuck*muck")}
    n = h.n
    for _ in range(trials):
        mu = Measure(rng.uniform(-1, 1, n))
        nu = Measure(rng.uniform(-1, 1, n))
        sigma = Measure(rng.uniform(-1, 1, n))
        f = Function(rng.uniform(-1, 1, n))

        muck = involute_measure(h, mu)
        nuck = involute_measure(h, nu)
        fck = involute_function(h, f)
        muf = convolve_measure_function(h, mu, f)
        fmu = convolve_function_measure(h, f, mu)
        munu = convolve_measures(h, mu, nu)

        def hit(key, a, b):
            worst[key] = max(worst[key], float(np.max(np.abs(np.asarray(a) - np.asarray(b)))))

        hit("(mu*f)ck = fck*muck", involute_function(h, muf).v,
            convolve_function_measure(h, fck, muck).v)
        hit("(f*mu)ck = muck*fck", involute_function(h, fmu).v,
            convolve_measure_function(h, muck, fck).v)
        hit("<mu*f,nu> = <nu*fck,mu>", pair(muf, nu),
            pair(convolve_measure_function(h, nu, fck), mu))
        hit("<mu*f,sigma> = <f,muck*sigma>", pair(muf, sigma),
            pair(f, convolve_measures(h, muck, sigma)))
        hit("<f*mu,sigma> = <f,sigma*muck>", pair(fmu, sigma),
            pair(f, convolve_measures(h, sigma, muck)))
        hit("(mu*nu)*f = mu*(nu*f)", convolve_measure_function(h, munu, f).v,
            convolve_measure_function(h, mu, convolve_measure_function(h, nu, f)).v)
        hit("f*(mu*nu) = (f*mu)*nu", convolve_function_measure(h, f, munu).v,
            convolve_function_measure(h, fmu, nu).v)
        hit("(mu*nu)ck = nuck*muck", involute_measure(h, munu).w,
            convolve_measures(h, nuck, muck).w)
    return [SuiteResult(k, v <= tol, v) for k, v in worst.items()]


def terminal_gap_suite(h: FiniteHypergroup, tol: float = 1e-12) -> SuiteResult:
    """Reconstruction gap at the terminal bump 1_{e} is exact."""
    mu0 = Measure(np.ones(h.n), nonneg=True)
    g = Function.indicator(h.n, [h.e])
    worst = max(main_identity_gap(h, mu0, g, f) for f in default_probes(h.n))
    return SuiteResult("terminal reconstruction gap", worst <= tol, worst)


def terminal_ratio_suite(h: FiniteHypergroup, rng: np.random.Generator,
                         trials: int = 25, tol: float = 1e-12) -> SuiteResult:
    """Sandwich ratio at the terminal bump equals 1 for all translates."""
    mu0 = Measure(np.ones(h.n), nonneg=True)
    g = Function.indicator(h.n, [h.e])
    mus = [Measure.dirac(h.n, s) for s in h.points()]
    mus += [Measure(rng.uniform(0.0, 1.0, h.n) + 1e-3, nonneg=True) for _ in range(trials)]
    worst = 0.0
    for f in default_probes(h.n):
        for mu in mus:
            worst = max(worst, abs(sandwich_ratio(h, mu0, g, f, mu) - 1.0))
    return SuiteResult("terminal sandwich ratio", worst <= tol, worst)


def bounds_suite(h: FiniteHypergroup) -> SuiteResult:
    """Greedy two-sided bounds hold at every chain step for every probe."""
    chain = canonical_chain(h)
    cfg = ApproximantConfig(Measure(np.ones(h.n), nonneg=True), Function.ones(h.n), chain)
    ok = True
    margin = np.inf
    for g in chain.bumps:
        for f in default_probes(h.n):
            cert = bounds_certificate(h, cfg, g, f)
            ok = ok and cert.passed
            margin = min(margin, cert.value - cert.a, cert.b - cert.value)
    return SuiteResult("dominating-measure bounds", ok, float(margin),
                       "min margin to either bound")


def run_all_suites(h: FiniteHypergroup, seed: int = 0, trials: int = 1000) -> List[SuiteResult]:
    rng = np.random.default_rng(seed)
    results = identity_suite(h, rng, trials)
    results.append(terminal_gap_suite(h))
    results.append(terminal_ratio_suite(h, rng))
    results.append(bounds_suite(h))
    return results

"""Constructive invariant-measure pipeline.

The reference measure mu0 is reweighted by 1/(mu0 * g) for a symmetric bump g
supported near the identity; shrinking the bump support down a finite chain of
identity neighborhoods drives the normalized approximants to the invariant
measure.  In the discrete topology {e} is itself a neighborhood, so the chain
attains the limit at its terminal step.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .core import (
    FiniteHypergroup,
    Function,
    Measure,
    convolve_measure_function,
    convolve_measures,
    find_dominating_measure,
    pair,
)
from .oracles import invariance_residual

__all__ = [
    "ZeroDenominator",
    "ZeroNormalizer",
    "NotConverged",
    "ShrinkingChain",
    "ApproximantConfig",
    "TraceStep",
    "ConvergenceTrace",
    "BoundsCertificate",
    "symmetrize",
    "approximant",
    "normalized_approximant",
    "canonical_chain",
    "main_identity_gap",
    "sandwich_ratio",
    "bounds_certificate",
    "default_probes",
    "haar_net",
]


class ZeroDenominator(Exception):
    """(mu0 * g) vanishes somewhere; g violates its positivity precondition."""


class ZeroNormalizer(Exception):
    """The normalization pairing with f0 is zero."""


class NotConverged(Exception):
    """Chain exhausted with invariance residual above the certification threshold."""


@dataclass(frozen=True)
class ShrinkingChain:
    """Decreasing identity neighborhoods with symmetric bumps on each."""

    neighborhoods: tuple
    bumps: tuple

    def __post_init__(self):
        object.__setattr__(self, "neighborhoods",
                           tuple(frozenset(u) for u in self.neighborhoods))
        object.__setattr__(self, "bumps", tuple(self.bumps))
        if len(self.neighborhoods) != len(self.bumps):
            raise ValueError("need one bump per neighborhood")

    def __len__(self) -> int:
        return len(self.neighborhoods)

    def check(self, h: FiniteHypergroup) -> None:
        prev = None
        for k, (u, g) in enumerate(zip(self.neighborhoods, self.bumps)):
            if h.e not in u:
                raise ValueError(f"neighborhood {k} does not contain the identity")
            if frozenset(int(h.inv[p]) for p in u) != u:
                raise ValueError(f"neighborhood {k} is not involution-stable")
            if prev is not None and not u <= prev:
                raise ValueError(f"neighborhood {k} is not contained in its predecessor")
            if not (g.is_nonneg() and g.sup_norm > 0):
                raise ValueError(f"bump {k} must be nonnegative and nonzero")
            if not g.supported_in(u):
                raise ValueError(f"bump {k} not supported in its neighborhood")
            if np.max(np.abs(g.v - g.v[h.inv])) > 0:
                raise ValueError(f"bump {k} is not symmetric")
            if g.v[h.e] <= 0:
                raise ValueError(f"bump {k} vanishes at the identity")
            prev = u
        if self.neighborhoods[-1] != frozenset({h.e}):
            raise ValueError("chain must terminate at the singleton identity neighborhood")


def default_probes(n: int) -> List[Function]:
    """Coordinate indicators plus the constant-one function."""
    probes = [Function.indicator(n, [t]) for t in range(n)]
    probes.append(Function.ones(n))
    return probes


@dataclass(frozen=True)
class ApproximantConfig:
    mu0: Measure
    f0: Function
    chain: ShrinkingChain
    conv_tol: float = 1e-12
    probe_functions: Optional[Sequence[Function]] = None
    residual_tol: float = 1e-10

    def __post_init__(self):
        if np.any(self.mu0.w <= 0):
            raise ValueError("mu0 must be strictly positive everywhere")
        if not (self.f0.is_nonneg() and self.f0.sup_norm > 0):
            raise ValueError("f0 must be nonnegative and nonzero")
        if self.conv_tol <= 0:
            raise ValueError("conv_tol must be positive")

    def probes(self) -> List[Function]:
        if self.probe_functions is not None:
            return list(self.probe_functions)
        return default_probes(self.mu0.n)


@dataclass(frozen=True)
class TraceStep:
    step: int
    u_size: int
    chi_probe: np.ndarray
    gap: float
    rho: float
    bounds_ok: bool
    cauchy_diff: float


@dataclass(frozen=True)
class ConvergenceTrace:
    steps: List[TraceStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class BoundsCertificate:
    a: float
    b: float
    value: float
    passed: bool


def symmetrize(h: FiniteHypergroup, g: Function) -> Function:
    """(g + g-check)/2; fixed points of the involution stay fixed."""
    return Function(0.5 * (g.v + g.v[h.inv]))


def approximant(h: FiniteHypergroup, mu0: Measure, g: Function) -> Measure:
    """Reweight mu0 by 1/(mu0 * g); strictly positive with full support."""
    denom = convolve_measure_function(h, mu0, g).v
    if np.any(denom <= 0):
        t = int(np.argmin(denom))
        raise ZeroDenominator(f"(mu0 * g)({t}) = {denom[t]} <= 0")
    return Measure(mu0.w / denom, nonneg=True)


def normalized_approximant(h: FiniteHypergroup, cfg: ApproximantConfig, g: Function) -> Measure:
    """Approximant scaled so its pairing with f0 is exactly 1."""
    chi_t = approximant(h, cfg.mu0, g)
    z = pair(cfg.f0, chi_t)
    if z == 0.0:
        raise ZeroNormalizer("approximant pairs to zero against f0")
    return Measure(chi_t.w / z, nonneg=True)


def canonical_chain(h: FiniteHypergroup,
                    ordering: Optional[Sequence[int]] = None) -> ShrinkingChain:
    """Shrink from the whole space down to {e}, one involution-orbit at a time.

    Default removal order: orbits keyed by their smallest member, descending.
    An explicit ordering (a permutation of the non-identity points) is walked
    front to back; each point drags its involution partner along.
    """
    others = [p for p in h.points() if p != h.e]
    if ordering is not None:
        if sorted(ordering) != sorted(others):
            raise ValueError("ordering must be a permutation of the non-identity points")
        seq = list(ordering)
    else:
        orbits = {}
        for p in others:
            orbits.setdefault(min(p, int(h.inv[p])), None)
        seq = sorted(orbits, reverse=True)

    current = set(h.points())
    neighborhoods = [frozenset(current)]
    for p in seq:
        if p not in current:
            continue
        current.discard(p)
        current.discard(int(h.inv[p]))
        neighborhoods.append(frozenset(current))
    bumps = [symmetrize(h, Function.indicator(h.n, u)) for u in neighborhoods]
    chain = ShrinkingChain(tuple(neighborhoods), tuple(bumps))
    chain.check(h)
    return chain


def main_identity_gap(h: FiniteHypergroup, mu0: Measure, g: Function, f: Function) -> float:
    """Sup-norm of f - ((f . approximant) * g); vanishes at the terminal bump."""
    chi_t = approximant(h, mu0, g)
    reweighted = Measure(f.v * chi_t.w)
    recovered = convolve_measure_function(h, reweighted, g)
    return float(np.abs(f.v - recovered.v).max())


def sandwich_ratio(h: FiniteHypergroup, mu0: Measure, g: Function,
                   f: Function, mu: Measure) -> float:
    """<f, mu * approximant> / (|mu| approximant(f)); tends to 1 as g shrinks."""
    if np.max(np.abs(g.v - g.v[h.inv])) > 1e-12:
        raise ValueError("bump must be symmetric")
    if mu.norm == 0:
        raise ValueError("mu must be nonzero")
    chi_t = approximant(h, mu0, g)
    denom = mu.norm * pair(f, chi_t)
    if denom == 0.0:
        raise ZeroDenominator("approximant pairs to zero against f")
    return pair(f, convolve_measures(h, mu, chi_t)) / denom


def bounds_certificate(h: FiniteHypergroup, cfg: ApproximantConfig,
                       g: Function, f: Function) -> BoundsCertificate:
    """Two-sided bounds on the normalized approximant via greedy dominating measures."""
    mu1 = find_dominating_measure(h, f, cfg.f0)
    mu2 = find_dominating_measure(h, cfg.f0, f)
    a = 1.0 / (2.0 * mu2.norm)
    b = 2.0 * mu1.norm
    value = pair(f, normalized_approximant(h, cfg, g))
    return BoundsCertificate(a, b, value, a < value < b)


def haar_net(h: FiniteHypergroup, cfg: ApproximantConfig):
    """Drive the normalized approximants down the chain; certify the limit.

    Returns the final measure together with the full per-step trace.  Stops
    early once successive probe values differ by less than conv_tol.
    """
    cfg.chain.check(h)
    probes = cfg.probes()
    certs = [(find_dominating_measure(h, f, cfg.f0).norm,
              find_dominating_measure(h, cfg.f0, f).norm) for f in probes]
    mu_unif = Measure.uniform(h.n)

    steps = []
    chi = None
    prev_vals = None
    for k, (u, g) in enumerate(zip(cfg.chain.neighborhoods, cfg.chain.bumps)):
        chi = normalized_approximant(h, cfg, g)
        vals = np.array([pair(f, chi) for f in probes])
        gap = max(main_identity_gap(h, cfg.mu0, g, f) for f in probes)
        rho = sandwich_ratio(h, cfg.mu0, g, cfg.f0, mu_unif)
        bounds_ok = all(1.0 / (2.0 * m2) < v < 2.0 * m1
                        for v, (m1, m2) in zip(vals, certs))
        diff = float(np.abs(vals - prev_vals).max()) if prev_vals is not None else np.inf
        steps.append(TraceStep(k, len(u), vals, gap, rho, bounds_ok,
                               diff if np.isfinite(diff) else np.nan))
        if diff < cfg.conv_tol:
            break
        prev_vals = vals

    residual = invariance_residual(h, chi)
    if residual > cfg.residual_tol:
        raise NotConverged(
            f"invariance residual {residual:.3e} above {cfg.residual_tol:.3e} "
            "after exhausting the chain")
    return chi, ConvergenceTrace(steps)

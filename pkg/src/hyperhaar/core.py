"""Finite hypergroups, measures, functions, and the convolution algebra.

Points are indices 0..n-1.  A hypergroup is given by its identity, the
involution permutation, and the structure tensor c, where c[s, t, u] is the
mass of (dirac_s * dirac_t) at u.  All operations are pure functions over
immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

__all__ = [
    "FiniteHypergroup",
    "Measure",
    "Function",
    "AxiomCheck",
    "ValidationReport",
    "NoCover",
    "convolve_measures",
    "involute_measure",
    "involute_function",
    "pair",
    "convolve_measure_function",
    "convolve_function_measure",
    "support_product",
    "validate",
    "find_dominating_measure",
]


class NoCover(Exception):
    """No finite positive combination of translates dominates the target."""


@dataclass(frozen=True)
class FiniteHypergroup:
    """Finite hypergroup: identity e, involution inv, structure tensor c."""

    n: int
    e: int
    inv: np.ndarray
    c: np.ndarray
    tol: float = 1e-9

    def __post_init__(self):
        object.__setattr__(self, "inv", np.asarray(self.inv, dtype=int))
        object.__setattr__(self, "c", np.asarray(self.c, dtype=float))
        if not (0 <= self.e < self.n):
            raise ValueError(f"identity index {self.e} out of range for n={self.n}")
        if self.inv.shape != (self.n,):
            raise ValueError("involution must be a permutation vector of length n")
        if sorted(self.inv.tolist()) != list(range(self.n)):
            raise ValueError("involution is not a permutation")
        if self.c.shape != (self.n, self.n, self.n):
            raise ValueError(f"structure tensor must have shape {(self.n,) * 3}")
        if self.tol < 0:
            raise ValueError("tol must be nonnegative")

    def points(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class Measure:
    """Weight vector over points; signed unless nonneg is asserted."""

    w: np.ndarray
    nonneg: bool = False

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float)
        object.__setattr__(self, "w", w)
        if w.ndim != 1:
            raise ValueError("measure weights must be a 1-d vector")
        if self.nonneg and np.any(w < 0):
            raise ValueError("nonneg measure has a negative weight")

    @property
    def n(self) -> int:
        return self.w.shape[0]

    @property
    def norm(self) -> float:
        return float(np.abs(self.w).sum())

    def support(self, threshold: float = 0.0) -> frozenset:
        return frozenset(np.flatnonzero(np.abs(self.w) > threshold).tolist())

    @staticmethod
    def dirac(n: int, s: int) -> "Measure":
        w = np.zeros(n)
        w[s] = 1.0
        return Measure(w, nonneg=True)

    @staticmethod
    def uniform(n: int) -> "Measure":
        return Measure(np.full(n, 1.0 / n), nonneg=True)


@dataclass(frozen=True)
class Function:
    """Real-valued test function: value vector over points."""

    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        object.__setattr__(self, "v", v)
        if v.ndim != 1:
            raise ValueError("function values must be a 1-d vector")

    @property
    def n(self) -> int:
        return self.v.shape[0]

    @property
    def sup_norm(self) -> float:
        return float(np.abs(self.v).max()) if self.n else 0.0

    def support(self, threshold: float = 0.0) -> frozenset:
        return frozenset(np.flatnonzero(np.abs(self.v) > threshold).tolist())

    def is_nonneg(self) -> bool:
        return bool(np.all(self.v >= 0))

    def supported_in(self, points: Iterable[int]) -> bool:
        return self.support() <= frozenset(points)

    @staticmethod
    def indicator(n: int, points: Iterable[int]) -> "Function":
        v = np.zeros(n)
        v[list(points)] = 1.0
        return Function(v)

    @staticmethod
    def ones(n: int) -> "Function":
        return Function(np.ones(n))


def _check_size(h: FiniteHypergroup, *objs) -> None:
    for o in objs:
        if o.n != h.n:
            raise ValueError(f"dimension mismatch: hypergroup has n={h.n}, got {o.n}")


def convolve_measures(h: FiniteHypergroup, mu: Measure, nu: Measure) -> Measure:
    """(mu * nu)[u] = sum_{s,t} mu_s nu_t c[s,t,u]."""
    _check_size(h, mu, nu)
    w = np.einsum("s,t,stu->u", mu.w, nu.w, h.c)
    return Measure(w, nonneg=mu.nonneg and nu.nonneg)


def involute_measure(h: FiniteHypergroup, mu: Measure) -> Measure:
    """mu-check: weight at u becomes the weight at inv[u]."""
    _check_size(h, mu)
    return Measure(mu.w[h.inv], nonneg=mu.nonneg)


def involute_function(h: FiniteHypergroup, f: Function) -> Function:
    """f-check(s) = f(inv[s])."""
    _check_size(h, f)
    return Function(f.v[h.inv])


def pair(f: Function, mu: Measure) -> float:
    """Integral of f against mu: sum_t f_t w_t."""
    if f.n != mu.n:
        raise ValueError(f"dimension mismatch: {f.n} vs {mu.n}")
    return float(f.v @ mu.w)


def convolve_measure_function(h: FiniteHypergroup, mu: Measure, f: Function) -> Function:
    """(mu * f)(t) = sum_s mu_s sum_u c[inv[s], t, u] f(u)."""
    _check_size(h, mu, f)
    v = np.einsum("s,stu,u->t", mu.w, h.c[h.inv], f.v)
    return Function(v)


def convolve_function_measure(h: FiniteHypergroup, f: Function, mu: Measure) -> Function:
    """(f * mu)(t) = sum_s mu_s sum_u c[t, inv[s], u] f(u)."""
    _check_size(h, mu, f)
    v = np.einsum("s,tsu,u->t", mu.w, h.c[:, h.inv, :], f.v)
    return Function(v)


def support_product(h: FiniteHypergroup, a: Iterable[int], b: Iterable[int]) -> frozenset:
    """A . B: union of supports of dirac_a * dirac_b over a in A, b in B."""
    a = list(a)
    b = list(b)
    for p in a + b:
        if not (0 <= p < h.n):
            raise ValueError(f"point index {p} out of range for n={h.n}")
    if not a or not b:
        return frozenset()
    mass = h.c[np.ix_(a, b)].max(axis=(0, 1))
    return frozenset(np.flatnonzero(mass > 0).tolist())


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    passed: bool
    worst: float = 0.0
    witness: Optional[tuple] = None
    note: str = ""


@dataclass(frozen=True)
class ValidationReport:
    checks: dict

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def failures(self) -> list:
        return [c for c in self.checks.values() if not c.passed]

    def summary(self) -> str:
        lines = []
        for c in self.checks.values():
            status = "pass" if c.passed else "FAIL"
            extra = f" worst={c.worst:.3e}" if c.worst else ""
            if c.witness is not None and not c.passed:
                extra += f" witness={c.witness}"
            if c.note:
                extra += f" ({c.note})"
            lines.append(f"{c.name}: {status}{extra}")
        return "\n".join(lines)


def _argmax_witness(arr: np.ndarray) -> tuple:
    return tuple(int(i) for i in np.unravel_index(int(np.argmax(arr)), arr.shape))


def validate(h: FiniteHypergroup, tol: Optional[float] = None) -> ValidationReport:
    """Check the hypergroup axioms; failures become report content, not errors."""
    tol = h.tol if tol is None else tol
    n, e, inv, c = h.n, h.e, h.inv, h.c
    checks = {}

    dev = np.zeros(n)
    bad = inv[inv] != np.arange(n)
    inv_ok = not bad.any() and inv[e] == e
    witness = None
    if bad.any():
        witness = (int(np.flatnonzero(bad)[0]),)
    elif inv[e] != e:
        witness = (e,)
    checks["involution"] = AxiomCheck("involution", inv_ok, 0.0, witness)

    neg = np.maximum(-c, 0.0)
    rowdev = np.abs(c.sum(axis=2) - 1.0)
    worst = max(float(neg.max()), float(rowdev.max()))
    passed = worst <= tol
    witness = _argmax_witness(neg) if neg.max() > rowdev.max() else _argmax_witness(rowdev)
    checks["H1"] = AxiomCheck("H1 row-stochastic", passed, worst, None if passed else witness)

    checks["H2"] = AxiomCheck("H2", True, note="automatic (finite discrete)")
    checks["H3"] = AxiomCheck("H3", True, note="automatic (finite discrete)")

    eye = np.eye(n)
    dev4 = np.maximum(np.abs(c[e] - eye), np.abs(c[:, e, :] - eye))
    worst = float(dev4.max())
    checks["H4"] = AxiomCheck("H4 identity", worst <= tol, worst,
                              None if worst <= tol else _argmax_witness(dev4))

    dev5 = np.abs(c - c[np.ix_(inv, inv, inv)].transpose(1, 0, 2))
    worst = float(dev5.max())
    checks["H5"] = AxiomCheck("H5 anti-homomorphism", worst <= tol, worst,
                              None if worst <= tol else _argmax_witness(dev5))

    # c[t, inv[s], e] > tol iff t == s
    diag = c[np.arange(n), inv, e]
    off = c[:, inv, e].copy()
    np.fill_diagonal(off, 0.0)
    h6_ok = bool(np.all(diag > tol) and np.all(off <= tol))
    worst = 0.0
    witness = None
    if np.any(diag <= tol):
        t = int(np.argmin(diag))
        witness = (t, t)
        worst = float(diag[t])
    elif np.any(off > tol):
        witness = _argmax_witness(off)
        worst = float(off.max())
    checks["H6"] = AxiomCheck("H6", h6_ok, worst, witness)

    checks["H7"] = AxiomCheck("H7", True, note="automatic (finite discrete)")

    left = np.einsum("stu,urv->strv", c, c)
    right = np.einsum("tru,suv->strv", c, c)
    deva = np.abs(left - right)
    worst = float(deva.max())
    checks["associativity"] = AxiomCheck("associativity", worst <= tol, worst,
                                         None if worst <= tol else _argmax_witness(deva))

    return ValidationReport(checks)


def find_dominating_measure(h: FiniteHypergroup, f: Function, f0: Function) -> Measure:
    """Greedy nonnegative mu with f(t) < (mu * f0)(t) strictly on S(f).

    For each t in S(f) the translate dirac_s * f0 with the largest value at t
    receives mass (f(t)+1) / (dirac_s * f0)(t).
    """
    _check_size(h, f, f0)
    if not f.is_nonneg():
        raise ValueError("f must be nonnegative")
    if not (f0.is_nonneg() and f0.sup_norm > 0):
        raise ValueError("f0 must be nonnegative and nonzero")
    # translates[s, t] = (dirac_s * f0)(t)
    translates = np.einsum("stu,u->st", h.c[h.inv], f0.v)
    w = np.zeros(h.n)
    for t in sorted(f.support()):
        col = translates[:, t]
        s = int(np.argmax(col))
        if col[s] <= 0.0:
            raise NoCover(f"no translate of f0 reaches point {t}")
        w[s] += (f.v[t] + 1.0) / col[s]
    return Measure(w, nonneg=True)

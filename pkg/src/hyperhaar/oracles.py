"""Independent ground truth: closed-form weights, the invariance linear system,
and builders for hypergroup families with known invariant measures."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Tuple

import numpy as np

from .core import FiniteHypergroup, Measure

__all__ = [
    "H6Violation",
    "DegenerateNullspace",
    "NegativeSolution",
    "FamilySpec",
    "jewett_haar",
    "solve_invariance",
    "invariance_residual",
    "build_family",
    "cyclic_hypergroup",
    "theta_hypergroup",
    "conjugacy_class_hypergroup",
    "cosine_grid_hypergroup",
    "product_hypergroup",
    "symmetric_group_table",
]


class H6Violation(Exception):
    """A diagonal mass at the identity is nonpositive."""


class DegenerateNullspace(Exception):
    """The invariance system does not have a one-dimensional solution space."""


class NegativeSolution(Exception):
    """The invariance solve produced a significantly negative weight."""


def jewett_haar(h: FiniteHypergroup) -> Measure:
    """Closed-form discrete invariant weights: 1 / (dirac_t * dirac_tcheck)({e}).

    Returned unnormalized; callers rescale as needed.
    """
    diag = h.c[np.arange(h.n), h.inv, h.e]
    if np.any(diag <= 0):
        t = int(np.argmin(diag))
        raise H6Violation(f"(dirac_{t} * dirac_{int(h.inv[t])})(e) = {diag[t]} <= 0")
    return Measure(1.0 / diag, nonneg=True)


def _invariance_operator(h: FiniteHypergroup) -> np.ndarray:
    """Rows (s, u) of the homogeneous system sum_t c[inv[s], t, u] x_t - x_u = 0."""
    n = h.n
    a = h.c[h.inv].transpose(0, 2, 1).reshape(n * n, n).copy()
    a -= np.tile(np.eye(n), (n, 1))
    return a


def invariance_residual(h: FiniteHypergroup, chi: Measure) -> float:
    """Worst violation of left invariance over all translates and points."""
    if chi.n != h.n:
        raise ValueError(f"dimension mismatch: {chi.n} vs {h.n}")
    return float(np.abs(_invariance_operator(h) @ chi.w).max())


def solve_invariance(h: FiniteHypergroup, sv_gap: float = 1e-8) -> Measure:
    """Solve the left-invariance system with total mass 1 by least squares.

    The homogeneous operator must have a one-dimensional nullspace; that is the
    uniqueness certificate for the returned measure.
    """
    a = _invariance_operator(h)
    sv = np.linalg.svd(a, compute_uv=False)
    if sv[0] == 0.0:
        nullity = h.n
    else:
        nullity = int(np.sum(sv < sv_gap * sv[0]))
    if nullity != 1:
        raise DegenerateNullspace(f"invariance nullspace has dimension {nullity}, expected 1")
    stacked = np.vstack([a, np.ones((1, h.n))])
    rhs = np.zeros(a.shape[0] + 1)
    rhs[-1] = 1.0
    x, *_ = np.linalg.lstsq(stacked, rhs, rcond=None)
    if np.any(x < -h.tol):
        raise NegativeSolution(f"weight {x.min()} below -tol")
    return Measure(np.maximum(x, 0.0), nonneg=True)


def cyclic_hypergroup(n: int, tol: float = 1e-12) -> FiniteHypergroup:
    """Cyclic group Z_n as a hypergroup."""
    if n < 1:
        raise ValueError("n must be at least 1")
    c = np.zeros((n, n, n))
    idx = np.arange(n)
    c[idx[:, None], idx[None, :], (idx[:, None] + idx[None, :]) % n] = 1.0
    return FiniteHypergroup(n, 0, (-idx) % n, c, tol)


def theta_hypergroup(theta: float, tol: float = 1e-12) -> FiniteHypergroup:
    """Two-point family: dirac_1 * dirac_1 = theta dirac_0 + (1-theta) dirac_1."""
    if not (0 <= theta <= 1):
        raise ValueError("theta must lie in [0, 1]")
    c = np.zeros((2, 2, 2))
    c[0, 0, 0] = 1.0
    c[0, 1, 1] = 1.0
    c[1, 0, 1] = 1.0
    c[1, 1, 0] = theta
    c[1, 1, 1] = 1.0 - theta
    return FiniteHypergroup(2, 0, [0, 1], c, tol)


def _check_group_table(table: np.ndarray) -> int:
    n = table.shape[0]
    if table.shape != (n, n) or np.any(table < 0) or np.any(table >= n):
        raise ValueError("group table must be n x n with entries in 0..n-1")
    e = None
    for a in range(n):
        if np.array_equal(table[a], np.arange(n)) and np.array_equal(table[:, a], np.arange(n)):
            e = a
            break
    if e is None:
        raise ValueError("group table has no identity")
    for a in range(n):
        if not np.any(table[a] == e):
            raise ValueError(f"element {a} has no inverse")
    for a in range(n):
        for b in range(n):
            if not np.array_equal(table[table[a, b]], table[a][table[b]]):
                raise ValueError(f"group table not associative at ({a}, {b})")
    return e


def conjugacy_class_hypergroup(table, tol: float = 1e-12) -> FiniteHypergroup:
    """Class hypergroup of a finite group: points are conjugacy classes.

    Masses are counts of product pairs landing in each class, normalized by
    the sizes of the two source classes (exact rationals cast to float once).
    """
    table = np.asarray(table, dtype=int)
    ge = _check_group_table(table)
    n = table.shape[0]
    ginv = np.array([int(np.flatnonzero(table[a] == ge)[0]) for a in range(n)])

    seen = set()
    classes = []
    for a in range(n):
        if a in seen:
            continue
        orbit = {table[table[g, a], ginv[g]] for g in range(n)}
        orbit = frozenset(int(x) for x in orbit)
        seen |= orbit
        classes.append(tuple(sorted(orbit)))
    classes.sort(key=min)
    class_of = {}
    for i, cls in enumerate(classes):
        for a in cls:
            class_of[a] = i

    m = len(classes)
    counts = np.zeros((m, m, m), dtype=np.int64)
    for i, ki in enumerate(classes):
        for j, kj in enumerate(classes):
            for x in ki:
                for y in kj:
                    counts[i, j, class_of[int(table[x, y])]] += 1
    sizes = np.array([len(cls) for cls in classes], dtype=float)
    c = counts / (sizes[:, None, None] * sizes[None, :, None])
    inv = np.array([class_of[int(ginv[cls[0]])] for cls in classes])
    return FiniteHypergroup(m, class_of[ge], inv, c, tol)


def cosine_grid_hypergroup(m: int, tol: float = 1e-12) -> FiniteHypergroup:
    """Reflection-orbit hypergroup on m grid points; identity involution.

    dirac_x * dirac_y puts half its mass at |x-y| and half at x+y reflected
    back into range; the halves merge when the two targets coincide.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    c = np.zeros((m, m, m))
    for x in range(m):
        for y in range(m):
            lo = abs(x - y)
            hi = x + y
            if hi > m - 1:
                hi = 2 * (m - 1) - hi
            c[x, y, lo] += 0.5
            c[x, y, hi] += 0.5
    return FiniteHypergroup(m, 0, np.arange(m), c, tol)


def product_hypergroup(h1: FiniteHypergroup, h2: FiniteHypergroup,
                       tol: float = 1e-12) -> FiniteHypergroup:
    """Tensor product; point (i, j) maps to index i * h2.n + j."""
    n1, n2 = h1.n, h2.n
    c = np.einsum("abc,xyz->axbycz", h1.c, h2.c).reshape(n1 * n2, n1 * n2, n1 * n2)
    inv = (h1.inv[:, None] * n2 + h2.inv[None, :]).reshape(-1)
    return FiniteHypergroup(n1 * n2, h1.e * n2 + h2.e, inv, c, tol)


def symmetric_group_table(k: int) -> np.ndarray:
    """Multiplication table of S_k with elements ordered lexicographically."""
    elems = sorted(permutations(range(k)))
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    table = np.zeros((n, n), dtype=int)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            table[i, j] = index[tuple(p[x] for x in q)]
    return table


_NAMED_TABLES = {"s3": lambda: symmetric_group_table(3),
                 "s4": lambda: symmetric_group_table(4)}


@dataclass(frozen=True)
class FamilySpec:
    """Tagged parameters for the bundled hypergroup families."""

    family: str
    n: Optional[int] = None
    theta: Optional[float] = None
    table: Optional[np.ndarray] = None
    m: Optional[int] = None
    factors: Optional[Tuple["FamilySpec", "FamilySpec"]] = None

    @staticmethod
    def parse(family: str, param: str) -> "FamilySpec":
        """Build a spec from CLI-style strings, e.g. ('product', 'cyclic:2,theta2:0.5')."""
        family = family.replace("_", "-")
        if family == "cyclic":
            return FamilySpec("cyclic", n=int(param))
        if family == "theta2":
            return FamilySpec("theta2", theta=float(param))
        if family in ("conj-class", "conjugacy-class"):
            key = param.lower()
            if key in _NAMED_TABLES:
                return FamilySpec("conjugacy-class", table=_NAMED_TABLES[key]())
            rows = [[int(x) for x in line.split()]
                    for line in open(param) if line.strip() and not line.startswith("#")]
            return FamilySpec("conjugacy-class", table=np.asarray(rows, dtype=int))
        if family == "cosine-grid":
            return FamilySpec("cosine-grid", m=int(param))
        if family == "product":
            parts = param.split(",")
            if len(parts) != 2:
                raise ValueError("product parameter must be '<family>:<param>,<family>:<param>'")
            specs = tuple(FamilySpec.parse(*p.split(":", 1)) for p in parts)
            return FamilySpec("product", factors=specs)
        raise ValueError(f"unknown family {family!r}")


def build_family(spec: FamilySpec) -> FiniteHypergroup:
    if spec.family == "cyclic":
        return cyclic_hypergroup(spec.n)
    if spec.family == "theta2":
        if not (0 < spec.theta <= 1):
            raise ValueError("theta must lie in (0, 1]")
        return theta_hypergroup(spec.theta)
    if spec.family == "conjugacy-class":
        return conjugacy_class_hypergroup(spec.table)
    if spec.family == "cosine-grid":
        return cosine_grid_hypergroup(spec.m)
    if spec.family == "product":
        return product_hypergroup(build_family(spec.factors[0]), build_family(spec.factors[1]))
    raise ValueError(f"unknown family {spec.family!r}")

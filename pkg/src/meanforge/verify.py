"""Verification checks over parameter grids, collected into a report."""

from __future__ import annotations

import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import __version__
from .discovery import check_hypothesis, run_discovery
from .means import (
    ARITHMETIC,
    GEOMETRIC,
    HARMONIC,
    NumericMean,
    classic_series,
    lc_eval,
    lc_mean,
    lc_series,
    lc_truncation_error,
)
from .symmetry import (
    lc_quadratic_residual,
    phi,
    phi_inverse,
    sigma_lc_closed,
    star,
    symmetry_S,
    symmetry_sigma,
)

__all__ = ["GridConfig", "CheckRecord", "VerificationReport", "run_verification", "CHECKS"]

DEFAULT_VALUES = (0.1, 0.5, 1.0, 2.0, 5.0, 10.0)
DEFAULT_C = ("-1", "-0.99", "-0.75", "-0.5", "-0.25", "0", "0.5", "1", "5", "50")


@dataclass(frozen=True)
class GridConfig:
    values: tuple = DEFAULT_VALUES
    c_list: tuple = DEFAULT_C
    samples: int = 10_000
    seed: int = 0
    diagonal: bool = False

    def __post_init__(self):
        if any(v <= 0 for v in self.values):
            raise ValueError("grid values must be positive")
        if self.samples < 0:
            raise ValueError("sample count must be non-negative")

    def params(self) -> list[Fraction]:
        return [Fraction(c) for c in self.c_list]

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        v = np.asarray(self.values, dtype=float)
        if self.diagonal:
            return v.copy(), v.copy()
        a, b = np.meshgrid(v, v, indexing="ij")
        off = a != b
        return a[off], b[off]

    def random_points(self) -> tuple[np.ndarray, np.ndarray]:
        rng = np.random.default_rng(self.seed)
        a = rng.uniform(0, 10, self.samples)
        a = np.where(a == 0, 10.0, a)
        if self.diagonal:
            return a, a.copy()
        b = rng.uniform(0, 10, self.samples)
        return a, np.where(b == 0, 10.0, b)


@dataclass(frozen=True)
class CheckRecord:
    name: str
    max_residual: float
    threshold: float
    passed: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.max_residual <= self.threshold))


@dataclass(frozen=True)
class VerificationReport:
    records: tuple
    environment: dict

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def to_dict(self) -> dict:
        return {
            "records": [
                {"name": r.name, "max_residual": r.max_residual, "threshold": r.threshold, "pass": r.passed}
                for r in self.records
            ],
            "overall_pass": self.passed,
            "environment": dict(self.environment),
        }


def _test_means() -> list[NumericMean]:
    return [ARITHMETIC, GEOMETRIC, HARMONIC, lc_mean(Fraction(3, 10))]


def _max(x) -> float:
    x = np.asarray(x, dtype=float)
    return float(np.max(x)) if x.size else 0.0


# -- numeric grid checks ------------------------------------------------------


def check_coincidence(grid: GridConfig) -> float:
    a, b = grid.points()
    scale = np.maximum(a, b)
    worst = 0.0
    for c in grid.params():
        L = lc_mean(c)
        for M in _test_means():
            S = symmetry_S(L, M)(a, b)
            sig = sigma_lc_closed(c, M)(a, b)
            worst = max(worst, _max(abs(S - sig) / scale))
    return worst


def check_sigma_solver(grid: GridConfig) -> float:
    a, b = grid.points()
    scale = np.maximum(a, b)
    worst = 0.0
    for c in grid.params():
        L = lc_mean(c)
        for M in _test_means():
            closed = sigma_lc_closed(c, M)(a, b)
            solved = symmetry_sigma(L, M)(a, b)
            worst = max(worst, _max(abs(closed - solved) / scale))
    return worst


def check_factorization(grid: GridConfig) -> float:
    a, b = grid.points()
    scale = np.maximum(a, b) ** 4
    worst = 0.0
    for c in grid.params():
        L = lc_eval(c, a, b)
        for M in _test_means():
            m = M(a, b)
            worst = max(worst, _max(abs((a - b) * lc_quadratic_residual(c, a, b, L) * (m - L) ** 2) / scale))
    return worst


def check_special_cases(grid: GridConfig) -> float:
    a, b = grid.points()
    pairs = [(-1, HARMONIC), (Fraction(-1, 2), GEOMETRIC), (0, ARITHMETIC)]
    return max(_max(abs(lc_eval(c, a, b) - M(a, b)) / M(a, b)) for c, M in pairs)


def check_special_series(grid: GridConfig) -> float:
    mismatches = 0
    for c, which in ((-1, "H"), (Fraction(-1, 2), "G"), (0, "A")):
        mismatches += lc_series(c, 12) != classic_series(which, 12)
    return float(mismatches)


def _closed_forms():
    A, G, H = ARITHMETIC, GEOMETRIC, HARMONIC
    return [
        (A, lambda M, a, b: 2 * A(a, b) - M(a, b)),
        (G, lambda M, a, b: G(a, b) ** 2 / M(a, b)),
        (H, lambda M, a, b: H(a, b) * M(a, b) / (2 * M(a, b) - H(a, b))),
    ]


def check_example_closed_forms(grid: GridConfig) -> float:
    a, b = grid.points()
    worst = 0.0
    for M0, closed in _closed_forms():
        for M in _test_means():
            # each closed form equals a on the diagonal
            ref = np.where(a == b, a, closed(M, a, b))
            for op in (symmetry_S(M0, M), symmetry_sigma(M0, M)):
                worst = max(worst, _max(abs(op(a, b) - ref) / abs(ref)))
    return worst


def check_quadratic(grid: GridConfig) -> float:
    a, b = grid.points()
    return max(_max(abs(lc_quadratic_residual(c, a, b)) / (a + b) ** 2) for c in grid.params())


def check_mean_axioms(grid: GridConfig) -> float:
    a, b = grid.random_points()
    lo, hi = np.minimum(a, b), np.maximum(a, b)
    strict = a != b
    violations = 0
    for c in grid.params():
        L = lc_eval(c, a, b)
        inside = np.where(strict, (lo < L) & (L < hi), L == a)
        violations += int(np.count_nonzero(~inside))
    return float(violations)


def check_monotonicity(grid: GridConfig) -> float:
    a, b = grid.random_points()
    keep = a != b
    a, b = a[keep], b[keep]
    rng = random.Random(grid.seed)
    cs = sorted({c for c in grid.params() if c > -1} | {Fraction(rng.uniform(-0.999, 20)).limit_denominator(10**6) for _ in range(20)})
    violations = 0
    prev = None
    for c in cs:
        cur = lc_eval(c, a, b)
        if prev is not None:
            violations += int(np.count_nonzero(~(prev < cur)))
        prev = cur
    return float(violations)


def check_group_law(grid: GridConfig) -> float:
    a, b = grid.points()
    scale = np.maximum(a, b)
    worst = 0.0
    means = _test_means()
    for M0 in means:
        for M1 in means:
            lhs = star(M1, symmetry_S(M0, M1))(a, b)
            rhs = star(M0, M0)(a, b)
            worst = max(worst, _max(abs(lhs - rhs) / scale))
            via_phi = phi_inverse(phi(M0, a, b) + phi(M1, a, b), a, b)
            worst = max(worst, _max(abs(star(M0, M1)(a, b) - via_phi) / scale))
    return worst


# -- series checks -------------------------------------------------------------


def truncation_slope(c, order: int, x_lo=50, x_hi=200, t=1) -> float:
    e_lo = lc_truncation_error(c, order, x_lo, t)
    e_hi = lc_truncation_error(c, order, x_hi, t)
    return float((math.log(e_hi) - math.log(e_lo)) / math.log(x_hi / x_lo)) if e_lo and e_hi else float("nan")


def check_truncation(grid: GridConfig) -> float:
    worst = 0.0
    for c in (Fraction(-1, 2), Fraction(1)):
        for N in (3, 5, 8):
            worst = max(worst, abs(truncation_slope(c, N) + (2 * N + 1)))
    return worst


def check_discovery(grid: GridConfig) -> float:
    return 0.0 if check_hypothesis(run_discovery(6)) else 1.0


def check_series_coincidence(grid: GridConfig) -> float:
    from .symseries import make_table, symbolic_series, symmetric_pair

    N = 8
    table = make_table(N, m0=None, extra=["c"])
    pair = symmetric_pair(lc_series(table["c"], N), symbolic_series(table, "a", N), N)
    return float(sum(1 for d in pair.differences() if d))


# name -> (check, default threshold, suite)
CHECKS: dict[str, tuple[Callable[[GridConfig], float], float, str]] = {
    "coincidence_S_sigma": (check_coincidence, 1e-9, "numeric"),
    "sigma_closed_vs_solver": (check_sigma_solver, 1e-10, "numeric"),
    "factorization_residual": (check_factorization, 1e-10, "numeric"),
    "special_cases": (check_special_cases, 1e-12, "numeric"),
    "special_cases_series": (check_special_series, 0.0, "series"),
    "example_closed_forms": (check_example_closed_forms, 1e-10, "numeric"),
    "quadratic_identity": (check_quadratic, 1e-10, "numeric"),
    "mean_axioms": (check_mean_axioms, 0.0, "numeric"),
    "monotonicity": (check_monotonicity, 0.0, "numeric"),
    "group_law": (check_group_law, 1e-9, "numeric"),
    "truncation_slope": (check_truncation, 0.3, "series"),
    "discovery_order_6": (check_discovery, 0.0, "series"),
    "series_coincidence_order_8": (check_series_coincidence, 0.0, "series"),
}


def _threads() -> int:
    try:
        cap = int(os.environ.get("MEANFORGE_THREADS", "0"))
    except ValueError:
        cap = 0
    return cap if cap > 0 else min(8, os.cpu_count() or 1)


def run_verification(grid: GridConfig | None = None, tol: float | None = None, suite: str = "all") -> VerificationReport:
    """Run the selected checks; ``tol`` overrides every threshold."""
    grid = grid or GridConfig()
    if tol is not None and tol < 0:
        raise ValueError("tolerance must be non-negative")
    names = sorted(n for n, (_, _, s) in CHECKS.items() if suite in ("all", s))
    if not names:
        raise ValueError(f"unknown suite {suite!r}")

    def run(name):
        fn, threshold, _ = CHECKS[name]
        return CheckRecord(name, float(fn(grid)), threshold if tol is None else tol)

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        records = tuple(pool.map(run, names))
    env = {"version": __version__, "seed": grid.seed, "suite": suite, "diagonal": grid.diagonal}
    return VerificationReport(records, env)

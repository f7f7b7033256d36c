"""Exact point counts of X(M) over prime fields and the interpolation oracle.

Two independent counting routes: a brute-force enumeration of the z-torus
over F_q, and a subset-sum formula that counts exponent vectors satisfying
linear congruences mod q - 1 (the condition "monomial = -1" is the
congruence (M^T e)_j = (q-1)/2, so no discrete logarithms are ever taken).
On primes q = 1 mod 2L, with L the lcm of the invariant factors of all
column subsets of M, every congruence count is constant and |X(M)(F_q)| is
a monic integer polynomial in q of degree n + m; exact rational Lagrange
interpolation recovers that polynomial for comparison against the
structure-theoretic E-polynomial.  No floating point anywhere.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import hodge
from .intlat import IntMatrix, count_affine_solutions, snf

__all__ = [
    "PointCountSample",
    "InterpolationReport",
    "VerifyReport",
    "EvenQ",
    "BudgetExceeded",
    "InterpolationError",
    "NonIntegralCoefficients",
    "HoldoutMismatch",
    "count_bruteforce",
    "count_formula",
    "choose_primes",
    "interpolate",
    "verify_match",
    "eval_poly",
]

DEFAULT_BRUTE_BUDGET = 10**8
DEFAULT_MAX_PRIME = 10**7

_CHUNK = 1 << 20


class EvenQ(ValueError):
    """q = 2 (or another even q) is excluded: (q-1)/2 must be an integer."""


class BudgetExceeded(ValueError):
    """The requested computation exceeds its configured budget."""


class InterpolationError(ValueError):
    """The samples do not fit a monic integer polynomial; a counting bug."""


class NonIntegralCoefficients(InterpolationError):
    pass


class HoldoutMismatch(InterpolationError):
    pass


@dataclass(frozen=True)
class PointCountSample:
    q: int
    count: int
    method: str
    millis: float

    def to_json(self) -> dict:
        return {"q": self.q, "count": self.count, "method": self.method, "millis": self.millis}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _require_odd_prime(q: int) -> None:
    if q % 2 == 0:
        raise EvenQ(f"q must be an odd prime, got {q}")
    if not _is_prime(q):
        raise ValueError(f"q must be prime, got {q}")


def count_bruteforce(matrix: IntMatrix, q: int, budget: int = DEFAULT_BRUTE_BUDGET) -> PointCountSample:
    """|X(M)(F_q)| by enumerating z over the torus (F_q^*)^m.

    Each z contributes q - 1 solutions of x y = c per equation with c != 0
    and 2q - 1 when c = 0; the enumeration tallies a histogram of vanishing
    equation counts per z, and the final total is exact Python-int
    arithmetic on that histogram.
    """
    _require_odd_prime(q)
    m, n = matrix.rows, matrix.cols
    size = (q - 1) ** m
    if size > budget:
        raise BudgetExceeded(f"(q-1)^m = {size} exceeds the budget {budget}")
    start = time.perf_counter()
    # tables[j][i][v-1] = v ** a_ij in F_q, indexed by the field element v
    tables = [
        [
            np.array([pow(v, matrix.entries[i][j] % (q - 1), q) for v in range(1, q)], dtype=np.int64)
            for i in range(m)
        ]
        for j in range(n)
    ]
    hist = [0] * (n + 1)
    for lo in range(0, size, _CHUNK):
        ids = np.arange(lo, min(lo + _CHUNK, size), dtype=np.int64)
        coords = []
        rem = ids
        for _ in range(m):
            coords.append(rem % (q - 1))
            rem = rem // (q - 1)
        vanishing = np.zeros(len(ids), dtype=np.int64)
        for j in range(n):
            mono = np.ones(len(ids), dtype=np.int64)
            for i in range(m):
                mono = (mono * tables[j][i][coords[i]]) % q
            vanishing += mono == q - 1  # monomial = -1 makes c_j vanish
        counts = np.bincount(vanishing, minlength=n + 1)
        for t in range(n + 1):
            hist[t] += int(counts[t])
    total = sum(
        hist[t] * (q - 1) ** (n - t) * (2 * q - 1) ** t for t in range(n + 1)
    )
    millis = (time.perf_counter() - start) * 1000.0
    return PointCountSample(q=q, count=total, method="brute", millis=millis)


def _column_submatrix_transposed(matrix: IntMatrix, subset) -> IntMatrix:
    rows = [[matrix.entries[i][j] for i in range(matrix.rows)] for j in subset]
    return IntMatrix(rows, cols=matrix.rows)


def count_formula(matrix: IntMatrix, q: int) -> PointCountSample:
    """|X(M)(F_q)| by inclusion over subsets of simultaneously vanishing
    equations, each term an exact congruence-system count mod q - 1.

    total = sum_S (q-1)^{n-|S|} q^{|S|} N_S where N_S counts exponent
    vectors e with (M^T e)_j = (q-1)/2 mod q-1 for all j in S.  Cost is
    O(2^n) small Smith forms, independent of q.
    """
    _require_odd_prime(q)
    m, n = matrix.rows, matrix.cols
    start = time.perf_counter()
    half = (q - 1) // 2
    total = 0
    for r in range(n + 1):
        for subset in combinations(range(n), r):
            system = _column_submatrix_transposed(matrix, subset)
            solutions = count_affine_solutions(system, [half] * r, q - 1)
            total += (q - 1) ** (n - r) * q**r * solutions
    millis = (time.perf_counter() - start) * 1000.0
    return PointCountSample(q=q, count=total, method="formula", millis=millis)


def congruence_step(matrix: IntMatrix) -> int:
    """2L, where L is the lcm of the nonzero invariant factors of every
    column subset of M.  On primes q = 1 mod 2L each congruence count in
    count_formula is constant, so the point count is a polynomial in q."""
    lcm = 1
    n = matrix.cols
    for r in range(n + 1):
        for subset in combinations(range(n), r):
            for factor in snf(_column_submatrix_transposed(matrix, subset)).factors:
                if factor:
                    lcm = math.lcm(lcm, factor)
    return 2 * lcm


def choose_primes(matrix: IntMatrix, how_many: int, max_prime: int = DEFAULT_MAX_PRIME) -> list[int]:
    """The smallest how_many odd primes q = 1 mod 2L (see congruence_step)."""
    step = congruence_step(matrix)
    primes: list[int] = []
    q = 1
    while len(primes) < how_many:
        q += step
        if q > max_prime:
            raise BudgetExceeded(
                f"needed {how_many} primes = 1 mod {step} below {max_prime}, found {len(primes)}"
            )
        if _is_prime(q):
            primes.append(q)
    return primes


def eval_poly(coefficients, x: int) -> int:
    """Evaluate an integer polynomial given lowest-coefficient-first."""
    total = 0
    for c in reversed(tuple(coefficients)):
        total = total * x + c
    return total


@dataclass(frozen=True)
class InterpolationReport:
    coefficients: tuple[int, ...]
    fit_primes: tuple[int, ...]
    holdout_primes: tuple[int, ...]
    residuals: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "coefficients": list(self.coefficients),
            "fit_primes": list(self.fit_primes),
            "holdout_primes": list(self.holdout_primes),
            "residuals": list(self.residuals),
        }


def interpolate(samples, degree: int) -> InterpolationReport:
    """Exact Lagrange interpolation through the first degree + 1 samples.

    The remaining samples (at least two) are holdouts: the fitted polynomial
    must reproduce them exactly, have integer coefficients, and be monic of
    the stated degree.  Violations raise; they indicate a counting or
    modeling bug rather than bad input.
    """
    samples = list(samples)
    if len(samples) < degree + 3:
        raise ValueError(f"need {degree + 1} fit samples plus >= 2 holdouts, got {len(samples)}")
    fit, holdout = samples[: degree + 1], samples[degree + 1 :]
    xs = [s.q for s in fit]
    if len(set(xs)) != len(xs):
        raise ValueError("fit primes must be distinct")
    coeffs = [Fraction(0)] * (degree + 1)
    for i, sample in enumerate(fit):
        # numerator polynomial prod_{j != i} (x - x_j), lowest first
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for t in range(len(basis) - 1):
                basis[t] -= xj * basis[t + 1]
            denom *= sample.q - xj
        scale = Fraction(sample.count) / denom
        for t, c in enumerate(basis):
            coeffs[t] += c * scale
    if any(c.denominator != 1 for c in coeffs):
        raise NonIntegralCoefficients(f"interpolant has non-integer coefficients: {coeffs}")
    integral = tuple(int(c) for c in coeffs)
    residuals = tuple(s.count - eval_poly(integral, s.q) for s in holdout)
    if any(residuals):
        raise HoldoutMismatch(
            f"holdout residuals {residuals} at primes {[s.q for s in holdout]} are nonzero"
        )
    if integral[-1] != 1:
        raise InterpolationError(
            f"interpolant is not monic of degree {degree}: {list(integral)}"
        )
    return InterpolationReport(
        coefficients=integral,
        fit_primes=tuple(xs),
        holdout_primes=tuple(s.q for s in holdout),
        residuals=residuals,
    )


@dataclass(frozen=True)
class VerifyReport:
    """Side-by-side comparison of the structure-theoretic E-polynomial and
    the independently counted one.  Mismatches are content, not exceptions."""

    structure_coefficients: tuple[int, ...]
    counted_coefficients: tuple[int, ...] | None
    polynomials_match: bool
    fit_primes: tuple[int, ...]
    holdout_primes: tuple[int, ...]
    samples: tuple[PointCountSample, ...]
    brute_check: dict | None
    error: str | None

    @property
    def passed(self) -> bool:
        brute_ok = self.brute_check is None or self.brute_check["agree"]
        return self.polynomials_match and brute_ok and self.error is None

    def to_json(self) -> dict:
        return {
            "epoly_structure": list(self.structure_coefficients),
            "epoly_counted": None if self.counted_coefficients is None else list(self.counted_coefficients),
            "polynomials_match": self.polynomials_match,
            "fit_primes": list(self.fit_primes),
            "holdout_primes": list(self.holdout_primes),
            "brute_check": self.brute_check,
            "error": self.error,
            "passed": self.passed,
        }


def verify_match(
    matrix: IntMatrix,
    brute_budget: int = DEFAULT_BRUTE_BUDGET,
    max_prime: int = DEFAULT_MAX_PRIME,
) -> VerifyReport:
    """Count points on a polynomial-friendly congruence class of primes,
    interpolate, and compare against the table's E-polynomial exactly.

    Also cross-checks the formula counter against brute force at the
    smallest admissible prime whenever that fits the brute budget.
    """
    expected = hodge.epoly(hodge.pw_table(matrix))
    degree = matrix.rows + matrix.cols
    primes = choose_primes(matrix, degree + 3, max_prime=max_prime)
    samples = tuple(count_formula(matrix, q) for q in primes)
    counted = None
    error = None
    fit: tuple[int, ...] = tuple(primes[: degree + 1])
    holdout: tuple[int, ...] = tuple(primes[degree + 1 :])
    try:
        report = interpolate(samples, degree)
        counted = report.coefficients
    except InterpolationError as exc:
        error = str(exc)
    brute_check = None
    q0 = primes[0]
    if (q0 - 1) ** matrix.rows <= brute_budget:
        brute = count_bruteforce(matrix, q0, budget=brute_budget)
        brute_check = {
            "q": q0,
            "brute": brute.count,
            "formula": samples[0].count,
            "agree": brute.count == samples[0].count,
        }
    return VerifyReport(
        structure_coefficients=expected,
        counted_coefficients=counted,
        polynomials_match=counted == expected,
        fit_primes=fit,
        holdout_primes=holdout,
        samples=samples,
        brute_check=brute_check,
        error=error,
    )

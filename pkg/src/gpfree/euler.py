"""Certified evaluation of the factor function f, Euler products, zeta and L values.

Everything returns an ApproxValue: a float together with a rigorous error bound,
so the true quantity lies in [value - error_bound, value + error_bound].  Tails
of truncated products are bounded analytically; floating-point rounding is
absorbed into the bound with a conservative per-operation fudge.

The factor function is
    f(x) = (1 - 1/x) * prod_{i >= 0} (1 + x^(-3^i))
        = (1 - 1/x) * sum_{i in A3*} x^(-i),
where A3* is the set of nonnegative integers with no digit 2 in base 3.
For y >= 2 we use |log f(y)| <= 2/y^2 (validated numerically on [2, 100] and
analytically below), so a splitting product truncated at P carries a tail of at
most sum_{p > P} 4/p^2 on the log scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import gmpy2
import numpy as np

from .errors import ConsistencyError, DomainError
from .fields import FieldSpec
from .primes import prime_power_tail_bound, primes_up_to

_EPS = 2.0 ** -52


@dataclass(frozen=True)
class ApproxValue:
    """A real value with a rigorous two-sided error bound."""

    value: float
    error_bound: float

    def __post_init__(self):
        if not (math.isfinite(self.value) and math.isfinite(self.error_bound)):
            raise DomainError("ApproxValue must be finite")
        if self.error_bound < 0:
            raise DomainError("error_bound must be nonnegative")

    @property
    def lo(self) -> float:
        return self.value - self.error_bound

    @property
    def hi(self) -> float:
        return self.value + self.error_bound

    def __mul__(self, other: "ApproxValue") -> "ApproxValue":
        v = self.value * other.value
        e = (
            abs(self.value) * other.error_bound
            + abs(other.value) * self.error_bound
            + self.error_bound * other.error_bound
        )
        e += 4 * _EPS * (abs(v) + e)
        return ApproxValue(v, e)

    def __truediv__(self, other: "ApproxValue") -> "ApproxValue":
        denom_lo = abs(other.value) - other.error_bound
        if denom_lo <= 0:
            raise DomainError("division by an enclosure containing zero")
        v = self.value / other.value
        e = (self.error_bound + abs(v) * other.error_bound) / denom_lo
        e += 4 * _EPS * (abs(v) + e)
        return ApproxValue(v, e)

    def __add__(self, other: "ApproxValue") -> "ApproxValue":
        v = self.value + other.value
        e = self.error_bound + other.error_bound + 2 * _EPS * abs(v)
        return ApproxValue(v, e)

    def reciprocal(self) -> "ApproxValue":
        return ApproxValue(1.0, 0.0) / self

    def widened_by_log(self, log_delta: float) -> "ApproxValue":
        """Enclosure of value * exp(t) for |t| <= log_delta."""
        return ApproxValue(self.value, self.error_bound + abs(self.value) * math.expm1(log_delta))

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def agrees_with(self, other: "ApproxValue") -> bool:
        """True iff the two enclosures overlap."""
        return abs(self.value - other.value) <= self.error_bound + other.error_bound


def a3_contains(i: int) -> bool:
    """True iff no base-3 digit of i equals 2 (the greedy 3-AP-free set of exponents)."""
    if i < 0:
        raise ValueError("i >= 0 required")
    while i:
        if i % 3 == 2:
            return False
        i //= 3
    return True


def f_factor(x: float, tol: float = 1e-12) -> ApproxValue:
    """f(x) within tol, for x > 1.

    The infinite product is truncated at the first i with x^(-3^i) < tol/4; the
    dropped factors multiply to at most exp(S) with S = sum of the dropped
    x^(-3^j) <= t/(1 - t^2) for t the first dropped term, and we charge
    value * expm1(2 S) to the bound.
    """
    if x <= 1:
        raise DomainError("f(x) requires x > 1")
    if not 0 < tol <= 1:
        raise ValueError("tol must be in (0, 1]")
    value = 1.0 - 1.0 / x
    i = 0
    term = 1.0 / x
    while term >= 0.25 * tol:
        value *= 1.0 + term
        i += 1
        term = float(x) ** -(3**i)
    tail_sum = term / (1.0 - term * term)  # term + term^3 + term^9 + ... majorized
    err = value * math.expm1(2.0 * tail_sum) + 32 * _EPS * value
    return ApproxValue(value, err)


def _f_of_array(x: np.ndarray) -> np.ndarray:
    """f at every entry of x (x >= 2 elementwise), plain float64, no bounds.

    Factors beyond exponent 81 are below 2^-243 and vanish in float64.
    """
    v = 1.0 - 1.0 / x
    with np.errstate(under="ignore"):
        for e in (1, 3, 9, 27, 81):
            v = v * (1.0 + x ** (-float(e)))
    return v


# Relative accuracy of _f_of_array / the masked log-product evaluations, per factor.
_PER_FACTOR_REL = 32 * _EPS

_LOG_F_BOUND_CHECKED = False


def _check_log_f_bound() -> None:
    """Validate |log f(y)| <= 2/y^2 on a grid of [2, 100] once per process.

    For y > 100 the bound holds analytically: 0 < 1 - f(y) and
    |log f(y)| = -log f(y) <= -log(1 - y^-2) <= (4/3) y^-2 since the omitted
    factors (1 + y^(-3^i)) only push f toward 1.
    """
    global _LOG_F_BOUND_CHECKED
    if _LOG_F_BOUND_CHECKED:
        return
    ys = np.linspace(2.0, 100.0, 3921)
    fv = _f_of_array(ys)
    assert np.all(np.abs(np.log(fv)) * ys * ys <= 2.0), "log f bound violated"
    _LOG_F_BOUND_CHECKED = True


@dataclass(frozen=True)
class CharacterTable:
    """chi(p) for all primes p <= P, shared by every Euler product over one field."""

    discriminant: int
    P: int
    primes: np.ndarray  # int64
    chi: np.ndarray  # int8 in {-1, 0, 1}


def character_table(field: FieldSpec, P: int) -> CharacterTable:
    prs = primes_up_to(P)
    D = field.discriminant
    kron = gmpy2.kronecker
    chi = np.fromiter((kron(D, int(p)) for p in prs), dtype=np.int8, count=len(prs))
    return CharacterTable(discriminant=D, P=P, primes=prs, chi=chi)


_F_TABLE_CACHE: dict[int, tuple] = {}


def _f_tables(P: int):
    """Field-independent (primes, log f(p), log f(p^2)) arrays for primes <= P."""
    hit = _F_TABLE_CACHE.get(P)
    if hit is None:
        prs = primes_up_to(P)
        pf = prs.astype(np.float64)
        logf_p = np.log(_f_of_array(pf))
        logf_p2 = np.log(_f_of_array(pf * pf))
        hit = (prs, logf_p, logf_p2)
        if len(_F_TABLE_CACHE) >= 4:
            _F_TABLE_CACHE.pop(next(iter(_F_TABLE_CACHE)))
        _F_TABLE_CACHE[P] = hit
    return hit


class FactorKind:
    """Per-prime factor selection: ramified -> f(p), inert -> f(p^2), split -> f(p)^2."""

    F_P = "f(p)"
    F_P2 = "f(p^2)"
    F_P_SQ = "f(p)^2"

    @staticmethod
    def for_chi(chi: int) -> str:
        if chi == -1:
            return FactorKind.F_P2
        if chi == 1:
            return FactorKind.F_P_SQ
        return FactorKind.F_P


def euler_product_by_splitting(
    field: FieldSpec, P: int = 10**6, table: CharacterTable | None = None
) -> ApproxValue:
    """prod over primes p <= P of (f(p^2) inert | f(p)^2 split | f(p) ramified).

    Tail: each prime beyond P contributes at most 4/p^2 on the log scale
    (|log f(y)| <= 2/y^2, doubled for split primes), so
    |log tail| <= 4 * sum_{p > P} p^-2 <= 4/(P-1).
    """
    if P < 100:
        raise ValueError("P >= 100 required")
    _check_log_f_bound()
    prs, logf_p, logf_p2 = _f_tables(P)
    if table is None:
        table = character_table(field, P)
    chi = table.chi
    log_total = float(
        np.sum(np.where(chi == -1, logf_p2, np.where(chi == 1, 2.0 * logf_p, logf_p)))
    )
    value = math.exp(log_total)
    tail_log = 4.0 * prime_power_tail_bound(P, 2, n_primes=len(prs))
    assert tail_log <= 4.0 / (P - 1)
    round_log = _PER_FACTOR_REL * len(prs)
    err = value * math.expm1(tail_log + round_log)
    return ApproxValue(value, err)


@lru_cache(maxsize=64)
def riemann_zeta_int(s: int, tol: float = 1e-10) -> ApproxValue:
    """zeta(s) for integer s >= 2 by direct summation with an integral tail enclosure.

    The tail sum_{n > N} n^-s lies between the integrals from N+1 and from N;
    we add the midpoint and charge half the gap (about N^-s / 2) to the bound.
    """
    if s < 2:
        raise DomainError("s >= 2 required")
    N = max(16, min(2_000_000, math.ceil(tol ** (-1.0 / s))))
    n = np.arange(1, N + 1, dtype=np.float64)
    partial = float(np.sum(n ** (-float(s))))
    hi = float(N) ** (1 - s) / (s - 1)
    lo = float(N + 1) ** (1 - s) / (s - 1)
    value = partial + 0.5 * (hi + lo)
    err = 0.5 * (hi - lo) + 64 * _EPS * partial
    return ApproxValue(value, err)


def dirichlet_L(
    field: FieldSpec, s: int, P: int = 10**6, table: CharacterTable | None = None
) -> ApproxValue:
    """L(s, chi_D) = prod_{p <= P} (1 - chi(p) p^-s)^-1 with tail <= sum_{p>P} 2 p^-s."""
    if s < 2:
        raise DomainError("s >= 2 required")
    if table is None:
        table = character_table(field, P)
    pf = table.primes.astype(np.float64)
    with np.errstate(under="ignore"):
        log_total = -float(np.sum(np.log1p(-table.chi * pf ** (-float(s)))))
    value = math.exp(log_total)
    tail_log = 2.0 * prime_power_tail_bound(table.P, s, n_primes=len(pf))
    round_log = _PER_FACTOR_REL * len(pf)
    err = value * math.expm1(tail_log + round_log)
    return ApproxValue(value, err)


def dedekind_zeta(
    field: FieldSpec, s: int, P: int = 10**6, table: CharacterTable | None = None
) -> ApproxValue:
    """zeta_K(s) for integer s >= 2, by two routes with an agreement check.

    Route 1 is zeta(s) * L(s, chi); route 2 is the Euler product over prime
    ideals of norm induced by rational p <= P.  Returns route 1 (the tighter),
    raising ConsistencyError if the enclosures do not overlap.
    """
    if s < 2:
        raise DomainError("s >= 2 required")
    if table is None:
        table = character_table(field, P)
    via_factorization = riemann_zeta_int(s, tol=1e-12) * dirichlet_L(field, s, P, table)

    pf = table.primes.astype(np.float64)
    with np.errstate(under="ignore"):
        pm = pf ** (-float(s))
        chi = table.chi
        # inert: (1 - p^-2s)^-1; split: (1 - p^-s)^-2; ramified: (1 - p^-s)^-1
        log_total = -float(
            np.sum(
                np.where(
                    chi == -1,
                    np.log1p(-pm * pm),
                    np.where(chi == 1, 2.0 * np.log1p(-pm), np.log1p(-pm)),
                )
            )
        )
    tail_log = 4.0 * prime_power_tail_bound(table.P, s, n_primes=len(pf))
    round_log = _PER_FACTOR_REL * len(pf)
    v = math.exp(log_total)
    via_ideals = ApproxValue(v, v * math.expm1(tail_log + round_log))

    if not via_factorization.agrees_with(via_ideals):
        raise ConsistencyError(
            f"zeta_K({s}) routes disagree: {via_factorization} vs {via_ideals}"
        )
    return via_factorization

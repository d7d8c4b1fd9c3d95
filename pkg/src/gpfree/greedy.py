"""Densities of greedy geometric-progression-free sets: elements, ideals, surveys.

The three-way splitting product gives the element density over a class number 1
imaginary field; the same product evaluated through Dedekind zeta values,
    (1/zeta_K(2)) * prod_{i >= 1} zeta_K(3^i) / zeta_K(2*3^i),
works for the ideals of any quadratic field.  Both routes are computed with
certified bounds and must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from multiprocessing import get_context

import numpy as np

from .errors import ConsistencyError, NotClassNumberOneError
from .euler import (
    ApproxValue,
    CharacterTable,
    character_table,
    dedekind_zeta,
    euler_product_by_splitting,
    riemann_zeta_int,
    _f_tables,
    _PER_FACTOR_REL,
)
from .fields import FieldSpec, make_field
from .primes import prime_power_tail_bound, squarefree_flags

RATIONALS = "rationals"

# Stop the zeta-route i-product once 3^i exceeds this; remaining factors obey
# |log(zeta_K(s)/zeta_K(2s))| <= 8 * 2^-s.
_ZETA_ROUTE_CUTOFF = 40


class SetKind(Enum):
    G3_STAR = "G3*"          # greedy subset of the positive integers
    G_K3 = "G_K3"            # greedy algebraic integers, field ratios
    G_STAR_K3 = "G*_K3"      # greedy ideals, ideal ratios
    H_STAR_K3 = "H*_K3"      # greedy elements/ideals, rational-integer ratios


class Route(Enum):
    SPLITTING_PRODUCT = "splitting_product"
    ZETA_PRODUCT = "zeta_product"


@dataclass(frozen=True)
class DensityReport:
    field: FieldSpec | str
    set_kind: SetKind
    value: ApproxValue
    route: Route

    def __post_init__(self):
        assert 0.0 < self.value.value < 1.0


def _zeta_route_remainder_log() -> float:
    # sum over the dropped i of 8 * 2^-(3^i); the first dropped exponent is 81
    return sum(8.0 * 2.0 ** -(3**i) for i in range(4, 8))


def rankin_density(P: int = 10**6) -> ApproxValue:
    """Density of the greedy geometric-progression-free set of positive integers.

    Computed both as prod_p f(p) over p <= P and as the zeta-quotient product
    (1/zeta(2)) prod zeta(3^i)/zeta(2*3^i); the enclosures must overlap.
    Returns the (much tighter) zeta route.
    """
    if P < 100:
        raise ValueError("P >= 100 required")
    prs, logf_p, _ = _f_tables(P)
    v = math.exp(float(np.sum(logf_p)))
    tail_log = 2.0 * prime_power_tail_bound(P, 2, n_primes=len(prs))
    split_route = ApproxValue(v, v * math.expm1(tail_log + _PER_FACTOR_REL * len(prs)))

    zeta_route = riemann_zeta_int(2, tol=1e-12).reciprocal()
    i = 1
    while 3**i <= _ZETA_ROUTE_CUTOFF:
        zeta_route = zeta_route * (
            riemann_zeta_int(3**i, tol=1e-14) / riemann_zeta_int(2 * 3**i, tol=1e-14)
        )
        i += 1
    zeta_route = zeta_route.widened_by_log(_zeta_route_remainder_log())

    if not split_route.agrees_with(zeta_route):
        raise ConsistencyError(f"Rankin routes disagree: {split_route} vs {zeta_route}")
    return zeta_route


def greedy_density_integers(
    field: FieldSpec, P: int = 10**6, table: CharacterTable | None = None
) -> DensityReport:
    """Density of the greedy set of algebraic integers avoiding 3-term progressions.

    Only defined for imaginary quadratic fields with class number 1.
    """
    if not field.class_number_one:
        raise NotClassNumberOneError(f"d = {field.d} is not a class number 1 imaginary field")
    value = euler_product_by_splitting(field, P, table)
    return DensityReport(field, SetKind.G_K3, value, Route.SPLITTING_PRODUCT)


def _zeta_route_ideals(field: FieldSpec, P: int, table: CharacterTable) -> ApproxValue:
    out = dedekind_zeta(field, 2, P, table).reciprocal()
    i = 1
    while 3**i <= _ZETA_ROUTE_CUTOFF:
        out = out * (
            dedekind_zeta(field, 3**i, P, table) / dedekind_zeta(field, 2 * 3**i, P, table)
        )
        i += 1
    return out.widened_by_log(_zeta_route_remainder_log())


def greedy_density_ideals(
    field: FieldSpec, P: int = 10**6, table: CharacterTable | None = None
) -> DensityReport:
    """Density of the greedy set of ideals of O_K avoiding 3-term progressions.

    Valid for any quadratic field.  The zeta route is returned after a
    cross-check against the splitting product; both are certified enclosures.
    """
    if table is None:
        table = character_table(field, P)
    zeta_route = _zeta_route_ideals(field, P, table)
    split_route = euler_product_by_splitting(field, P, table)
    if not zeta_route.agrees_with(split_route):
        raise ConsistencyError(
            f"ideal-density routes disagree for d={field.d}: {zeta_route} vs {split_route}"
        )
    lower, upper = universal_bounds(P)
    assert lower.value < zeta_route.value < upper.value
    return DensityReport(field, SetKind.G_STAR_K3, zeta_route, Route.ZETA_PRODUCT)


_UNIVERSAL_CACHE: dict[int, tuple[ApproxValue, ApproxValue]] = {}


def universal_bounds(P: int = 10**6) -> tuple[ApproxValue, ApproxValue]:
    """(prod_p f(p)^2, prod_p f(p^2)): the ideal-greedy density lies strictly between."""
    if P < 100:
        raise ValueError("P >= 100 required")
    hit = _UNIVERSAL_CACHE.get(P)
    if hit is not None:
        return hit
    prs, logf_p, logf_p2 = _f_tables(P)
    n = len(prs)
    v_lo = math.exp(2.0 * float(np.sum(logf_p)))
    v_hi = math.exp(float(np.sum(logf_p2)))
    tail2 = prime_power_tail_bound(P, 2, n_primes=n)
    tail4 = prime_power_tail_bound(P, 4, n_primes=n)
    lower = ApproxValue(v_lo, v_lo * math.expm1(4.0 * tail2 + _PER_FACTOR_REL * n))
    upper = ApproxValue(v_hi, v_hi * math.expm1(2.0 * tail4 + _PER_FACTOR_REL * n))
    _UNIVERSAL_CACHE[P] = (lower, upper)
    return lower, upper


def rational_ratio_density(field: FieldSpec, P: int = 10**6) -> DensityReport:
    """Density of the greedy set avoiding progressions with rational-integer ratio.

    Equals prod_p f(p^2) for every quadratic field: the ideal (p) has norm p^2
    regardless of how p splits, so the product carries no field dependence.
    """
    _, upper = universal_bounds(P)
    return DensityReport(field, SetKind.H_STAR_K3, upper, Route.SPLITTING_PRODUCT)


# ---------------------------------------------------------------------------
# Survey over imaginary quadratic fields


@dataclass(frozen=True)
class SurveyRow:
    d: int
    discriminant: int
    density: float
    error_bound: float


def _survey_one(d: int, P: int) -> SurveyRow:
    field = make_field(d)
    report = greedy_density_ideals(field, P)
    return SurveyRow(d, field.discriminant, report.value.value, report.value.error_bound)


_WORKER_P = None


def _survey_init(P: int):
    global _WORKER_P
    _WORKER_P = P
    _f_tables(P)  # build shared tables once per worker


def _survey_task(d: int) -> SurveyRow:
    return _survey_one(d, _WORKER_P)


def survey(
    d_min: int,
    d_max: int = -1,
    P: int = 10**5,
    jobs: int = 1,
    range_kind: str = "d",
) -> list[SurveyRow]:
    """Ideal-greedy densities for every negative squarefree d with d_min <= d <= d_max.

    range_kind "d" filters by |d| (the default); "discriminant" instead keeps the
    fields with |discriminant| <= |d_min|.  Rows are ordered by |d| ascending and
    are identical for serial and parallel runs.
    """
    if d_min > d_max or d_max > -1:
        raise ValueError("need d_min <= d_max <= -1")
    if range_kind not in ("d", "discriminant"):
        raise ValueError("range_kind must be 'd' or 'discriminant'")
    limit = -d_min
    flags = squarefree_flags(limit)
    ds = [-n for n in range(-d_max, limit + 1) if flags[n]]
    if range_kind == "discriminant":
        ds = [d for d in ds if abs(make_field(d).discriminant) <= limit]
    if jobs <= 1:
        _survey_init(P)
        rows = [_survey_task(d) for d in ds]
    else:
        ctx = get_context("fork")
        with ctx.Pool(jobs, initializer=_survey_init, initargs=(P,)) as pool:
            rows = pool.map(_survey_task, ds, chunksize=64)
    rows.sort(key=lambda r: -r.d)
    return rows


def histogram(
    rows: list[SurveyRow], bin_width: float, lo: float = 0.5, hi: float = 0.95
) -> list[tuple[float, float, int]]:
    """Half-open bins [b, b + w) covering [lo, hi); values outside are dropped.

    Edges and membership are computed in exact rational arithmetic on the
    decimal representations, so a value printed as 0.6 lands in the bin whose
    printed edge is 0.6 regardless of binary rounding.
    """
    if bin_width <= 0:
        raise ValueError("bin_width must be positive")
    from fractions import Fraction

    w = Fraction(repr(bin_width))
    flo = Fraction(repr(lo))
    fhi = Fraction(repr(hi))
    nbins = math.ceil((fhi - flo) / w)
    counts = [0] * nbins
    for r in rows:
        x = Fraction(repr(r.density))
        if x < flo:
            continue
        j = int((x - flo) / w)
        if j < nbins:
            counts[j] += 1
    return [
        (float(flo + j * w), float(flo + (j + 1) * w), counts[j]) for j in range(nbins)
    ]


def survey_csv(rows: list[SurveyRow]) -> str:
    """CSV `d,discriminant,density,error_bound`, densities as unrounded 12-digit decimals."""
    lines = ["d,discriminant,density,error_bound"]
    for r in rows:
        lines.append(f"{r.d},{r.discriminant},{r.density:.12f},{r.error_bound:.12f}")
    return "\n".join(lines) + "\n"


def histogram_csv(bins: list[tuple[float, float, int]]) -> str:
    lines = ["bin_lo,bin_hi,count"]
    for lo, hi, c in bins:
        lines.append(f"{lo:.6f},{hi:.6f},{c}")
    return "\n".join(lines) + "\n"

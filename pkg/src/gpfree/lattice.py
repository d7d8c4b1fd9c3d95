"""Brute-force lattice oracle: enumeration, factorization, greedy sets, GP detection.

Elements of O_K are written a + b*w with w = sqrt(d) for d = 2, 3 (mod 4) and
w = (1 + sqrt(d))/2 for d = 1 (mod 4); the norm is the associated binary form
a^2 - d b^2 resp. a^2 + a b + ((1-d)/4) b^2.  Everything here is exact integer
arithmetic and serves as ground truth for the analytic formulas at small scale.

Ideals are exponent vectors over tagged prime ideals.  For split p the two
conjugate tags are told apart by the root of the splitting congruence: tag 0
carries the root r normalized to 0 < r < p/2 (min root for p = 2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .errors import NotClassNumberOneError, NotImaginaryError
from .fields import FieldSpec, Splitting, quad_character, split_type, _factorize
from .primes import primes_up_to

RATIONALS = "rationals"  # degenerate flag: model Z with one prime of norm p per p


# ---------------------------------------------------------------------------
# Element arithmetic (coordinates as plain tuples in hot paths)


def _norm_form(field: FieldSpec) -> tuple[int, int, int]:
    """Coefficients (1, B, C) of the norm form a^2 + B a b + C b^2."""
    d = field.d
    if d % 4 == 1:
        return (1, 1, (1 - d) // 4)
    return (1, 0, -d)


def norm_of(field: FieldSpec, a: int, b: int) -> int:
    _, B, C = _norm_form(field)
    return a * a + B * a * b + C * b * b


def mul(field: FieldSpec, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    a, b = x
    c, e = y
    d = field.d
    if d % 4 == 1:
        # w^2 = (d-1)/4 + w
        return (a * c + b * e * (d - 1) // 4, a * e + b * c + b * e)
    return (a * c + b * e * d, a * e + b * c)


def conj(field: FieldSpec, x: tuple[int, int]) -> tuple[int, int]:
    a, b = x
    if field.d % 4 == 1:
        return (a + b, -b)
    return (a, -b)


def divide_exact(
    field: FieldSpec, x: tuple[int, int], y: tuple[int, int]
) -> tuple[int, int] | None:
    """x / y in O_K, or None if y does not divide x."""
    n = norm_of(field, *y)
    if n == 0:
        raise ZeroDivisionError
    num = mul(field, x, conj(field, y))
    if num[0] % n or num[1] % n:
        return None
    return (num[0] // n, num[1] // n)


def units(field: FieldSpec) -> tuple[tuple[int, int], ...]:
    if not field.is_imaginary:
        raise NotImaginaryError("unit group is infinite for real fields")
    if field.d == -1:
        return ((1, 0), (-1, 0), (0, 1), (0, -1))
    if field.d == -3:
        return ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))
    return ((1, 0), (-1, 0))


def unit_inverse(field: FieldSpec, u: tuple[int, int]) -> tuple[int, int]:
    return conj(field, u)  # norm 1, so u^-1 = conj(u)


def associates(field: FieldSpec, x: tuple[int, int]) -> list[tuple[int, int]]:
    return [mul(field, u, x) for u in units(field)]


def canonical_associate(field: FieldSpec, x: tuple[int, int]) -> tuple[int, int]:
    """Deterministic representative: prefer a > 0, then lexicographically maximal (a, b)."""
    cands = associates(field, x)
    return max(cands, key=lambda t: (t[0] > 0, t))


@dataclass(frozen=True, order=True)
class QuadInt:
    """An element a + b w with its norm (norm first so ordering is by norm)."""

    norm: int
    a: int
    b: int

    @property
    def coords(self) -> tuple[int, int]:
        return (self.a, self.b)


def element(field: FieldSpec, a: int, b: int) -> QuadInt:
    return QuadInt(norm_of(field, a, b), a, b)


def enumerate_elements(
    field: FieldSpec, B: int, up_to_associates: bool = False
) -> list[QuadInt]:
    """All nonzero elements with norm <= B, sorted by (norm, a, b).

    With up_to_associates, one canonical representative per associate class.
    """
    if not field.is_imaginary:
        raise NotImaginaryError("element enumeration needs a definite norm form")
    if B < 1:
        raise ValueError("B >= 1 required")
    d = field.d
    out = []
    if d % 4 == 1:
        # (2a + b)^2 + |d| b^2 <= 4B
        bmax = math.isqrt(4 * B // -d)
        for b in range(-bmax, bmax + 1):
            rem = 4 * B + d * b * b
            t = math.isqrt(rem)
            lo, hi = -t, t
            first = lo + ((b - lo) % 2)
            for tt in range(first, hi + 1, 2):
                a = (tt - b) // 2
                n = norm_of(field, a, b)
                if 0 < n <= B:
                    out.append(QuadInt(n, a, b))
    else:
        bmax = math.isqrt(B // -d)
        for b in range(-bmax, bmax + 1):
            amax = math.isqrt(B + d * b * b)
            for a in range(-amax, amax + 1):
                n = a * a - d * b * b
                if 0 < n <= B:
                    out.append(QuadInt(n, a, b))
    if up_to_associates:
        out = [q for q in out if canonical_associate(field, q.coords) == q.coords]
    out.sort()
    return out


def count_elements(field: FieldSpec, B: int) -> int:
    """Number of nonzero elements with norm <= B, by exact lattice counting."""
    if not field.is_imaginary:
        raise NotImaginaryError("element counting needs a definite norm form")
    if B < 0:
        raise ValueError("B >= 0 required")
    d = field.d
    total = 0
    if d % 4 == 1:
        bmax = math.isqrt(4 * B // -d)
        for b in range(-bmax, bmax + 1):
            t = math.isqrt(4 * B + d * b * b)
            # count tt in [-t, t] with tt = b (mod 2)
            first = -t + ((b + t) % 2)
            if first <= t:
                total += (t - first) // 2 + 1
    else:
        bmax = math.isqrt(B // -d)
        for b in range(-bmax, bmax + 1):
            total += 2 * math.isqrt(B + d * b * b) + 1
    return total - 1  # exclude the origin


def count_primitive(B: int) -> int:
    """Gaussian integers a + bi with a^2 + b^2 <= B and gcd(a, b) = 1, counted exactly.

    gcd convention gcd(a, 0) = |a|, so the only primitive axis points are the
    four units; interior points are counted one quadrant at a time.
    """
    if B < 1:
        raise ValueError("B >= 1 required")
    g = math.gcd
    quadrant = 0
    for a in range(1, math.isqrt(B) + 1):
        m = B - a * a
        if m < 1:
            continue
        quadrant += sum(1 for b in range(1, math.isqrt(m) + 1) if g(a, b) == 1)
    return 4 * quadrant + 4


# ---------------------------------------------------------------------------
# Prime ideal tags and factorization


@dataclass(frozen=True)
class PrimeIdealTag:
    """A prime ideal above p: norm p^2 (inert), p (split, two conjugates), p (ramified)."""

    p: int
    kind: Splitting
    conjugate: int  # 0 unless kind is SPLIT
    norm: int

    def __post_init__(self):
        if self.kind is not Splitting.SPLIT:
            assert self.conjugate == 0

    def __lt__(self, other):
        return (self.p, self.kind.value, self.conjugate) < (
            other.p,
            other.kind.value,
            other.conjugate,
        )


def _sqrt_mod(a: int, p: int) -> int | None:
    """A square root of a modulo an odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


@lru_cache(maxsize=None)
def _split_roots(d: int, p: int) -> tuple[int, int]:
    """(root of tag 0, root of tag 1) of the splitting congruence for a split p."""
    if d % 4 == 1:
        if p == 2:
            roots = (0, 1)  # t^2 + t + (1-d)/4 with (1-d)/4 even
        else:
            s = _sqrt_mod(d, p)
            assert s is not None
            inv2 = pow(2, -1, p)
            roots = tuple(sorted(((1 + s) * inv2 % p, (1 - s) * inv2 % p)))
    else:
        s = _sqrt_mod(d, p)
        assert s is not None
        roots = tuple(sorted((s, (-s) % p)))
    qualifying = [r for r in roots if 0 < 2 * r < p]
    # tag 0 gets the root in (0, p/2); for p = 2 neither root qualifies, take the min
    r0 = qualifying[0] if len(qualifying) == 1 else min(roots)
    r1 = roots[1] if r0 == roots[0] else roots[0]
    return (r0, r1)


def prime_ideal_tags(field: FieldSpec | str, bound: int) -> list[PrimeIdealTag]:
    """All prime ideals of norm <= bound, sorted by (norm, p, conjugate)."""
    tags = []
    if field == RATIONALS:
        for p in primes_up_to(bound):
            tags.append(PrimeIdealTag(int(p), Splitting.RAMIFIED, 0, int(p)))
        return tags
    for p in primes_up_to(bound):
        st = split_type(field, int(p))
        if st.kind is Splitting.INERT:
            if p * p <= bound:
                tags.append(PrimeIdealTag(int(p), Splitting.INERT, 0, int(p * p)))
        elif st.kind is Splitting.SPLIT:
            tags.append(PrimeIdealTag(int(p), Splitting.SPLIT, 0, int(p)))
            tags.append(PrimeIdealTag(int(p), Splitting.SPLIT, 1, int(p)))
        else:
            tags.append(PrimeIdealTag(int(p), Splitting.RAMIFIED, 0, int(p)))
    tags.sort(key=lambda t: (t.norm, t.p, t.conjugate))
    return tags


@dataclass(frozen=True)
class IdealVector:
    """An ideal as a sorted exponent vector over prime ideal tags (empty = unit ideal)."""

    items: tuple[tuple[PrimeIdealTag, int], ...]

    @property
    def norm(self) -> int:
        n = 1
        for tag, e in self.items:
            n *= tag.norm**e
        return n

    def as_dict(self) -> dict[PrimeIdealTag, int]:
        return dict(self.items)

    def __str__(self):
        if not self.items:
            return "1"
        toks = []
        for tag, e in self.items:
            c = f"_{tag.conjugate}" if tag.kind is Splitting.SPLIT else ""
            toks.append(f"{tag.p}^{e}{c}")
        return "*".join(toks)


def ideal_vector(pairs: dict[PrimeIdealTag, int]) -> IdealVector:
    items = tuple(sorted(((t, e) for t, e in pairs.items() if e), key=lambda te: te[0]))
    for _, e in items:
        assert e > 0
    return IdealVector(items)


UNIT_IDEAL = IdealVector(())


def vec_add(v: IdealVector, w: IdealVector) -> IdealVector:
    d = v.as_dict()
    for t, e in w.items:
        d[t] = d.get(t, 0) + e
    return ideal_vector(d)


def vec_sub(v: IdealVector, w: IdealVector) -> IdealVector | None:
    """v - w componentwise, or None if any exponent would go negative."""
    d = v.as_dict()
    for t, e in w.items:
        r = d.get(t, 0) - e
        if r < 0:
            return None
        if r == 0:
            d.pop(t)
        else:
            d[t] = r
    return ideal_vector(d)


def subvectors_up_to_half(v: IdealVector) -> list[IdealVector]:
    """All nonzero w with 2w <= v componentwise (candidate squared ratios)."""
    out: list[dict] = [{}]
    for tag, e in v.items:
        half = e // 2
        if half == 0:
            continue
        grown = []
        for base in out:
            for k in range(half + 1):
                nxt = dict(base)
                if k:
                    nxt[tag] = k
                grown.append(nxt)
        out = grown
    return [ideal_vector(d) for d in out if d]


def factor_element(field: FieldSpec, x: QuadInt | tuple[int, int]) -> IdealVector:
    """Exponent vector of the ideal (x); needs class number 1 so elements factor.

    Split primes are apportioned by reducing mod the tag-0 root: after stripping
    the rational content p^g (which feeds both conjugates equally), the cofactor
    is divisible by exactly one of the two conjugate primes.
    """
    if field == RATIONALS or not field.class_number_one:
        raise NotClassNumberOneError("element factorization needs a class number 1 field")
    coords = x.coords if isinstance(x, QuadInt) else x
    if coords == (0, 0):
        raise ValueError("cannot factor zero")
    n = norm_of(field, *coords)
    vec: dict[PrimeIdealTag, int] = {}
    for p, e in _factorize(n):
        st = split_type(field, p)
        if st.kind is Splitting.INERT:
            assert e % 2 == 0
            vec[PrimeIdealTag(p, st.kind, 0, p * p)] = e // 2
        elif st.kind is Splitting.RAMIFIED:
            vec[PrimeIdealTag(p, st.kind, 0, p)] = e
        else:
            a, b = coords
            g = 0
            while a % p == 0 and b % p == 0:
                a //= p
                b //= p
                g += 1
            t0 = PrimeIdealTag(p, st.kind, 0, p)
            t1 = PrimeIdealTag(p, st.kind, 1, p)
            rest = e - 2 * g
            if rest == 0:
                e0 = e1 = g
            else:
                r0, _ = _split_roots(field.d, p)
                if (a + b * r0) % p == 0:
                    e0, e1 = g + rest, g
                else:
                    e0, e1 = g, g + rest
            if e0:
                vec[t0] = e0
            if e1:
                vec[t1] = e1
    return ideal_vector(vec)


@lru_cache(maxsize=None)
def _tag_generator(field: FieldSpec, tag: PrimeIdealTag) -> tuple[int, int]:
    """A generating element of the prime ideal (class number 1), by search."""
    if tag.kind is Splitting.INERT:
        return (tag.p, 0)
    for q in enumerate_elements(field, tag.norm):
        if q.norm == tag.norm and factor_element(field, q).items == ((tag, 1),):
            return q.coords
    raise AssertionError(f"no generator found for {tag}")


def element_for_vector(field: FieldSpec, v: IdealVector) -> tuple[int, int]:
    """An element generating the ideal v (any associate)."""
    out = (1, 0)
    for tag, e in v.items:
        g = _tag_generator(field, tag)
        for _ in range(e):
            out = mul(field, out, g)
    return out


# ---------------------------------------------------------------------------
# Ideal enumeration


def ideal_counts_by_norm(field: FieldSpec, B: int) -> list[int]:
    """c[n] = number of ideals of norm n for 0 <= n <= B, via c(n) = sum_{m|n} chi(m)."""
    c = [0] * (B + 1)
    for m in range(1, B + 1):
        ch = quad_character(field, m)
        if ch:
            for n in range(m, B + 1, m):
                c[n] += ch
    c[0] = 0
    return c


def enumerate_ideals(field: FieldSpec | str, B: int) -> list[IdealVector]:
    """All ideals of norm <= B as exponent vectors, sorted by (norm, tags).

    Counts per norm are asserted against the divisor sums sum_{m|n} chi(m)
    (for genuine fields; the rationals flag yields one "ideal" per integer).
    """
    if B < 1:
        raise ValueError("B >= 1 required")
    tags = prime_ideal_tags(field, B)  # sorted by norm ascending
    out: list[IdealVector] = []

    def extend(start: int, acc: dict, norm: int):
        out.append(ideal_vector(acc))
        for j in range(start, len(tags)):
            tag = tags[j]
            n = norm * tag.norm
            if n > B:
                break  # sorted: no later tag fits either
            e = 1
            while n <= B:
                extend(j + 1, {**acc, tag: e}, n)
                e += 1
                n *= tag.norm

    extend(0, {}, 1)

    if field != RATIONALS:
        expected = ideal_counts_by_norm(field, B)
        got = [0] * (B + 1)
        for v in out:
            got[v.norm] += 1
        assert got == expected, "ideal counts disagree with character divisor sums"
    out.sort(key=lambda v: (v.norm, v.items))
    return out


# ---------------------------------------------------------------------------
# Geometric progression detection (ratio = ideal vector, exponent APs)


def find_gp_triples(
    items,
) -> list[tuple[IdealVector, IdealVector, IdealVector]]:
    """All (v, v+w, v+2w) with w >= 0 componentwise, w != 0, all three in the set.

    Staged by norm: the middle term's norm is n*s for an integer s >= 2, so for
    each v we only scan ratio norms s with n*s^2 within range.
    """
    vecs = set(items)
    by_norm: dict[int, list[IdealVector]] = {}
    for v in vecs:
        by_norm.setdefault(v.norm, []).append(v)
    norms = set(by_norm)
    max_norm = max(norms, default=0)
    triples = []
    for v1 in vecs:
        n = v1.norm
        s = 2
        while n * s * s <= max_norm:
            if n * s in norms and n * s * s in norms:
                for v2 in by_norm[n * s]:
                    w = vec_sub(v2, v1)
                    if w is None or not w.items:
                        continue
                    v3 = vec_add(v2, w)
                    if v3 in vecs:
                        triples.append((v1, v2, v3))
            s += 1
    triples.sort(key=lambda t: (t[0].norm, t[1].norm, t[0].items, t[1].items))
    return triples


# ---------------------------------------------------------------------------
# Greedy construction


class GreedyMode(Enum):
    FIELD_RATIO = "field_ratio"          # ratio any non-unit of O_K
    RATIONAL_RATIO = "rational_ratio"    # ratio a rational integer, |ratio| >= 2
    IDEAL_RATIO = "ideal_ratio"          # ratio a nontrivial ideal


@dataclass
class GreedyResult:
    field: FieldSpec | str
    mode: GreedyMode
    bound: int
    included: list
    excluded: list

    @property
    def included_set(self) -> set:
        return set(self.included)


def _greedy_items(field, B: int, mode: GreedyMode):
    if field == RATIONALS:
        return list(range(1, B + 1))
    if mode is GreedyMode.IDEAL_RATIO:
        return enumerate_ideals(field, B)
    if not field.class_number_one:
        raise NotClassNumberOneError("element greedy sets need class number 1")
    return enumerate_elements(field, B)


def _order_key(field, mode, item):
    if field == RATIONALS:
        return (item,)
    if mode is GreedyMode.IDEAL_RATIO:
        return (item.norm, item.items)
    return (item.norm, item.a, item.b)


def _norm_of_item(field, mode, item) -> int:
    if field == RATIONALS:
        return item
    return item.norm


def greedy_set(
    field,
    B: int,
    mode: GreedyMode,
    order=None,
    ratio_scan: str = "factor",
) -> GreedyResult:
    """Greedy construction: scan items by nondecreasing norm, include each item
    unless it completes a 3-term progression (in the mode's ratio semantics)
    with two already-included items.

    order may permute items within norm classes (the outcome is tie-order
    invariant, which the tests verify rather than assume).  ratio_scan
    "factor" enumerates candidate ratios through the item's factorization;
    "all" scans every possible ratio element directly (slower, fully
    independent of factorization; FIELD_RATIO only).
    """
    items = _greedy_items(field, B, mode)
    if order is not None:
        order = list(order)
        assert sorted(order, key=lambda it: _order_key(field, mode, it)) == items, (
            "order must be a permutation of the enumerated items"
        )
        norms = [_norm_of_item(field, mode, it) for it in order]
        assert norms == sorted(norms), "order must be nondecreasing in norm"
        items = order

    included, excluded = [], []
    if field == RATIONALS:
        inc: set[int] = set()
        for n in items:
            if _completes_int_gp(n, inc):
                excluded.append(n)
            else:
                included.append(n)
                inc.add(n)
    elif mode is GreedyMode.IDEAL_RATIO:
        incv: set[IdealVector] = set()
        for v in items:
            if _completes_ideal_gp(v, incv):
                excluded.append(v)
            else:
                included.append(v)
                incv.add(v)
    else:
        if ratio_scan not in ("factor", "all"):
            raise ValueError("ratio_scan must be 'factor' or 'all'")
        if ratio_scan == "all" and mode is not GreedyMode.FIELD_RATIO:
            raise ValueError("ratio_scan='all' applies to FIELD_RATIO")
        incc: set[tuple[int, int]] = set()
        ratio_pool = items if ratio_scan == "all" else None
        for q in items:
            if mode is GreedyMode.FIELD_RATIO:
                done = (
                    _completes_field_gp_all(field, q, incc, ratio_pool)
                    if ratio_scan == "all"
                    else _completes_field_gp(field, q, incc)
                )
            else:
                done = _completes_rational_gp(field, q, incc)
            if done:
                excluded.append(q)
            else:
                included.append(q)
                incc.add(q.coords)

    key = lambda it: _order_key(field, mode, it)
    included.sort(key=key)
    excluded.sort(key=key)
    return GreedyResult(field, mode, B, included, excluded)


def _completes_int_gp(n: int, included: set[int]) -> bool:
    k = 2
    while k * k <= n:
        if n % (k * k) == 0 and n // k in included and n // (k * k) in included:
            return True
        k += 1
    return False


def _completes_ideal_gp(v: IdealVector, included: set[IdealVector]) -> bool:
    for w in subvectors_up_to_half(v):
        if vec_sub(v, w) in included and vec_sub(v, vec_add(w, w)) in included:
            return True
    return False


def _completes_field_gp(field: FieldSpec, q: QuadInt, included: set) -> bool:
    """Is q = x r^2 with x, x r included, for some non-unit r?  Ratios are
    enumerated as unit multiples of products of prime-ideal generators."""
    v = factor_element(field, q)
    us = units(field)
    for w in subvectors_up_to_half(v):
        rho = element_for_vector(field, w)
        q1 = divide_exact(field, q.coords, rho)
        q2 = divide_exact(field, q1, rho)
        assert q1 is not None and q2 is not None
        for u in us:
            ui = unit_inverse(field, u)
            if mul(field, q1, ui) in included and mul(field, q2, mul(field, ui, ui)) in included:
                return True
    return False


def _completes_field_gp_all(field: FieldSpec, q: QuadInt, included: set, pool) -> bool:
    """Same question answered without factorization: try every element r with
    2 <= N(r)^2 <= N(q) and exact double division."""
    for r in pool:
        if r.norm < 2 or r.norm * r.norm > q.norm:
            continue
        q1 = divide_exact(field, q.coords, r.coords)
        if q1 is None or q1 not in included:
            continue
        q2 = divide_exact(field, q1, r.coords)
        if q2 is not None and q2 in included:
            return True
    return False


def _completes_rational_gp(field: FieldSpec, q: QuadInt, included: set) -> bool:
    a, b = q.coords
    k = 2
    while k**4 <= q.norm:
        if a % (k * k) == 0 and b % (k * k) == 0:
            q1 = (a // k, b // k)
            q2 = (a // (k * k), b // (k * k))
            if q2 in included and (q1 in included or (-q1[0], -q1[1]) in included):
                return True
        k += 1
    return False


def empirical_density(field, included, B: int, items: str = "elements") -> Fraction:
    """|included| / |{norm <= B}| as an exact rational."""
    if field == RATIONALS:
        total = B
    elif items == "elements":
        total = count_elements(field, B)
    elif items == "ideals":
        total = sum(ideal_counts_by_norm(field, B))
    else:
        raise ValueError("items must be 'elements' or 'ideals'")
    return Fraction(len(included), total)


def greedy_dump_csv(result: GreedyResult) -> str:
    """CSV dump: `norm,a,b,included` for elements, `norm,factorization,included` for ideals."""
    rows = []
    if result.mode is GreedyMode.IDEAL_RATIO and result.field != RATIONALS:
        rows.append("norm,factorization,included")
        both = [(v, 1) for v in result.included] + [(v, 0) for v in result.excluded]
        both.sort(key=lambda p: (p[0].norm, p[0].items))
        for v, inc in both:
            rows.append(f"{v.norm},{v},{inc}")
    elif result.field == RATIONALS:
        rows.append("norm,a,b,included")
        both = [(n, 1) for n in result.included] + [(n, 0) for n in result.excluded]
        both.sort()
        for n, inc in both:
            rows.append(f"{n},{n},0,{inc}")
    else:
        rows.append("norm,a,b,included")
        both = [(q, 1) for q in result.included] + [(q, 0) for q in result.excluded]
        both.sort(key=lambda p: p[0])
        for q, inc in both:
            rows.append(f"{q.norm},{q.a},{q.b},{inc}")
    return "\n".join(rows) + "\n"

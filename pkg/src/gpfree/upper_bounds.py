"""Upper bounds for the upper density: Riddell-type and exact smooth-exclusion bounds.

The Riddell bound uses only the smallest non-unit norm q in {2, 3, 4}:
(q^3 - q)/(q^3 - 1).  The improved bound counts, exactly, how many smooth
elements (products of the three smallest prime ideals) must be deleted below
each norm threshold so that no 3-term progression survives; each increment
Delta_e at threshold N contributes coprime_density * Delta_e / N to the
excluded proportion.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import LimitExceededError
from .fields import FieldSpec, smallest_nonunit_norms
from .lattice import PrimeIdealTag, prime_ideal_tags

DEFAULT_LIMIT = 2000


def riddell_bound(field: FieldSpec) -> Fraction:
    """(q^3 - q)/(q^3 - 1) with q the smallest non-unit prime-ideal norm (2, 3 or 4)."""
    q = smallest_nonunit_norms(field, 1)[0]
    assert q in (2, 3, 4)
    return Fraction(q**3 - q, q**3 - 1)


def smooth_tags(field: FieldSpec) -> tuple[PrimeIdealTag, PrimeIdealTag, PrimeIdealTag]:
    """The three smallest-norm prime ideals, in canonical (norm, p, conjugate) order."""
    tags = prime_ideal_tags(field, 64)
    tags.sort(key=lambda t: (t.norm, t.p, t.conjugate))
    assert len(tags) >= 3
    return tuple(tags[:3])


@dataclass(frozen=True)
class SmoothElement:
    """Exponent triple over the three chosen prime ideals, with its norm."""

    exponents: tuple[int, int, int]
    norm: int


def smooth_elements(field: FieldSpec, N: int, tags=None) -> list[SmoothElement]:
    """All exponent triples of norm <= N over the three smallest prime ideals."""
    if N < 1:
        raise ValueError("N >= 1 required")
    if tags is None:
        tags = smooth_tags(field)
    n0, n1, n2 = (t.norm for t in tags)
    out = []
    v0 = 1
    e0 = 0
    while v0 <= N:
        v1, e1 = v0, 0
        while v1 <= N:
            v2, e2 = v1, 0
            while v2 <= N:
                out.append(SmoothElement((e0, e1, e2), v2))
                v2 *= n2
                e2 += 1
            v1 *= n1
            e1 += 1
        v0 *= n0
        e0 += 1
    out.sort(key=lambda s: (s.norm, s.exponents))
    return out


def coprime_density(field: FieldSpec) -> Fraction:
    """prod over the three chosen prime ideals of (1 - 1/norm), exact."""
    out = Fraction(1)
    for t in smooth_tags(field):
        out *= Fraction(t.norm - 1, t.norm)
    return out


def _gp_triples_of(elements: list[SmoothElement]) -> list[tuple[int, int, int]]:
    """Index triples (i, j, k) with exponent vectors v, v+w, v+2w, w >= 0, w != 0."""
    index = {s.exponents: i for i, s in enumerate(elements)}
    triples = []
    for i, s1 in enumerate(elements):
        for j, s2 in enumerate(elements):
            if i == j:
                continue
            w = tuple(b - a for a, b in zip(s1.exponents, s2.exponents))
            if any(c < 0 for c in w):
                continue
            third = tuple(b + c for b, c in zip(s2.exponents, w))
            k = index.get(third)
            if k is not None:
                triples.append((i, j, k))
    return triples


# ---------------------------------------------------------------------------
# Exact minimum hitting set by branch and bound


def _greedy_packing(triples: list[int]) -> int:
    used = 0
    count = 0
    for t in triples:
        if not (t & used):
            used |= t
            count += 1
    return count


def _greedy_hitting(triples: list[int], nbits: int) -> list[int]:
    remaining = list(triples)
    chosen = []
    while remaining:
        best_v, best_c = -1, 0
        for v in range(nbits):
            bit = 1 << v
            c = sum(1 for t in remaining if t & bit)
            if c > best_c:
                best_v, best_c = v, c
        chosen.append(best_v)
        bit = 1 << best_v
        remaining = [t for t in remaining if not (t & bit)]
    return chosen


class _OptimumFound(Exception):
    pass


class _HittingSolver:
    """Exact minimum hitting set on a small 3-uniform hypergraph (bitmask sets).

    Branching on an unhit triple {a, b, c}: take a; or drop a, take b; or drop
    a and b, take c.  Dropping removes the vertex from every set, so sets can
    shrink; singletons force their vertex and empty sets kill the branch.
    The lower bound is a greedy disjoint packing of the remaining sets.
    """

    def __init__(self, triples: list[int], nbits: int):
        self.nbits = nbits
        self.triples = sorted(set(triples), key=lambda t: t.bit_count())
        self.best: list[int] | None = None
        self.best_size = 0
        self.known_lb = 0

    def solve(self, ub_hint: list[int] | None = None, known_lb: int = 0) -> list[int]:
        if not self.triples:
            return []
        self.known_lb = max(known_lb, _greedy_packing(self.triples))
        greedy = _greedy_hitting(self.triples, self.nbits)
        if ub_hint is not None:
            hint = _repair_hitting(self.triples, self.nbits, ub_hint)
            if len(hint) < len(greedy):
                greedy = hint
        self.best = greedy
        self.best_size = len(greedy)
        if self.best_size > self.known_lb:
            try:
                self._search(self.triples, [])
            except _OptimumFound:
                pass
        return sorted(self.best)

    def _search(self, sets: list[int], chosen: list[int]):
        # unit propagation: singleton sets force their vertex, empty sets are dead ends
        while True:
            forced = 0
            for t in sets:
                if t == 0:
                    return
                if t.bit_count() == 1:
                    forced |= t
            if not forced:
                break
            chosen = chosen + _bits(forced)
            if len(chosen) >= self.best_size:
                return
            sets = [t for t in sets if not (t & forced)]
        if not sets:
            if len(chosen) < self.best_size:
                self.best_size = len(chosen)
                self.best = list(chosen)
                if self.best_size <= self.known_lb:
                    raise _OptimumFound
            return
        if len(chosen) + _greedy_packing(sets) >= self.best_size:
            return
        tri = min(sets, key=lambda t: t.bit_count())
        vs = sorted(
            _bits(tri), key=lambda v: -sum(1 for t in sets if t & (1 << v))
        )
        banned = 0
        for v in vs:
            bit = 1 << v
            if len(chosen) + 1 < self.best_size:
                nxt = []
                feasible = True
                for t in sets:
                    if t & bit:
                        continue
                    t2 = t & ~banned
                    if t2 == 0:
                        feasible = False
                        break
                    nxt.append(t2)
                if feasible:
                    self._search(nxt, chosen + [v])
            banned |= bit


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _repair_hitting(triples: list[int], nbits: int, hint: list[int]) -> list[int]:
    """Extend a partial hitting set greedily until every triple is hit."""
    hit = 0
    for v in hint:
        hit |= 1 << v
    remaining = [t for t in triples if not (t & hit)]
    return sorted(set(hint) | set(_greedy_hitting(remaining, nbits)))


def _solve_min_hitting(triples: list[int], nbits: int, ub_hint=None, known_lb: int = 0) -> list[int]:
    return _HittingSolver(triples, nbits).solve(ub_hint, known_lb)


def max_disjoint_packing(triples: list[int], node_budget: int = 300_000) -> tuple[list[int], bool]:
    """A large set of pairwise-disjoint triples, exact when the search budget allows.

    Branch on the lowest vertex still covered by a candidate: either one of the
    triples containing it is packed, or the vertex goes unused.  Returns
    (packing, exact_flag); on budget exhaustion the best packing found so far
    is returned with exact_flag False (still a valid inclusion-maximal bound).
    """
    best: list[int] = []
    nodes = 0

    class _Budget(Exception):
        pass

    def rec(cand: list[int], acc: list[int]):
        nonlocal best, nodes
        nodes += 1
        if nodes > node_budget:
            raise _Budget
        if len(acc) > len(best):
            best = list(acc)
        if not cand:
            return
        union = 0
        for t in cand:
            union |= t
        if len(acc) + union.bit_count() // 3 <= len(best):
            return
        bit = union & -union
        with_v = [t for t in cand if t & bit]
        without_v = [t for t in cand if not (t & bit)]
        for t in with_v:
            rec([u for u in without_v if not (u & t)], acc + [t])
        rec(without_v, acc)

    exact = True
    try:
        rec(sorted(set(triples)), [])
    except _Budget:
        exact = False
    # ensure inclusion-maximality of the reported packing
    used = 0
    for t in best:
        used |= t
    for t in triples:
        if not (t & used):
            best.append(t)
            used |= t
    return best, exact


# ---------------------------------------------------------------------------
# Public operations


def min_exclusions(
    field: FieldSpec, N: int, limit: int = DEFAULT_LIMIT
) -> tuple[int, list[SmoothElement]]:
    """Exact minimum number of smooth elements to delete so no progression with
    all three norms <= N survives, plus one optimal hitting set."""
    if N > limit:
        raise LimitExceededError(f"N = {N} exceeds limit {limit}")
    elements = smooth_elements(field, N)
    masks = [_mask_of(t) for t in _gp_triples_of(elements)]
    witness_idx = _solve_min_hitting(masks, len(elements))
    _assert_hits_all(masks, witness_idx)
    return len(witness_idx), [elements[i] for i in witness_idx]


def _mask_of(triple: tuple[int, int, int]) -> int:
    return (1 << triple[0]) | (1 << triple[1]) | (1 << triple[2])


def _assert_hits_all(masks: list[int], idx: list[int]) -> None:
    hit = 0
    for i in idx:
        hit |= 1 << i
    assert all(t & hit for t in masks), "hitting set does not hit every triple"


@dataclass(frozen=True)
class ProfilePoint:
    norm: int
    cumulative: int
    hitting_set: tuple[SmoothElement, ...]
    packing_size: int  # a maximal disjoint-triple packing: lower-bound certificate
    packing_exact: bool


@dataclass(frozen=True)
class ExclusionProfile:
    field: FieldSpec
    prime_tags: tuple[PrimeIdealTag, PrimeIdealTag, PrimeIdealTag]
    thresholds: tuple[ProfilePoint, ...]

    def pairs(self) -> list[tuple[int, int]]:
        return [(pt.norm, pt.cumulative) for pt in self.thresholds]

    def csv(self) -> str:
        lines = ["N,cumulative_exclusions"]
        for n, c in self.pairs():
            lines.append(f"{n},{c}")
        return "\n".join(lines) + "\n"


def exclusion_profile(
    field: FieldSpec, N_max: int, limit: int = DEFAULT_LIMIT
) -> ExclusionProfile:
    """Thresholds where the exact minimum exclusion count increases, up to N_max.

    The triple list is computed once at N_max; each candidate threshold keeps
    the triples whose largest member fits, reindexed over the smaller ground set.
    """
    if N_max > limit:
        raise LimitExceededError(f"N_max = {N_max} exceeds limit {limit}")
    tags = smooth_tags(field)
    all_elements = smooth_elements(field, N_max, tags)
    all_triples = _gp_triples_of(all_elements)
    norms = sorted(set(s.norm for s in all_elements))
    points: list[ProfilePoint] = []
    prev = 0
    prev_witness_exps: list[tuple[int, int, int]] = []
    prev_n_triples = 0
    for n in norms:
        elements = [s for s in all_elements if s.norm <= n]
        reindex = {s.exponents: i for i, s in enumerate(elements)}
        masks = []
        for i, j, k in all_triples:
            c = all_elements[k]
            if c.norm <= n:
                masks.append(
                    (1 << reindex[all_elements[i].exponents])
                    | (1 << reindex[all_elements[j].exponents])
                    | (1 << reindex[c.exponents])
                )
        if not masks or len(masks) == prev_n_triples:
            continue  # no new triples, the optimum cannot have moved
        prev_n_triples = len(masks)
        hint = [reindex[e] for e in prev_witness_exps]
        witness = _solve_min_hitting(masks, len(elements), ub_hint=hint, known_lb=prev)
        _assert_hits_all(masks, witness)
        count = len(witness)
        assert count >= prev, "minimum exclusions must be nondecreasing"
        prev_witness_exps = [elements[i].exponents for i in witness]
        if count > prev:
            packing, packing_exact = max_disjoint_packing(masks)
            assert len(packing) <= count
            points.append(
                ProfilePoint(
                    norm=n,
                    cumulative=count,
                    hitting_set=tuple(elements[i] for i in witness),
                    packing_size=len(packing),
                    packing_exact=packing_exact,
                )
            )
            prev = count
    return ExclusionProfile(field=field, prime_tags=tags, thresholds=tuple(points))


def improved_bound(field: FieldSpec, N_max: int, limit: int = DEFAULT_LIMIT) -> Fraction:
    """1 - coprime_density * sum_j (Delta_e_j / N_j), exact rational."""
    profile = exclusion_profile(field, N_max, limit)
    cd = coprime_density(field)
    total = Fraction(0)
    prev = 0
    for n, c in profile.pairs():
        total += Fraction(c - prev, n)
        prev = c
    return 1 - cd * total


def best_upper_bound(field: FieldSpec, N_max: int, limit: int = DEFAULT_LIMIT) -> Fraction:
    """min(Riddell, improved): both are valid upper bounds for the upper density."""
    return min(riddell_bound(field), improved_bound(field, N_max, limit))


def bounds_json_dict(field: FieldSpec, N_max: int, limit: int = DEFAULT_LIMIT) -> dict:
    q = smallest_nonunit_norms(field, 1)[0]
    rid = riddell_bound(field)
    imp = improved_bound(field, N_max, limit)
    return {
        "d": field.d,
        "q": q,
        "riddell": str(rid),
        "improved": str(imp),
        "n_max": N_max,
    }

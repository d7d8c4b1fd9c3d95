import itertools
from fractions import Fraction

import pytest

from gpfree.errors import LimitExceededError
from gpfree.fields import make_field
from gpfree.upper_bounds import (
    _gp_triples_of,
    _mask_of,
    _solve_min_hitting,
    coprime_density,
    exclusion_profile,
    improved_bound,
    best_upper_bound,
    max_disjoint_packing,
    min_exclusions,
    riddell_bound,
    smooth_elements,
)

RIDDELL_TABLE = {
    -1: Fraction(6, 7),
    -2: Fraction(6, 7),
    -3: Fraction(12, 13),
    -7: Fraction(6, 7),
    -11: Fraction(12, 13),
    -19: Fraction(20, 21),
    -43: Fraction(20, 21),
    -67: Fraction(20, 21),
    -163: Fraction(20, 21),
}


def test_riddell_bounds_exact():
    for d, expected in RIDDELL_TABLE.items():
        assert riddell_bound(make_field(d)) == expected


def test_riddell_bound_general_fields():
    assert riddell_bound(make_field(2)) == Fraction(6, 7)  # norm-2 prime above 2
    assert riddell_bound(make_field(-5)) == Fraction(6, 7)
    assert riddell_bound(make_field(5)) == Fraction(20, 21)  # 2 inert, 1 mod 4


def test_smooth_elements_s4_and_s20():
    f = make_field(-1)
    s4 = smooth_elements(f, 4)
    assert [(s.exponents, s.norm) for s in s4] == [
        ((0, 0, 0), 1),
        ((1, 0, 0), 2),
        ((2, 0, 0), 4),
    ]
    s20 = smooth_elements(f, 20)
    assert len(s20) == 11
    assert sorted(s.norm for s in s20) == [1, 2, 4, 5, 5, 8, 10, 10, 16, 20, 20]
    assert smooth_elements(f, 1)[0].exponents == (0, 0, 0)
    assert len(smooth_elements(f, 1)) == 1


def test_coprime_density_values():
    assert coprime_density(make_field(-1)) == Fraction(16, 50)
    assert coprime_density(make_field(-7)) == Fraction(3, 14)
    assert coprime_density(make_field(-19)) == Fraction(12, 25)


def brute_min_hitting(masks, nbits):
    """Exhaustive oracle: smallest vertex subset meeting every triple."""
    for k in range(0, nbits + 1):
        for combo in itertools.combinations(range(nbits), k):
            hit = 0
            for v in combo:
                hit |= 1 << v
            if all(t & hit for t in masks):
                return k
    return 0


@pytest.mark.parametrize("d,N", [(-1, 4), (-1, 20), (-1, 32), (-1, 64), (-2, 16), (-7, 8), (-2, 32)])
def test_solver_against_exhaustive_oracle(d, N):
    f = make_field(d)
    els = smooth_elements(f, N)
    masks = [_mask_of(t) for t in _gp_triples_of(els)]
    got = len(_solve_min_hitting(masks, len(els)))
    assert got == brute_min_hitting(masks, len(els))


def test_min_exclusions_table_values():
    f = make_field(-1)
    assert min_exclusions(f, 4)[0] == 1
    assert min_exclusions(f, 20)[0] == 3
    assert min_exclusions(f, 500)[0] == 18


def test_min_exclusions_witness_destroys_all_triples():
    f = make_field(-1)
    for N in (20, 100, 500):
        count, witness = min_exclusions(f, N)
        assert len(witness) == count
        removed = {s.exponents for s in witness}
        survivors = [s for s in smooth_elements(f, N) if s.exponents not in removed]
        assert _gp_triples_of(survivors) == []


def test_min_exclusions_limit():
    with pytest.raises(LimitExceededError):
        min_exclusions(make_field(-1), 5000)
    with pytest.raises(LimitExceededError):
        exclusion_profile(make_field(-1), 5000)


GAUSSIAN_PROFILE = [
    (4, 1), (20, 3), (32, 4), (64, 5), (100, 8),
    (128, 9), (160, 11), (256, 12), (320, 14), (500, 18),
]


def test_exclusion_profile_gaussian():
    prof = exclusion_profile(make_field(-1), 500)
    assert prof.pairs() == GAUSSIAN_PROFILE
    assert [t.norm for t in prof.prime_tags] == [2, 5, 5]
    counts = [c for _, c in prof.pairs()]
    assert counts == sorted(counts)
    for pt in prof.thresholds:
        assert pt.packing_size <= pt.cumulative
        assert len(pt.hitting_set) == pt.cumulative


def test_exclusion_profile_small_cases():
    f = make_field(-1)
    assert exclusion_profile(f, 3).pairs() == []
    prof2 = exclusion_profile(make_field(-2), 50)
    # first smooth progression is 1, sqrt(-2), 2 at norm 4
    assert prof2.pairs()[0][0] == 4 and prof2.pairs()[0][1] == 1


def test_profile_csv():
    prof = exclusion_profile(make_field(-1), 100)
    lines = prof.csv().splitlines()
    assert lines[0] == "N,cumulative_exclusions"
    assert lines[1] == "4,1"
    assert lines[-1] == "100,8"


def test_improved_bound_values():
    f = make_field(-1)
    assert improved_bound(f, 4) == Fraction(23, 25)  # 0.92
    assert improved_bound(f, 20) == Fraction(111, 125)  # 0.888
    full = improved_bound(f, 500)
    assert full == Fraction(85109, 100000)
    assert abs(float(full) - 0.851090) < 1e-9


def test_improved_bound_monotone_in_depth():
    f = make_field(-1)
    values = [improved_bound(f, n) for n in (4, 20, 64, 128, 320, 500)]
    assert values == sorted(values, reverse=True)


def test_best_upper_bound_takes_min():
    f7 = make_field(-7)
    assert best_upper_bound(f7, 500) == min(riddell_bound(f7), improved_bound(f7, 500))
    f1 = make_field(-1)
    assert best_upper_bound(f1, 500) == improved_bound(f1, 500)  # 0.85109 < 6/7


def chain_masks(k):
    """Single-tag instance: vertices are exponents 0..k, triples are 3-term APs."""
    masks = []
    for i in range(k + 1):
        for j in range(1, (k - i) // 2 + 1):
            masks.append((1 << i) | (1 << (i + j)) | (1 << (i + 2 * j)))
    return masks


def test_single_tag_packing_reproduces_riddell_series():
    # with one prime tag of norm q, packing increments occur exactly at
    # thresholds q^(3n+2), reproducing the geometric series whose total is
    # q/(q^3-1); scaled by the coprime factor (q-1)/q this is the Riddell
    # excluded density (q-1)/(q^3-1)
    for q in (2, 3, 4):
        increments = []
        prev = 0
        for k in range(0, 13):
            packing, exact = max_disjoint_packing(chain_masks(k))
            assert exact
            if len(packing) > prev:
                increments.append(k)
                prev = len(packing)
        assert increments == [2, 5, 8, 11]
        partial = sum(Fraction(1, q**e) for e in increments)
        target = Fraction(q, q**3 - 1)
        # partial sums approach the series total from below; remainder is the tail
        assert partial < target
        assert target - partial <= Fraction(q, q**3 - 1) * Fraction(1, q**12)
        excluded_density = Fraction(q - 1, q) * target
        assert excluded_density == Fraction(q - 1, q**3 - 1)
        assert 1 - excluded_density == Fraction(q**3 - q, q**3 - 1)


def test_single_tag_exact_optimum_dominates_packing():
    # the exact chain optimum grows faster than the packing (greedy AP-free
    # subsets of an interval are not maximum), so the packing is the object
    # matching the geometric cascade
    masks = chain_masks(12)
    packing, _ = max_disjoint_packing(masks)
    opt = len(_solve_min_hitting(masks, 13))
    assert len(packing) == 4 and opt == 6


def test_packing_is_maximal_certificate():
    f = make_field(-1)
    els = smooth_elements(f, 500)
    masks = [_mask_of(t) for t in _gp_triples_of(els)]
    packing, exact = max_disjoint_packing(masks)
    used = 0
    for t in packing:
        assert not (t & used)  # pairwise disjoint
        used |= t
    for t in masks:
        assert t & used  # inclusion-maximal: every triple meets the packing

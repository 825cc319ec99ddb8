import math
from fractions import Fraction

import pytest

from invgen.chebotarev import (chebotarev_exact, chebotarev_mc,
                               chebotarev_partial_sum, distinct_tilde_family,
                               p_i_exact, p_i_sandwich_check,
                               theorem2_ratio_report)
from invgen.group import alternating_group, group_from_generators, \
    symmetric_group
from invgen.maximal import maximal_subgroups
from invgen.perm import parse_cycles

from oracles import exhaustive_p_i


def mk(spec, deg, name=""):
    return group_from_generators([parse_cycles(s, deg) for s in spec.split(";")],
                                 name=name)


# -- the distinct family ------------------------------------------------------

def test_a5_family_dedups_shared_unions():
    fam = distinct_tilde_family(alternating_group(5))
    assert len(fam) == 2
    assert sorted(fam.densities) == [Fraction(3, 5), Fraction(2, 3)]
    # two maximal classes share one union
    assert sorted(len(p) for p in fam.provenance) == [1, 2]


def test_densities_proper():
    for G in [mk("(1 2)", 2), symmetric_group(4), alternating_group(5)]:
        fam = distinct_tilde_family(G)
        assert all(d < 1 for d in fam.densities)
        assert len(fam) >= 1


# -- exact probabilities ------------------------------------------------------

def test_p_i_a5():
    fam = distinct_tilde_family(alternating_group(5))
    assert p_i_exact(fam, 0) == 0
    assert p_i_exact(fam, 1) == 0            # noncyclic: one element never works
    assert p_i_exact(fam, 2) == Fraction(4, 15)


def test_p_i_c2():
    fam = distinct_tilde_family(mk("(1 2)", 2))
    assert p_i_exact(fam, 1) == Fraction(1, 2)
    assert p_i_exact(fam, 3) == Fraction(7, 8)


def test_p_i_monotone_and_tends_to_one():
    for G in [alternating_group(5), symmetric_group(4), mk("(1 2);(3 4)", 4)]:
        fam = distinct_tilde_family(G)
        prev = Fraction(0)
        for k in range(0, 12):
            cur = p_i_exact(fam, k)
            assert cur >= prev
            prev = cur
        # geometric bound on the miss probability
        vmax = max(fam.densities)
        assert 1 - p_i_exact(fam, 64) <= len(fam.sets) * vmax ** 64 + \
            Fraction(1, 10**6)


def test_p_i_matches_exhaustive_oracle():
    for G in [symmetric_group(3), mk("(1 2);(3 4)", 4),
              mk("(1 2 3 4 5 6)", 6)]:
        fam = distinct_tilde_family(G)
        for k in range(0, 4):
            assert p_i_exact(fam, k) == exhaustive_p_i(G, k), (G.name, k)


def test_subset_cap():
    fam = distinct_tilde_family(mk("(1 2);(3 4);(5 6);(7 8)", 8))
    assert len(fam) == 15
    with pytest.raises(ValueError, match="Monte Carlo"):
        p_i_exact(fam, 2, cap=10)


# -- the invariant itself -----------------------------------------------------

def test_chebotarev_exact_values():
    assert chebotarev_exact(distinct_tilde_family(mk("(1 2)", 2))) == 2
    assert chebotarev_exact(
        distinct_tilde_family(mk("(1 2);(3 4)", 4))) == Fraction(10, 3)
    assert chebotarev_exact(
        distinct_tilde_family(alternating_group(5))) == Fraction(91, 22)


def test_chebotarev_partial_sum_tail():
    for G in [mk("(1 2)", 2), alternating_group(5), symmetric_group(4)]:
        fam = distinct_tilde_family(G)
        c = chebotarev_exact(fam)
        partial, tail = chebotarev_partial_sum(fam, 50)
        assert abs(c - partial) <= tail
        assert tail < Fraction(1, 10**4)


def test_dedup_soundness():
    """Inclusion-exclusion over the raw per-class unions (no dedup) must
    give the identical rational."""
    from itertools import combinations
    for G in [alternating_group(5), symmetric_group(4)]:
        maxes = maximal_subgroups(G)
        from invgen.structure import conjugacy_classes
        sizes = [c.size for c in conjugacy_classes(G).classes]
        total = Fraction(0)
        sets = [m.mtilde_class_bits for m in maxes]
        for r in range(1, len(sets) + 1):
            for combo in combinations(sets, r):
                inter = combo[0]
                for s in combo[1:]:
                    inter &= s
                covered = sum(sizes[i] for i in range(len(sizes))
                              if (inter >> i) & 1)
                v = Fraction(covered, G.order)
                term = 1 / (1 - v)
                total += term if r % 2 == 1 else -term
        assert total == chebotarev_exact(distinct_tilde_family(G))


# -- sandwich -----------------------------------------------------------------

def test_sandwich_a5_k2():
    rep = p_i_sandwich_check(alternating_group(5), 2)
    assert rep.max_v_pow_k == Fraction(4, 9)
    assert rep.miss_probability == Fraction(11, 15)
    assert rep.sum_v_pow_k == Fraction(262, 225)
    assert rep.lower_ok and rep.upper_ok


def test_sandwich_c2_tight():
    rep = p_i_sandwich_check(mk("(1 2)", 2), 3)
    assert rep.max_v_pow_k == rep.miss_probability == rep.sum_v_pow_k \
        == Fraction(1, 8)


def test_sandwich_sweep_small():
    for G in [symmetric_group(4), alternating_group(4), mk("(1 2 3 4 5 6)", 6),
              mk("(1 2 3 4 5);(2 3 5 4)", 5)]:
        for k in range(1, 9):
            rep = p_i_sandwich_check(G, k)
            assert rep.lower_ok and rep.upper_ok


# -- Monte Carlo --------------------------------------------------------------

def test_mc_matches_exact_c2():
    G = mk("(1 2)", 2)
    est = chebotarev_mc(G, 10_000, seed=3)
    assert abs(est.mean - 2.0) <= 3 * est.std_error


def test_mc_matches_exact_a5():
    G = alternating_group(5)
    est = chebotarev_mc(G, 20_000, seed=7)
    assert abs(est.mean - 91 / 22) <= 3 * est.std_error


def test_mc_bit_identical_reruns():
    G = alternating_group(5)
    assert chebotarev_mc(G, 2000, seed=42) == chebotarev_mc(G, 2000, seed=42)
    assert chebotarev_mc(G, 2000, seed=42) != chebotarev_mc(G, 2000, seed=43)


def test_mc_requires_positive_trials():
    with pytest.raises(ValueError):
        chebotarev_mc(alternating_group(5), 0, seed=1)


# -- ratio reports -------------------------------------------------------------

def test_ratio_report_c2():
    rep = theorem2_ratio_report(mk("(1 2)", 2, "C2"))
    assert rep.c_value == 2
    assert abs(rep.ratio_sqrt - math.sqrt(2)) < 1e-12


def test_ratio_report_sharply_two_transitive():
    for spec, deg, name in [("(1 2 3 4 5 6 7);(2 4 3 7 5 6)", 7, "AGL(1,7)"),
                            ("(1 2 3 4 5);(2 3 5 4)", 5, "AGL(1,5)")]:
        rep = theorem2_ratio_report(mk(spec, deg, name))
        assert 1.0 <= rep.ratio_sqrt <= 2.5

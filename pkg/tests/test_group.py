import math
import random

import pytest

from invgen.group import (CapExceeded, PermGroup, alternating_group,
                          embed_tuple, group_from_generators, power_group,
                          project_component, symmetric_group)
from invgen.perm import Perm, parse_cycles

from oracles import naive_closure

# chi-square 0.999 quantile for 5 degrees of freedom (S3 uniformity test)
CHI2_CRIT_DF5_P999 = 20.5150


def mk(spec, deg, name=""):
    return group_from_generators([parse_cycles(s, deg) for s in spec.split(";")],
                                 name=name)


def test_order_matches_naive_closure_a5():
    gens = [parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(1 2 3)", 5)]
    G = group_from_generators(gens)
    assert G.order == 60 == len(naive_closure(gens))


def test_order_matches_naive_closure_s4():
    gens = [parse_cycles("(1 2 3 4)", 4), parse_cycles("(1 2)", 4)]
    G = group_from_generators(gens)
    assert G.order == 24 == len(naive_closure(gens))


def test_trivial_group():
    G = group_from_generators([Perm.identity(3)])
    assert G.order == 1
    assert G.elements() == [Perm.identity(3)]


def test_generator_degree_mismatch():
    with pytest.raises(ValueError):
        group_from_generators([parse_cycles("(1 2)", 2),
                               parse_cycles("(1 2)", 3)])


def test_membership():
    a5 = alternating_group(5)
    assert not a5.contains(parse_cycles("(1 2)", 5))
    assert a5.contains(parse_cycles("(1 2 3)", 5))
    s4 = symmetric_group(4)
    assert s4.contains(parse_cycles("(1 2 3 4)", 4))
    with pytest.raises(ValueError):
        a5.contains(parse_cycles("(1 2)", 4))


def test_closure_properties_random_products():
    G = mk("(1 2 3 4);(1 2)", 4)
    rng = random.Random(3)
    for _ in range(50):
        p = G.random_element(rng)
        q = G.random_element(rng)
        assert G.contains(p * q)
        assert G.contains(p.inverse())


def test_lagrange_over_enumerated_groups():
    for G in [mk("(1 2 3 4 5 6)", 6), alternating_group(5), symmetric_group(4)]:
        for p in G.elements():
            assert G.order % p.order() == 0


def test_enumeration_complete_and_duplicate_free():
    a5 = alternating_group(5)
    els = a5.elements()
    assert len(els) == 60 == len(set(els))
    c6 = mk("(1 2 3 4 5 6)", 6)
    assert len(c6.elements()) == 6


def test_enumeration_cap():
    a9 = alternating_group(9)
    with pytest.raises(CapExceeded):
        a9.elements(cap=100_000)


def test_random_element_trivial_group():
    G = group_from_generators([Perm.identity(2)])
    rng = random.Random(0)
    assert all(G.random_element(rng).is_identity() for _ in range(20))


def test_random_element_c2_frequency():
    G = mk("(1 2)", 2)
    rng = random.Random(11)
    hits = sum(not G.random_element(rng).is_identity() for _ in range(10_000))
    # within 4 sigma of 1/2
    assert abs(hits - 5000) <= 4 * math.sqrt(10_000 * 0.25)


def test_random_element_s3_chi_square():
    G = symmetric_group(3)
    rng = random.Random(2024)
    counts: dict[tuple, int] = {}
    n = 12_000
    for _ in range(n):
        key = G.random_element(rng).images
        counts[key] = counts.get(key, 0) + 1
    assert len(counts) == 6
    expected = n / 6
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    assert chi2 < CHI2_CRIT_DF5_P999


def test_random_stream_determinism():
    G = alternating_group(6)
    r1, r2 = random.Random(99), random.Random(99)
    s1 = [G.random_element(r1) for _ in range(200)]
    s2 = [G.random_element(r2) for _ in range(200)]
    assert s1 == s2


def test_power_group_identity_case():
    a5 = alternating_group(5)
    p1 = power_group(a5, 1)
    assert p1.order == 60 and p1.degree == 5


def test_power_group_square():
    a5 = alternating_group(5)
    p2 = power_group(a5, 2)
    assert p2.degree == 10 and p2.order == 3600


def test_power_group_c2_cubed():
    c2 = mk("(1 2)", 2)
    p3 = power_group(c2, 3)
    assert p3.order == 8
    assert all(p.order() <= 2 for p in p3.elements())


def test_power_group_projections():
    a5 = alternating_group(5)
    rng = random.Random(8)
    ts = [a5.random_element(rng) for _ in range(3)]
    big = embed_tuple(ts, 3)
    assert power_group(a5, 3).contains(big)
    for i in range(3):
        assert project_component(big, i, 5) == ts[i]


def test_symmetric_alternating_orders():
    for n in range(2, 10):
        assert symmetric_group(n).order == math.factorial(n)
    for n in range(3, 10):
        assert alternating_group(n).order == math.factorial(n) // 2

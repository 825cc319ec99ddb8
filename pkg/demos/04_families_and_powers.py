"""Explicit families: alternating pairs, direct powers, and the gap between
plain and invariable generation.

Two headline facts shown concretely: the standard two-element invariable
generating pairs for alternating groups survive arbitrary conjugation
twists, and a direct power of A5 can be 2-generated while needing at least
3 elements to generate invariably.
"""

import random

from invgen import (alternating_group, alternating_pair, build_profile,
                    fuse_classes_under, invariably_generates,
                    kl_criterion_check, pigeonhole_bound,
                    search_generating_matrix, symmetric_group)
from invgen.generation import invgen_sample_refuter, profile_row_of
from invgen.group import PermGroup, power_group
from invgen.perm import format_cycles

print("alternating pairs (even permutations, orders shown):")
for n in range(5, 11):
    x, y = alternating_pair(n)
    print(f"  n={n:2d}: {format_cycles(x)}  and  {format_cycles(y)}")

# exact verification under symmetric-group twisting, small degrees
for n in (5, 6, 7):
    an = alternating_group(n)
    prof = build_profile(an, fusion=fuse_classes_under(an, symmetric_group(n)))
    x, y = alternating_pair(n)
    ok = invariably_generates(prof, [profile_row_of(prof, x),
                                     profile_row_of(prof, y)])
    print(f"A{n}: exact twisted test -> {ok}")

# past desk scale, a seeded randomized refuter gives one-sided evidence
rng = random.Random(99)
for n in (9, 12):
    an = alternating_group(n)
    verdict = invgen_sample_refuter(an, list(alternating_pair(n)), 300, rng)
    print(f"A{n}: {verdict}")

# d vs d_I on direct powers of A5
A5 = alternating_group(5)
S5 = symmetric_group(5)
print("\norbits of S5 on pairs of A5-classes:", pigeonhole_bound(A5, S5, 2))
M = search_generating_matrix(A5, S5, r=2, k=18, seed=5)
print("seeded search found a 2x18 matrix passing the generation criterion:",
      M is not None)
gen = PermGroup(M.rows_as_power_elements())
print("rows generate A5^18 outright:",
      gen.order == power_group(A5, 18).order == 60 ** 18)
print("but 18 columns > 17 orbits, so no 2 elements can invariably",
      "generate A5^18: two generators, yet d_I >= 3")
assert kl_criterion_check(A5, S5, M)

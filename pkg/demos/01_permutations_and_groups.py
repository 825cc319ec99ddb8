"""Permutation arithmetic and the group engine, end to end.

Walks through cycle notation, composition, and the stabilizer-chain
machinery that gives exact orders, membership tests, and exactly uniform
random elements.
"""

import random

from invgen import (alternating_group, format_cycles, group_from_generators,
                    parse_cycles, power_group)

# cycle notation: disjoint cycles over 1..degree, "()" is the identity
p = parse_cycles("(1 2 3)(4 5)", 5)
print("p =", format_cycles(p), "  order", p.order(), " even?", p.is_even())

q = parse_cycles("(2 5)", 5)
print("p * q =", format_cycles(p * q), "   (apply p first, then q)")
print("p^-1  =", format_cycles(p.inverse()))
print("p^q   =", format_cycles(p.conjugate(q)))

# a group handle is generators plus a deterministic stabilizer chain
G = group_from_generators([parse_cycles("(1 2 3 4 5)", 5),
                           parse_cycles("(1 2 3)", 5)], name="A5")
print("\n<(1 2 3 4 5), (1 2 3)> has order", G.order)
print("contains (1 2)?       ", G.contains(parse_cycles("(1 2)", 5)))
print("contains (1 2)(3 4)?  ", G.contains(parse_cycles("(1 2)(3 4)", 5)))

# exactly uniform sampling: one transversal pick per base point
rng = random.Random(7)
draws = [G.random_element(rng) for _ in range(5)]
print("five uniform draws:", ", ".join(format_cycles(d) for d in draws))

# full element tables back all the exact structure work
elements = G.elements()
print("enumerated", len(elements), "elements; identity first:",
      format_cycles(elements[0]))

# direct powers act on disjoint copies of the points
A5 = alternating_group(5)
P = power_group(A5, 3)
print("\nA5^3 acts on", P.degree, "points with order", P.order)

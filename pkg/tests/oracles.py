"""Independent brute-force oracles for the test suite.

Everything here deliberately avoids the library's stabilizer chains,
bitsets and incidence machinery: subgroups are plain frozensets of
permutations, closures are worklist products, conjugacy is tested by
conjugating with every group element.  Slow but obviously correct.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from invgen.perm import Perm


def naive_closure(gens, degree=None) -> frozenset:
    gens = [g for g in gens]
    if not gens:
        raise ValueError("need at least one permutation")
    ident = Perm.identity(gens[0].degree)
    members = {ident}
    work = [ident]
    while work:
        x = work.pop()
        for g in gens:
            y = x * g
            if y not in members:
                members.add(y)
                work.append(y)
    return frozenset(members)


def naive_conjugacy_classes(elements) -> list[frozenset]:
    """Conjugation orbits via all conjugators; sorted by (size, least rep)."""
    elements = list(elements)
    remaining = set(elements)
    classes = []
    while remaining:
        x = min(remaining, key=lambda p: p.images)
        orbit = frozenset(g.inverse() * x * g for g in elements)
        classes.append(orbit)
        remaining -= orbit
    classes.sort(key=lambda c: (len(c), min(p.images for p in c)))
    return classes


def naive_subgroup_lattice(elements) -> set[frozenset]:
    """Every subgroup, by breadth-first single-element extensions from the
    trivial subgroup (reaches everything: each subgroup is a one-element
    extension of any of its maximal subgroups).  Each node carries the
    generator list it was built from, so the extension closures stay cheap.
    """
    elements = list(elements)
    ident = next(p for p in elements if p.is_identity())
    trivial = frozenset([ident])
    found: dict[frozenset, list] = {trivial: []}
    frontier = [trivial]
    while frontier:
        new = []
        for H in frontier:
            base_gens = found[H]
            for x in elements:
                if x in H:
                    continue
                K = naive_closure(base_gens + [x])
                if K not in found:
                    found[K] = base_gens + [x]
                    new.append(K)
        frontier = new
    return set(found)


def naive_maximal_classes(elements) -> list[list[frozenset]]:
    """Conjugacy classes of maximal subgroups from the naive lattice,
    each class sorted, classes ordered by (-order, size, least member)."""
    elements = list(elements)
    whole = frozenset(elements)
    lattice = naive_subgroup_lattice(elements)
    proper = [H for H in lattice if H != whole]
    maximal = [H for H in proper
               if not any(H < K for K in proper if K != H)]
    classes = []
    seen = set()
    for H in maximal:
        if H in seen:
            continue
        orbit = {frozenset(g.inverse() * h * g for h in H) for g in elements}
        seen |= orbit
        classes.append(sorted(orbit, key=lambda s: sorted(p.images for p in s)))
    classes.sort(key=lambda c: (-len(c[0]), len(c),
                                min(sorted(p.images for p in s) for s in c)))
    return classes


def exhaustive_invariable_generation(G, elements) -> bool:
    """Direct transcription of the definition: every independent choice of
    conjugates must generate.  The first element may stay fixed, since
    conjugating the whole tuple does not change the generated order."""
    all_elements = G.elements()
    if not elements:
        return G.order == 1
    first = elements[0]
    rest = elements[1:]
    for choice in product(all_elements, repeat=len(rest)):
        gens = [first] + [p.conjugate(g) for p, g in zip(rest, choice)]
        gens = [p for p in gens if not p.is_identity()]
        if not gens:
            if G.order > 1:
                return False
            continue
        if len(naive_closure(gens)) != G.order:
            return False
    return True


def exhaustive_p_i(G, k: int) -> Fraction:
    """P_I(G, k) by enumerating every ordered k-tuple of group elements."""
    elements = G.elements()
    good = 0
    for tup in product(elements, repeat=k):
        if exhaustive_invariable_generation(G, list(tup)):
            good += 1
    return Fraction(good, len(elements) ** k)

"""Exact structure of enumerable groups: conjugacy classes, subgroup
lattices, quotients, chief series, and class fusion under an overgroup.

Everything here works on the element table of the group, with subgroups held
as bitsets (Python ints) over element indices.  All outputs use a fixed
canonical order so downstream reports are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .group import CapExceeded, DEFAULT_ENUM_CAP, PermGroup
from .perm import Perm

DEFAULT_LATTICE_CAP = 20_000


# ---------------------------------------------------------------------------
# element table machinery


class GroupTable:
    """Element table of a group with index-level multiplication and
    per-generator conjugation maps."""

    def __init__(self, group: PermGroup, cap: int = DEFAULT_ENUM_CAP):
        self.group = group
        self.elements = group.elements(cap=cap)
        self.index = {p.images: i for i, p in enumerate(self.elements)}
        self.n = len(self.elements)
        self.identity_index = 0   # identity is lexicographically least
        self.all_bits = (1 << self.n) - 1
        self._conj_maps: Optional[list[list[int]]] = None
        self._inv_map: Optional[list[int]] = None
        self._elem_conj_maps: dict[int, list[int]] = {}

    def mult(self, i: int, j: int) -> int:
        return self.index[(self.elements[i] * self.elements[j]).images]

    def inv(self, i: int) -> int:
        if self._inv_map is None:
            self._inv_map = [self.index[p.inverse().images] for p in self.elements]
        return self._inv_map[i]

    def conj_maps(self) -> list[list[int]]:
        """For each group generator g, the index map i -> index(e_i ^ g)."""
        if self._conj_maps is None:
            gens = self.group.generators or [self.group.identity()]
            self._conj_maps = [self.elem_conj_map(self.index[g.images])
                               for g in gens]
        return self._conj_maps

    def elem_conj_map(self, gi: int) -> list[int]:
        """Index map of conjugation by element gi, cached.

        Built without composing permutations: the image tuple of x^g
        satisfies y[g(i)] = g(x(i)), one dict lookup per element.
        """
        cached = self._elem_conj_maps.get(gi)
        if cached is not None:
            return cached
        g = self.elements[gi].images
        index = self.index
        out = [0] * self.n
        y = [0] * len(g)
        for xi, x in enumerate(self.elements):
            xim = x.images
            for i in range(len(g)):
                y[g[i] - 1] = g[xim[i] - 1]
            out[xi] = index[tuple(y)]
        self._elem_conj_maps[gi] = out
        return out

    def closure(self, gen_indices: Sequence[int], bound: Optional[int] = None
                ) -> Optional[list[int]]:
        """Indices of the subgroup generated by the given elements.

        BFS from the identity by right multiplication; with a bound, returns
        None as soon as the subgroup would exceed it.
        """
        elements = self.elements
        index = self.index
        gens = sorted(set(gen_indices) - {self.identity_index})
        members = {self.identity_index}
        worklist = [self.identity_index]
        gen_perms = [(g, elements[g]) for g in gens]
        for g, _ in gen_perms:
            members.add(g)
            worklist.append(g)
        if bound is not None and len(members) > bound:
            return None
        k = 0
        while k < len(worklist):
            x = worklist[k]
            k += 1
            px = elements[x]
            for _, pg in gen_perms:
                y = index[(px * pg).images]
                if y not in members:
                    members.add(y)
                    if bound is not None and len(members) > bound:
                        return None
                    worklist.append(y)
        return sorted(members)

    def bits_of(self, indices: Sequence[int]) -> int:
        b = 0
        for i in indices:
            b |= 1 << i
        return b


def indices_of_bits(bits: int) -> list[int]:
    out = []
    while bits:
        low = bits & -bits
        out.append(low.bit_length() - 1)
        bits ^= low
    return out


def group_table(G: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> GroupTable:
    tab = G._cache.get("table")
    if tab is None:
        tab = GroupTable(G, cap=cap)
        G._cache["table"] = tab
    return tab


# ---------------------------------------------------------------------------
# conjugacy classes


@dataclass(frozen=True)
class ClassInfo:
    rep: Perm                 # lexicographically least member
    rep_index: int
    size: int
    element_order: int
    members: tuple            # sorted element indices
    bits: int
    label: str


@dataclass
class ConjugacyTable:
    group: PermGroup
    classes: list[ClassInfo]
    class_of: list[int]       # element index -> class index
    label_index: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        self.label_index = {c.label: i for i, c in enumerate(self.classes)}

    def class_of_element(self, p: Perm) -> int:
        return self.class_of[group_table(self.group).index[p.images]]


def conjugacy_classes(G: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> ConjugacyTable:
    """Partition of G into conjugation orbits, in canonical order:
    (size, element order of representative, least representative)."""
    cached = G._cache.get("conjugacy")
    if cached is not None:
        return cached
    tab = group_table(G, cap=cap)
    maps = tab.conj_maps()
    assigned = [-1] * tab.n
    raw: list[list[int]] = []
    for start in range(tab.n):
        if assigned[start] >= 0:
            continue
        cid = len(raw)
        orbit = [start]
        assigned[start] = cid
        k = 0
        while k < len(orbit):
            x = orbit[k]
            k += 1
            for m in maps:
                y = m[x]
                if assigned[y] < 0:
                    assigned[y] = cid
                    orbit.append(y)
        raw.append(sorted(orbit))
    keyed = []
    for members in raw:
        rep_index = members[0]
        rep = tab.elements[rep_index]
        keyed.append((len(members), rep.order(), rep.images, rep_index, members))
    keyed.sort(key=lambda t: (t[0], t[1], t[2]))
    # labels: element order, with a/b/c suffix when several classes share it
    order_counts: dict[int, int] = {}
    for _, order, _, _, _ in keyed:
        order_counts[order] = order_counts.get(order, 0) + 1
    seen: dict[int, int] = {}
    classes = []
    class_of = [-1] * tab.n
    for new_cid, (size, order, _, rep_index, members) in enumerate(keyed):
        if order_counts[order] == 1:
            label = str(order)
        else:
            suffix = seen.get(order, 0)
            seen[order] = suffix + 1
            label = f"{order}{chr(ord('a') + suffix)}"
        classes.append(ClassInfo(
            rep=tab.elements[rep_index], rep_index=rep_index, size=size,
            element_order=order, members=tuple(members),
            bits=tab.bits_of(members), label=label))
        for i in members:
            class_of[i] = new_cid
    result = ConjugacyTable(group=G, classes=classes, class_of=class_of)
    G._cache["conjugacy"] = result
    return result


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class SubgroupRecord:
    bits: int
    order: int
    gen_indices: tuple        # a small generating list (element indices)

    def member_indices(self) -> list[int]:
        return indices_of_bits(self.bits)


def _cyclic_seeds(tab: GroupTable) -> dict[int, SubgroupRecord]:
    seeds: dict[int, SubgroupRecord] = {}
    ident = 1 << tab.identity_index
    seeds[ident] = SubgroupRecord(bits=ident, order=1, gen_indices=())
    for i in range(tab.n):
        if i == tab.identity_index:
            continue
        members = [tab.identity_index]
        x = i
        while x != tab.identity_index:
            members.append(x)
            x = tab.mult(x, i)
        bits = tab.bits_of(members)
        if bits not in seeds:
            seeds[bits] = SubgroupRecord(bits=bits, order=len(members),
                                         gen_indices=(i,))
    return seeds


def subgroup_lattice(G: PermGroup, cap: int = DEFAULT_LATTICE_CAP
                     ) -> list[SubgroupRecord]:
    """Every subgroup of G, exactly once, in canonical (order, bits) order.

    Algorithm: seed with all cyclic subgroups, then close under pairwise
    join, deduplicating by member bitset.  Exhaustive but quadratic in the
    number of subgroups; intended for small groups (the profile machinery
    uses the dedicated maximal-class search instead).
    """
    cached = G._cache.get("lattice")
    if cached is not None:
        return cached
    if G.order > cap:
        raise CapExceeded(f"order {G.order} exceeds lattice cap {cap}")
    tab = group_table(G)
    found = _cyclic_seeds(tab)
    frontier = list(found.values())
    while frontier:
        new_records: list[SubgroupRecord] = []
        all_records = list(found.values())
        for rec_h in frontier:
            for rec_k in all_records:
                union = rec_h.bits | rec_k.bits
                if union == rec_h.bits or union == rec_k.bits:
                    continue
                if union in found:
                    continue
                gens = tuple(sorted(set(rec_h.gen_indices) | set(rec_k.gen_indices)))
                members = tab.closure(gens)
                bits = tab.bits_of(members)
                if bits not in found:
                    rec = SubgroupRecord(bits=bits, order=len(members),
                                         gen_indices=gens)
                    found[bits] = rec
                    new_records.append(rec)
        frontier = new_records
    records = sorted(found.values(), key=lambda r: (r.order, r.bits))
    G._cache["lattice"] = records
    return records


def normal_closure_bits(tab: GroupTable, seed_indices: Sequence[int]) -> int:
    """Bitset of the normal closure of the given elements."""
    gens = list(dict.fromkeys(seed_indices))
    while True:
        members = tab.closure(gens)
        member_set = set(members)
        new = []
        for m in tab.conj_maps():
            for g in gens:
                c = m[g]
                if c not in member_set:
                    new.append(c)
        if not new:
            return tab.bits_of(members)
        gens.extend(dict.fromkeys(new))


def small_generating_indices(tab: GroupTable, members: Sequence[int]) -> list[int]:
    """A short generating list for the subgroup with the given members."""
    target = len(members)
    gens: list[int] = []
    have = {tab.identity_index}
    for i in members:
        if i in have:
            continue
        gens.append(i)
        have = set(tab.closure(gens))
        if len(have) == target:
            break
    return gens


def is_normal_bits(tab: GroupTable, bits: int, gen_indices: Sequence[int]) -> bool:
    for m in tab.conj_maps():
        for g in gen_indices:
            if not (bits >> m[g]) & 1:
                return False
    return True


# ---------------------------------------------------------------------------
# quotients and chief series


def quotient_group(G: PermGroup, N: SubgroupRecord,
                   cap: int = DEFAULT_ENUM_CAP) -> PermGroup:
    """G/N as a permutation group on the cosets of N (least-member order)."""
    tab = group_table(G)
    gen_idx = list(N.gen_indices) or [tab.identity_index]
    if not is_normal_bits(tab, N.bits, gen_idx):
        raise ValueError("subgroup is not normal")
    m = G.order // N.order
    if m > cap:
        raise CapExceeded(f"index {m} exceeds cap {cap}")
    n_members = indices_of_bits(N.bits)
    coset_of = [-1] * tab.n
    coset_reps: list[int] = []
    for x in range(tab.n):
        if coset_of[x] >= 0:
            continue
        cid = len(coset_reps)
        coset_reps.append(x)
        px = tab.elements[x]
        for nn in n_members:
            coset_of[tab.index[(tab.elements[nn] * px).images]] = cid
    gens = []
    for g in G.generators or [G.identity()]:
        images = []
        for rep in coset_reps:
            images.append(coset_of[tab.index[(tab.elements[rep] * g).images]] + 1)
        gens.append(Perm(images))
    Q = PermGroup(gens, name=f"{G.name or 'G'}/N{N.order}")
    assert Q.order == m, "coset action has wrong order"
    return Q


def minimal_normal_subgroups(G: PermGroup) -> list[SubgroupRecord]:
    """Inclusion-minimal nontrivial normal subgroups, canonically ordered.

    Found as normal closures of single conjugacy classes; every minimal
    normal subgroup is the closure of any of its nonidentity elements.
    """
    tab = group_table(G)
    ct = conjugacy_classes(G)
    closures: dict[int, int] = {}
    for c in ct.classes[1:]:
        bits = normal_closure_bits(tab, [c.rep_index])
        closures[bits] = bits.bit_count()
    minimal = []
    for bits, order in closures.items():
        if not any(other != bits and bits | other == bits for other in closures):
            minimal.append((order, bits))
    minimal.sort()
    out = []
    for order, bits in minimal:
        gens = small_generating_indices(tab, indices_of_bits(bits))
        out.append(SubgroupRecord(bits=bits, order=order, gen_indices=tuple(gens)))
    return out


@dataclass(frozen=True)
class ChiefFactor:
    order: int
    abelian: bool
    description: str


@dataclass(frozen=True)
class ChiefSeries:
    factors: tuple            # ChiefFactor, socle end first
    a: int                    # abelian factor count
    b: int                    # non-abelian factor count


def _is_abelian_subgroup(tab: GroupTable, gen_indices: Sequence[int]) -> bool:
    for i, g in enumerate(gen_indices):
        for h in gen_indices[i + 1:]:
            if tab.mult(g, h) != tab.mult(h, g):
                return False
    return True


def chief_series(G: PermGroup, cap: int = DEFAULT_ENUM_CAP) -> ChiefSeries:
    """A chief series of G, built by repeatedly factoring out the canonical
    least minimal normal subgroup.  The multiset of (order, abelian) pairs
    is an invariant of G even though the series itself is a choice."""
    cached = G._cache.get("chief")
    if cached is not None:
        return cached
    factors: list[ChiefFactor] = []
    current = G
    while current.order > 1:
        tab = group_table(current, cap=cap)
        N = minimal_normal_subgroups(current)[0]
        abelian = _is_abelian_subgroup(tab, N.gen_indices or (tab.identity_index,))
        kind = "abelian" if abelian else "non-abelian"
        factors.append(ChiefFactor(order=N.order, abelian=abelian,
                                   description=f"{kind} chief factor of order {N.order}"))
        if N.order == current.order:
            break
        current = quotient_group(current, N, cap=cap)
    a = sum(1 for f in factors if f.abelian)
    b = len(factors) - a
    series = ChiefSeries(factors=tuple(factors), a=a, b=b)
    G._cache["chief"] = series
    return series


# ---------------------------------------------------------------------------
# fusion under an overgroup


@dataclass
class FusionMap:
    group: PermGroup
    overgroup: PermGroup
    fused_class_of: list[int]          # G-class index -> fused class index
    fused_classes: list[tuple]         # per fused class: tuple of G-class indices

    @property
    def num_fused(self) -> int:
        return len(self.fused_classes)


def fuse_classes_under(G: PermGroup, A: PermGroup) -> FusionMap:
    """Merge G-classes into orbits of conjugation by the overgroup A.

    Requires G normal in A (checked); conjugation by A then permutes
    G-classes and the orbits are the fused classes.
    """
    if A.degree != G.degree:
        raise ValueError("overgroup degree mismatch")
    for g in G.generators:
        if not A.contains(g):
            raise ValueError("G is not a subgroup of A")
    for a in A.generators:
        for g in G.generators:
            if not G.contains(g.conjugate(a)):
                raise ValueError("G is not normal in A")
    ct = conjugacy_classes(G)
    k = len(ct.classes)
    # class-index action of each A-generator
    maps = []
    for a in A.generators or [A.identity()]:
        maps.append([ct.class_of_element(c.rep.conjugate(a)) for c in ct.classes])
    fused_of = [-1] * k
    fused: list[tuple] = []
    for start in range(k):
        if fused_of[start] >= 0:
            continue
        fid = len(fused)
        orbit = [start]
        fused_of[start] = fid
        i = 0
        while i < len(orbit):
            x = orbit[i]
            i += 1
            for m in maps:
                y = m[x]
                if fused_of[y] < 0:
                    fused_of[y] = fid
                    orbit.append(y)
        fused.append(tuple(sorted(orbit)))
    return FusionMap(group=G, overgroup=A, fused_class_of=fused_of,
                     fused_classes=fused)


# ---------------------------------------------------------------------------
# re-exports from the maximal-class engine (defined in maximal.py)

from .maximal import MaximalClass, maximal_subgroups, v_of   # noqa: E402


def is_nilpotent(G: PermGroup, cap: int = DEFAULT_LATTICE_CAP) -> bool:
    """Nilpotent iff every maximal subgroup is normal, i.e. every maximal
    class has class size 1."""
    return all(mc.class_size == 1 for mc in maximal_subgroups(G, cap=cap))

"""The incidence profile: invariable generation as a covering problem.

A set of elements invariably generates exactly when, for every conjugacy
class of maximal subgroups M, some element's class avoids the union of all
conjugates of M.  The profile tabulates that incidence; the minimal
invariable generating number d_I is then an exact minimum set cover.
"""

from invgen import (alternating_group, build_profile, chief_bound_check,
                    class_count_bounds, d_i_exact, fuse_classes_under,
                    invariably_generates, maximal_subgroups, symmetric_group)

A5 = alternating_group(5)
A5.name = "A5"

print("maximal subgroup classes of A5:")
for mc in maximal_subgroups(A5):
    print(f"  {mc.label:8s} order {mc.order:3d}  class size {mc.class_size:3d}"
          f"  v = {mc.v}")

prof = build_profile(A5)
print("\nincidence matrix (1 = class meets the union of conjugates):")
header = "        " + "  ".join(f"{c:8s}" for c in prof.column_labels)
print(header)
for label, row in zip(prof.class_labels, prof.rows):
    bits = "  ".join(f"{(row >> c) & 1:8d}" for c in range(prof.num_columns))
    print(f"  {label:6s}{bits}")

r = prof.row_of_label
print("\n{3, 5a} invariably generates:", invariably_generates(prof, [r("3"), r("5a")]))
print("{5a, 5b} invariably generates:", invariably_generates(prof, [r("5a"), r("5b")]))

d, witness = d_i_exact(prof)
print(f"\nd_I(A5) = {d}, witness classes:",
      [prof.class_labels[w] for w in witness])

k_g, cyclic = class_count_bounds(A5)
print(f"class-count bounds: d_I <= {cyclic} (cyclic classes) <= {k_g} (classes)")

rep = chief_bound_check(A5)
print(f"chief-series bound: d_I = {rep.d_i} <= a + 2b = {rep.a_plus_2b}"
      f" <= log2|G| = {rep.log2_order:.2f}")

# fusing classes under an overgroup can only make generation harder
fm = fuse_classes_under(A5, symmetric_group(5))
fused = build_profile(A5, fusion=fm)
print("\nunder conjugation twists from S5 the two 5-classes merge:",
      fused.class_labels)
print("fused d_I:", d_i_exact(fused)[0])

"""Relations, and what splitting their idempotents adds.

Rel on the sets {0, 1, 2} is a dagger kernel category: the dagger is the
converse and the kernel of R is the inclusion of the points R sends
nowhere. Its dagger Karoubi envelope has the partial equivalence relations
as objects.
"""

from omlcat.dagkernel import check_dagger_kernel_category, ksub_poset
from omlcat.karoubi import all_splittings, dagger_karoubi, split_idempotent, splitting_iso
from omlcat.rel import FinRel, rel_as_dagcategory, rel_compose, rel_kernel

R = FinRel.from_pairs(3, 2, [(0, 0), (2, 0), (2, 1)])
print("R =", R)
print("kernel of R:", rel_kernel(R), " (point 1 is sent nowhere)")
print("R . ker R is empty:", rel_compose(R, rel_kernel(R)).bits == 0)

D = rel_as_dagcategory(2)
print("\n", D, "conformance:", check_dagger_kernel_category(D).ok)
print("KSub(2) has", len(ksub_poset(D, 2)), "elements: the subsets of a 2-element set")

K = dagger_karoubi(D)
print("\n", K)
for X, s in K.objects:
    print("   object", (X, s), "=", FinRel(X, X, s))
print("conformance:", check_dagger_kernel_category(K).ok)

# the PER {0~0, 1~1, 0~1} on 2 splits through a one-point object
full = FinRel.from_pairs(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
ident = (2, FinRel.from_pairs(2, 2, [(0, 0), (1, 1)]).bits)
f = K.arrow(ident, ident, full.bits)
canonical = split_idempotent(K, f)
print("\nthe total relation on 2 splits canonically through", canonical[0].dst)
for e, m in all_splittings(K, f):
    print(f"  also through {e.dst}: e = {FinRel(2, e.dst[0], K.value(e))},",
          "isomorphic to the canonical one:", splitting_iso(K, canonical, (e, m)) is not None)

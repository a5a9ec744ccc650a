"""The category OMLatGal on a handful of small lattices.

Objects are finite orthomodular lattices and arrows are antitone Galois
connections. We materialise every hom-set, check the dagger kernel
category axioms by brute force, and recover each lattice from its kernel
subobjects.
"""

import time

from omlcat import galois as gal
from omlcat.dagkernel import check_dagger_kernel_category, ksub_poset, omlatgal_category
from omlcat.oml import boolean_lattice, chain2, find_isomorphism, mo_lattice, trivial_lattice

lattices = {"0": trivial_lattice(), "2": chain2(), "B2": boolean_lattice(2), "MO2": mo_lattice(2)}
D = omlatgal_category(lattices)
print(D)
for X in D.objects:
    print("  ", X, "->", {Y: D.hom_size(X, Y) for Y in D.objects})

start = time.perf_counter()
rep = check_dagger_kernel_category(D)
print(f"\nconformance: {'ok' if rep.ok else 'FAILED'} in {time.perf_counter() - start:.2f}s")
for note in rep.notes:
    print("  ", note)

# kernels are principal downsets; KSub(X) is X again
for name, X in lattices.items():
    P = ksub_poset(D, name)
    print(f"KSub({name}) has {len(P)} classes, isomorphic to {name}:",
          find_isomorphism(P.lattice, X) is not None)

# every morphism factors as a zero-epi followed by a kernel
B2, MO2 = lattices["B2"], lattices["MO2"]
f = gal.hom_list(B2, MO2)[17]
fac = gal.factorize(f)
print("\nf: B2 -> MO2 =", f)
print("image:", gal.image(f), " kernel:", gal.kernel(f))
print("i . e == f:", gal.compose(fac.i, fac.e) == f)

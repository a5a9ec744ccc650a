"""From a lattice to a semigroup and back.

The Galois endomaps of a lattice X form a Foulis semigroup Endo(X): a
monoid with an involution and a focus map picking out annihilator
projections. The projections of the form [t] form a lattice again, and
for X = MO2 it is MO2.
"""

from omlcat.dagkernel import check_dagger_kernel_category, ksub_poset
from omlcat.foulis import check_foulis, check_foulis_alt, endo_semigroup, k_s_lattice, oml_of_foulis
from omlcat.karoubi import dagger_karoubi_of_foulis
from omlcat.oml import find_isomorphism, mo_lattice

X = mo_lattice(2)
S = endo_semigroup(X)
print(f"Endo(MO2) has {len(S)} elements, {len(S.sa_idempotents())} of them projections")
print("Foulis axioms:", check_foulis(S).ok, " alternative axioms:", check_foulis_alt(S).ok)

L = oml_of_foulis(S)
phi = find_isomorphism(L, X)
print("\nthe foci [t] of Endo(MO2), matched against MO2:")
for i in L:
    t = S.morphisms[L.embedding[i]]
    print(f"  {S.names[L.embedding[i]]:>5}  lower {[X.name(int(v)) for v in t.lower]}  ->  {X.name(phi[i])}")

# below a projection s the lattice K_s is the downset of the corresponding element
i = next(i for i in L if phi[i] == X["p0"])
s = L.embedding[i]
print(f"\nK_s for s = {S.names[s]} (the projection onto p0) has {len(k_s_lattice(S, s))} elements")

K = dagger_karoubi_of_foulis(S)
rep = check_dagger_kernel_category(K)
print(f"\n{K}: {'ok' if rep.ok else 'FAILED'}; {rep.notes[0]}")
print("KSub(1) is MO2 again:", find_isomorphism(ksub_poset(K, S.unit).lattice, X) is not None)

"""Quantum logic in MO2, read off from Galois morphisms.

MO2 is the smallest orthomodular lattice that is not Boolean. Its elements
are propositions; every proposition a has a "test" a? : MO2 -> MO2, the
effect of the kernel down(a). Weakest preconditions of tests give the
Sasaki hook, and direct images give and-then.
"""

import itertools

from omlcat import galois as gal
from omlcat.oml import distributivity_witness, mo_lattice

X = mo_lattice(2)
print("MO2 elements:", ", ".join(X.names))

x, y, z = distributivity_witness(X)
print(f"distributivity fails at x={X.name(x)}, y={X.name(y)}, z={X.name(z)}:")
print(f"  x & (y v z) = {X.name(X.meet(x, X.join(y, z)))}",
      f"but (x & y) v (x & z) = {X.name(X.join(X.meet(x, y), X.meet(x, z)))}")

# a test is self-adjoint and idempotent
p = X["p0"]
t = gal.test_of(X, p)
print("\nthe test p0? as a lower table:", {X.name(a): X.name(t(a)) for a in X})
print("self-adjoint:", gal.dagger(t) == t, " idempotent:", gal.compose(t, t) == t)

print("\nSasaki hook p0 => b, computed as [p0?](b):")
for b in X:
    print(f"  p0 => {X.name(b):4} = {X.name(gal.wp(t, b))}")

# the hook is right adjoint to and-then, in every lattice
ok = all(X.leq(gal.and_then(X, k, m), n) == X.leq(k, gal.sasaki_hook(X, m, n))
         for k, m, n in itertools.product(X, repeat=3))
print("\nk & m <= n  iff  k <= m => n, over all", len(X) ** 3, "triples:", ok)

# and-then is not commutative once p and q are incompatible
q = X["p1"]
print(f"p0 & p1 = {X.name(gal.and_then(X, p, q))}, p1 & p0 = {X.name(gal.and_then(X, q, p))}")

"""Structures that should fail, and how the checkers say so.

The benzene ring O6 is an ortholattice but not orthomodular. Single-entry
edits to a valid Foulis semigroup break one axiom at a time.
"""

from omlcat.foulis import check_foulis, check_foulis_alt, endo_semigroup, mutate
from omlcat.oml import boolean_lattice, check_orthomodular, o6_lattice

O6 = o6_lattice()
print(check_orthomodular(O6))
a, b = O6["a"], O6["b"]
print(f"a <= b, yet a v (a' & b) = {O6.name(O6.join(a, O6.meet(O6.comp(a), b)))}")

S = endo_semigroup(boolean_lattice(2))
edits = [
    ("focus", S.unit, S.unit, "[1] no longer absorbs"),
    ("inv", S.unit, S.zero, "the unit is not self-adjoint"),
    ("mul", (2, 3), int(S.mul[2, 3]) ^ 1, "one product changed"),
]
for table, pos, value, what in edits:
    M = mutate(S, table, pos, value)
    print(f"\n{what}: {sorted(check_foulis(M).axioms_failed())}")

# moving a focus to another projection keeps (1)-(3) and trips only the last axiom
for s in S:
    for v in S.sa_idempotents():
        if v == S.foc(s):
            continue
        M = mutate(S, "focus", s, v)
        r1, r2 = check_foulis(M), check_foulis_alt(M)
        if r1.axioms_failed() == {"axiom-4"}:
            print(f"\n[{S.names[s]}] := {S.names[v]}:", sorted(r1.axioms_failed()),
                  "/", sorted(r2.axioms_failed()))
            print("  first witness:", r1.violations[0])
            break
    else:
        continue
    break

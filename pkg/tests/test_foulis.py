import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omlcat import galois as gal
from omlcat.foulis import (FoulisSemigroup, NotSAIdempotent, check_foulis, check_foulis_alt, endo_at,
                           endo_presheaf_map, endo_semigroup, find_semigroup_isomorphism, focus_of_endo,
                           k_s_elements, k_s_lattice, mutate, oml_of_foulis, require_foulis)
from omlcat.oml import (AxiomError, SizeBoundError, boolean_lattice, chain2, downset_oml, find_isomorphism,
                        mo_lattice)
from omlcat.rel import FinRel, emptiness_domain, rel_compose, rel_dagger

TWO, B2, MO2 = chain2(), boolean_lattice(2), mo_lattice(2)
ENDO = {"2": endo_semigroup(TWO), "B2": endo_semigroup(B2), "MO2": endo_semigroup(MO2)}


def rel_monoid(n):
    """Relations on n with converse and [R] = identity on {x | R(x,-) empty}."""
    rels = [FinRel(n, n, b) for b in range(1 << (n * n))]
    idx = {r: i for i, r in enumerate(rels)}
    mul = [[idx[rel_compose(a, b)] for b in rels] for a in rels]
    inv = [idx[rel_dagger(r)] for r in rels]
    focus = [idx[FinRel.from_pairs(n, n, [(x, x) for x in emptiness_domain(r)])] for r in rels]
    unit = idx[FinRel.from_pairs(n, n, [(i, i) for i in range(n)])]
    return FoulisSemigroup([repr(r) for r in rels], mul, unit, inv, focus)


def test_endo_sizes():
    assert [len(ENDO[k]) for k in ("2", "B2", "MO2")] == [2, 16, 234]
    S = ENDO["2"]
    assert S.names[S.unit] == "1" and S.names[S.zero] == "0"


@pytest.mark.parametrize("name", ENDO)
def test_endo_is_foulis_both_axiom_sets(name):
    S = ENDO[name]
    assert check_foulis(S).ok
    assert check_foulis_alt(S).ok
    assert require_foulis(S) is S


@pytest.mark.parametrize("n,name", [(1, "2"), (2, "B2")])
def test_endo_of_powerset_is_relations(n, name):
    R = rel_monoid(n)
    assert check_foulis(R).ok
    assert find_semigroup_isomorphism(R, ENDO[name]) is not None


def test_focus_closed_form_examples():
    for X in (TWO, B2, MO2):
        assert focus_of_endo(gal.identity(X)) == gal.zero_morphism(X, X)
        assert focus_of_endo(gal.zero_morphism(X, X)) == gal.identity(X)
        for a in X:
            assert focus_of_endo(gal.test_of(X, a)) == gal.test_of(X, X.comp(a))


@pytest.mark.parametrize("name", ENDO)
def test_oml_of_endo_recovers_lattice(name):
    S = ENDO[name]
    assert find_isomorphism(oml_of_foulis(S), S.lattice) is not None


def test_k_s_of_projection_is_downset():
    S = ENDO["MO2"]
    X = S.lattice
    index = {f: i for i, f in enumerate(S.morphisms)}
    for a in X:
        s = index[gal.test_of(X, a)]
        assert S.is_sa_idempotent(s)
        L = k_s_lattice(S, s)
        assert find_isomorphism(L, downset_oml(X, a)) is not None
        assert len(k_s_elements(S, s)) == len(X.below(a))


def test_endo_at():
    S = ENDO["MO2"]
    Z = endo_at(S, S.zero)
    assert len(Z) == 1 and Z.unit == Z.zero
    U = endo_at(S, S.unit)
    assert len(U) == len(S) and find_semigroup_isomorphism(U, S) is not None
    for s in S.sa_idempotents():
        T = endo_at(S, s)
        assert check_foulis(T).ok
        assert all(S.mul[s, t] == t == S.mul[t, s] for t in T.embedding)
    non_sa = next(t for t in S if not S.is_sa_idempotent(t))
    with pytest.raises(NotSAIdempotent):
        endo_at(S, non_sa)
    with pytest.raises(NotSAIdempotent):
        k_s_lattice(S, non_sa)


def test_presheaf_map_is_functorial():
    SX, SY, SZ = ENDO["2"], ENDO["B2"], ENDO["MO2"]
    for f in gal.hom_list(TWO, B2):
        for g in gal.hom_list(B2, MO2)[::7]:
            fm, gm = endo_presheaf_map(f, SX, SY), endo_presheaf_map(g, SY, SZ)
            gfm = endo_presheaf_map(gal.compose(g, f), SX, SZ)
            assert gfm == [gm[fm[s]] for s in SX]
    ident = endo_presheaf_map(gal.identity(B2), SY, SY)
    assert ident == list(SY)


def test_fault_labels():
    S = ENDO["B2"]
    assert check_foulis(mutate(S, "focus", S.unit, S.unit)).axioms_failed() == {"axiom-3"}
    non_sa = next(t for t in S if not S.is_sa_idempotent(t))
    assert "axiom-2" in check_foulis(mutate(S, "focus", 3, non_sa)).axioms_failed()
    assert "axiom-1" in check_foulis(mutate(S, "inv", S.unit, S.zero)).axioms_failed()
    a, b = 2, 3
    broken = mutate(S, "mul", (a, b), int(S.mul[a, b]) ^ 1)
    assert check_foulis(broken).axioms_failed() == {"monoid"}
    with pytest.raises(AxiomError):
        require_foulis(broken)
    with pytest.raises(ValueError):
        mutate(S, "bogus", 0, 0)


def test_axiom_four_fault_agrees_between_axiom_sets():
    S = ENDO["B2"]
    sa = S.sa_idempotents()
    hits = 0
    for s, v in itertools.product(S, sa):
        if v == S.foc(s):
            continue
        T = mutate(S, "focus", s, v)
        r1, r2 = check_foulis(T), check_foulis_alt(T)
        assert r1.ok == r2.ok
        if "axiom-4" in r1.axioms_failed():
            hits += 1
            assert "axiom-4'" in r2.axioms_failed()
    assert hits > 0


def test_table_validation():
    with pytest.raises(ValueError):
        FoulisSemigroup(["1"], [[0]], 0, [0, 0], [0])
    with pytest.raises(ValueError):
        FoulisSemigroup(["1"], [[1]], 0, [0], [0])


def test_size_bound():
    with pytest.raises(SizeBoundError):
        endo_semigroup(MO2, cap=100)


def _relabel(S, perm):
    inv_perm = np.argsort(perm)
    mul = perm[S.mul[np.ix_(inv_perm, inv_perm)]]
    return FoulisSemigroup([S.names[i] for i in inv_perm], mul, perm[S.unit], perm[S.inv[inv_perm]],
                           perm[S.focus[inv_perm]])


@given(st.permutations(range(16)))
@settings(max_examples=25, deadline=None)
def test_isomorphism_search_finds_relabellings(perm):
    S = ENDO["B2"]
    perm = np.array(perm)
    T = _relabel(S, perm)
    assert check_foulis(T).ok
    phi = find_semigroup_isomorphism(S, T)
    assert phi is not None
    for a, b in itertools.product(S, repeat=2):
        assert phi[S.mul[a, b]] == T.mul[phi[a], phi[b]]


def test_isomorphism_search_negative():
    assert find_semigroup_isomorphism(ENDO["2"], ENDO["B2"]) is None
    S = ENDO["B2"]
    T = mutate(S, "focus", S.unit, S.unit)
    assert find_semigroup_isomorphism(S, T) is None

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omlcat.oml import (AxiomError, SizeBoundError, StructureError, big_join, big_meet, boolean_lattice,
                        chain2, check_ortholattice, check_orthomodular, distributivity_witness,
                        downset_oml, find_isomorphism, is_boolean, is_isomorphism, join_irreducibles,
                        make_lattice, mo_lattice, powerset_lattice, trivial_lattice)

CORPUS = {"0": trivial_lattice(), "2": chain2(), "B2": boolean_lattice(2), "B3": boolean_lattice(3),
          "MO2": mo_lattice(2), "MO3": mo_lattice(3)}


def brute_meet(L, a, b):
    lower = [c for c in L if L.leq(c, a) and L.leq(c, b)]
    top = [c for c in lower if all(L.leq(d, c) for d in lower)]
    assert len(top) == 1
    return top[0]


def brute_join(L, a, b):
    upper = [c for c in L if L.leq(a, c) and L.leq(b, c)]
    bot = [c for c in upper if all(L.leq(c, d) for d in upper)]
    assert len(bot) == 1
    return bot[0]


@pytest.mark.parametrize("name", CORPUS)
def test_meet_join_tables_match_order(name):
    L = CORPUS[name]
    for a, b in itertools.product(L, repeat=2):
        assert L.meet(a, b) == brute_meet(L, a, b)
        assert L.join(a, b) == brute_join(L, a, b)


@pytest.mark.parametrize("name", CORPUS)
def test_corpus_is_orthomodular(name):
    assert check_orthomodular(CORPUS[name]).ok


def test_sizes_and_names():
    assert len(mo_lattice(2)) == 6 and len(mo_lattice(3)) == 8
    assert len(boolean_lattice(3)) == 8
    L = mo_lattice(2)
    assert L.comp(L["p0"]) == L["p0'"]
    assert L.name(L.top) == "1" and L.name(L.bottom) == "0"
    assert len(trivial_lattice()) == 1 and trivial_lattice().top == trivial_lattice().bottom


def test_mo0_is_the_two_chain():
    assert find_isomorphism(mo_lattice(0), chain2()) is not None


def test_o6_fails_with_witness(o6):
    rep = check_orthomodular(o6)
    assert not rep.ok
    assert ("a", "b") in [v.witness for v in rep.violations if v.axiom == "orthomodular-1"]
    a, b = o6["a"], o6["b"]
    assert o6.leq(a, b) and o6.join(a, o6.meet(o6.comp(a), b)) == a != b
    # all three formulations fail together
    assert {"orthomodular-1", "orthomodular-2", "orthomodular-3"} <= rep.axioms_failed()


def test_o6_is_an_ortholattice(o6):
    rep, L = check_ortholattice(list(o6.names), [(o6.name(a), o6.name(b)) for a in o6 for b in o6
                                                  if o6.leq(a, b)], {o6.name(a): o6.name(o6.comp(a)) for a in o6})
    assert rep.ok and L is not None


def test_make_lattice_rejects_o6_by_default(o6):
    with pytest.raises(AxiomError):
        make_lattice(list(o6.names), [(o6.name(a), o6.name(b)) for a in o6 for b in o6 if o6.leq(a, b)],
                     {o6.name(a): o6.name(o6.comp(a)) for a in o6})


def test_structure_errors():
    with pytest.raises(StructureError):
        check_ortholattice(["0", "1", "0"], [], {})
    with pytest.raises(StructureError):
        check_ortholattice(["0", "1"], [("0", "x")], {"0": "1"})
    with pytest.raises(StructureError):
        check_ortholattice(["0", "a", "1"], [("0", "a"), ("a", "1")], {"0": "1"})


def test_non_lattice_and_bad_complement_reported():
    rep, L = check_ortholattice(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"),
                                                       ("a", "b"), ("b", "a")], {"0": "1", "a": "b"})
    assert L is None and "antisymmetry" in rep.axioms_failed()
    rep, L = check_ortholattice(["0", "a", "b", "1"], [("0", "a"), ("a", "b"), ("b", "1")],
                                {"0": "1", "a": "b"})
    assert L is None and rep.axioms_failed() == {"complement"}


def test_size_bound():
    with pytest.raises(SizeBoundError) as exc:
        mo_lattice(40)
    assert exc.value.count == 82
    with pytest.raises(SizeBoundError):
        boolean_lattice(7)


def test_distributivity():
    assert is_boolean(boolean_lattice(3)) and is_boolean(chain2())
    assert not is_boolean(mo_lattice(2))
    L = mo_lattice(2)
    x, y, z = distributivity_witness(L)
    assert L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))


def test_downsets_are_orthomodular():
    for L in CORPUS.values():
        for a in L:
            D = downset_oml(L, a)
            assert check_orthomodular(D).ok
            assert [L.name(u) for u in D.embedding] == list(D.names)
            assert len(D) == len(L.below(a))


def test_downset_of_mo2_atom_is_two():
    L = mo_lattice(2)
    assert find_isomorphism(downset_oml(L, "p0"), chain2()) is not None
    assert find_isomorphism(downset_oml(L, "1"), L) is not None


def test_join_irreducibles():
    L = mo_lattice(2)
    assert sorted(L.name(j) for j in join_irreducibles(L)) == sorted(["p0", "p0'", "p1", "p1'"])
    B = boolean_lattice(3)
    assert sorted(join_irreducibles(B)) == [1, 2, 4]


def test_isomorphism_search():
    assert find_isomorphism(powerset_lattice(["x", "y"]), boolean_lattice(2)) is not None
    assert find_isomorphism(mo_lattice(3), boolean_lattice(3)) is None
    phi = find_isomorphism(mo_lattice(2), mo_lattice(2))
    assert is_isomorphism(mo_lattice(2), mo_lattice(2), phi)
    assert find_isomorphism(chain2(), boolean_lattice(2)) is None


def test_equality_is_structural():
    assert mo_lattice(2) == mo_lattice(2) and hash(mo_lattice(2)) == hash(mo_lattice(2))
    assert mo_lattice(2) != boolean_lattice(2)


lattice_names = st.sampled_from(sorted(CORPUS))


@st.composite
def lattice_and_elements(draw, k=3):
    L = CORPUS[draw(lattice_names)]
    return L, [draw(st.integers(0, len(L) - 1)) for _ in range(k)]


@given(lattice_and_elements())
def test_ortholattice_laws(data):
    L, (a, b, c) = data
    assert L.comp(L.comp(a)) == a
    assert L.comp(L.meet(a, b)) == L.join(L.comp(a), L.comp(b))
    assert L.meet(a, L.comp(a)) == L.bottom and L.join(a, L.comp(a)) == L.top
    assert L.meet(a, L.join(a, b)) == a
    assert L.meet(L.meet(a, b), c) == L.meet(a, L.meet(b, c))


@given(lattice_and_elements())
def test_orthomodular_law(data):
    L, (a, b, _) = data
    if L.leq(a, b):
        assert b == L.join(a, L.meet(L.comp(a), b))


@given(lattice_and_elements(k=4))
@settings(max_examples=50)
def test_big_join_and_meet_are_bounds(data):
    L, xs = data
    j, m = big_join(L, xs), big_meet(L, xs)
    assert all(L.leq(x, j) and L.leq(m, x) for x in xs)
    assert big_join(L, []) == L.bottom and big_meet(L, []) == L.top

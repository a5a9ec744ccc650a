import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omlcat.oml import SizeBoundError
from omlcat.rel import (FinRel, SetMismatch, emptiness_domain, graph_functor, identity_rel, inclusion,
                        is_per, rel_arrow, rel_as_dagcategory, rel_compose, rel_dagger, rel_kernel, rel_of,
                        relational_inverse_image)


@st.composite
def relation(draw, src=None, dst=None):
    m = draw(st.integers(0, 3)) if src is None else src
    n = draw(st.integers(0, 3)) if dst is None else dst
    pairs = draw(st.sets(st.tuples(st.integers(0, max(m - 1, 0)), st.integers(0, max(n - 1, 0)))))
    if m == 0 or n == 0:
        pairs = set()
    return FinRel.from_pairs(m, n, pairs), pairs


@st.composite
def composable(draw):
    a, b, c = (draw(st.integers(0, 3)) for _ in range(3))
    return draw(relation(a, b)), draw(relation(b, c))


@given(composable())
def test_compose_matches_set_oracle(data):
    (R, rp), (S, sp) = data
    expect = {(i, k) for i, j in rp for j2, k in sp if j == j2}
    assert set(rel_compose(S, R).pairs()) == expect


@given(relation())
def test_dagger_and_kernel_match_oracle(data):
    R, rp = data
    assert set(rel_dagger(R).pairs()) == {(j, i) for i, j in rp}
    empty = [i for i in range(R.src) if not any(a == i for a, _ in rp)]
    assert emptiness_domain(R) == empty
    k = rel_kernel(R)
    assert k.src == len(empty) and set(k.pairs()) == set(enumerate(empty))
    assert rel_compose(R, k).bits == 0
    assert rel_compose(rel_dagger(k), k) == identity_rel(k.src)


@given(relation())
def test_matrix_roundtrip(data):
    R, _ = data
    assert FinRel.from_matrix(R.matrix()) == R
    assert rel_compose(R, identity_rel(R.src)) == R == rel_compose(identity_rel(R.dst), R)


def test_set_mismatch():
    with pytest.raises(SetMismatch):
        FinRel.from_pairs(1, 1, [(0, 1)])
    with pytest.raises(SetMismatch):
        rel_compose(identity_rel(2), identity_rel(1))


def test_repr():
    assert repr(FinRel(2, 1, 0)) == "rel 2 1"
    assert repr(FinRel.from_pairs(1, 2, [(0, 1)])) == "rel 1 2 ; 0 1"


def test_pers():
    # partial equivalence relations on n: sum over subsets of Bell numbers
    counts = {n: sum(is_per(FinRel(n, n, b)) for b in range(1 << (n * n))) for n in range(4)}
    assert counts == {0: 1, 1: 2, 2: 5, 3: 15}
    assert not is_per(FinRel.from_pairs(2, 2, [(0, 1)]))
    assert not is_per(FinRel(1, 2, 0))


def test_graph_functor_is_functorial():
    for g in itertools.product(range(3), repeat=2):
        for h in itertools.product(range(2), repeat=3):
            G, H = graph_functor(g, 2, 3), graph_functor(h, 3, 2)
            assert rel_compose(H, G) == graph_functor([h[x] for x in g], 2, 2)
    assert graph_functor([0, 1, 2]) == identity_rel(3)
    with pytest.raises(ValueError):
        graph_functor([0], 2, 1)


def test_inclusion_and_inverse_image():
    i = inclusion({2, 0}, 3)
    assert i.pairs() == [(0, 0), (1, 2)]
    R = FinRel.from_pairs(3, 2, [(0, 0), (1, 0), (1, 1)])
    assert relational_inverse_image(R, {0}) == {0, 2}
    assert R.image({1}) == {0, 1}


def test_category_sizes_and_bound():
    D = rel_as_dagcategory(2)
    assert D.arrow_count() == sum(2 ** (m * n) for m in range(3) for n in range(3))
    with pytest.raises(SizeBoundError):
        rel_as_dagcategory(4)
    R = FinRel.from_pairs(2, 1, [(1, 0)])
    assert rel_of(D, rel_arrow(D, R)) == R


def test_vectorised_blocks_match_scalar_composition():
    D = rel_as_dagcategory(2)
    for X, Y, Z in itertools.product(D.objects, repeat=3):
        blk = D.compose_block(X, Y, Z)
        for j, i in itertools.product(range(D.hom_size(Y, Z)), range(D.hom_size(X, Y))):
            assert blk[j, i] == rel_compose(FinRel(Y, Z, j), FinRel(X, Y, i)).bits

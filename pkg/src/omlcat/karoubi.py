"""Karoubi envelopes, materialised as finite categories.

Objects of an envelope over a base category ``D`` are pairs ``(X, s)`` with
``s`` the index of an idempotent in ``D.hom(X, X)``; arrows are stored as
base arrow indices. For a Foulis semigroup the objects are its self-adjoint
idempotents and the arrows are semigroup elements.
"""

from __future__ import annotations

import itertools

import numpy as np

from .dagkernel import Arrow, DagFunctor, FinDagCategory, ksub_poset
from .foulis import FoulisSemigroup, check_foulis, k_s_lattice
from .oml import AxiomError, SizeBoundError, StructureError, find_isomorphism

DEFAULT_OBJECT_CAP = 256


class NotIdempotent(ValueError):
    pass


def _lookup(values, size):
    pos = np.full(size, -1, dtype=np.int64)
    pos[np.asarray(values, dtype=np.int64)] = np.arange(len(values))
    return pos


class _SubTableCategory(FinDagCategory):
    """Arrows are indices into some ambient table; blocks are sliced from it.

    Subclasses provide ``_ambient_block(A, B, C)`` (rows: arrows B->C,
    columns: arrows A->B, both as ambient indices) and ``_ambient_dagger``.
    """

    def _ambient_size(self, A, C):
        raise NotImplementedError

    def _compute_block(self, A, B, C):
        fs, gs = self._homs[A, B], self._homs[B, C]
        if not fs or not gs:
            return np.zeros((len(gs), len(fs)), dtype=np.int64)
        raw = self._ambient_block(A, B, C, gs, fs)
        out = _lookup(self._homs[A, C], self._ambient_size(A, C))[raw]
        if (out < 0).any():
            j, i = np.argwhere(out < 0)[0]
            raise StructureError(f"composite of {self.arrow_name(Arrow(A, B, int(i)))} and "
                                 f"{self.arrow_name(Arrow(B, C, int(j)))} leaves the hom-set")
        return out

    def _compute_dagger(self, A, B):
        fs = self._homs[A, B]
        if not fs:
            return np.zeros(0, dtype=np.int64)
        raw = self._ambient_dagger(A, B, fs)
        out = _lookup(self._homs[B, A], self._ambient_size(B, A))[raw]
        if (out < 0).any():
            raise StructureError(f"dagger leaves the hom-set {self.object_name(B)} -> {self.object_name(A)}")
        return out


class KaroubiCategory(_SubTableCategory):
    base: FinDagCategory
    has_dagger = True

    def _ambient_size(self, A, C):
        return self.base.hom_size(A[0], C[0])

    def _ambient_block(self, A, B, C, gs, fs):
        return self.base.compose_block(A[0], B[0], C[0])[np.ix_(gs, fs)]

    def _ambient_dagger(self, A, B, fs):
        if not self.has_dagger:
            raise StructureError("the plain Karoubi envelope carries no dagger")
        return self.base.dagger_table(A[0], B[0])[fs]

    def base_arrow(self, a: Arrow) -> Arrow:
        return Arrow(a.src[0], a.dst[0], self.value(a))

    def lift(self, A, B, f: Arrow) -> Arrow:
        """The envelope arrow ``A -> B`` carried by the base arrow ``f``."""
        return self.arrow(A, B, f.idx)


def _idempotents(D: FinDagCategory, X, self_adjoint: bool):
    blk = D.compose_block(X, X, X)
    n = D.hom_size(X, X)
    idx = np.arange(n)
    ok = blk[idx, idx] == idx
    if self_adjoint:
        ok &= D.dagger_table(X, X) == idx
    return [int(i) for i in np.flatnonzero(ok)]


def _envelope_homs(D, objects):
    homs = {}
    for (X, s), (Y, t) in itertools.product(objects, repeat=2):
        n = D.hom_size(X, Y)
        if n == 0:
            homs[(X, s), (Y, t)] = []
            continue
        idx = np.arange(n)
        right = D.compose_block(X, X, Y)[:, s]        # f . s for every f
        left = D.compose_block(X, Y, Y)[t, :]         # t . f for every f
        homs[(X, s), (Y, t)] = [int(i) for i in np.flatnonzero((right == idx) & (left == idx))]
    return homs


def _make_envelope(D: FinDagCategory, *, dagger: bool, cap: int):
    objects = [(X, s) for X in D.objects for s in _idempotents(D, X, dagger)]
    if len(objects) > cap:
        raise SizeBoundError("envelope objects", len(objects), cap)
    homs = _envelope_homs(D, objects)
    names = {(X, s): f"({D.object_name(X)},{s})" for X, s in objects}
    zero = (D.zero_object, D.identity(D.zero_object).idx)

    def compose(g, f, A, B, C):
        return D.compose(Arrow(B[0], C[0], g), Arrow(A[0], B[0], f)).idx

    def dag(f, A, B):
        if not dagger:
            raise StructureError("the plain Karoubi envelope carries no dagger")
        return D.dagger(Arrow(A[0], B[0], f)).idx

    def kernel(f, A, B):
        X, s = A
        k = D.kernel(Arrow(X, B[0], f))
        sa = Arrow(X, X, s)
        s2 = D.then(k, sa, D.dagger(k))               # k-dagger . s . k
        if D.dagger(s2) != s2 or D.compose(s2, s2) != s2:
            raise AssertionError("k-dagger . s . k is not a self-adjoint idempotent")
        return (k.src, s2.idx), D.compose(sa, k).idx

    K = KaroubiCategory(objects, homs, compose, dag, lambda A: A[1], zero,
                        kernel if dagger and D._kernel is not None else None,
                        name=("K+" if dagger else "K") + f"({D.name})", object_names=names)
    K.base = D
    K.has_dagger = dagger
    return K


def karoubi_envelope(D: FinDagCategory, *, cap=DEFAULT_OBJECT_CAP) -> KaroubiCategory:
    """All idempotents as objects. No dagger or kernels are assigned."""
    return _make_envelope(D, dagger=False, cap=cap)


def dagger_karoubi(D: FinDagCategory, *, cap=DEFAULT_OBJECT_CAP) -> KaroubiCategory:
    """Self-adjoint idempotents as objects; the kernel of ``f: (X,s) -> (Y,t)``
    is ``s . k: (K, k-dagger . s . k) -> (X, s)`` with ``k = ker f`` in the base."""
    return _make_envelope(D, dagger=True, cap=cap)


def kernel_in_dagger_karoubi(K: KaroubiCategory, f: Arrow) -> Arrow:
    return K.kernel(f)


def embedding(K: KaroubiCategory) -> DagFunctor:
    """``X -> (X, id)``."""
    D = K.base
    on_objects = {X: (X, D.identity(X).idx) for X in D.objects}

    def on_arrows(f):
        return K.arrow(on_objects[f.src], on_objects[f.dst], f.idx)

    return DagFunctor(D, K, on_objects, on_arrows)


def embedding_full_and_faithful(K: KaroubiCategory) -> bool:
    F = embedding(K)
    D = K.base
    for X, Y in itertools.product(D.objects, repeat=2):
        A, B = F.on_objects[X], F.on_objects[Y]
        images = {F(f) for f in D.hom(X, Y)}
        if len(images) != D.hom_size(X, Y) or len(images) != K.hom_size(A, B):
            return False
    return True


# -- splitting ---------------------------------------------------------------

def split_idempotent(K: KaroubiCategory, f: Arrow):
    """Split an idempotent endo ``f`` on ``(X, s)`` through ``(X, f)``.

    Returns ``(e, m)`` with ``m . e = f`` and ``e . m = id``.
    """
    if f.src != f.dst or K.compose(f, f) != f:
        raise NotIdempotent(f"{K.arrow_name(f)} is not an idempotent endomorphism")
    X = f.src[0]
    mid = (X, K.value(f))
    if mid not in K.objects:
        raise NotIdempotent(f"{K.arrow_name(f)} is not self-adjoint, so ({X}, f) is not an object")
    e = K.arrow(f.src, mid, K.value(f))
    m = K.arrow(mid, f.src, K.value(f))
    if K.compose(m, e) != f or K.compose(e, m) != K.identity(mid):
        raise AssertionError("splitting equations fail")
    return e, m


def is_splitting(K: FinDagCategory, f: Arrow, e: Arrow, m: Arrow) -> bool:
    return (e.src == f.src and m.dst == f.dst and e.dst == m.src
            and K.compose(m, e) == f and K.compose(e, m) == K.identity(e.dst))


def splitting_iso(K: FinDagCategory, first, second):
    """Find ``phi`` with ``phi . e1 = e2`` and ``m2 . phi = m1``, invertible.

    Returns ``(phi, phi_inverse)`` or None.
    """
    (e1, m1), (e2, m2) = first, second
    A, B = e1.dst, e2.dst
    for phi in K.hom(A, B):
        if K.compose(phi, e1) != e2 or K.compose(m2, phi) != m1:
            continue
        for psi in K.hom(B, A):
            if K.compose(psi, phi) == K.identity(A) and K.compose(phi, psi) == K.identity(B):
                return phi, psi
    return None


def all_splittings(K: FinDagCategory, f: Arrow):
    """Every ``(e, m)`` splitting ``f``, by exhaustive search over objects."""
    out = []
    for A in K.objects:
        for e in K.hom(f.src, A):
            for m in K.hom(A, f.dst):
                if is_splitting(K, f, e, m):
                    out.append((e, m))
    return out


# -- effects ------------------------------------------------------------------

class NotAKSubMorphism(ValueError):
    pass


def effect_functor(K: KaroubiCategory):
    """``m -> (X, m . m-dagger)`` and ``f -> f . E(m)`` on kernel arrows of the base.

    Returns ``(on_objects, on_arrows)``; ``on_arrows(m, n, f)`` raises unless
    ``f . m`` factors through ``n``.
    """
    D = K.base

    def on_objects(m: Arrow):
        return (m.dst, D.compose(m, D.dagger(m)).idx)

    def on_arrows(m: Arrow, n: Arrow, f: Arrow) -> Arrow:
        if f.src != m.dst or f.dst != n.dst or not D.factors_through(D.compose(f, m), n):
            raise NotAKSubMorphism(f"{D.arrow_name(f)} does not carry {D.arrow_name(m)} into {D.arrow_name(n)}")
        A, B = on_objects(m), on_objects(n)
        return K.arrow(A, B, D.compose(f, Arrow(m.dst, m.dst, A[1])).idx)

    return on_objects, on_arrows


def kernel_arrows(D: FinDagCategory) -> list[Arrow]:
    """All chosen kernels ``ker f`` of the base, without repetition."""
    seen = {D.kernel(f) for f in D.arrows()}
    return sorted(seen, key=lambda a: (D.objects.index(a.dst), D.objects.index(a.src), a.idx))


def check_effect_functor(K: KaroubiCategory):
    """Functoriality and fullness of the effect functor, exhaustively.

    Returns ``(functorial, full)``.
    """
    D = K.base
    obj, arr = effect_functor(K)
    kers = kernel_arrows(D)
    functorial = full = True
    for m in kers:
        if arr(m, m, D.identity(m.dst)) != K.identity(obj(m)):
            functorial = False
    by_target = {}
    for m in kers:
        by_target.setdefault(m.dst, []).append(m)
    for m, n in itertools.product(kers, repeat=2):
        maps = [f for f in D.hom(m.dst, n.dst) if D.factors_through(D.compose(f, m), n)]
        images = {arr(m, n, f) for f in maps}
        if images != set(K.hom(obj(m), obj(n))):
            full = False
        for p in kers:
            for f in maps:
                for g in D.hom(n.dst, p.dst):
                    if not D.factors_through(D.compose(g, n), p):
                        continue
                    if arr(m, p, D.compose(g, f)) != K.compose(arr(n, p, g), arr(m, n, f)):
                        functorial = False
    return functorial, full


# -- K-dagger of a Foulis semigroup ------------------------------------------

class FoulisKaroubi(_SubTableCategory):
    semigroup: FoulisSemigroup

    def _ambient_size(self, A, C):
        return len(self.semigroup)

    def _ambient_block(self, A, B, C, gs, fs):
        return self.semigroup.mul[np.ix_(gs, fs)]

    def _ambient_dagger(self, A, B, fs):
        return self.semigroup.inv[fs]


def dagger_karoubi_of_foulis(S: FoulisSemigroup, *, cap=DEFAULT_OBJECT_CAP, check=True) -> FoulisKaroubi:
    """Objects: self-adjoint idempotents; ``hom(s, t) = {f | f.s = f = t.f}``;
    the kernel of ``f: s -> t`` is ``s.[f]: s.[f] -> s``."""
    if check:
        rep = check_foulis(S)
        if not rep.ok:
            raise AxiomError(rep)
    objects = S.sa_idempotents()
    if len(objects) > cap:
        raise SizeBoundError("self-adjoint idempotents", len(objects), cap)
    mul = S.mul
    idx = np.arange(len(S))
    homs = {(s, t): [int(f) for f in np.flatnonzero((mul[:, s] == idx) & (mul[t, :] == idx))]
            for s in objects for t in objects}

    def kernel(f, s, t):
        k = S.m(s, S.foc(f))
        return k, k

    K = FoulisKaroubi(objects, homs, lambda g, f, *_: int(mul[g, f]), lambda f, *_: int(S.inv[f]),
                      lambda s: s, S.zero, kernel, name=f"K+({len(S)}-element semigroup)",
                      object_names={s: S.names[s] for s in objects})
    K.semigroup = S
    return K


def ks_ksub_iso(S: FoulisSemigroup, K: FoulisKaroubi, s) -> dict:
    """Order isomorphism ``K_s -> KSub(s)``, ``k -> (k: k -> s)``.

    Also checks the inverse direction ``ker(f) = s.[f.s]`` lands back in K_s.
    Returns a dict from K_s lattice indices to KSub class indices.
    """
    s = S[s]
    L = k_s_lattice(S, s)
    P = ksub_poset(K, s)
    iso = {}
    for i, k in enumerate(L.embedding):
        iso[i] = P.class_of(K.arrow(k, s, k))
    if sorted(iso.values()) != list(range(len(P))):
        raise AssertionError("k -> (k: k -> s) is not a bijection onto KSub(s)")
    for a, b in itertools.product(range(len(L)), repeat=2):
        if L.leq(a, b) != P.leq(iso[a], iso[b]):
            raise AssertionError("K_s -> KSub(s) does not preserve and reflect order")
    pos = {k: i for i, k in enumerate(L.embedding)}
    for t in K.objects:
        for f in K.hom(s, t):
            k = S.m(s, S.foc(S.m(K.value(f), s)))
            if k not in pos or iso[pos[k]] != P.class_of(K.kernel(f)):
                raise AssertionError("ker(f) is not s.[f.s]")
    return iso


def check_ks_ksub(S: FoulisSemigroup, K: FoulisKaroubi, s) -> bool:
    try:
        ks_ksub_iso(S, K, s)
    except AssertionError:
        return False
    return True


def oml_of_unit(K: FoulisKaroubi):
    """KSub(1) in K-dagger(S), as a lattice."""
    return ksub_poset(K, K.semigroup.unit).lattice


def ksub_unit_matches(S: FoulisSemigroup, K: FoulisKaroubi, X) -> bool:
    return find_isomorphism(oml_of_unit(K), X) is not None

"""The category of finite orthomodular lattices and antitone Galois connections.

A morphism ``f: X -> Y`` is stored by its lower leg ``f.lower`` (an antitone
map X -> Y sending joins to meets); the other leg ``f.upper`` is derived
from it. Composition is ``(g . f).lower = g.lower . ' . f.lower``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .oml import (
    AxiomError,
    FiniteOML,
    Report,
    SizeBoundError,
    _from_arrays,
    big_join,
    big_meet,
    chain2,
    downset_oml,
    find_isomorphism,
    is_boolean,
    join_irreducibles,
    powerset_lattice,
)

DEFAULT_HOM_CAP = 20_000

TWO = chain2()


class ObjectMismatch(ValueError):
    pass


class GaloisMorphism:
    """An antitone Galois connection ``src -> dst``.

    ``lower`` is the table of the leg ``src -> dst``; ``upper`` is derived as
    ``upper(y) = join{x | y <= lower(x)}`` and the adjunction
    ``x <= upper(y) iff y <= lower(x)`` is checked unless ``check=False``.
    """

    __slots__ = ("src", "dst", "lower", "upper", "_hash")

    def __init__(self, src: FiniteOML, dst: FiniteOML, lower, *, upper=None, check=True):
        lower = np.asarray(lower, dtype=np.int64)
        if lower.shape != (len(src),):
            raise ValueError(f"lower table must have {len(src)} entries")
        if lower.size and (lower.min() < 0 or lower.max() >= len(dst)):
            raise ValueError("lower table leaves the target carrier")
        if upper is None:
            upper = _derive_upper(src, dst, lower)
        else:
            upper = np.asarray(upper, dtype=np.int64)
        self.src, self.dst = src, dst
        self.lower, self.upper = lower, upper
        lower.flags.writeable = False
        upper.flags.writeable = False
        self._hash = None
        if check:
            bad = adjunction_witness(src, dst, lower, upper)
            if bad is not None:
                x, y = bad
                report = Report("galois")
                report.add("adjunction", (src.name(x), dst.name(y)),
                           "x <= f^*(y) and y <= f_*(x) disagree")
                raise AxiomError(report)

    def __call__(self, x):
        return int(self.lower[self.src[x]])

    def pull(self, y):
        return int(self.upper[self.dst[y]])

    def key(self):
        return (self.src, self.dst, self.lower.tobytes())

    def __eq__(self, other):
        if not isinstance(other, GaloisMorphism):
            return NotImplemented
        return (self.lower.shape == other.lower.shape and self.src == other.src
                and self.dst == other.dst and bool((self.lower == other.lower).all()))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __matmul__(self, other):
        return compose(self, other)

    def __repr__(self):
        pairs = " ".join(f"{self.src.name(x)}:{self.dst.name(int(y))}" for x, y in enumerate(self.lower))
        return f"GaloisMorphism({len(self.src)} -> {len(self.dst)}; {pairs})"


def _derive_upper(src, dst, lower):
    upper = np.empty(len(dst), dtype=np.int64)
    above = dst.le[:, lower]  # above[y, x] = y <= lower(x)
    for y in range(len(dst)):
        upper[y] = big_join(src, np.flatnonzero(above[y]))
    return upper


def adjunction_witness(src, dst, lower, upper):
    """First pair (x, y) where the Galois law fails, or None."""
    lhs = src.le[:, upper]          # x <= upper(y)
    rhs = dst.le[:, lower].T        # y <= lower(x)
    bad = np.argwhere(lhs != rhs)
    return tuple(int(v) for v in bad[0]) if len(bad) else None


def make_morphism(src, dst, lower) -> GaloisMorphism:
    """Validated morphism from a lower table (list of indices or names, or dict)."""
    if isinstance(lower, dict):
        table = [None] * len(src)
        for x, y in lower.items():
            table[src[x]] = dst[y]
        if any(v is None for v in table):
            raise ValueError("lower table is not total")
        lower = table
    else:
        lower = [dst[y] for y in lower]
    return GaloisMorphism(src, dst, lower)


# -- category structure ---------------------------------------------------

def identity(X: FiniteOML) -> GaloisMorphism:
    return GaloisMorphism(X, X, X.oc.copy(), upper=X.oc.copy(), check=False)


def zero_morphism(X: FiniteOML, Y: FiniteOML) -> GaloisMorphism:
    return GaloisMorphism(X, Y, np.full(len(X), Y.top), upper=np.full(len(Y), X.top), check=False)


def compose(g: GaloisMorphism, f: GaloisMorphism) -> GaloisMorphism:
    """``g . f`` for ``f: X -> Y``, ``g: Y -> Z``."""
    if f.dst != g.src:
        raise ObjectMismatch("codomain of f differs from domain of g")
    Y = f.dst
    lower = g.lower[Y.oc[f.lower]]
    upper = f.upper[Y.oc[g.upper]]
    return GaloisMorphism(f.src, g.dst, lower, upper=upper, check=False)


def dagger(f: GaloisMorphism) -> GaloisMorphism:
    return GaloisMorphism(f.dst, f.src, f.upper, upper=f.lower, check=False)


def is_zero(f: GaloisMorphism) -> bool:
    return bool((f.lower == f.dst.top).all())


def is_dagger_mono(f: GaloisMorphism) -> bool:
    X, Y = f.src, f.dst
    return bool((f.upper[Y.oc[f.lower]] == X.oc).all())


def is_zero_epi(f: GaloisMorphism) -> bool:
    return int(f.lower[f.src.top]) == f.dst.bottom


def is_zero_mono(f: GaloisMorphism) -> bool:
    """Trivial kernel, i.e. ``f^*(1) = 0``."""
    return int(f.upper[f.dst.top]) == f.src.bottom


# -- kernels and images ---------------------------------------------------

class KernelSubobject:
    """The kernel ``down(a) -> X`` with ``a_*(u) = u'`` and ``a^*(x) = a & x'``."""

    def __init__(self, ambient: FiniteOML, rep):
        self.ambient = ambient
        self.rep = ambient[rep]
        self._embedding = None

    @property
    def domain(self) -> FiniteOML:
        return self.embedding.src

    @property
    def embedding(self) -> GaloisMorphism:
        if self._embedding is None:
            X, a = self.ambient, self.rep
            D = downset_oml(X, a)
            members = np.asarray(D.embedding)
            pos = {int(u): i for i, u in enumerate(members)}
            lower = X.oc[members]
            upper = np.array([pos[X.meet(a, X.comp(x))] for x in X], dtype=np.int64)
            self._embedding = GaloisMorphism(D, X, lower, upper=upper, check=False)
        return self._embedding

    def __eq__(self, other):
        if not isinstance(other, KernelSubobject):
            return NotImplemented
        return self.ambient == other.ambient and self.rep == other.rep

    def __hash__(self):
        return hash((self.ambient, self.rep))

    def __le__(self, other):
        return self.ambient.leq(self.rep, other.rep)

    def __repr__(self):
        return f"KernelSubobject(down {self.ambient.name(self.rep)})"


def kernel(f: GaloisMorphism) -> KernelSubobject:
    return KernelSubobject(f.src, int(f.upper[f.dst.top]))


def _into_downset(D: FiniteOML, values):
    pos = {int(u): i for i, u in enumerate(D.embedding)}
    return np.array([pos[int(v)] for v in values], dtype=np.int64)


def cokernel(f: GaloisMorphism) -> GaloisMorphism:
    """``Y -> down(f_*(1))`` with ``c_*(y) = y' & f_*(1)``."""
    Y = f.dst
    c = int(f.lower[f.src.top])
    D = downset_oml(Y, c)
    lower = _into_downset(D, [Y.meet(Y.comp(y), c) for y in Y])
    upper = Y.oc[np.asarray(D.embedding)]
    return GaloisMorphism(Y, D, lower, upper=upper)


class Factorization(NamedTuple):
    e: GaloisMorphism   # zero-epi X -> Im(f)
    m: GaloisMorphism   # down(f^*(1)') -> Im(f), zero-epi and zero-mono
    i: GaloisMorphism   # kernel Im(f) -> Y
    co: GaloisMorphism  # (i_{f-dagger})-dagger: X -> down(f^*(1)')


def image(f: GaloisMorphism) -> KernelSubobject:
    return KernelSubobject(f.dst, f.dst.comp(int(f.lower[f.src.top])))


def factorize(f: GaloisMorphism, *, check=True) -> Factorization:
    """Zero-epi/kernel factorisation ``f = i . e`` and ``e = m . co``."""
    X, Y = f.src, f.dst
    im = image(f)
    i = im.embedding
    top_img = int(f.lower[X.top])
    c = Y.comp(top_img)
    e_lower = _into_downset(im.domain, [Y.meet(int(v), c) for v in f.lower])
    e = GaloisMorphism(X, im.domain, e_lower)
    coim = image(dagger(f))
    co = dagger(coim.embedding)
    src_members = coim.domain.embedding
    m_lower = _into_downset(im.domain, [Y.meet(int(f.lower[x]), c) for x in src_members])
    m = GaloisMorphism(coim.domain, im.domain, m_lower)
    fac = Factorization(e, m, i, co)
    if check:
        if compose(i, e) != f:
            raise AssertionError("i_f . e_f != f")
        if compose(m, co) != e:
            raise AssertionError("m_f . co != e_f")
    return fac


def inverse_image(f: GaloisMorphism, n: KernelSubobject) -> KernelSubobject:
    if n.ambient != f.dst:
        raise ObjectMismatch("subobject does not live in the codomain")
    return KernelSubobject(f.src, int(f.upper[f.dst.comp(n.rep)]))


def direct_image(f: GaloisMorphism, m: KernelSubobject) -> KernelSubobject:
    if m.ambient != f.src:
        raise ObjectMismatch("subobject does not live in the domain")
    return KernelSubobject(f.dst, f.dst.comp(int(f.lower[m.rep])))


def effect_of_kernel(m: KernelSubobject) -> GaloisMorphism:
    k = m.embedding
    return compose(k, dagger(k))


def subobject_complement(m: KernelSubobject) -> KernelSubobject:
    """``m' = ker(m-dagger)``."""
    return kernel(dagger(m.embedding))


# -- logical connectives ----------------------------------------------------

def sasaki_hook(X: FiniteOML, a, b) -> int:
    a, b = X[a], X[b]
    return X.join(X.comp(a), X.meet(a, b))


def and_then(X: FiniteOML, a, b) -> int:
    a, b = X[a], X[b]
    return X.meet(b, X.join(X.comp(b), a))


def sasaki_hook_via_effect(X: FiniteOML, a, b) -> int:
    ea = effect_of_kernel(KernelSubobject(X, a))
    return inverse_image(ea, KernelSubobject(X, b)).rep


def and_then_via_effect(X: FiniteOML, a, b) -> int:
    eb = effect_of_kernel(KernelSubobject(X, b))
    return direct_image(eb, KernelSubobject(X, a)).rep


def wp(f: GaloisMorphism, y) -> int:
    """Weakest precondition ``[f](y) = f^*(y')``."""
    Y = f.dst
    return int(f.upper[Y.comp(Y[y])])


def test_of(X: FiniteOML, a) -> GaloisMorphism:
    """The test ``a?`` = effect of ``down(a) -> X``."""
    return effect_of_kernel(KernelSubobject(X, a))


# -- the opclassifier 2 ---------------------------------------------------

def classify_element(X: FiniteOML, a) -> GaloisMorphism:
    a = X[a]
    return GaloisMorphism(TWO, X, [X.top, X.comp(a)])


def classify(X: FiniteOML) -> list[GaloisMorphism]:
    """``classify(X)[a]`` is the morphism ``2 -> X`` characterising ``a``."""
    return [classify_element(X, a) for a in X]


def unclassify(X: FiniteOML, g: GaloisMorphism) -> int:
    if g.src != TWO or g.dst != X:
        raise ObjectMismatch("expected a morphism 2 -> X")
    return X.comp(int(g.lower[TWO.top]))


# -- biproducts ------------------------------------------------------------

def biproduct(X1: FiniteOML, X2: FiniteOML) -> FiniteOML:
    """Cartesian product with componentwise order and complement."""
    n1, n2 = len(X1), len(X2)
    names = [f"({X1.name(a)},{X2.name(b)})" for a in X1 for b in X2]
    le = np.einsum("ac,bd->abcd", X1.le, X2.le).reshape(n1 * n2, n1 * n2)
    oc = (X1.oc[:, None] * n2 + X2.oc[None, :]).reshape(-1)
    P = _from_arrays(names, le, oc)
    P.factors = (X1, X2)
    return P


def _pair(P, a, b):
    return a * len(P.factors[1]) + b


def coprojection(P: FiniteOML, i: int) -> GaloisMorphism:
    """``kappa_1(x) = (x', 1)`` and ``kappa_2(y) = (1, y')`` (lower legs)."""
    X1, X2 = P.factors
    if i == 1:
        lower = [_pair(P, X1.comp(x), X2.top) for x in X1]
        return GaloisMorphism(X1, P, lower)
    if i == 2:
        lower = [_pair(P, X1.top, X2.comp(y)) for y in X2]
        return GaloisMorphism(X2, P, lower)
    raise ValueError("index must be 1 or 2")


def projection(P: FiniteOML, i: int) -> GaloisMorphism:
    return dagger(coprojection(P, i))


def cotuple(P: FiniteOML, f1: GaloisMorphism, f2: GaloisMorphism) -> GaloisMorphism:
    X1, X2 = P.factors
    if f1.src != X1 or f2.src != X2:
        raise ObjectMismatch("cotuple legs do not match the biproduct factors")
    if f1.dst != f2.dst:
        raise ObjectMismatch("cotuple legs need a common codomain")
    Y = f1.dst
    lower = [Y.meet(int(f1.lower[a]), int(f2.lower[b])) for a in X1 for b in X2]
    return GaloisMorphism(P, Y, lower)


# -- hom-set enumeration -----------------------------------------------------

@dataclass
class HomSet:
    src: FiniteOML
    dst: FiniteOML
    morphisms: list
    exhaustive: bool
    total: int
    seed: int | None = None

    def __len__(self):
        return len(self.morphisms)

    def __iter__(self):
        return iter(self.morphisms)


def _iter_lower_tables(X: FiniteOML, Y: FiniteOML):
    """Yield every lower table X -> Y that sends joins to meets.

    Such a map is fixed by its values on the join-irreducibles of X; values
    are chosen one join-irreducible at a time and pruned with the constraint
    ``j <= a v b  =>  g(a) & g(b) <= g(j)``.
    """
    jis = sorted(join_irreducibles(X), key=lambda j: (int(X.le[:, j].sum()), j))
    ji_pos = {j: k for k, j in enumerate(jis)}
    below_of = [[ji_pos[int(j)] for j in np.flatnonzero(X.le[:, x]) if int(j) in ji_pos] for x in X]
    Ym, Yle = Y.meet_table, Y.le
    # triples (p, q, r) with jis[r] <= jis[p] v jis[q], grouped by max index
    checks = [[] for _ in jis]
    for p, q, r in itertools.product(range(len(jis)), repeat=3):
        if p <= q and X.le[jis[r], X.join(jis[p], jis[q])]:
            checks[max(p, q, r)].append((p, q, r))
    vals = [0] * len(jis)

    def ok(k):
        return all(Yle[Ym[vals[p], vals[q]], vals[r]] for p, q, r in checks[k])

    def rec(k):
        if k == len(jis):
            table = np.empty(len(X), dtype=np.int64)
            for x in X:
                acc = Y.top
                for k2 in below_of[x]:
                    acc = Ym[acc, vals[k2]]
                table[x] = acc
            yield table
            return
        for y in Y:
            vals[k] = y
            if ok(k):
                yield from rec(k + 1)

    yield from rec(0)


def iter_homs(X: FiniteOML, Y: FiniteOML):
    for table in _iter_lower_tables(X, Y):
        upper = _derive_upper(X, Y, table)
        if adjunction_witness(X, Y, table, upper) is None:
            yield GaloisMorphism(X, Y, table, upper=upper, check=False)


def hom_set(X: FiniteOML, Y: FiniteOML, *, cap=DEFAULT_HOM_CAP, seed=0) -> HomSet:
    """All morphisms X -> Y, or a seeded uniform sample of ``cap`` of them."""
    rng = random.Random(seed)
    out = []
    total = 0
    for f in iter_homs(X, Y):
        total += 1
        if cap is None or len(out) < cap:
            out.append(f)
        else:
            j = rng.randrange(total)
            if j < cap:
                out[j] = f
    exhaustive = cap is None or total <= cap
    return HomSet(X, Y, out, exhaustive, total, None if exhaustive else seed)


def hom_list(X, Y, *, cap=DEFAULT_HOM_CAP) -> list[GaloisMorphism]:
    """All morphisms X -> Y; refuses rather than samples past ``cap``."""
    hs = hom_set(X, Y, cap=cap)
    if not hs.exhaustive:
        raise SizeBoundError(f"hom({len(X)}, {len(Y)})", hs.total, cap)
    return hs.morphisms


# -- kernel subobjects as a lattice ----------------------------------------

def factors_through(m: GaloisMorphism, n: GaloisMorphism) -> bool:
    """Does the dagger mono ``m`` factor as ``n . phi``? (uses ``n`` dagger mono)"""
    return compose(n, compose(dagger(n), m)) == m


def factors_through_search(m: GaloisMorphism, n: GaloisMorphism) -> bool:
    """Brute-force version of :func:`factors_through` over the whole hom-set."""
    return any(compose(n, phi) == m for phi in iter_homs(m.src, n.src))


@dataclass
class KSubIso:
    lattice: FiniteOML
    ksub: FiniteOML
    phi: tuple            # phi[a] = index of the class of down(a) in ksub
    classes: list         # representative kernel embedding per class
    report: Report


def ksub_iso(X: FiniteOML, targets=None, *, cap=DEFAULT_HOM_CAP) -> KSubIso:
    """Build KSub(X) from kernels of morphisms out of X and compare with X.

    ``targets`` are the codomains whose hom-sets are scanned (default: X and
    2). Kernels are identified up to mutual factoring; the order is factoring.
    """
    if targets is None:
        targets = [X, TWO]
    report = Report(f"KSub iso for {len(X)}-element lattice")
    kernels = []
    seen_reps = set()
    for Y in targets:
        for f in hom_set(X, Y, cap=cap):
            k = kernel(f)
            if k.rep not in seen_reps:
                seen_reps.add(k.rep)
                kernels.append(k.embedding)
    # classes up to mutual factoring
    classes = []
    for k in kernels:
        if not any(factors_through(k, c) and factors_through(c, k) for c in classes):
            classes.append(k)
    n = len(classes)
    le = np.array([[factors_through(classes[i], classes[j]) for j in range(n)] for i in range(n)])

    def class_of(k):
        for idx, c in enumerate(classes):
            if factors_through(k, c) and factors_through(c, k):
                return idx
        return -1

    oc = [class_of(kernel(dagger(c)).embedding) for c in classes]
    names = [f"down({X.name(kernel_rep(c))})" for c in classes]
    ks = _from_arrays(names, le, oc)
    phi = tuple(class_of(KernelSubobject(X, a).embedding) for a in X)
    if sorted(phi) != list(range(n)) or len(phi) != n:
        report.add("bijection", (len(X), n), "a -> down(a) is not a bijection onto KSub")
        return KSubIso(X, ks, phi, classes, report)
    for a, b in itertools.product(X, repeat=2):
        if X.leq(a, b) != ks.leq(phi[a], phi[b]):
            report.add("order", (X.name(a), X.name(b)), "order not preserved and reflected")
        if phi[X.meet(a, b)] != ks.meet(phi[a], phi[b]):
            report.add("meet", (X.name(a), X.name(b)), "meet not preserved")
    for a in X:
        if phi[X.comp(a)] != ks.comp(phi[a]):
            report.add("complement", (X.name(a),), "orthocomplement not preserved")
    if phi[X.top] != ks.top:
        report.add("top", (X.name(X.top),), "top not preserved")
    return KSubIso(X, ks, phi, classes, report)


def kernel_rep(k: GaloisMorphism) -> int:
    """Element ``a`` of the codomain with ``k`` equivalent to ``down(a) -> X``."""
    return k.dst.comp(int(k.lower[k.src.top]))


# -- Boolean algebras and free lattices ------------------------------------

def free_oml(A) -> FiniteOML:
    """The powerset of ``A``; element index is the bitmask of the subset."""
    return powerset_lattice([str(a) for a in A])


def transpose_down(f: GaloisMorphism, A) -> dict:
    """``P(A) -> X`` to the function ``a -> f_*({a})'``."""
    X = f.dst
    return {a: X.comp(int(f.lower[1 << i])) for i, a in enumerate(A)}


def transpose_up(A, X: FiniteOML, g: dict) -> GaloisMorphism:
    """Function ``A -> X`` to the morphism with ``U -> meet_{a in U} g(a)'``."""
    A = list(A)
    P = free_oml(A)
    lower = []
    for U in range(len(P)):
        members = [X.comp(X[g[a]]) for i, a in enumerate(A) if U >> i & 1]
        lower.append(big_meet(X, members))
    return GaloisMorphism(P, X, lower)


def forgetful(f: GaloisMorphism):
    """Underlying function of a morphism: ``x -> f_*(x')``."""
    X = f.src
    return {x: int(f.lower[X.comp(x)]) for x in X}


def free_on_function(A, B, g: dict) -> GaloisMorphism:
    """Action of the left adjoint on ``g: A -> B``: ``U -> not g[U]``."""
    A, B = list(A), list(B)
    PA, PB = free_oml(A), free_oml(B)
    bpos = {b: i for i, b in enumerate(B)}
    full = len(PB) - 1
    lower = []
    for U in range(len(PA)):
        img = 0
        for i, a in enumerate(A):
            if U >> i & 1:
                img |= 1 << bpos[g[a]]
        lower.append(full ^ img)
    return GaloisMorphism(PA, PB, lower)


def is_boolean_kernel_closed(X: FiniteOML) -> bool:
    """Every principal downset of a Boolean X is Boolean."""
    return all(is_boolean(downset_oml(X, a)) for a in X)


def isomorphic(A: FiniteOML, B: FiniteOML) -> bool:
    return find_isomorphism(A, B) is not None

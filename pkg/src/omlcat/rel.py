"""Finite sets and relations.

Sets are the ordinals ``0..n-1``. A relation ``R: m -> n`` is stored as a
bitmask with bit ``i*n + j`` set when ``R(i, j)``; within
:func:`rel_as_dagcategory` that bitmask is also the arrow's index in its
hom-set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dagkernel import FinDagCategory
from .oml import SizeBoundError


class SetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FinRel:
    src: int
    dst: int
    bits: int

    @classmethod
    def from_pairs(cls, src, dst, pairs):
        bits = 0
        for i, j in pairs:
            if not (0 <= i < src and 0 <= j < dst):
                raise SetMismatch(f"pair ({i}, {j}) outside {src} x {dst}")
            bits |= 1 << (i * dst + j)
        return cls(src, dst, bits)

    @classmethod
    def from_matrix(cls, matrix):
        m = np.asarray(matrix, dtype=bool)
        return cls.from_pairs(m.shape[0], m.shape[1], zip(*np.nonzero(m)))

    def __contains__(self, pair):
        i, j = pair
        return bool(self.bits >> (i * self.dst + j) & 1)

    def pairs(self):
        return [(i, j) for i in range(self.src) for j in range(self.dst) if (i, j) in self]

    def matrix(self) -> np.ndarray:
        return _unpack(np.array([self.bits]), self.src, self.dst)[0]

    def image(self, U) -> set:
        return {j for i, j in self.pairs() if i in U}

    def __repr__(self):
        return " ; ".join([f"rel {self.src} {self.dst}"] + [f"{i} {j}" for i, j in self.pairs()])


def _unpack(codes, m, n):
    """Bitmasks -> boolean matrices of shape (len(codes), m, n)."""
    shifts = np.arange(m * n, dtype=np.int64)
    return ((codes[:, None] >> shifts[None, :]) & 1).astype(bool).reshape(len(codes), m, n)


def _pack(mats):
    k, m, n = mats.shape
    weights = (np.int64(1) << np.arange(m * n, dtype=np.int64))
    return mats.reshape(k, m * n).astype(np.int64) @ weights


def rel_compose(S: FinRel, R: FinRel) -> FinRel:
    """``S . R`` (first R, then S)."""
    if R.dst != S.src:
        raise SetMismatch("middle sets differ")
    prod = R.matrix().astype(int) @ S.matrix().astype(int)
    return FinRel.from_matrix(prod > 0)


def rel_dagger(R: FinRel) -> FinRel:
    return FinRel.from_matrix(R.matrix().T)


def identity_rel(n: int) -> FinRel:
    return FinRel.from_pairs(n, n, [(i, i) for i in range(n)])


def inclusion(subset, n: int) -> FinRel:
    """Inclusion of a subset (listed in increasing order) as a relation ``|U| -> n``."""
    members = sorted(subset)
    return FinRel.from_pairs(len(members), n, list(enumerate(members)))


def emptiness_domain(R: FinRel) -> list[int]:
    return [i for i in range(R.src) if not any((i, j) in R for j in range(R.dst))]


def rel_kernel(R: FinRel) -> FinRel:
    """Inclusion of ``{x | no y with R(x, y)}`` into the source."""
    return inclusion(emptiness_domain(R), R.src)


def is_per(S: FinRel) -> bool:
    if S.src != S.dst:
        return False
    return rel_dagger(S) == S and rel_compose(S, S) == S


def graph_functor(g, src: int | None = None, dst: int | None = None) -> FinRel:
    """Graph ``{(a, g(a))}`` of a function given as a sequence."""
    g = list(g)
    src = len(g) if src is None else src
    dst = (max(g) + 1 if g else 0) if dst is None else dst
    if len(g) != src:
        raise ValueError("function is not total on its domain")
    return FinRel.from_pairs(src, dst, list(enumerate(g)))


def relational_inverse_image(R: FinRel, V) -> set:
    """``R^{-1}(V) = {x | R(x, -) is contained in V}``."""
    return {i for i in range(R.src) if all(j in V for j in range(R.dst) if (i, j) in R)}


class RelCategory(FinDagCategory):
    """Rel on the ordinals ``0..max_size``, with vectorised composition."""

    def _compute_block(self, X, Y, Z):
        fs = _unpack(np.arange(1 << (X * Y), dtype=np.int64), X, Y).astype(np.int64)
        gs = _unpack(np.arange(1 << (Y * Z), dtype=np.int64), Y, Z).astype(np.int64)
        prod = np.einsum("fxy,gyz->gfxz", fs, gs) > 0
        nG, nF = prod.shape[:2]
        return _pack(prod.reshape(nG * nF, X, Z)).reshape(nG, nF)

    def _compute_dagger(self, X, Y):
        mats = _unpack(np.arange(1 << (X * Y), dtype=np.int64), X, Y)
        return _pack(mats.transpose(0, 2, 1).copy())


def rel_as_dagcategory(max_size: int = 2, *, exhaustive_bound=3) -> RelCategory:
    """Skeletal Rel on sets of size ``0..max_size``; hom(m, n) has 2^(mn) arrows."""
    if max_size > exhaustive_bound:
        raise SizeBoundError("rel_as_dagcategory", max_size, exhaustive_bound)
    objects = list(range(max_size + 1))
    homs = {(m, n): list(range(1 << (m * n))) for m in objects for n in objects}

    def compose(g, f, X, Y, Z):
        return rel_compose(FinRel(Y, Z, g), FinRel(X, Y, f)).bits

    def dagger(f, X, Y):
        return rel_dagger(FinRel(X, Y, f)).bits

    def kernel(f, X, Y):
        k = rel_kernel(FinRel(X, Y, f))
        return k.src, k.bits

    D = RelCategory(objects, homs, compose, dagger, lambda X: identity_rel(X).bits, 0, kernel,
                    name=f"Rel<={max_size}")
    return D


def rel_arrow(D: FinDagCategory, R: FinRel):
    return D.arrow(R.src, R.dst, R.bits)


def rel_of(D: FinDagCategory, a) -> FinRel:
    return FinRel(a.src, a.dst, D.value(a))

"""Foulis semigroups: involutive monoids with a focus map ``[-]``.

A :class:`FoulisSemigroup` is a set of Cayley-style tables over element
indices ``0..n-1``. For standalone semigroups the focus table is input data;
for ``Endo(X)`` it is computed from kernels.
"""

from __future__ import annotations

import itertools

import numpy as np

from . import galois as gal
from .oml import AxiomError, FiniteOML, Report, SizeBoundError, make_lattice


class FoulisSemigroup:
    def __init__(self, names, mul, unit, inv, focus):
        self.names = tuple(names)
        self.mul = np.asarray(mul, dtype=np.int64)
        self.unit = int(unit)
        self.inv = np.asarray(inv, dtype=np.int64)
        self.focus = np.asarray(focus, dtype=np.int64)
        n = len(self.names)
        if self.mul.shape != (n, n) or self.inv.shape != (n,) or self.focus.shape != (n,):
            raise ValueError("tables do not match the carrier size")
        for arr in (self.mul, self.inv, self.focus):
            if arr.size and (arr.min() < 0 or arr.max() >= n):
                raise ValueError("table entry outside the carrier")
            arr.flags.writeable = False
        self._index = {nm: i for i, nm in enumerate(self.names)}

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    def __getitem__(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            return int(name)
        return self._index[name]

    @property
    def zero(self) -> int:
        return int(self.focus[self.unit])

    def m(self, *factors) -> int:
        """Product of the factors, left to right."""
        acc = self.unit
        for f in factors:
            acc = int(self.mul[acc, f])
        return acc

    def dag(self, s) -> int:
        return int(self.inv[s])

    def foc(self, s) -> int:
        return int(self.focus[s])

    def is_sa_idempotent(self, s) -> bool:
        return self.inv[s] == s and self.mul[s, s] == s

    def sa_idempotents(self) -> list[int]:
        return [s for s in self if self.is_sa_idempotent(s)]

    def __repr__(self):
        return f"FoulisSemigroup({len(self)} elements)"


def _check_monoid(S: FoulisSemigroup, report: Report) -> bool:
    mul, n, u = S.mul, len(S), S.unit
    for a in range(n):
        left = mul[mul[a][:, None], np.arange(n)[None, :]]     # (a.b).c
        right = mul[a][mul]                                    # a.(b.c)
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = bad[0]
            report.add("monoid", (S.names[a], S.names[b], S.names[c]))
            return False
    for s in S:
        if mul[u, s] != s or mul[s, u] != s:
            report.add("monoid", (S.names[s],))
            return False
    return True


def _check_common(S: FoulisSemigroup, report: Report) -> bool:
    """Monoid laws and Foulis axioms (1)-(3)."""
    if not _check_monoid(S, report):
        return False
    nm, mul, inv, foc = S.names, S.mul, S.inv, S.focus
    start = len(report.violations)
    if inv[S.unit] != S.unit:
        report.add("axiom-1", (nm[S.unit],), "unit is not self-adjoint")
    for s in S:
        if inv[inv[s]] != s:
            report.add("axiom-1", (nm[s],), "s** != s")
    # entry (s, t) compares (s.t)* with t*.s*
    bad = np.argwhere(inv[mul] != mul[inv[None, :], inv[:, None]])
    for s, t in bad[:1]:
        report.add("axiom-1", (nm[s], nm[t]), "(s.t)* != t*.s*")
    for s in S:
        f = foc[s]
        if mul[f, f] != f or inv[f] != f:
            report.add("axiom-2", (nm[s],), "[s] is not a self-adjoint idempotent")
    z = S.zero
    for s in S:
        if mul[z, s] != z or mul[s, z] != z:
            report.add("axiom-3", (nm[s],), "0 = [1] is not absorbing")
    return len(report.violations) == start


def check_foulis(S: FoulisSemigroup) -> Report:
    """Axioms (1)-(4), with (4): ``s.x = 0 iff x = [s].y for some y``."""
    report = Report("foulis")
    if not _check_common(S, report):
        return report
    mul, z = S.mul, S.zero
    for s in S:
        annihilated = mul[s] == z
        reachable = np.zeros(len(S), dtype=bool)
        reachable[mul[S.focus[s]]] = True
        bad = np.flatnonzero(annihilated != reachable)
        if len(bad):
            x = int(bad[0])
            report.add("axiom-4", (S.names[s], S.names[x]),
                       "s.x = 0 but x not in [s].S" if annihilated[x] else "x in [s].S but s.x != 0")
    return report


def check_foulis_alt(S: FoulisSemigroup) -> Report:
    """Axioms (1)-(3) plus (4'): ``[0] = 1``, ``s.[s] = 0``, ``t = [[t*.s*].s].t``."""
    report = Report("foulis (alternative axioms)")
    if not _check_common(S, report):
        return report
    mul, inv, foc, z, nm = S.mul, S.inv, S.focus, S.zero, S.names
    if foc[z] != S.unit:
        report.add("axiom-4'", (nm[z],), "[0] != 1")
    for s in S:
        if mul[s, foc[s]] != z:
            report.add("axiom-4'", (nm[s],), "s.[s] != 0")
    # t = [[t*.s*].s].t for all s, t
    ts = np.arange(len(S))
    for s in S:
        inner = foc[mul[inv[ts], inv[s]]]          # [t*.s*] per t
        outer = foc[mul[inner, s]]                 # [[t*.s*].s]
        bad = np.flatnonzero(mul[outer, ts] != ts)
        if len(bad):
            report.add("axiom-4'", (nm[s], nm[int(bad[0])]), "t != [[t*.s*].s].t")
    return report


# -- Endo(X) for an orthomodular lattice -------------------------------------

def focus_of_endo(s: gal.GaloisMorphism) -> gal.GaloisMorphism:
    """``[s]`` with lower leg ``x -> s^*(1)' v (s^*(1) & x')``.

    Checked against the categorical ``ker(s) . ker(s)-dagger``.
    """
    X = s.src
    k = int(s.upper[X.top])
    lower = [X.join(X.comp(k), X.meet(k, X.comp(x))) for x in X]
    f = gal.GaloisMorphism(X, X, lower)
    if f != gal.effect_of_kernel(gal.kernel(s)):
        raise AssertionError("closed form of the focus disagrees with ker(s) . ker(s)*")
    return f


def endo_semigroup(X: FiniteOML, *, cap=gal.DEFAULT_HOM_CAP) -> FoulisSemigroup:
    """All Galois endomaps of X under composition, dagger and focus."""
    hs = gal.hom_set(X, X, cap=cap)
    if not hs.exhaustive:
        raise SizeBoundError("endo_semigroup", hs.total, cap)
    maps = hs.morphisms
    index = {f: i for i, f in enumerate(maps)}
    n = len(maps)
    # (g . f).lower = g.lower[oc[f.lower]]
    lowers = np.stack([f.lower for f in maps]) if n else np.zeros((0, len(X)), dtype=np.int64)
    key_index = {row.tobytes(): i for i, row in enumerate(lowers)}
    mul = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        comp = lowers[a][X.oc[lowers]]     # row b: (a . b)
        for b in range(n):
            mul[a, b] = key_index[comp[b].tobytes()]
    inv = [index[gal.dagger(f)] for f in maps]
    focus = [index[focus_of_endo(f)] for f in maps]
    unit = index[gal.identity(X)]
    names = [f"e{i}" for i in range(n)]
    names[focus[unit]] = "0"
    names[unit] = "1"
    S = FoulisSemigroup(names, mul, unit, inv, focus)
    S.morphisms = maps
    S.lattice = X
    return S


def endo_presheaf_map(f: gal.GaloisMorphism, SX: FoulisSemigroup, SY: FoulisSemigroup) -> list[int]:
    """``s -> f . s . f-dagger`` from Endo(X) to Endo(Y), as an index table."""
    index = {g: i for i, g in enumerate(SY.morphisms)}
    fd = gal.dagger(f)
    return [index[gal.compose(f, gal.compose(s, fd))] for s in SX.morphisms]


# -- derived semigroups and lattices -----------------------------------------

class NotSAIdempotent(ValueError):
    pass


def endo_at(S: FoulisSemigroup, s) -> FoulisSemigroup:
    """``{t | s.t = t = t.s}`` with unit ``s`` and focus ``t -> s.[t].s``."""
    s = S[s]
    if not S.is_sa_idempotent(s):
        raise NotSAIdempotent(f"{S.names[s]} is not a self-adjoint idempotent")
    carrier = [t for t in S if S.mul[s, t] == t and S.mul[t, s] == t]
    pos = {t: i for i, t in enumerate(carrier)}
    mul = np.empty((len(carrier), len(carrier)), dtype=np.int64)
    for i, a in enumerate(carrier):
        for j, b in enumerate(carrier):
            c = int(S.mul[a, b])
            if c not in pos:
                raise AssertionError("carrier not closed under multiplication")
            mul[i, j] = pos[c]
    inv = [pos[int(S.inv[t])] for t in carrier]
    focus = [pos[S.m(s, S.foc(t), s)] for t in carrier]
    T = FoulisSemigroup([S.names[t] for t in carrier], mul, pos[s], inv, focus)
    T.embedding = tuple(carrier)
    return T


def k_s_elements(S: FoulisSemigroup, s) -> list[int]:
    return sorted({S.m(s, S.foc(S.m(t, s))) for t in S})


def k_s_lattice(S: FoulisSemigroup, s) -> FiniteOML:
    """The lattice ``{s.[t.s] | t in S}`` with ``k1 <= k2 iff k1 = k2.k1``.

    Top is ``s``, complement ``s.[k]``; the lattice meet is checked against
    ``(k1.[[k2].k1])''``. ``L.embedding[i]`` is the semigroup element at ``i``.
    """
    s = S[s]
    if not S.is_sa_idempotent(s):
        raise NotSAIdempotent(f"{S.names[s]} is not a self-adjoint idempotent")
    ks = k_s_elements(S, s)
    kset = set(ks)
    names = [S.names[k] for k in ks]

    def perp(k):
        return S.m(s, S.foc(k))

    for k in ks:
        if perp(k) not in kset:
            raise AssertionError("complement leaves K_s")
    le = [(S.names[a], S.names[b]) for a in ks for b in ks if S.mul[b, a] == a]
    oc = {S.names[k]: S.names[perp(k)] for k in ks}
    L = make_lattice(names, le, oc, max_size=None)
    pos = {k: i for i, k in enumerate(ks)}
    for a, b in itertools.product(ks, repeat=2):
        r = S.m(a, S.foc(S.m(S.foc(b), a)))
        if pos.get(perp(perp(r))) != L.meet(pos[a], pos[b]):
            raise AssertionError("meet formula disagrees with the order")
    if L.name(L.top) != S.names[s]:
        raise AssertionError("top of K_s is not s")
    L.embedding = tuple(ks)
    return L


def oml_of_foulis(S: FoulisSemigroup) -> FiniteOML:
    """``K_1 = {[t] | t in S}``."""
    L = k_s_lattice(S, S.unit)
    if set(L.embedding) != {S.foc(t) for t in S}:
        raise AssertionError("K_1 differs from the set of foci")
    return L


# -- isomorphism search ------------------------------------------------------

def find_semigroup_isomorphism(S: FoulisSemigroup, T: FoulisSemigroup):
    """Bijection respecting unit, product, involution and focus, or None."""
    n = len(S)
    if n != len(T):
        return None

    def sig(A, a):
        return (int(A.mul[a, a] == a), int(A.inv[a] == a), int(A.focus[a] == a),
                int((A.mul[a] == a).sum()), int((A.mul[:, a] == a).sum()))

    sa = [sig(S, a) for a in S]
    sb = [sig(T, b) for b in T]
    if sorted(sa) != sorted(sb):
        return None
    phi = [-1] * n
    used = [False] * n
    order = [S.unit] + [a for a in S if a != S.unit]

    def consistent():
        for a in S:
            b = phi[a]
            if b < 0:
                continue
            for img_s, img_t in ((S.inv[a], T.inv[b]), (S.focus[a], T.focus[b])):
                if phi[img_s] >= 0 and phi[img_s] != img_t:
                    return False
            for c in S:
                d = phi[c]
                if d < 0:
                    continue
                p = S.mul[a, c]
                if phi[p] >= 0 and phi[p] != T.mul[b, d]:
                    return False
        return True

    def assign(a, b, undo):
        if phi[a] == b:
            return True
        if phi[a] >= 0 or used[b]:
            return False
        phi[a], used[b] = b, True
        undo.append(a)
        return True

    def extend(k):
        if k == n:
            return True
        a = order[k]
        if phi[a] >= 0:
            return extend(k + 1)
        cands = [a] + [b for b in T if b != a]
        for b in cands:
            if used[b] or sb[b] != sa[a] or (a == S.unit) != (b == T.unit):
                continue
            undo = []
            good = assign(a, b, undo)
            # close under the unary operations
            queue = list(undo)
            while good and queue:
                x = queue.pop()
                for y, z in ((S.inv[x], T.inv[phi[x]]), (S.focus[x], T.focus[phi[x]])):
                    before = len(undo)
                    if not assign(int(y), int(z), undo):
                        good = False
                        break
                    queue.extend(undo[before:])
            if good and consistent() and extend(k + 1):
                return True
            for x in undo:
                used[phi[x]] = False
                phi[x] = -1
        return False

    return tuple(phi) if extend(0) else None


def mutate(S: FoulisSemigroup, table: str, pos, value) -> FoulisSemigroup:
    """Copy of S with one table entry overwritten (fault injection)."""
    mul, inv, focus, unit = S.mul.copy(), S.inv.copy(), S.focus.copy(), S.unit
    if table == "mul":
        mul[pos] = value
    elif table == "inv":
        inv[pos] = value
    elif table == "focus":
        focus[pos] = value
    elif table == "unit":
        unit = value
    else:
        raise ValueError(table)
    return FoulisSemigroup(S.names, mul, unit, inv, focus)


def require_foulis(S: FoulisSemigroup) -> FoulisSemigroup:
    rep = check_foulis(S)
    if not rep.ok:
        raise AxiomError(rep)
    return S

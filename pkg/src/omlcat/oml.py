"""Finite ortholattices and orthomodular lattices.

Elements are addressed by their position in the carrier (an ``int``); the
string identifiers are kept only for input/output. ``L["p"]`` converts a
name to its index.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

DEFAULT_MAX_SIZE = 64


class StructureError(ValueError):
    """Raised when raw input is malformed (undeclared ids, missing entries)."""


class AxiomError(ValueError):
    """Raised when a structure violates one of its defining laws."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))


class SizeBoundError(ValueError):
    """Raised when a construction would exceed a configured size bound."""

    def __init__(self, what, count, bound):
        self.count = count
        self.bound = bound
        super().__init__(f"{what}: size {count} exceeds bound {bound}")


@dataclass
class Violation:
    axiom: str
    witness: tuple
    message: str = ""

    def __str__(self):
        wit = ", ".join(map(str, self.witness))
        text = f"{self.axiom} violated at ({wit})"
        return f"{text}: {self.message}" if self.message else text


@dataclass
class Report:
    """Outcome of a validator: an empty violation list means success."""

    subject: str
    violations: list[Violation] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, axiom, witness, message=""):
        self.violations.append(Violation(axiom, tuple(witness), message))

    def axioms_failed(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def __bool__(self):
        return self.ok

    def __str__(self):
        head = f"{self.subject}: {'ok' if self.ok else 'FAILED'}"
        lines = [head] + [f"  {v}" for v in self.violations] + [f"  note: {n}" for n in self.notes]
        return "\n".join(lines)


def _closure(n: int, pairs: Iterable[tuple[int, int]]) -> np.ndarray:
    le = np.eye(n, dtype=bool)
    for a, b in pairs:
        le[a, b] = True
    # Warshall
    for k in range(n):
        le |= np.outer(le[:, k], le[k, :])
    return le


def _bound_table(le: np.ndarray, upper: bool) -> tuple[np.ndarray, list[tuple[int, int]]]:
    """Least upper (or greatest lower) bounds of all pairs; -1 where missing."""
    n = le.shape[0]
    rel = le if upper else le.T
    table = np.full((n, n), -1, dtype=np.int64)
    missing = []
    for a in range(n):
        for b in range(a, n):
            bounds = np.flatnonzero(rel[a] & rel[b])
            # the least bound is below every other bound
            best = [c for c in bounds if rel[c, bounds].all()]
            if best:
                table[a, b] = table[b, a] = best[0]
            else:
                missing.append((a, b))
    return table, missing


class FiniteOML:
    """A finite ortholattice with cached meet and join tables.

    Construct through :func:`make_lattice` (validates) rather than directly.
    Instances are treated as immutable. ``orthomodular`` records whether the
    orthomodular law was verified; candidates such as O6 have it ``False``.
    """

    def __init__(self, names, le, oc, meet, join, orthomodular=True):
        self.names = tuple(names)
        self.le = le
        self.oc = oc
        self.meet_table = meet
        self.join_table = join
        self.orthomodular = orthomodular
        for arr in (le, oc, meet, join):
            arr.flags.writeable = False
        self._index = {nm: i for i, nm in enumerate(self.names)}
        n = len(self.names)
        self.bottom = int(next(i for i in range(n) if le[i].all()))
        self.top = int(next(i for i in range(n) if le[:, i].all()))
        self._key = None

    # -- element access -------------------------------------------------
    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    def __getitem__(self, name) -> int:
        if isinstance(name, (int, np.integer)):
            if not 0 <= name < len(self.names):
                raise KeyError(name)
            return int(name)
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"{name!r} is not an element of this lattice") from None

    def __contains__(self, name):
        try:
            self[name]
        except KeyError:
            return False
        return True

    def name(self, i: int) -> str:
        return self.names[i]

    # -- operations -----------------------------------------------------
    def leq(self, a, b) -> bool:
        return bool(self.le[a, b])

    def meet(self, a, b) -> int:
        return int(self.meet_table[a, b])

    def join(self, a, b) -> int:
        return int(self.join_table[a, b])

    def comp(self, a) -> int:
        return int(self.oc[a])

    def below(self, a) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.le[:, a])]

    def is_trivial(self) -> bool:
        return len(self.names) == 1

    # -- identity -------------------------------------------------------
    def _identity_key(self):
        if self._key is None:
            self._key = (self.names, self.le.tobytes(), self.oc.tobytes())
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteOML):
            return NotImplemented
        return self._identity_key() == other._identity_key()

    def __hash__(self):
        return hash(self._identity_key())

    def __repr__(self):
        return f"FiniteOML({len(self)} elements: {' '.join(self.names)})"


def check_ortholattice(elements: Sequence[str], le_pairs, ocomp: Mapping[str, str]):
    """Validate raw ortholattice data.

    ``le_pairs`` may be the full order or just covering pairs; the reflexive
    transitive closure is taken first. An entry ``a -> b`` in ``ocomp``
    also supplies ``b -> a`` when ``b`` has no entry of its own. Returns ``(report, lattice_or_None)``;
    the lattice is returned only when the report is clean.
    """
    names = list(elements)
    index = {}
    for nm in names:
        if nm in index:
            raise StructureError(f"duplicate element {nm!r}")
        index[nm] = len(index)

    def idx(nm):
        if nm not in index:
            raise StructureError(f"undeclared element {nm!r}")
        return index[nm]

    pairs = [(idx(a), idx(b)) for a, b in le_pairs]
    oc_raw = {idx(a): idx(b) for a, b in ocomp.items()}
    # a' = b implies b' = a unless b has its own entry
    for a, b in list(oc_raw.items()):
        oc_raw.setdefault(b, a)
    missing = [nm for nm in names if index[nm] not in oc_raw]
    if missing:
        raise StructureError(f"no orthocomplement given for {missing[0]!r}")
    if not names:
        raise StructureError("empty carrier")

    report = Report("ortholattice")
    n = len(names)
    le = _closure(n, pairs)
    for a, b in zip(*np.nonzero(le & le.T)):
        if a < b:
            report.add("antisymmetry", (names[a], names[b]), "mutually below each other")
    if not report.ok:
        return report, None

    join, no_join = _bound_table(le, upper=True)
    meet, no_meet = _bound_table(le, upper=False)
    for a, b in no_join:
        report.add("lattice", (names[a], names[b]), "no least upper bound")
    for a, b in no_meet:
        report.add("lattice", (names[a], names[b]), "no greatest lower bound")
    if not report.ok:
        return report, None

    oc = np.array([oc_raw[i] for i in range(n)], dtype=np.int64)
    bottom = next(i for i in range(n) if le[i].all())
    for x in range(n):
        if oc[oc[x]] != x:
            report.add("involution", (names[x],), f"x'' = {names[oc[oc[x]]]}")
        if meet[x, oc[x]] != bottom:
            report.add("complement", (names[x],), f"x & x' = {names[meet[x, oc[x]]]}, not bottom")
    for x, y in zip(*np.nonzero(le)):
        if not le[oc[y], oc[x]]:
            report.add("antitone", (names[x], names[y]), "x <= y but not y' <= x'")
    if not report.ok:
        return report, None
    return report, FiniteOML(names, le, oc, meet, join, orthomodular=False)


def _om_conditions(L: FiniteOML):
    """Evaluate the three equivalent orthomodularity conditions separately."""
    oc, meet, join = L.oc, L.meet_table, L.join_table
    fails = {1: [], 2: [], 3: []}
    for x, y in zip(*np.nonzero(L.le)):
        x, y = int(x), int(y)
        if join[x, meet[oc[x], y]] != y:
            fails[1].append((x, y))
        if meet[y, join[oc[y], x]] != x:
            fails[2].append((x, y))
        if meet[oc[x], y] == L.bottom and x != y:
            fails[3].append((x, y))
    return fails


def check_orthomodular(L: FiniteOML) -> Report:
    """Check all three forms of the orthomodular law over every pair.

    The report carries one note per condition and an extra violation if the
    three verdicts disagree (which would indicate a bug, not bad input).
    """
    report = Report("orthomodular")
    fails = _om_conditions(L)
    texts = {
        1: "x <= y but y != x v (x' & y)",
        2: "x <= y but x != y & (y' v x)",
        3: "x <= y and x' & y = 0 but x != y",
    }
    for cond in (1, 2, 3):
        bad = fails[cond]
        report.notes.append(f"condition {cond}: {'fail' if bad else 'pass'}")
        for x, y in bad:
            report.add(f"orthomodular-{cond}", (L.name(x), L.name(y)), texts[cond])
    verdicts = {cond: not fails[cond] for cond in fails}
    if len(set(verdicts.values())) > 1:
        report.add("orthomodular-agreement", tuple(verdicts.items()), "conditions disagree")
    return report


def make_lattice(elements, le_pairs, ocomp, *, orthomodular=True, max_size=DEFAULT_MAX_SIZE) -> FiniteOML:
    """Validate raw tables and return a :class:`FiniteOML`.

    Raises :class:`AxiomError` carrying the report on failure. With
    ``orthomodular=False`` plain ortholattices (e.g. O6) are accepted.
    """
    elements = list(elements)
    if max_size is not None and len(elements) > max_size:
        raise SizeBoundError("lattice", len(elements), max_size)
    report, L = check_ortholattice(elements, le_pairs, dict(ocomp))
    if L is None:
        raise AxiomError(report)
    om = check_orthomodular(L)
    if orthomodular and not om.ok:
        raise AxiomError(om)
    L.orthomodular = om.ok
    return L


def _from_arrays(names, le, oc, orthomodular=True) -> FiniteOML:
    """Trusted internal constructor for lattices built from known-good data."""
    le = np.asarray(le, dtype=bool)
    join, _ = _bound_table(le, upper=True)
    meet, _ = _bound_table(le, upper=False)
    return FiniteOML(names, le, np.asarray(oc, dtype=np.int64), meet, join, orthomodular)


# -- generators -----------------------------------------------------------

def mo_lattice(n: int, *, max_size=DEFAULT_MAX_SIZE) -> FiniteOML:
    """MO_n: bottom, top and n pairs of incomparable atoms ``p{i}``/``p{i}'``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if max_size is not None and 2 * n + 2 > max_size:
        raise SizeBoundError("mo_lattice", 2 * n + 2, max_size)
    atoms = []
    for i in range(n):
        atoms += [f"p{i}", f"p{i}'"]
    names = ["0", *atoms, "1"]
    le = [("0", a) for a in atoms] + [(a, "1") for a in atoms] + [("0", "1")]
    oc = {"0": "1", "1": "0"}
    for i in range(n):
        oc[f"p{i}"] = f"p{i}'"
        oc[f"p{i}'"] = f"p{i}"
    return make_lattice(names, le, oc, max_size=max_size)


def _subset_name(bits: int, atoms: Sequence[str]) -> str:
    members = [a for i, a in enumerate(atoms) if bits >> i & 1]
    return "{" + ",".join(members) + "}"


def powerset_lattice(atoms: Sequence[str], *, max_size=DEFAULT_MAX_SIZE) -> FiniteOML:
    """Powerset Boolean algebra of ``atoms``; element ``i`` is the bitmask ``i``."""
    k = len(atoms)
    size = 1 << k
    if max_size is not None and size > max_size:
        raise SizeBoundError("boolean_lattice", size, max_size)
    names = [_subset_name(b, atoms) for b in range(size)]
    masks = np.arange(size)
    le = (masks[:, None] & ~masks[None, :]) == 0
    oc = (size - 1) ^ masks
    return _from_arrays(names, le, oc)


def boolean_lattice(n: int, *, max_size=DEFAULT_MAX_SIZE) -> FiniteOML:
    """The Boolean algebra with ``n`` atoms ``a0..a{n-1}``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return powerset_lattice([f"a{i}" for i in range(n)], max_size=max_size)


def chain2() -> FiniteOML:
    return make_lattice(["0", "1"], [("0", "1")], {"0": "1"})


def trivial_lattice() -> FiniteOML:
    return make_lattice(["*"], [], {"*": "*"})


def o6_lattice() -> FiniteOML:
    """The benzene ring: an ortholattice that is not orthomodular."""
    names = ["0", "a", "b", "b'", "a'", "1"]
    le = [("0", "a"), ("a", "b"), ("b", "1"), ("0", "b'"), ("b'", "a'"), ("a'", "1")]
    oc = {"0": "1", "a": "a'", "b": "b'"}
    oc.update({v: k for k, v in list(oc.items())})
    return make_lattice(names, le, oc, orthomodular=False)


# -- derived constructions -----------------------------------------------

def downset_oml(L: FiniteOML, a) -> FiniteOML:
    """The principal downset of ``a`` with relative complement ``a & u'``.

    Elements keep their names from ``L``; the index of element ``u`` in the
    result is its rank in ``L.below(a)``.
    """
    a = L[a]
    members = L.below(a)
    pos = {u: i for i, u in enumerate(members)}
    le = L.le[np.ix_(members, members)]
    oc = [pos[L.meet(a, L.comp(u))] for u in members]
    meet = np.vectorize(lambda i, j: pos[L.meet(members[i], members[j])])(*np.indices(le.shape))
    join = np.vectorize(lambda i, j: pos[L.join(members[i], members[j])])(*np.indices(le.shape))
    D = FiniteOML([L.name(u) for u in members], le.copy(), np.array(oc, dtype=np.int64),
                  meet.astype(np.int64), join.astype(np.int64), orthomodular=L.orthomodular)
    D.parent = L
    D.embedding = tuple(members)
    return D


def big_join(L: FiniteOML, subset) -> int:
    acc = L.bottom
    for x in subset:
        acc = L.join(acc, L[x])
    return acc


def big_meet(L: FiniteOML, subset) -> int:
    acc = L.top
    for x in subset:
        acc = L.meet(acc, L[x])
    return acc


def is_boolean(L: FiniteOML) -> bool:
    return distributivity_witness(L) is None


def distributivity_witness(L: FiniteOML):
    """First triple with ``x & (y v z) != (x & y) v (x & z)``, or None."""
    m, j = L.meet_table, L.join_table
    for x, y, z in itertools.product(L, repeat=3):
        if m[x, j[y, z]] != j[m[x, y], m[x, z]]:
            return x, y, z
    return None


def join_irreducibles(L: FiniteOML) -> list[int]:
    """Elements with exactly one lower cover (so never a join of smaller ones)."""
    out = []
    for x in L:
        if x == L.bottom:
            continue
        lower = [y for y in L.below(x) if y != x]
        if big_join(L, lower) != x:
            out.append(x)
    return out


def find_isomorphism(A: FiniteOML, B: FiniteOML, *, respect_complement=True):
    """Search for an order isomorphism A -> B (optionally preserving ').

    Returns a tuple ``phi`` with ``phi[a]`` the image of ``a``, or None.
    Names are ignored.
    """
    n = len(A)
    if n != len(B):
        return None
    ra = A.le.sum(axis=0), A.le.sum(axis=1)
    rb = B.le.sum(axis=0), B.le.sum(axis=1)
    sig_a = list(zip(*ra))
    sig_b = list(zip(*rb))
    if sorted(sig_a) != sorted(sig_b):
        return None
    order = sorted(range(n), key=lambda a: (sig_a[a], a))
    phi = [-1] * n
    used = [False] * n

    def consistent(a, b):
        for x in range(n):
            y = phi[x]
            if y < 0:
                continue
            if A.le[a, x] != B.le[b, y] or A.le[x, a] != B.le[y, b]:
                return False
        if respect_complement:
            ca, cb = A.comp(a), B.comp(b)
            if (ca == a) != (cb == b):
                return False
            if phi[ca] >= 0 and phi[ca] != cb:
                return False
        return True

    def extend(k):
        if k == n:
            return True
        a = order[k]
        for b in range(n):
            if used[b] or sig_b[b] != sig_a[a] or not consistent(a, b):
                continue
            phi[a], used[b] = b, True
            if extend(k + 1):
                return True
            phi[a], used[b] = -1, False
        return False

    return tuple(phi) if extend(0) else None


def is_isomorphism(A: FiniteOML, B: FiniteOML, phi) -> bool:
    """Check that ``phi`` is a bijection preserving and reflecting order and '."""
    if sorted(phi) != list(range(len(B))) or len(phi) != len(A):
        return False
    p = np.asarray(phi)
    return bool((A.le == B.le[np.ix_(p, p)]).all() and (p[A.oc] == B.oc[p]).all())

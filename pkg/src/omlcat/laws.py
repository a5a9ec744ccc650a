"""Law suites shared by the command line and the test-suite.

Each ``law_*`` function returns a :class:`Check`; ``suite_*`` functions
bundle them. Checks are exhaustive unless their ``mode`` says otherwise.
"""

from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass
from pathlib import Path

from . import galois as gal
from . import karoubi as kar
from .dagkernel import (check_adjunction, check_dagger_kernel_category, check_generator,
                        check_ksub_functor, ksub_morphism, ksub_poset, omlatgal_category,
                        _transport_kernel)
from .foulis import (check_foulis, check_foulis_alt, endo_semigroup, find_semigroup_isomorphism,
                     mutate, oml_of_foulis, endo_at)
from .oml import (AxiomError, FiniteOML, Report, boolean_lattice, chain2, check_orthomodular,
                  downset_oml, find_isomorphism, is_boolean, mo_lattice, o6_lattice, trivial_lattice)
from .rel import FinRel, is_per, rel_as_dagcategory


@dataclass
class Check:
    name: str
    ok: bool
    mode: str = "exhaustive"
    detail: str = ""

    def line(self) -> str:
        tail = f": {self.detail}" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'}  {self.name}  [{self.mode}]{tail}"

    def as_dict(self):
        return {"name": self.name, "ok": self.ok, "mode": self.mode, "detail": self.detail}


def from_report(name: str, report: Report, detail_ok: str = "") -> Check:
    mode = "exhaustive"
    if not report.exhaustive:
        mode = "sampled"
    if report.ok:
        return Check(name, True, mode, detail_ok)
    return Check(name, False, mode, str(report.violations[0]) +
                 (f" (+{len(report.violations) - 1} more)" if len(report.violations) > 1 else ""))


def _fail(name, detail, mode="exhaustive"):
    return Check(name, False, mode, detail)


@functools.lru_cache(maxsize=512)
def _homs(X, Y):
    return tuple(gal.hom_list(X, Y))


# -- corpora ---------------------------------------------------------------

def standard_corpus() -> dict:
    """ZERO, 2, B2, B3, MO2, MO3 (O6 is kept apart as the negative control)."""
    return {"0": trivial_lattice(), "2": chain2(), "B2": boolean_lattice(2), "B3": boolean_lattice(3),
            "MO2": mo_lattice(2), "MO3": mo_lattice(3)}


def small_corpus() -> dict:
    c = standard_corpus()
    return {k: c[k] for k in ("0", "2", "B2", "MO2")}


def close_under_downsets(lattices: dict) -> dict:
    """Add ``0``, ``2`` and every downset (up to isomorphism) as objects."""
    out = dict(lattices)
    for name, L in (("0", trivial_lattice()), ("2", chain2())):
        if not any(find_isomorphism(L, M) is not None for M in out.values()):
            out[name] = L
    queue = list(out.items())
    while queue:
        name, L = queue.pop(0)
        for a in L:
            D = downset_oml(L, a)
            if any(len(M) == len(D) and find_isomorphism(D, M) is not None for M in out.values()):
                continue
            new = f"{name}/{L.name(a)}"
            out[new] = D
            queue.append((new, D))
    return out


def load_corpus_dir(path, *, max_size=None):
    """Lattice and semigroup files of a directory.

    Returns ``(lattices, non_oml, semigroups, skipped)``: valid OMLs by file
    stem, ortholattices failing orthomodularity, parsed semigroups, and
    ``(file, reason)`` pairs for everything left out.
    """
    from .formats import ParseError, load_oml, read

    lattices, non_oml, semigroups, skipped = {}, {}, {}, []
    for p in sorted(Path(path).glob("*.oml")):
        try:
            text = p.read_text(encoding="utf-8")
            L = load_oml(text, p, orthomodular=False, max_size=None)
        except (ParseError, AxiomError, ValueError) as exc:
            skipped.append((p.name, f"invalid: {exc}".splitlines()[0]))
            continue
        if not L.orthomodular:
            non_oml[p.stem] = L
        elif max_size is not None and len(L) > max_size:
            skipped.append((p.name, f"{len(L)} elements exceeds --max-size {max_size}"))
        else:
            lattices[p.stem] = L
    for p in sorted(Path(path).glob("*.fsg")):
        try:
            semigroups[p.stem] = read("foulis", p)
        except (ParseError, ValueError) as exc:
            skipped.append((p.name, f"invalid: {exc}".splitlines()[0]))
    return lattices, non_oml, semigroups, skipped


# -- OMLatGal -----------------------------------------------------------------

def kernel_arrow(D, X, a):
    """The arrow of ``D`` representing ``down(a) -> X``."""
    L = D.lattices[X]
    name, value = _transport_kernel(gal.KernelSubobject(L, a), D.lattices, None)
    return D.arrow(name, X, value)


def law_conformance(D, *, seed=0, up_cap=None) -> Check:
    rep = check_dagger_kernel_category(D, seed=seed, up_cap=up_cap)
    return from_report(f"dagger kernel category {D.name} ({len(D.objects)} objects, "
                       f"{D.arrow_count()} arrows)", rep, "; ".join(rep.notes))


def law_ksub_iso(name, X) -> Check:
    iso = gal.ksub_iso(X)
    detail = f"{len(X)} elements" if iso.report.ok else ""
    return from_report(f"X ~ KSub(X) for {name}", iso.report, detail)


def law_ksub_naturality(D) -> Check:
    """Both squares of ``a -> down(a)`` against ``KSub(f)``, for every arrow of D."""
    phi = {}
    for X in D.objects:
        P = ksub_poset(D, X)
        phi[X] = [P.class_of(kernel_arrow(D, X, a)) for a in D.lattices[X]]
        if sorted(phi[X]) != list(range(len(P))):
            return _fail("naturality of X ~ KSub(X)", f"not a bijection at {X}")
    count = 0
    for f in D.arrows():
        F = ksub_morphism(D, f)
        g = D.value(f)
        X, Y = D.lattices[f.src], D.lattices[f.dst]
        for a in X:
            if F(phi[f.src][a]) != phi[f.dst][int(g.lower[a])]:
                return _fail("naturality of X ~ KSub(X)", f"lower square at {D.arrow_name(f)}, {X.name(a)}")
        for b in Y:
            if F.pull(phi[f.dst][b]) != phi[f.src][int(g.upper[b])]:
                return _fail("naturality of X ~ KSub(X)", f"upper square at {D.arrow_name(f)}, {Y.name(b)}")
        count += 1
    return Check("naturality of X ~ KSub(X)", True, detail=f"{count} morphisms, both squares")


def law_sasaki(name, X) -> Check:
    for a, b in itertools.product(X, repeat=2):
        if gal.sasaki_hook_via_effect(X, a, b) != gal.sasaki_hook(X, a, b):
            return _fail(f"Sasaki connectives on {name}", f"hook differs at ({X.name(a)}, {X.name(b)})")
        if gal.and_then_via_effect(X, a, b) != gal.and_then(X, a, b):
            return _fail(f"Sasaki connectives on {name}", f"and-then differs at ({X.name(a)}, {X.name(b)})")
    for k, m, n in itertools.product(X, repeat=3):
        lhs = X.leq(gal.and_then(X, k, m), n)
        rhs = X.leq(k, gal.sasaki_hook(X, m, n))
        if lhs != rhs:
            return _fail(f"Sasaki connectives on {name}",
                         f"adjunction fails at ({X.name(k)}, {X.name(m)}, {X.name(n)})")
    return Check(f"Sasaki connectives on {name}", True, detail=f"{len(X) ** 3} triples")


def law_factorization(lattices: dict) -> Check:
    count = 0
    for (nx, X), (ny, Y) in itertools.product(lattices.items(), repeat=2):
        for f in _homs(X, Y):
            e, m, i, co = gal.factorize(f, check=False)
            where = f"{nx} -> {ny}, lower {[Y.name(int(v)) for v in f.lower]}"
            if gal.compose(i, e) != f:
                return _fail("zero-epi/kernel factorisation", f"i.e != f for {where}")
            if gal.compose(m, co) != e:
                return _fail("zero-epi/kernel factorisation", f"m.co != e for {where}")
            if not (gal.is_zero_epi(e) and gal.is_zero_epi(m) and gal.is_zero_mono(m)):
                return _fail("zero-epi/kernel factorisation", f"epi/mono property fails for {where}")
            if co != gal.dagger(gal.image(gal.dagger(f)).embedding):
                return _fail("zero-epi/kernel factorisation", f"co is not (i of f-dagger)-dagger for {where}")
            count += 1
    return Check("zero-epi/kernel factorisation", True, detail=f"{count} morphisms")


def law_opclassifier(lattices: dict, corpus: dict | None = None) -> Check:
    """char: KSub(X) -> hom(2, X) is a bijection, natural along direct images."""
    for name, X in (corpus or lattices).items():
        chars = gal.classify(X)
        homs = set(_homs(gal.TWO, X))
        if len(set(chars)) != len(X) or set(chars) != homs:
            return _fail("opclassifier 2", f"char is not a bijection for {name}")
        if any(gal.unclassify(X, c) != a for a, c in enumerate(chars)):
            return _fail("opclassifier 2", f"unclassify is not inverse for {name}")
    count = 0
    for (nx, X), (ny, Y) in itertools.product(lattices.items(), repeat=2):
        for f in _homs(X, Y):
            for a in X:
                m = gal.KernelSubobject(X, a)
                img = gal.image(gal.compose(f, m.embedding))      # exists_f(m) = Im(f . m)
                if img != gal.direct_image(f, m):
                    return _fail("opclassifier 2", f"direct image formula differs, {nx} -> {ny}")
                if gal.classify_element(Y, img.rep) != gal.compose(f, gal.classify_element(X, a)):
                    return _fail("opclassifier 2", f"char . exists_f != f . char at {nx} -> {ny}, {X.name(a)}")
            count += 1
    return Check("opclassifier 2", True, detail=f"{count} morphisms")


def law_biproduct(n1, X1, n2, X2, targets: dict) -> Check:
    name = f"biproduct {n1} + {n2}"
    P = gal.biproduct(X1, X2)
    k1, k2 = gal.coprojection(P, 1), gal.coprojection(P, 2)
    p1, p2 = gal.projection(P, 1), gal.projection(P, 2)
    if gal.compose(p1, k1) != gal.identity(X1) or gal.compose(p2, k2) != gal.identity(X2):
        return _fail(name, "p_i . k_i != id")
    if not gal.is_zero(gal.compose(p2, k1)) or not gal.is_zero(gal.compose(p1, k2)):
        return _fail(name, "p_i . k_j != 0")
    if not (gal.is_dagger_mono(k1) and gal.is_dagger_mono(k2)):
        return _fail(name, "coprojections are not dagger monos")
    count = 0
    for ny, Y in targets.items():
        homs1, homs2 = _homs(X1, Y), _homs(X2, Y)
        for f1, f2 in itertools.product(homs1, homs2):
            c = gal.cotuple(P, f1, f2)
            if gal.compose(c, k1) != f1 or gal.compose(c, k2) != f2:
                return _fail(name, f"cotuple does not restrict to its legs (target {ny})")
        # uniqueness: every h: P -> Y is the cotuple of its restrictions
        for h in _homs(P, Y):
            if gal.cotuple(P, gal.compose(h, k1), gal.compose(h, k2)) != h:
                return _fail(name, f"cotuple not unique (target {ny})")
            count += 1
    return Check(name, True, detail=f"{count} mediating maps over {len(targets)} targets")


def law_boolean_closure(lattices: dict) -> Check:
    booleans = {n: X for n, X in lattices.items() if is_boolean(X)}
    for n, X in booleans.items():
        for a in X:
            if not is_boolean(gal.KernelSubobject(X, a).domain):
                return _fail("Boolean closure", f"kernel down({X.name(a)}) of {n} is not Boolean")
        for f in gal.hom_set(X, X).morphisms:
            if not is_boolean(gal.kernel(f).domain):
                return _fail("Boolean closure", f"a kernel of an endomap of {n} is not Boolean")
    for (n1, X1), (n2, X2) in itertools.product(booleans.items(), repeat=2):
        if not is_boolean(gal.biproduct(X1, X2)):
            return _fail("Boolean closure", f"{n1} + {n2} is not Boolean")
    return Check("Boolean closure", True, detail=", ".join(booleans))


def law_free_adjunction(lattices: dict, max_set=2) -> Check:
    """Transposes for P -| U with U(f) = f_* . ' on the underlying sets."""
    name = "free OML / forgetful adjunction"
    sets = [[f"a{i}" for i in range(n)] for n in range(max_set + 1)]
    count = 0
    for A in sets:
        P = gal.free_oml(A)
        for nx, X in lattices.items():
            for values in itertools.product(list(X), repeat=len(A)):
                g = dict(zip(A, values))
                if gal.transpose_down(gal.transpose_up(A, X, g), A) != g:
                    return _fail(name, f"down(up(g)) != g for {nx}")
                count += 1
            for f in _homs(P, X):
                if gal.transpose_up(A, X, gal.transpose_down(f, A)) != f:
                    return _fail(name, f"up(down(f)) != f for {nx}")
    # U is a functor: U(id) = id, U(h . f) = U(h) o U(f)
    for (nx, X), (ny, Y), (nz, Z) in itertools.product(lattices.items(), repeat=3):
        for f in _homs(X, Y):
            Uf = gal.forgetful(f)
            if any(Uf[x] != int(f.lower[X.comp(x)]) for x in X):
                return _fail(name, "U(f) differs from f_* . '")
            for h in _homs(Y, Z):
                Uh, Uhf = gal.forgetful(h), gal.forgetful(gal.compose(h, f))
                if any(Uhf[x] != Uh[Uf[x]] for x in X):
                    return _fail(name, f"U does not preserve composition ({nx}, {ny}, {nz})")
    for X in lattices.values():
        if gal.forgetful(gal.identity(X)) != {x: x for x in X}:
            return _fail(name, "U(id) != id")
    # naturality: a -> f_*({a}) commutes with U in X and with P in A
    for A in sets:
        P = gal.free_oml(A)
        for (nx, X), (ny, Y) in itertools.product(lattices.items(), repeat=2):
            for f in _homs(P, X):
                tf = {a: X.comp(v) for a, v in gal.transpose_down(f, A).items()}
                for h in _homs(X, Y):
                    Uh = gal.forgetful(h)
                    thf = {a: Y.comp(v) for a, v in gal.transpose_down(gal.compose(h, f), A).items()}
                    if thf != {a: Uh[tf[a]] for a in A}:
                        return _fail(name, f"transpose not natural in X ({nx} -> {ny})")
        for B in sets:
            for values in itertools.product(range(len(B)), repeat=len(A)):
                g = {a: B[v] for a, v in zip(A, values)}
                Fg = gal.free_on_function(A, B, g)
                for nx, X in lattices.items():
                    for f in _homs(gal.free_oml(B), X):
                        lhs = gal.transpose_down(gal.compose(f, Fg), A)
                        rhs = gal.transpose_down(f, B)
                        if any(lhs[a] != rhs[g[a]] for a in A):
                            return _fail(name, f"transpose not natural in A ({nx})")
    return Check(name, True, detail=f"{count} functions g, sets of size <= {max_set}")


# -- Foulis semigroups -------------------------------------------------------

def law_endo(name, X, *, cap=gal.DEFAULT_HOM_CAP) -> Check:
    S = endo_semigroup(X, cap=cap)
    r1, r2 = check_foulis(S), check_foulis_alt(S)
    if not r1.ok:
        return from_report(f"Endo({name}) Foulis axioms", r1)
    if not r2.ok:
        return from_report(f"Endo({name}) Foulis axioms", r2)
    return Check(f"Endo({name}) Foulis axioms", True, detail=f"{len(S)} elements, (1)-(4) and (4')")


def law_roundtrip(name, X, *, cap=gal.DEFAULT_HOM_CAP):
    """Returns ``(check, phi)`` with ``phi`` the isomorphism K_1 -> X."""
    S = endo_semigroup(X, cap=cap)
    K1 = oml_of_foulis(S)
    phi = find_isomorphism(K1, X)
    if phi is None:
        return _fail(f"round trip {name} -> Endo -> K_1", "no isomorphism"), None
    return Check(f"round trip {name} -> Endo -> K_1", True, detail=f"{len(S)}-element semigroup"), phi


def fault_corpus(semigroups: list, count: int, seed: int):
    """Deterministic single-entry mutations of the given semigroups.

    Half of them move a focus value to another self-adjoint idempotent, which
    tends to keep axioms (1)-(3) intact and so exercises (4) against (4').
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        S = rng.choice(semigroups)
        n = len(S)
        if n < 2:
            continue
        if len(out) % 2 == 0:
            table, pos = "focus", rng.randrange(n)
            pool = [v for v in S.sa_idempotents() if v != S.focus[pos]]
            if not pool:
                continue
        else:
            table = rng.choice(["mul", "inv", "focus"])
            pos = (rng.randrange(n), rng.randrange(n)) if table == "mul" else rng.randrange(n)
            old = S.mul[pos] if table == "mul" else (S.inv if table == "inv" else S.focus)[pos]
            pool = [v for v in range(n) if v != old]
        value = rng.choice(pool)
        out.append((table, pos, value, mutate(S, table, pos, value)))
    return out


def law_axiom_agreement(semigroups: list, *, count=60, seed=0) -> Check:
    """Same verdict from (1)-(4) and (1)-(3)+(4'), on originals and mutants."""
    from .foulis import _check_common

    faults = fault_corpus(semigroups, count, seed)
    cases = [("original", S) for S in semigroups]
    cases += [(f"mutation {table}{pos} := {value}", M) for table, pos, value, M in faults]
    rejected = reached = 0
    for label, M in cases:
        a = check_foulis(M).ok
        if a != check_foulis_alt(M).ok:
            return _fail("axiom sets (4) and (4') agree", f"disagree on {label}", f"seeded corpus, seed {seed}")
        rejected += not a
        reached += _check_common(M, Report("common"))
    return Check("axiom sets (4) and (4') agree", True, f"seeded corpus, seed {seed}",
                 f"{len(semigroups)} originals + {len(faults)} mutants, {rejected} rejected, "
                 f"{reached} satisfy (1)-(3)")


def law_semigroup_helpers(name, S) -> Check:
    """``x.y = 0 => y = [x].y``, ``x.[x] = 0`` and the focus biconditional."""
    z = S.zero
    for x, y in itertools.product(S, repeat=2):
        if S.mul[x, y] == z and S.m(S.foc(x), y) != y:
            return _fail(f"helper laws on {name}", f"x.y = 0 but y != [x].y at ({S.names[x]}, {S.names[y]})")
    for x in S:
        if S.m(x, S.foc(x)) != z:
            return _fail(f"helper laws on {name}", f"x.[x] != 0 at {S.names[x]}")
        right = {S.m(S.foc(x), r) for r in S}
        if {t for t in S if S.mul[x, t] == z} != right:
            return _fail(f"helper laws on {name}", f"annihilator of {S.names[x]} is not [x].S")
    return Check(f"helper laws on {name}", True, detail=f"{len(S) ** 2} pairs")


def law_endo_at(name, S) -> Check:
    if find_semigroup_isomorphism(endo_at(S, S.unit), S) is None:
        return _fail(f"Endo(s) on {name}", "Endo(1) is not isomorphic to S")
    for s in S.sa_idempotents():
        T = endo_at(S, s)
        if not check_foulis(T).ok:
            return _fail(f"Endo(s) on {name}", f"Endo({S.names[s]}) fails the axioms")
    if len(endo_at(S, S.zero)) != 1:
        return _fail(f"Endo(s) on {name}", "Endo(0) is not trivial")
    return Check(f"Endo(s) on {name}", True, detail=f"{len(S.sa_idempotents())} projections")


def law_ks_ksub(name, S) -> Check:
    K = kar.dagger_karoubi_of_foulis(S)
    for s in K.objects:
        try:
            kar.ks_ksub_iso(S, K, s)
        except AssertionError as exc:
            return _fail(f"K_s ~ KSub(s) in K+(Endo({name}))", f"at {S.names[s]}: {exc}")
    return Check(f"K_s ~ KSub(s) in K+(Endo({name}))", True, detail=f"{len(K.objects)} projections")


# -- Karoubi -----------------------------------------------------------------

def law_kdagger_endo(name, X, *, seed=0, up_cap=None) -> list[Check]:
    S = endo_semigroup(X)
    K = kar.dagger_karoubi_of_foulis(S)
    K.name = f"K+(Endo({name}))"
    out = [law_conformance(K, seed=seed, up_cap=up_cap)]
    out.append(Check(f"unit generates K+(Endo({name}))", check_generator(K, S.unit)))
    P = ksub_poset(K, S.unit)
    ok = find_isomorphism(P.lattice, X) is not None
    out.append(Check(f"KSub(1) in K+(Endo({name})) ~ {name}", ok))
    return out


def law_kdagger_rel(max_size=2) -> list[Check]:
    D = rel_as_dagcategory(max_size)
    K = kar.dagger_karoubi(D)
    pers = sorted((n, bits) for n in D.objects for bits in range(1 << (n * n)) if is_per(FinRel(n, n, bits)))
    out = [Check(f"objects of K+(Rel<={max_size}) are the PERs", sorted(K.objects) == pers,
                 detail=f"{len(pers)} PERs")]
    c = law_conformance(K)
    out.append(c)
    emb = kar.embedding(K)
    from .dagkernel import check_dag_functor
    out.append(from_report("embedding D -> K+(D) preserves dagger, zero, kernels", check_dag_functor(emb)))
    out.append(Check("embedding D -> K+(D) is full and faithful", kar.embedding_full_and_faithful(K)))
    functorial, full = kar.check_effect_functor(K)
    out.append(Check("effect functor KSub(D) -> K+(D) is a full functor", functorial and full,
                     detail="" if functorial and full else f"functorial={functorial}, full={full}"))
    # splitting: every idempotent of K+ splits, uniquely up to iso
    bad = None
    for A in K.objects:
        for f in K.hom(A, A):
            if K.compose(f, f) != f or K.dagger(f) != f:
                continue
            first = kar.split_idempotent(K, f)
            for other in kar.all_splittings(K, f):
                if kar.splitting_iso(K, first, other) is None:
                    bad = K.arrow_name(f)
    out.append(Check("self-adjoint idempotents split uniquely up to iso", bad is None,
                     detail="" if bad is None else f"no iso at {bad}"))
    return out


# -- Rel -----------------------------------------------------------------------

def law_rel(max_set_size=3) -> list[Check]:
    D = rel_as_dagcategory(max_set_size)
    out = [law_conformance(D)]
    ok = all(find_isomorphism(ksub_poset(D, n).lattice, boolean_lattice(n)) is not None for n in D.objects)
    out.append(Check(f"KSub(n) ~ P(n) in {D.name}", ok))
    for n in D.objects:
        out.append(from_report(f"image/pullback and Sasaki adjunctions at {n}", check_adjunction(D, n)))
    return out


def law_ksub_functor_rel(max_set_size=3) -> Check:
    D = rel_as_dagcategory(max_set_size)
    rep = check_ksub_functor(D)
    return from_report(f"KSub functor on {D.name}", rep, f"{D.arrow_count()} arrows")


# -- negative controls ---------------------------------------------------------

def law_o6_negative() -> Check:
    L = o6_lattice()
    rep = check_orthomodular(L)
    witnesses = {(v.axiom, v.witness) for v in rep.violations}
    ok = not rep.ok and ("orthomodular-1", ("a", "b")) in witnesses
    a, b = L["a"], L["b"]
    ok = ok and L.leq(a, b) and L.join(a, L.meet(L.comp(a), b)) == a
    return Check("O6 fails orthomodularity with witness (a, b)", ok)


# -- suites ----------------------------------------------------------------------

def suite_omlatgal(lattices: dict, *, seed=0, up_cap=None) -> list[Check]:
    objs = close_under_downsets(lattices)
    D = omlatgal_category(objs)
    out = [law_conformance(D, seed=seed, up_cap=up_cap), law_ksub_naturality(D)]
    for name, X in objs.items():
        out.append(law_ksub_iso(name, X))
        out.append(law_sasaki(name, X))
    nonzero = {n: X for n, X in objs.items() if len(X) > 1}
    out.append(law_factorization(nonzero))
    out.append(law_opclassifier(nonzero, objs))
    out.append(law_boolean_closure(objs))
    return out


def suite_rel(max_set_size=3) -> list[Check]:
    return law_rel(max_set_size)


def suite_ksubfunctor(max_set_size=3) -> list[Check]:
    return [law_ksub_functor_rel(max_set_size)]


def suite_foulis(lattices: dict, semigroups: dict, *, seed=0, mutants=60, cap=gal.DEFAULT_HOM_CAP):
    out = []
    endos = []
    for name, X in lattices.items():
        out.append(law_endo(name, X, cap=cap))
        out.append(law_roundtrip(name, X, cap=cap)[0])
        endos.append(endo_semigroup(X, cap=cap))
    for name, S in semigroups.items():
        # fixture semigroups may be deliberately broken: the law is that both
        # axiom sets reach the same verdict
        r1, r2 = check_foulis(S), check_foulis_alt(S)
        verdict = "valid" if r1.ok else "invalid: " + ", ".join(sorted(r1.axioms_failed()))
        out.append(Check(f"{name}: axiom sets agree", r1.ok == r2.ok, detail=verdict))
    valid = [S for S in endos if len(S) > 1] + [S for S in semigroups.values() if check_foulis(S).ok]
    for S in valid[:3]:
        out.append(law_semigroup_helpers(f"{len(S)}-element semigroup", S))
        out.append(law_endo_at(f"{len(S)}-element semigroup", S))
    if valid:
        out.append(law_axiom_agreement(valid, count=mutants, seed=seed))
    return out


def suite_karoubi(lattices: dict, *, seed=0, up_cap=20000, rel_size=2) -> list[Check]:
    out = law_kdagger_rel(rel_size)
    for name, X in lattices.items():
        cap = up_cap if len(X) > 4 else None
        out += law_kdagger_endo(name, X, seed=seed, up_cap=cap)
        if len(X) <= 4:
            out.append(law_ks_ksub(name, endo_semigroup(X)))
    return out

"""Command line: ``omlcat check|gen|roundtrip|laws``.

Exit status: 0 pass, 1 law failure, 2 parse failure, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import formats
from . import galois as gal
from . import laws
from .dagkernel import check_dagger_kernel_category, ksub_poset
from .foulis import check_foulis, check_foulis_alt, endo_semigroup, k_s_lattice, oml_of_foulis
from .karoubi import dagger_karoubi_of_foulis
from .oml import (AxiomError, Report, SizeBoundError, StructureError, boolean_lattice,
                  check_orthomodular, check_ortholattice, downset_oml, find_isomorphism, mo_lattice)

EXIT_OK, EXIT_LAW, EXIT_PARSE, EXIT_CAP = 0, 1, 2, 3


@dataclass
class RunReport:
    command: str
    corpus: str = ""
    seed: int | None = None
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def status(self) -> int:
        return EXIT_OK if all(c.ok for c in self.checks) else EXIT_LAW

    def text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.corpus:
            lines.append(f"corpus: {self.corpus}")
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        lines += [f"note: {n}" for n in self.notes]
        for c in self.checks:
            lines.append(c.line())
            lines += [f"    {w}" for w in getattr(c, "witnesses", ())]
        failed = sum(not c.ok for c in self.checks)
        sampled = sum(c.mode != "exhaustive" for c in self.checks)
        verdict = "PASS" if failed == 0 else f"FAIL ({failed} failed)"
        noun = "check" if len(self.checks) == 1 else "checks"
        lines.append(f"result: {verdict}, {len(self.checks)} {noun}, {sampled} sampled")
        return "\n".join(lines) + "\n"

    def json(self) -> str:
        body = {
            "command": self.command,
            "corpus": self.corpus,
            "seed": self.seed,
            "notes": self.notes,
            "checks": [dict(c.as_dict(), witnesses=list(getattr(c, "witnesses", ()))) for c in self.checks],
            "status": self.status,
        }
        return json.dumps(body, indent=2, sort_keys=True) + "\n"


def _with_witnesses(check, report: Report):
    check.witnesses = [str(v) for v in report.violations]
    return check


def _report_check(name, report: Report):
    return _with_witnesses(laws.from_report(name, report), report)


# -- check -------------------------------------------------------------------

def cmd_check(args, run: RunReport):
    path = Path(args.file)
    text = _read(path)
    if args.kind == "oml":
        raw = formats.parse_oml(text, path)
        if args.max_size is not None and len(raw.elements) > args.max_size:
            raise SizeBoundError("lattice", len(raw.elements), args.max_size)
        try:
            rep, L = check_ortholattice(raw.elements, raw.le, raw.oc)
        except StructureError as exc:
            run.checks.append(laws.Check("ortholattice", False, detail=str(exc)))
            return
        run.checks.append(_report_check("ortholattice", rep))
        if L is not None:
            run.checks.append(_report_check("orthomodular", check_orthomodular(L)))
    elif args.kind == "foulis":
        S = formats.parse_foulis(text, path)
        run.checks.append(_report_check("Foulis axioms (1)-(4)", check_foulis(S)))
        run.checks.append(_report_check("Foulis axioms (1)-(3) and (4')", check_foulis_alt(S)))
    elif args.kind == "gal":
        try:
            f = formats.parse_gal(text, path, check=False)
        except AxiomError as exc:
            run.checks.append(_report_check("source/target lattices", exc.report))
            return
        rep = Report("galois")
        lhs = f.src.le[:, f.upper]
        rhs = f.dst.le[:, f.lower].T
        for x, y in zip(*(lhs != rhs).nonzero()):
            rep.add("adjunction", (f.src.name(int(x)), f.dst.name(int(y))),
                    "x <= f^*(y) and y <= f_*(x) disagree")
        run.checks.append(_report_check("Galois adjunction", rep))
    elif args.kind == "dkc":
        D = formats.parse_dkc(text, path)
        run.seed = args.seed
        try:
            rep = check_dagger_kernel_category(D, seed=args.seed, up_cap=args.sample_cap)
        except StructureError as exc:
            run.checks.append(laws.Check("dagger kernel category", False, detail=str(exc)))
            return
        run.checks.append(_report_check("dagger kernel category", rep))
        run.notes += rep.notes


# -- gen ---------------------------------------------------------------------

def _load_lattice(path, args):
    return formats.load_oml(_read(Path(path)), path, max_size=args.max_size)


def cmd_gen(args, run: RunReport) -> str:
    kind, params = args.kind, args.params

    def need(n, usage):
        if len(params) != n:
            raise formats.ParseError(f"usage: gen {kind} {usage}")

    if kind in ("mo", "bool"):
        need(1, "<n>")
        n = _int(params[0])
        L = mo_lattice(n, max_size=args.max_size) if kind == "mo" else boolean_lattice(n, max_size=args.max_size)
        return formats.dump_oml(L)
    if kind == "downset":
        need(2, "<lattice-file> <element>")
        L = _load_lattice(params[0], args)
        if params[1] not in L:
            raise formats.ParseError(f"no element {params[1]!r} in {params[0]}")
        return formats.dump_oml(downset_oml(L, params[1]))
    if kind == "endo":
        need(1, "<lattice-file>")
        return formats.dump_foulis(endo_semigroup(_load_lattice(params[0], args), cap=args.hom_cap))
    if kind == "karoubi":
        need(1, "<foulis-file>")
        S = formats.read("foulis", params[0])
        return formats.dump_dkc(dagger_karoubi_of_foulis(S, cap=args.object_cap))
    if kind == "ksub":
        need(2, "<foulis-file> <element>")
        S = formats.read("foulis", params[0])
        if params[1] not in S.names:
            raise formats.ParseError(f"no element {params[1]!r} in {params[0]}")
        return formats.dump_oml(k_s_lattice(S, params[1]))
    if kind == "freeoml":
        atoms = [f"a{i}" for i in range(_int(params[0]))] if len(params) == 1 and params[0].isdigit() else params
        if args.max_size is not None and 2 ** len(atoms) > args.max_size:
            raise SizeBoundError("free OML", 2 ** len(atoms), args.max_size)
        return formats.dump_oml(gal.free_oml(atoms))
    raise formats.ParseError(f"unknown generator {kind!r}")


# -- roundtrip -------------------------------------------------------------------

def cmd_roundtrip(args, run: RunReport):
    X = _load_lattice(args.file, args)
    S = endo_semigroup(X, cap=args.hom_cap)
    K1 = oml_of_foulis(S)
    phi = find_isomorphism(K1, X)
    run.corpus = f"{args.file} ({len(X)} elements), Endo with {len(S)} elements"
    if phi is None:
        c = laws.Check("K_1 of Endo(X) ~ X", False,
                       detail=f"no isomorphism: |K_1| = {len(K1)}, |X| = {len(X)}; exhaustive search exhausted")
        run.checks.append(c)
        return
    c = laws.Check("K_1 of Endo(X) ~ X", True, detail=f"{len(X)} elements")
    c.witnesses = []
    for i in K1:
        t = S.morphisms[K1.embedding[i]]
        table = " ".join(X.name(int(v)) for v in t.lower)
        c.witnesses.append(f"{S.names[K1.embedding[i]]} (lower: {table}) -> {X.name(phi[i])}")
    run.checks.append(c)
    K = dagger_karoubi_of_foulis(S, check=False)
    ok = find_isomorphism(ksub_poset(K, S.unit).lattice, X) is not None
    run.checks.append(laws.Check("KSub(1) in K+(Endo(X)) ~ X", ok))


# -- laws ----------------------------------------------------------------------

def cmd_laws(args, run: RunReport):
    run.seed = args.seed
    suite = args.suite
    max_size = 6 if args.max_size is None else args.max_size
    if suite in ("rel", "ksubfunctor"):
        n = args.max_set_size
        if n > 3:
            raise SizeBoundError("Rel set size", n, 3)
        run.corpus = f"Rel on sets of size 0..{n}"
        run.checks += laws.suite_rel(n) if suite == "rel" else laws.suite_ksubfunctor(n)
        return
    if args.corpus:
        lattices, non_oml, semigroups, skipped = laws.load_corpus_dir(args.corpus, max_size=max_size)
        run.corpus = f"{args.corpus}: " + ", ".join(sorted(lattices) + sorted(semigroups))
        run.notes += [f"skipped {f}: {why}" for f, why in skipped]
        run.notes += [f"skipped {n}.oml: not orthomodular (negative control)" for n in sorted(non_oml)]
    else:
        lattices = {k: v for k, v in laws.small_corpus().items() if len(v) <= max_size}
        semigroups = {}
        run.corpus = "built-in: " + ", ".join(lattices)
    if suite == "omlatgal":
        run.checks += laws.suite_omlatgal(lattices, seed=args.seed, up_cap=args.sample_cap)
    elif suite == "foulis":
        run.checks += laws.suite_foulis(lattices, semigroups, seed=args.seed, cap=args.hom_cap)
    elif suite == "karoubi":
        nontrivial = {k: v for k, v in lattices.items() if len(v) > 1}
        run.checks += laws.suite_karoubi(nontrivial, seed=args.seed, up_cap=args.sample_cap,
                                         rel_size=min(args.max_set_size, 2))


# -- plumbing ----------------------------------------------------------------------

def _read(path: Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise formats.ParseError(f"cannot read file: {exc.strerror}", None, path) from None


def _int(text):
    try:
        return int(text)
    except ValueError:
        raise formats.ParseError(f"expected an integer, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for all sampling (default 0)")
    common.add_argument("--max-size", type=int, default=None,
                        help="largest lattice accepted (default 64; 6 for law suites)")
    common.add_argument("--hom-cap", type=int, default=gal.DEFAULT_HOM_CAP,
                        help="refuse hom-set enumerations larger than this")
    common.add_argument("--sample-cap", type=int, default=None,
                        help="sample this many kernel universal-property searches instead of all")
    common.add_argument("--json", action="store_true", help="machine-readable report")

    p = argparse.ArgumentParser(prog="omlcat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="validate a structure file")
    c.add_argument("kind", choices=["oml", "foulis", "gal", "dkc"])
    c.add_argument("file")

    g = sub.add_parser("gen", parents=[common], help="emit a generated structure")
    g.add_argument("kind", choices=["mo", "bool", "downset", "endo", "karoubi", "ksub", "freeoml"])
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--output", help="write here instead of stdout")
    g.add_argument("--object-cap", type=int, default=256, help="largest envelope (self-adjoint idempotents)")

    r = sub.add_parser("roundtrip", parents=[common], help="X -> Endo(X) -> K_1 -> X")
    r.add_argument("file")

    lw = sub.add_parser("laws", parents=[common], help="run a law suite")
    lw.add_argument("--suite", required=True, choices=["omlatgal", "rel", "karoubi", "foulis", "ksubfunctor"])
    lw.add_argument("--corpus", help="directory of .oml/.fsg files")
    lw.add_argument("--max-set-size", type=int, default=3, help="largest set in Rel (at most 3)")
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    if args.command != "laws" and args.max_size is None:
        args.max_size = 64
    run = RunReport("omlcat " + " ".join(argv))
    try:
        if args.command == "gen":
            out = cmd_gen(args, run)
            if args.output:
                Path(args.output).write_text(out, encoding="utf-8")
            else:
                sys.stdout.write(out)
            return EXIT_OK
        {"check": cmd_check, "roundtrip": cmd_roundtrip, "laws": cmd_laws}[args.command](args, run)
    except formats.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except SizeBoundError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except AxiomError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_LAW
    sys.stdout.write(run.json() if args.json else run.text())
    return run.status


if __name__ == "__main__":
    sys.exit(main())

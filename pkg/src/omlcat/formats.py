"""Line-oriented text formats: ``oml v1``, ``foulis v1``, ``gal v1``, ``dkc v1``.

Blank lines and ``#`` comments are ignored. Every parser reports problems
as :class:`ParseError` carrying the offending line number; validation of
the parsed structure (lattice or Foulis axioms) is left to the caller.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .dagkernel import FinDagCategory, table_category
from .foulis import FoulisSemigroup
from .galois import GaloisMorphism
from .oml import FiniteOML, make_lattice
from .rel import FinRel, SetMismatch


class ParseError(ValueError):
    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = f"{path or '<input>'}:{line}" if line is not None else str(path or "<input>")
        super().__init__(f"{where}: {message}")


def _records(text: str, header: str, path=None):
    """Yield ``(lineno, keyword, args)`` after checking the header line."""
    seen_header = False
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if not seen_header:
            if toks != header.split():
                raise ParseError(f"expected header {header!r}, got {line!r}", no, path)
            seen_header = True
            continue
        yield no, toks[0], toks[1:]
    if not seen_header:
        raise ParseError(f"missing header {header!r}", None, path)


def _arity(no, kw, args, n, path):
    if len(args) != n:
        raise ParseError(f"'{kw}' takes {n} argument(s), got {len(args)}", no, path)


class _Declared:
    """Identifiers with the line they were declared on."""

    def __init__(self, what, path):
        self.what, self.path = what, path
        self.order: list[str] = []
        self.line: dict[str, int] = {}

    def declare(self, ident, no):
        if ident in self.line:
            raise ParseError(f"duplicate {self.what} {ident!r} (first declared on line {self.line[ident]})",
                             no, self.path)
        self.line[ident] = no
        self.order.append(ident)

    def need(self, ident, no):
        if ident not in self.line:
            raise ParseError(f"undeclared {self.what} {ident!r}", no, self.path)
        return ident


# -- oml v1 --------------------------------------------------------------------

@dataclass
class RawOML:
    elements: list
    le: list
    oc: dict


def parse_oml(text: str, path=None) -> RawOML:
    elems = _Declared("element", path)
    le_lines, oc_lines = [], []
    for no, kw, args in _records(text, "oml v1", path):
        if kw == "elem":
            _arity(no, kw, args, 1, path)
            elems.declare(args[0], no)
        elif kw == "le":
            _arity(no, kw, args, 2, path)
            le_lines.append((no, args))
        elif kw == "oc":
            _arity(no, kw, args, 2, path)
            oc_lines.append((no, args))
        else:
            raise ParseError(f"unknown keyword {kw!r}", no, path)
    le = [(elems.need(a, no), elems.need(b, no)) for no, (a, b) in le_lines]
    oc, oc_line = {}, {}
    for no, (a, b) in oc_lines:
        elems.need(a, no), elems.need(b, no)
        if a in oc and oc[a] != b:
            raise ParseError(f"second complement for {a!r} (first on line {oc_line[a]})", no, path)
        oc[a], oc_line[a] = b, no
    if not elems.order:
        raise ParseError("no elements declared", None, path)
    return RawOML(elems.order, le, oc)


def load_oml(text: str, path=None, *, orthomodular=True, max_size=64) -> FiniteOML:
    raw = parse_oml(text, path)
    return make_lattice(raw.elements, raw.le, raw.oc, orthomodular=orthomodular, max_size=max_size)


def _covers(L: FiniteOML):
    out = []
    for a in L:
        for b in L:
            if a != b and L.leq(a, b) and not any(
                    c not in (a, b) and L.leq(a, c) and L.leq(c, b) for c in L):
                out.append((a, b))
    return out


def _check_token(name):
    if not name or re.search(r"\s|#", name):
        raise ValueError(f"identifier {name!r} cannot be written (whitespace or '#')")
    return name


def dump_oml(L: FiniteOML) -> str:
    lines = ["oml v1"]
    lines += [f"elem {_check_token(L.name(a))}" for a in L]
    lines += [f"le {L.name(a)} {L.name(b)}" for a, b in _covers(L)]
    lines += [f"oc {L.name(a)} {L.name(L.comp(a))}" for a in L if a <= L.comp(a)]
    return "\n".join(lines) + "\n"


# -- foulis v1 -------------------------------------------------------------

def parse_foulis(text: str, path=None) -> FoulisSemigroup:
    elems = _Declared("element", path)
    unit = None
    mul_lines, inv_lines, focus_lines = [], [], []
    for no, kw, args in _records(text, "foulis v1", path):
        if kw == "elem":
            _arity(no, kw, args, 1, path)
            elems.declare(args[0], no)
        elif kw == "unit":
            _arity(no, kw, args, 1, path)
            if unit is not None:
                raise ParseError("duplicate 'unit' line", no, path)
            unit = (no, args[0])
        elif kw == "mul":
            _arity(no, kw, args, 3, path)
            mul_lines.append((no, args))
        elif kw == "inv":
            _arity(no, kw, args, 2, path)
            inv_lines.append((no, args))
        elif kw == "focus":
            _arity(no, kw, args, 2, path)
            focus_lines.append((no, args))
        else:
            raise ParseError(f"unknown keyword {kw!r}", no, path)
    names = elems.order
    if not names:
        raise ParseError("no elements declared", None, path)
    if unit is None:
        raise ParseError("missing 'unit' line", None, path)
    pos = {nm: i for i, nm in enumerate(names)}
    n = len(names)

    def ix(ident, no):
        return pos[elems.need(ident, no)]

    mul = np.full((n, n), -1, dtype=np.int64)
    for no, (a, b, c) in mul_lines:
        i, j, k = ix(a, no), ix(b, no), ix(c, no)
        if mul[i, j] >= 0:
            raise ParseError(f"duplicate product {a} . {b}", no, path)
        mul[i, j] = k
    missing = np.argwhere(mul < 0)
    if len(missing):
        i, j = missing[0]
        raise ParseError(f"Cayley table is not total: no product {names[i]} . {names[j]}", None, path)

    def unary(lines, what):
        out = [-1] * n
        for no, (a, b) in lines:
            i = ix(a, no)
            if out[i] >= 0:
                raise ParseError(f"duplicate {what} of {a}", no, path)
            out[i] = ix(b, no)
        if -1 in out:
            raise ParseError(f"{what} table is not total: nothing for {names[out.index(-1)]}", None, path)
        return out

    inv = unary(inv_lines, "inv")
    focus = unary(focus_lines, "focus")
    return FoulisSemigroup(names, mul, ix(unit[1], unit[0]), inv, focus)


def dump_foulis(S: FoulisSemigroup) -> str:
    nm = [_check_token(x) for x in S.names]
    lines = ["foulis v1"] + [f"elem {x}" for x in nm] + [f"unit {nm[S.unit]}"]
    lines += [f"mul {nm[a]} {nm[b]} {nm[S.mul[a, b]]}" for a in S for b in S]
    lines += [f"inv {nm[a]} {nm[S.inv[a]]}" for a in S]
    lines += [f"focus {nm[a]} {nm[S.focus[a]]}" for a in S]
    return "\n".join(lines) + "\n"


# -- gal v1 ----------------------------------------------------------------

def parse_gal(text: str, path=None, *, check=True) -> GaloisMorphism:
    """``src``/``dst`` name lattice files, resolved relative to this file."""
    base = Path(path).parent if path else Path(".")
    files = {}
    lower_lines = []
    for no, kw, args in _records(text, "gal v1", path):
        if kw in ("src", "dst"):
            _arity(no, kw, args, 1, path)
            if kw in files:
                raise ParseError(f"duplicate '{kw}' line", no, path)
            files[kw] = (no, args[0])
        elif kw == "lower":
            _arity(no, kw, args, 2, path)
            lower_lines.append((no, args))
        else:
            raise ParseError(f"unknown keyword {kw!r}", no, path)
    lattices = {}
    for kw in ("src", "dst"):
        if kw not in files:
            raise ParseError(f"missing '{kw}' line", None, path)
        no, ref = files[kw]
        target = base / ref
        try:
            text_l = target.read_text(encoding="utf-8")
        except OSError as exc:
            raise ParseError(f"cannot read lattice file {ref!r}: {exc.strerror}", no, path) from None
        lattices[kw] = load_oml(text_l, target, max_size=None)
    X, Y = lattices["src"], lattices["dst"]
    table = [None] * len(X)
    for no, (a, b) in lower_lines:
        if a not in X:
            raise ParseError(f"undeclared source element {a!r}", no, path)
        if b not in Y:
            raise ParseError(f"undeclared target element {b!r}", no, path)
        if table[X[a]] is not None:
            raise ParseError(f"duplicate lower value for {a!r}", no, path)
        table[X[a]] = Y[b]
    if None in table:
        raise ParseError(f"lower table is not total: nothing for {X.name(table.index(None))!r}", None, path)
    return GaloisMorphism(X, Y, table, check=check)


def dump_gal(f: GaloisMorphism, src_ref: str, dst_ref: str) -> str:
    lines = ["gal v1", f"src {src_ref}", f"dst {dst_ref}"]
    lines += [f"lower {f.src.name(x)} {f.dst.name(int(f.lower[x]))}" for x in f.src]
    return "\n".join(lines) + "\n"


# -- dkc v1 ----------------------------------------------------------------

def parse_dkc(text: str, path=None) -> FinDagCategory:
    """Objects, arrows and full composition/dagger/identity/kernel tables.

    ``object X``; ``zero X``; ``arrow f X Y``; ``identity X f``;
    ``compose g f h`` (g . f = h); ``dagger f g``; ``kernel f k``.
    """
    objs = _Declared("object", path)
    arrs = _Declared("arrow", path)
    zero = None
    arrows, rest = {}, []
    for no, kw, args in _records(text, "dkc v1", path):
        if kw == "object":
            _arity(no, kw, args, 1, path)
            objs.declare(args[0], no)
        elif kw == "arrow":
            _arity(no, kw, args, 3, path)
            arrs.declare(args[0], no)
            arrows[args[0]] = (no, args[1], args[2])
        elif kw == "zero":
            _arity(no, kw, args, 1, path)
            if zero is not None:
                raise ParseError("duplicate 'zero' line", no, path)
            zero = (no, args[0])
        elif kw in ("identity", "dagger", "kernel"):
            _arity(no, kw, args, 2, path)
            rest.append((no, kw, args))
        elif kw == "compose":
            _arity(no, kw, args, 3, path)
            rest.append((no, kw, args))
        else:
            raise ParseError(f"unknown keyword {kw!r}", no, path)
    if zero is None:
        raise ParseError("missing 'zero' line", None, path)
    objs.need(zero[1], zero[0])
    typed = {a: (objs.need(X, no), objs.need(Y, no)) for a, (no, X, Y) in arrows.items()}
    tables = {"identity": {}, "dagger": {}, "kernel": {}, "compose": {}}
    for no, kw, args in rest:
        if kw == "identity":
            key, val = objs.need(args[0], no), arrs.need(args[1], no)
            if typed[val] != (key, key):
                raise ParseError(f"identity {val!r} is not an endo-arrow of {key!r}", no, path)
        elif kw == "compose":
            g, f, h = (arrs.need(a, no) for a in args)
            if typed[f][1] != typed[g][0]:
                raise ParseError(f"{g} . {f} is not composable", no, path)
            if typed[h] != (typed[f][0], typed[g][1]):
                raise ParseError(f"{h} has the wrong type for {g} . {f}", no, path)
            key, val = (g, f), h
        else:
            key, val = arrs.need(args[0], no), arrs.need(args[1], no)
            if kw == "dagger" and typed[val] != typed[key][::-1]:
                raise ParseError(f"dagger {val!r} has the wrong type", no, path)
            if kw == "kernel" and typed[val][1] != typed[key][0]:
                raise ParseError(f"kernel {val!r} does not land in the source of {key!r}", no, path)
        if key in tables[kw]:
            raise ParseError(f"duplicate '{kw}' entry for {key!r}", no, path)
        tables[kw][key] = val
    kernel = tables["kernel"] or None
    return table_category(objs.order, typed, tables["compose"], tables["dagger"], tables["identity"],
                          zero[1], kernel, name=str(path or "dkc"))


def dump_dkc(D: FinDagCategory) -> str:
    """Serialise any materialised category; arrows are named ``X>Y:i``."""
    oname = {X: _check_token(D.object_name(X).replace(" ", "")) for X in D.objects}
    if len(set(oname.values())) != len(oname):
        raise ValueError("object names are not distinct")

    def an(a):
        return f"{oname[a.src]}>{oname[a.dst]}:{a.idx}"

    lines = ["dkc v1"] + [f"object {oname[X]}" for X in D.objects] + [f"zero {oname[D.zero_object]}"]
    lines += [f"arrow {an(a)} {oname[a.src]} {oname[a.dst]}" for a in D.arrows()]
    lines += [f"identity {oname[X]} {an(D.identity(X))}" for X in D.objects]
    lines += [f"dagger {an(a)} {an(D.dagger(a))}" for a in D.arrows()]
    for X in D.objects:
        for Y in D.objects:
            for Z in D.objects:
                blk = D.compose_block(X, Y, Z)
                for j, g in enumerate(D.hom(Y, Z)):
                    for i, f in enumerate(D.hom(X, Y)):
                        lines.append(f"compose {an(g)} {an(f)} {an(type(f)(X, Z, int(blk[j, i])))}")
    if D._kernel is not None:
        lines += [f"kernel {an(a)} {an(D.kernel(a))}" for a in D.arrows()]
    return "\n".join(lines) + "\n"


# -- relation literals ---------------------------------------------------------

def parse_rel(text: str) -> FinRel:
    """``rel <m> <n> ; <i> <j> ; ...`` with 0-based indices."""
    parts = [p.strip() for p in text.strip().split(";")]
    head = parts[0].split()
    if len(head) != 3 or head[0] != "rel":
        raise ParseError(f"relation literal must start with 'rel <m> <n>', got {parts[0]!r}")
    try:
        m, n = int(head[1]), int(head[2])
        pairs = []
        for p in parts[1:]:
            if not p:
                continue
            i, j = (int(t) for t in p.split())
            pairs.append((i, j))
    except ValueError:
        raise ParseError(f"malformed relation literal {text!r}") from None
    if m < 0 or n < 0:
        raise ParseError("set sizes must be non-negative")
    try:
        return FinRel.from_pairs(m, n, pairs)
    except SetMismatch as exc:
        raise ParseError(str(exc)) from None


def dump_rel(R: FinRel) -> str:
    return repr(R)


# -- file helpers ----------------------------------------------------------

LOADERS = {
    "oml": lambda text, path: parse_oml(text, path),
    "foulis": parse_foulis,
    "gal": parse_gal,
    "dkc": parse_dkc,
}


def read(kind: str, path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}", None, path) from None
    return LOADERS[kind](text, path)

import pytest
from hypothesis import given
from hypothesis import strategies as st

from omlcat import galois as gal
from omlcat.dagkernel import check_dagger_kernel_category
from omlcat.formats import (ParseError, dump_dkc, dump_foulis, dump_gal, dump_oml, dump_rel, load_oml,
                            parse_dkc, parse_foulis, parse_gal, parse_oml, parse_rel, read)
from omlcat.foulis import check_foulis, endo_semigroup, find_semigroup_isomorphism
from omlcat.karoubi import dagger_karoubi_of_foulis
from omlcat.oml import (AxiomError, boolean_lattice, chain2, find_isomorphism, mo_lattice, o6_lattice,
                        trivial_lattice)
from omlcat.rel import FinRel, rel_as_dagcategory

from conftest import FIXTURES


@pytest.mark.parametrize("fname,expected", [
    ("zero.oml", trivial_lattice()), ("two.oml", chain2()), ("b2.oml", boolean_lattice(2)),
    ("b3.oml", boolean_lattice(3)), ("mo2.oml", mo_lattice(2)), ("mo3.oml", mo_lattice(3))])
def test_fixture_lattices(fname, expected):
    L = load_oml((FIXTURES / fname).read_text(), FIXTURES / fname)
    assert find_isomorphism(L, expected) is not None


def test_o6_fixture_loads_only_without_orthomodularity():
    text = (FIXTURES / "o6.oml").read_text()
    with pytest.raises(AxiomError):
        load_oml(text)
    L = load_oml(text, orthomodular=False)
    assert find_isomorphism(L, o6_lattice()) is not None


@pytest.mark.parametrize("L", [trivial_lattice(), chain2(), boolean_lattice(3), mo_lattice(2), mo_lattice(3)])
def test_oml_roundtrip(L):
    text = dump_oml(L)
    back = load_oml(text)
    assert back == L
    assert dump_oml(back) == text


def test_foulis_roundtrip():
    S = endo_semigroup(boolean_lattice(2))
    T = parse_foulis(dump_foulis(S))
    assert T.names == S.names and (T.mul == S.mul).all() and T.unit == S.unit
    assert (T.inv == S.inv).all() and (T.focus == S.focus).all()
    assert find_semigroup_isomorphism(S, T) is not None


def test_endo2_fixture():
    S = read("foulis", FIXTURES / "endo2.fsg")
    assert check_foulis(S).ok
    assert find_semigroup_isomorphism(S, endo_semigroup(chain2())) is not None


def test_gal_fixture_and_roundtrip(tmp_path):
    f = read("gal", FIXTURES / "good.gal")
    X = mo_lattice(2)
    assert f == gal.test_of(X, "p0")
    (tmp_path / "m.oml").write_text(dump_oml(X))
    out = tmp_path / "f.gal"
    out.write_text(dump_gal(f, "m.oml", "m.oml"))
    assert read("gal", out) == f


def test_bad_adjunction_fixture():
    with pytest.raises(AxiomError):
        read("gal", FIXTURES / "faults" / "bad_adjunction.gal")
    f = parse_gal((FIXTURES / "faults" / "bad_adjunction.gal").read_text(),
                  FIXTURES / "faults" / "bad_adjunction.gal", check=False)
    assert gal.adjunction_witness(f.src, f.dst, f.lower, f.upper) is not None


def _same_category(D, E):
    assert len(D.objects) == len(E.objects) and D.arrow_count() == E.arrow_count()
    assert check_dagger_kernel_category(E).ok


def test_dkc_roundtrip_rel():
    D = rel_as_dagcategory(1)
    text = dump_dkc(D)
    E = parse_dkc(text)
    _same_category(D, E)
    assert dump_dkc(E) == text
    assert dump_dkc(read("dkc", FIXTURES / "rel1.dkc")) == text


def test_dkc_roundtrip_karoubi():
    K = dagger_karoubi_of_foulis(endo_semigroup(chain2()))
    _same_category(K, parse_dkc(dump_dkc(K)))


def test_bad_kernel_fixture():
    D = read("dkc", FIXTURES / "faults" / "bad_kernel.dkc")
    assert "kernel-zero" in check_dagger_kernel_category(D).axioms_failed()


@given(st.integers(0, 3), st.integers(0, 3), st.data())
def test_rel_literal_roundtrip(m, n, data):
    bits = data.draw(st.integers(0, (1 << (m * n)) - 1)) if m * n else 0
    R = FinRel(m, n, bits)
    assert parse_rel(dump_rel(R)) == R


@pytest.mark.parametrize("text,line,fragment", [
    ("oml v2\n", 1, "expected header"),
    ("# c\n\noml v1\nelem a\nelem a\n", 5, "duplicate element 'a'"),
    ("oml v1\nelem a\nle a b\n", 3, "undeclared element 'b'"),
    ("oml v1\nelem a\nelem b\noc a b\noc a a\n", 5, "second complement"),
    ("oml v1\nelem a\nfoo a\n", 3, "unknown keyword"),
    ("oml v1\nelem a b\n", 2, "takes 1 argument"),
])
def test_oml_errors_carry_line_numbers(text, line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_oml(text, "x.oml")
    assert exc.value.line == line and fragment in str(exc.value)
    assert str(exc.value).startswith(f"x.oml:{line}:")


def test_foulis_errors():
    base = (FIXTURES / "endo2.fsg").read_text()
    with pytest.raises(ParseError, match="not total"):
        parse_foulis(base.replace("mul 0 0 0\n", ""))
    with pytest.raises(ParseError, match="duplicate product"):
        parse_foulis(base + "mul 0 0 1\n")
    with pytest.raises(ParseError, match="missing 'unit'"):
        parse_foulis(base.replace("unit 1\n", ""))
    with pytest.raises(ParseError, match="focus table is not total"):
        parse_foulis(base.replace("focus 0 1\n", ""))


def test_gal_and_dkc_errors(tmp_path):
    with pytest.raises(ParseError, match="cannot read lattice file"):
        parse_gal("gal v1\nsrc nope.oml\ndst nope.oml\n", tmp_path / "a.gal")
    (tmp_path / "two.oml").write_text(dump_oml(chain2()))
    with pytest.raises(ParseError, match="not total"):
        parse_gal("gal v1\nsrc two.oml\ndst two.oml\nlower 0 1\n", tmp_path / "a.gal")
    with pytest.raises(ParseError) as exc:
        parse_dkc("dkc v1\nobject A\nzero A\narrow i A B\n")
    assert exc.value.line == 4
    with pytest.raises(ParseError, match="missing 'zero'"):
        parse_dkc("dkc v1\nobject A\n")


def test_rel_literal_errors():
    for bad in ("rel 1", "rel 1 1 ; 0", "rel 1 1 ; 0 3", "foo 1 1", "rel -1 2"):
        with pytest.raises(ParseError):
            parse_rel(bad)


def test_read_missing_file(tmp_path):
    with pytest.raises(ParseError, match="cannot read file"):
        read("oml", tmp_path / "missing.oml")


def test_dump_refuses_unwritable_names():
    from omlcat.oml import make_lattice
    for bad in ("x#y", "x y"):
        M = make_lattice(["0", bad], [("0", bad)], {"0": bad})
        with pytest.raises(ValueError):
            dump_oml(M)

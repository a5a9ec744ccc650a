import json
import re

import pytest

from omlcat.cli import main
from omlcat.formats import load_oml, parse_dkc, parse_foulis
from omlcat.foulis import check_foulis
from omlcat.oml import boolean_lattice, find_isomorphism, mo_lattice

from conftest import FIXTURES


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def manifest():
    rows = []
    for line in (FIXTURES / "faults" / "MANIFEST").read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            fname, kind, expected = line.split()
            rows.append((fname, kind, set(expected.split(","))))
    return rows


@pytest.mark.parametrize("fname,kind,expected", manifest(), ids=[r[0] for r in manifest()])
def test_fault_caught_by_intended_validator(capsys, fname, kind, expected):
    code, out, err = run(capsys, "check", kind, FIXTURES / fname, "--json")
    if expected == {"parse"}:
        assert code == 2 and "parse error" in err
        assert re.search(r":\d+: ", err), "parse errors name the offending line"
        return
    assert code == 1
    body = json.loads(out)
    labels = {w.split(" violated at")[0] for c in body["checks"] for w in c["witnesses"]}
    assert labels == expected


@pytest.mark.parametrize("kind,fname", [("oml", "mo2.oml"), ("oml", "b3.oml"), ("foulis", "endo2.fsg"),
                                        ("gal", "good.gal"), ("dkc", "rel1.dkc")])
def test_good_fixtures_pass(capsys, kind, fname):
    code, out, _ = run(capsys, "check", kind, FIXTURES / fname)
    assert code == 0 and "result: PASS" in out


def test_size_cap_exit(capsys):
    code, _, err = run(capsys, "check", "oml", FIXTURES / "mo3.oml", "--max-size", "4")
    assert code == 3 and "cap exceeded" in err
    code, _, _ = run(capsys, "laws", "--suite", "rel", "--max-set-size", "4")
    assert code == 3
    code, _, _ = run(capsys, "gen", "endo", FIXTURES / "mo2.oml", "--hom-cap", "10")
    assert code == 3


def test_gen_outputs_revalidate(capsys, tmp_path):
    code, out, _ = run(capsys, "gen", "mo", 3)
    assert code == 0 and find_isomorphism(load_oml(out), mo_lattice(3)) is not None
    code, out, _ = run(capsys, "gen", "bool", 2)
    assert find_isomorphism(load_oml(out), boolean_lattice(2)) is not None
    code, out, _ = run(capsys, "gen", "freeoml", "x", "y", "z")
    assert find_isomorphism(load_oml(out), boolean_lattice(3)) is not None
    code, out, _ = run(capsys, "gen", "downset", FIXTURES / "mo2.oml", "p0'")
    assert len(load_oml(out)) == 2

    endo = tmp_path / "endo.fsg"
    assert run(capsys, "gen", "endo", FIXTURES / "b2.oml", "-o", endo)[0] == 0
    S = parse_foulis(endo.read_text())
    assert len(S) == 16 and check_foulis(S).ok
    assert run(capsys, "check", "foulis", endo)[0] == 0

    dkc = tmp_path / "k.dkc"
    assert run(capsys, "gen", "karoubi", endo, "-o", dkc)[0] == 0
    assert len(parse_dkc(dkc.read_text()).objects) == 5
    assert run(capsys, "check", "dkc", dkc)[0] == 0

    code, out, _ = run(capsys, "gen", "ksub", endo, S.names[S.unit])
    assert code == 0 and find_isomorphism(load_oml(out), boolean_lattice(2)) is not None


def test_gen_usage_errors(capsys):
    assert run(capsys, "gen", "mo")[0] == 2
    assert run(capsys, "gen", "mo", "x")[0] == 2
    assert run(capsys, "gen", "downset", FIXTURES / "mo2.oml", "nope")[0] == 2
    assert run(capsys, "check", "oml", FIXTURES / "missing.oml")[0] == 2


def test_gen_karoubi_rejects_invalid_semigroup(capsys):
    code, _, err = run(capsys, "gen", "karoubi", FIXTURES / "broken.fsg")
    assert code == 1 and "axiom-3" in err


def test_roundtrip_prints_isomorphism(capsys):
    code, out, _ = run(capsys, "roundtrip", FIXTURES / "mo2.oml")
    assert code == 0
    arrows = [line for line in out.splitlines() if " -> " in line and "(lower:" in line]
    assert len(arrows) == 6
    assert sorted(line.rsplit(" -> ", 1)[1] for line in arrows) == sorted(mo_lattice(2).names)
    assert "PASS" in out


def test_laws_report_is_deterministic(capsys):
    argv = ("laws", "--suite", "omlatgal", "--max-size", "4", "--sample-cap", "50", "--seed", "5", "--json")
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second and first[0] == 0
    body = json.loads(first[1])
    assert body["seed"] == 5 and body["status"] == 0
    assert any(c["mode"] == "sampled" for c in body["checks"])


def test_laws_corpus_dir_skips_non_oml(capsys):
    code, out, _ = run(capsys, "laws", "--suite", "omlatgal", "--corpus", FIXTURES, "--max-size", "4")
    assert code == 0
    assert "negative control" in out and "o6" in out


def test_text_report_shape(capsys):
    code, out, _ = run(capsys, "check", "oml", FIXTURES / "o6.oml")
    lines = out.splitlines()
    assert code == 1 and lines[0].startswith("command: omlcat check oml")
    assert lines[-1] == "result: FAIL (1 failed), 2 checks, 0 sampled"

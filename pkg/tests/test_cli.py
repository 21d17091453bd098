import json
import subprocess
import sys

import pytest

from conftest import HOPF, TREFOIL
from twotone.cli import main
from twotone.coloring import Coloring, check_coloring
from twotone.diagram import parse_link_text
from twotone.verify import bundled_corpus


def run(argv, stdin="", monkeypatch=None, capsys=None):
    import io
    monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def cli(monkeypatch, capsys):
    return lambda argv, stdin="": run(argv, stdin, monkeypatch, capsys)


def test_gen_torus_then_invariants(cli):
    code, pd, _ = cli(["gen", "torus2", "4"])
    assert code == 0
    code, out, _ = cli(["invariants"], pd)
    assert code == 0
    assert "linking 0 1: 2" in out and "determinant: 4" in out


def test_pretzel_two_tone_witness(cli):
    _, pd, _ = cli(["gen", "pretzel", "6,6,6"])
    code, out, _ = cli(["dihedral", "--n", "5", "--two-tone", "--witness"], pd)
    assert code == 0 and "two-tone D_5: colorable" in out
    witness = next(line for line in out.splitlines() if line.startswith("witness: "))
    c = Coloring.parse_compact(witness[len("witness: "):])
    d = parse_link_text(pd)
    assert check_coloring(d, c) and c.is_two_tone(d)
    assert "arc 17:" in out


def test_hopf_not_two_tone(cli):
    code, out, _ = cli(["dihedral", "--n", "3", "--two-tone", "--link", HOPF])
    assert code == 0 and "not colorable" in out


def test_record_output(cli):
    code, out, _ = cli(["dihedral", "--inf", "--format", "record", "--link", TREFOIL])
    rec = json.loads(out)
    assert code == 0 and rec["modulus"] == "inf"
    assert rec["two_tone"]["colorable"] is False and rec["surjective"]["exists"] is False


def test_parse_round_trip(cli):
    code, once, _ = cli(["parse"], "# a comment\n" + TREFOIL)
    code2, twice, _ = cli(["parse"], once)
    assert code == code2 == 0 and once == twice


def test_fox_and_classify(cli):
    code, out, _ = cli(["fox", "--n", "3", "--link", TREFOIL])
    assert code == 0 and "colorable (9 colorings)" in out
    code, out, _ = cli(["classify", "--n-range", "3..5", "--link", HOPF])
    assert code == 0 and out.splitlines()[2].startswith("3\tFalse")
    code, out, _ = cli(["classify", "--n-range", "3..4", "--format", "record", "--link", HOPF])
    assert json.loads(out)["consistent"] is True


def test_gen_standard(cli):
    code, out, _ = cli(["gen", "standard", "2,2/0,1"])
    assert code == 0 and out.startswith("# base component")
    code, out, _ = cli(["dihedral", "--n", "3", "--two-tone"], out)
    assert "colorable" in out and "not colorable" not in out


@pytest.mark.parametrize("argv, stdin", [
    (["parse"], "X[1,2"),
    (["parse"], ""),
    (["gen", "standard", "1"], ""),
    (["gen", "torus2", "x"], ""),
    (["fox", "--n", "1", "--link", HOPF], ""),
    (["dihedral", "--n", "2", "--link", HOPF], ""),
    (["classify", "--n-range", "2..4", "--link", HOPF], ""),
    (["bogus"], ""),
    (["dihedral", "--link", HOPF], ""),
    (["verify"], ""),
])
def test_usage_errors_exit_2(cli, argv, stdin):
    code, _, err = cli(argv, stdin)
    assert code == 2 and err


def test_capacity_exit_3(cli, monkeypatch):
    _, pd, _ = cli(["gen", "pretzel", "6,6,6"])
    monkeypatch.setenv("TWOTONE_CAP", "10")
    code, _, err = cli(["dihedral", "--n", "7"], pd)
    assert code == 3 and "capacity" in err


def test_verify_exit_codes(cli, tmp_path, corpus):
    code, out, _ = cli(["verify", "--corpus", str(bundled_corpus()), "--n-range", "3..5"])
    assert code == 0 and out.startswith("name,")
    good = Coloring.parse_compact(corpus["P(6,6,6)"].coloring)
    bad = Coloring(8, good.tones, (good.exponents[0] + 1,) + good.exponents[1:])
    p = tmp_path / "bad.tsv"
    p.write_text(f"broken-p666\t{corpus['P(6,6,6)'].diagram.to_text()}\t-\t{bad.to_compact()}\n")
    code, _, err = cli(["verify", "--corpus", str(p), "--n-range", "3..4"])
    assert code == 1 and "broken-p666" in err
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"corpus": str(p), "n_range": "3..4", "cap": 5}))
    code, _, _ = cli(["verify", "--config", str(cfg)])
    assert code == 3


def test_console_script_pipeline():
    gen = subprocess.run([sys.executable, "-m", "twotone", "gen", "torus2", "6"], capture_output=True,
                         text=True, check=True)
    inv = subprocess.run([sys.executable, "-m", "twotone", "invariants", "--format", "record"],
                         input=gen.stdout, capture_output=True, text=True, check=True)
    rec = json.loads(inv.stdout)
    assert rec["determinant"] == 6 and rec["linking"][0][1] == 3

import json

import pytest

from ooc import formats
from ooc.cli import coverage_letters, coverage_table, main
from ooc.code_model import CodeFamily, CodeParams, dilate_time
from ooc.concat import build_cw_greedy
from ooc.errors import ParseError
from ooc.phase import cubic_family
from ooc.poly_constructions import construct_p1
from ooc.three_d import crt_lift


def test_family_text_round_trip():
    fam = construct_p1(5, 3, 1)
    back = formats.parse_family(formats.dump_family(fam))
    assert back.matrices == fam.matrices and back.params == fam.params
    assert back.provenance["construction"] == "P1"


def test_family_json_round_trip():
    fam = construct_p1(5, 3, 1)
    text = formats.family_to_json(fam)
    assert json.loads(text)["count"] == 5
    assert formats.parse_family(text).matrices == fam.matrices


def test_parse_errors_carry_line_numbers():
    bad = "OOC2D lambda=2 T=3 omega=2 kappa=1\nmatrix 0\np 0 0\np 5 1\n"
    with pytest.raises(ParseError) as e:
        formats.parse_family(bad)
    assert e.value.line == 4 and str(e.value).startswith("line 4")
    with pytest.raises(ParseError):
        formats.parse_family("OOC2D lambda=2 T=x omega=2 kappa=1\n")
    with pytest.raises(ParseError):
        formats.parse_family("OOC2D lambda=2 T=3 omega=2 kappa=1 count=2\nmatrix 0\np 0 0\n")
    with pytest.raises(ParseError):
        formats.parse_family("")


def test_codes_3d_round_trip():
    mats = [dilate_time(M, 2) for M in construct_p1(5, 3, 1)]
    codes = crt_lift(mats)
    assert formats.parse_codes_3d(formats.dump_codes_3d(codes)) == codes


def test_cw_and_phase_round_trip():
    cw = build_cw_greedy(7, 3, 1)
    assert formats.parse_cw(formats.dump_cw(cw)) == cw
    seqs = cubic_family(7, [(2, 5, 3), (5, 4, 1)])
    back = formats.parse_phase(formats.dump_phase(seqs))
    assert [s.levels for s in back] == [s.levels for s in seqs]


def test_coverage_cells():
    assert coverage_letters(3, 5) == "AFHI"
    table = coverage_table(range(2, 18), range(2, 34))
    empty = sorted({T for T in range(2, 34) if all(not table[lam, T] for lam in range(2, 18))})
    assert empty == [21, 25, 27]


def test_cli_generate_and_verify(tmp_path, capsys):
    out = tmp_path / "p1.txt"
    assert main(["generate", "P1", "--T", "5", "--lambda", "3", "--kappa", "1", "--out", str(out)]) == 0
    text = capsys.readouterr().out
    assert "size=5 bound=5 OPTIMAL" in text and "certified_mcp=1" in text
    assert main(["verify", str(out)]) == 0
    assert main(["verify", str(out), "--kappa", "0"]) == 1


def test_cli_cp1(capsys):
    assert main(["generate", "CP1", "--lambda", "7", "--omega", "3", "--T", "5", "--kappa", "1"]) == 0
    assert "size=35 bound=35 OPTIMAL" in capsys.readouterr().out


def test_cli_r2_reports_closed_form(capsys):
    assert main(["generate", "R2", "--q", "5", "--T", "4", "--kappa", "2"]) == 0
    out = capsys.readouterr().out
    assert "expected_size=30" in out and "closed_form=47" in out


def test_cli_bad_input_exit_codes(tmp_path, capsys):
    assert main(["generate", "P2", "--p", "7", "--T", "4"]) == 2
    assert main(["bounds", "--lambda", "2", "--T", "2", "--omega", "9", "--kappa", "1"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("OOC2D lambda=2 T=3 omega=2 kappa=1\nmatrix 0\np 0 9\n")
    assert main(["verify", str(bad)]) == 2
    assert main(["verify", str(tmp_path / "missing.txt")]) == 2
    assert "line 3" in capsys.readouterr().err


def test_cli_bounds(capsys):
    assert main(["bounds", "--lambda", "7", "--T", "5", "--omega", "3", "--kappa", "1", "--class", "AM-OPPW"]) == 0
    assert "bound=35" in capsys.readouterr().out


def test_cli_lift(tmp_path, capsys):
    fam = construct_p1(7, 3, 1)
    wide = CodeFamily(CodeParams(3, 14, 3, 1), [dilate_time(M, 2) for M in fam])
    src = tmp_path / "wide.txt"
    src.write_text(formats.dump_family(wide))
    dst = tmp_path / "lift.txt"
    assert main(["lift", str(src), "--out", str(dst)]) == 0
    assert "mcp_3d=1 mcp_2d=1" in capsys.readouterr().out
    assert len(formats.parse_codes_3d(dst.read_text())) == 7


def test_cli_phase(tmp_path, capsys):
    seqf = tmp_path / "seq.txt"
    assert main(["phase", "design", "cubic", "--K", "7", "--coeffs", "2,5,3;5,4,1", "--out", str(seqf)]) == 0
    csvf = tmp_path / "theta.csv"
    assert main(["phase", "eval", str(seqf), "--csv", str(csvf), "--samples", "50"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("M_d=2.6457513")
    assert len(csvf.read_text().splitlines()) == 51
    assert main(["phase", "design", "recurrence", "--q", "9", "--s", "2", "--spec", "1:1,2"]) == 2
    spec = ["--spec", "1:1,2,0", "--spec", "2:0,1,2"]
    assert main(["phase", "design", "recurrence", "--q", "9", "--s", "3", *spec, "--out", str(seqf)]) == 0


def test_cli_coverage_csv(tmp_path, capsys):
    dst = tmp_path / "cov.csv"
    assert main(["coverage", "--lambda-range", "2-5", "--T-range", "4-6", "--csv", str(dst)]) == 0
    # rows are T, lambda, letters
    assert "5,3,AFHI" in dst.read_text().splitlines()

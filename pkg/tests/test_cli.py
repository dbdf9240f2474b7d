import json
import subprocess
import sys

import pytest

from ssideal.cli import (EXIT_ABORT, EXIT_FAIL, EXIT_OK, EXIT_PARSE, FixtureError, main,
                         parse_fixture_text, verify_path)

NAMES = ["example1", "example2", "example3", "trivial_example1"]


@pytest.mark.parametrize("name", NAMES)
def test_every_fixture_verifies(fixture_dir, name):
    rep = verify_path(fixture_dir / f"{name}.toml")
    assert rep.exit_code == EXIT_OK, [c for c in rep.checks if c["status"] != "pass"]


def test_example1_report_contents(fixture_dir, tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["verify", str(fixture_dir / "example1.toml"), "--report", str(out)])
    assert code == EXIT_OK
    text = capsys.readouterr().out
    assert "single spot type (1, K)" in text and "codim 3" in text
    data = json.loads(out.read_text())
    assert data["info"]["ideal"]["codim"] == 3
    for check in data["checks"]:
        assert set(check) <= {"check", "status", "lhs", "rhs", "witness", "notes"}
        assert check["status"] in ("pass", "fail")


def test_example2_expect_nontrivial(fixture_dir):
    assert main(["verify", str(fixture_dir / "example2.toml"), "--expect-nontrivial"]) == EXIT_OK


def test_example1_cannot_be_nontrivial(fixture_dir):
    assert main(["verify", str(fixture_dir / "example1.toml"), "--expect-nontrivial"]) == EXIT_FAIL


def test_example3_flags_variants(fixture_dir):
    rep = verify_path(fixture_dir / "example3.toml", kernel_tail="Et2")
    assert rep.exit_code == EXIT_OK
    assert rep.info["witness_variant_selected"] == "beta4_homogeneous"
    literal = rep.info["witness_variants"][0]
    assert literal["homogeneous"] is False and literal["inhomogeneous_betas"] == [4]
    assert rep.info["f_variant_selected"] == "f_u_m5"


def test_literal_kernel_tail_fails(fixture_dir):
    assert main(["verify", str(fixture_dir / "example1.toml"), "--kernel-tail=Et1"]) == EXIT_FAIL


def test_reports_are_byte_identical(fixture_dir, tmp_path):
    paths = []
    for k in range(2):
        p = tmp_path / f"r{k}.json"
        main(["verify", str(fixture_dir / "example3.toml"), "--report", str(p)])
        paths.append(p.read_bytes())
    assert paths[0] == paths[1]


def test_unknown_key_is_parse_error(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[ring]\nn = 6\nflavour = 1\n[parameters]\nt = 1\n")
    assert main(["verify", str(bad)]) == EXIT_PARSE


@pytest.mark.parametrize("text", [
    "[ring]\nn = 6\n",
    "[ring]\nn = 6\n[parameters]\nt = 1\n[phi]\na = { \"1,2,3,4,5\" = \"x9\" }\n",
    "[ring]\nn = 'six'\n[parameters]\nt = 1\n",
    "not toml at all [",
])
def test_malformed_fixtures(tmp_path, text):
    p = tmp_path / "m.toml"
    p.write_text(text)
    assert verify_path(p).exit_code == EXIT_PARSE


def test_missing_file_is_parse_error(tmp_path):
    assert verify_path(tmp_path / "absent.toml").exit_code == EXIT_PARSE


def test_variant_schema_checked():
    with pytest.raises(FixtureError):
        parse_fixture_text("[ring]\nn = 6\n[parameters]\nt = 1\n[[witness.variants]]\nname = 'x'\n")


def test_degree_cap_aborts(fixture_dir, monkeypatch):
    monkeypatch.setenv("SSIDEAL_DEGREE_CAP", "2")
    assert verify_path(fixture_dir / "example1.toml").exit_code == EXIT_ABORT


def test_numerical_command(capsys):
    args = ["numerical", "--n", "6", "--t", "1", "--c", "0", "--d", "0",
            "--a", "3,3,6", "--b", "2,2,2,2,2,2,5,5,5,5,5,5"]
    assert main(args) == EXIT_OK
    out = capsys.readouterr().out
    assert "12 = 12" in out and "30 = 30" in out and "120 = 120" in out
    assert "3 + 5 + 4" in out


def test_numerical_example3(capsys):
    args = ["numerical", "--n", "6", "--t", "0", "--c", "2", "--d", "1",
            "--a", "10,7,7", "--b", "5,6,6,6,6,8,4,4"]
    assert main(args) == EXIT_OK
    out = capsys.readouterr().out
    assert "21 = 21" in out and "67 = 67" in out and "3 + 1 + 4" in out


def test_numerical_perturbed(capsys):
    args = ["numerical", "--n", "6", "--t", "1", "--a", "3,3,6", "--b", "2,2,2,2,2,2,5,5,5,5,5,6"]
    assert main(args) == EXIT_FAIL
    assert "delta 1" in capsys.readouterr().out


def test_numerical_malformed_list():
    assert main(["numerical", "--n", "6", "--t", "1", "--a", "3,x"]) == EXIT_PARSE


def test_identities_command(capsys):
    assert main(["identities", "--max-n", "20"]) == EXIT_OK
    assert "all pass" in capsys.readouterr().out


def test_koszul_command(capsys):
    assert main(["koszul", "--n", "2", "--k", "2", "--show-differential"]) == EXIT_OK
    assert "d_2(e[1,2]) = -x2*e[1] + x1*e[2]" in capsys.readouterr().out
    assert main(["koszul", "--n", "6", "--k", "3"]) == EXIT_OK
    assert "rank 20, twists all 3" in capsys.readouterr().out


def test_koszul_bounds():
    assert main(["koszul", "--n", "13", "--k", "2"]) == EXIT_PARSE


def test_module_entry_point(fixture_dir):
    proc = subprocess.run([sys.executable, "-m", "ssideal", "verify", str(fixture_dir / "example1.toml")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "exit 0" in proc.stdout

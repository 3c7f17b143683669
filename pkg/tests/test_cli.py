"""End-to-end CLI contract: subcommands, output shapes, exit codes."""

import json
import subprocess
import sys

import pytest

from cgkernel.cli import main
from cgkernel.fpgroups import format_presentation, sl2z_presentation


@pytest.fixture()
def sl2_file(tmp_path):
    path = tmp_path / "sl2z.pres"
    path.write_text(format_presentation(sl2z_presentation()), encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestVerify:
    def test_single_check(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--check", "k4.b1_5")
        assert code == 0
        assert "k4.b1_5" in out and "pass" in out
        assert "expected" in out and "free_rank" in out

    def test_env_var_limit(self, capsys, sl2_file, monkeypatch):
        monkeypatch.setenv("CGKERNEL_MAX_COSETS", "400")
        code, _, err = run_cli(capsys, "tc", sl2_file, "t")
        assert code == 3 and "exceeded" in err

    def test_unknown_check_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "verify", "--check", "bogus")
        assert code == 2
        assert "unknown" in err

    def test_all_json(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--all", "--json")
        assert code == 0
        payload = json.loads(out)
        assert all(entry["passed"] for entry in payload)
        assert set(payload[0]) == {"id", "passed", "expected", "actual",
                                   "paper_anchor", "elapsed_ms"}

    def test_failing_check_sets_exit_one(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--check", "sl2.*",
                               "--max-cosets", "2")
        assert code == 1
        assert "FAIL" in out

    def test_list(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--list")
        assert code == 0
        assert "appendix.sigma_actions" in out.split()

    def test_requires_selection(self, capsys):
        code, _, err = run_cli(capsys, "verify")
        assert code == 2 and "verify" in err

    def test_seed_reproduces_json_output(self, capsys):
        def snapshot():
            code, out, _ = run_cli(capsys, "verify", "--check", "phi.hom_property",
                                   "--json", "--seed", "7")
            assert code == 0
            payload = json.loads(out)
            for entry in payload:
                entry.pop("elapsed_ms")
            return payload

        assert snapshot() == snapshot()


class TestBraid:
    def test_eq(self, capsys):
        code, out, _ = run_cli(capsys, "braid", "eq", "-n", "4",
                               "l4", "A14 A24 A34")
        assert code == 0 and out.strip() == "equal"

    def test_not_equal(self, capsys):
        code, out, _ = run_cli(capsys, "braid", "eq", "-n", "4", "s1", "s2")
        assert code == 0 and out.strip() == "not equal"

    def test_perm(self, capsys):
        code, out, _ = run_cli(capsys, "braid", "perm", "-n", "4", "s1 s3^-1")
        assert code == 0 and out.strip() == "(1,2)(3,4)"

    def test_nf_trivial(self, capsys):
        code, out, _ = run_cli(capsys, "braid", "nf", "-n", "4", "s1 s1^-1")
        assert code == 0 and out.strip() == "Delta^0 ·"

    def test_nf_nontrivial_round_trips(self, capsys):
        code, out, _ = run_cli(capsys, "braid", "nf", "-n", "4", "s1 s2 s1")
        assert code == 0 and out.startswith("Delta^0 ·")

    def test_parse_error(self, capsys):
        code, _, err = run_cli(capsys, "braid", "perm", "-n", "4", "zz")
        assert code == 2 and "error" in err


class TestCosetEnumeration:
    def test_index(self, capsys, sl2_file):
        code, out, _ = run_cli(capsys, "tc", sl2_file, "t t, t s t t s t")
        assert code == 0 and "index: 12" in out

    def test_whole_group(self, capsys, sl2_file):
        code, out, _ = run_cli(capsys, "tc", sl2_file, "s, t")
        assert code == 0 and "index: 1" in out

    def test_abelianization_flag(self, capsys, sl2_file):
        code, out, _ = run_cli(capsys, "tc", sl2_file, "t t, t s t t s t", "--ab")
        assert code == 0 and "abelianization:" in out

    def test_limit_exceeded_exit_code(self, capsys, sl2_file):
        code, _, err = run_cli(capsys, "tc", sl2_file, "t",
                               "--max-cosets", "500")
        assert code == 3 and "exceeded" in err

    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "tc", "/does/not/exist", "t")
        assert code == 2


class TestLinearAlgebra:
    def test_snf(self, capsys):
        code, out, _ = run_cli(capsys, "snf", "[[2,0],[0,3]]")
        assert code == 0
        assert "D = [[1,0],[0,6]]" in out

    def test_sl2word(self, capsys):
        code, out, _ = run_cli(capsys, "sl2word", "[[1,2],[0,1]]")
        assert code == 0 and out.strip() == "t^2"

    def test_sl2word_rejects_bad_determinant(self, capsys):
        code, _, err = run_cli(capsys, "sl2word", "[[2,0],[0,1]]")
        assert code == 2

    def test_snf_parse_error(self, capsys):
        code, _, err = run_cli(capsys, "snf", "[[1,2],[3]]")
        assert code == 2


class TestSubgroup:
    def test_basis(self, capsys):
        code, out, _ = run_cli(capsys, "subgroup", "basis", "-r", "2", "-d", "2",
                               "--images", "id;(1,2)")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "index: 2"
        assert set(lines[1:]) == {"a", "b a b^-1", "b^2"}

    def test_rewrite(self, capsys):
        code, out, _ = run_cli(capsys, "subgroup", "rewrite", "-r", "2", "-d", "2",
                               "--images", "id;(1,2)", "b a b^-1")
        assert code == 0 and out.strip() == "g2"

    def test_rewrite_non_member(self, capsys):
        code, _, err = run_cli(capsys, "subgroup", "rewrite", "-r", "2", "-d", "2",
                               "--images", "id;(1,2)", "b")
        assert code == 2


def test_usage_error_exit_code(capsys):
    assert main(["braid", "nf"]) == 2  # missing -n and word


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "cgkernel", "verify", "--check",
         "presentation.sanity"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert "pass" in proc.stdout

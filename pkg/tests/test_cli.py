"""The command-line surface: output shapes and exit codes."""

import io
import subprocess
import sys

import pytest

from aspdebug.cli import main

from conftest import FIXTURES, ROOT

BIDDING = str(FIXTURES / "bidding.lp")
UMBRELLA = str(FIXTURES / "umbrella.lp")
TESTS_DIR = str(FIXTURES / "tests")


def run(args, stdin_text=""):
    out, err = io.StringIO(), io.StringIO()
    code = main(args, stdin=io.StringIO(stdin_text), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


class TestSolve:
    def test_single_answer_set_one_line(self):
        code, out, _ = run(["solve", UMBRELLA])
        assert out == "no_umbrella rainy wet\n"
        assert code == 0

    def test_incoherent_program_distinct_exit(self):
        code, out, _ = run(["solve", BIDDING])
        assert out == ""
        assert code == 20

    def test_multiple_answer_sets_one_per_line(self, tmp_path):
        path = tmp_path / "choice.lp"
        path.write_text("a | b.\n")
        code, out, _ = run(["solve", str(path)])
        assert out == "a\nb\n"
        assert code == 0


class TestGround:
    def test_bidding_ground_program(self):
        code, out, _ = run(["ground", BIDDING])
        lines = out.splitlines()
        assert code == 0
        assert len(lines) == 9
        assert "some_bid(m2,p1) :- bid(m2,p1,1)." in lines
        assert (
            "bid(m1,p1,1) :- not some_bid(m1,p1), pc(m1), paper(p1)." in lines
        )
        assert "pc(m1)." in lines

    def test_output_is_reparseable(self, tmp_path):
        _, out, _ = run(["ground", BIDDING])
        echo = tmp_path / "ground.lp"
        echo.write_text(out)
        code, again, _ = run(["ground", str(echo)])
        assert code == 0
        assert sorted(again.splitlines()) == sorted(out.splitlines())


class TestTest:
    def test_per_test_lines_and_failure_exit(self):
        code, out, _ = run(["test", UMBRELLA, "--tests", TESTS_DIR])
        assert out == "FAIL dry_umbrella\nPASS some_model\n"
        assert code == 1

    def test_all_passing_exits_zero(self, tmp_path):
        (tmp_path / "any.test").write_text("% anything goes\n")
        code, out, _ = run(["test", UMBRELLA, "--tests", str(tmp_path)])
        assert out == "PASS any\n"
        assert code == 0

    def test_missing_directory_is_a_domain_error(self):
        code, _, err = run(["test", UMBRELLA, "--tests", "/no/such/dir"])
        assert code == 1
        assert "error" in err


class TestErrors:
    def test_parse_error_exits_one_with_location(self, tmp_path):
        path = tmp_path / "bad.lp"
        path.write_text("a :- b\n")
        code, out, err = run(["solve", str(path)])
        assert code == 1
        assert out == ""
        assert "bad.lp" in err

    def test_unsafe_rule_exits_one(self, tmp_path):
        path = tmp_path / "unsafe.lp"
        path.write_text("p(X) :- not q(X).\n")
        code, _, err = run(["solve", str(path)])
        assert code == 1
        assert "X" in err

    def test_missing_file_exits_one(self):
        code, _, err = run(["solve", "/no/such/file.lp"])
        assert code == 1
        assert "error" in err

    def test_no_arguments_is_a_usage_error(self):
        assert run([])[0] == 2

    def test_unknown_subcommand_is_a_usage_error(self):
        assert run(["frobnicate", UMBRELLA])[0] == 2

    def test_test_requires_the_tests_flag(self):
        assert run(["test", UMBRELLA])[0] == 2


class TestDebugLoop:
    def test_coherent_program_has_nothing_to_debug(self):
        code, out, _ = run(["debug", UMBRELLA])
        assert code == 0
        assert "nothing to debug" in out
        assert "no_umbrella rainy wet" in out

    def test_first_iteration_prints_rules_and_query(self):
        code, out, _ = run(["debug", BIDDING], "q\n")
        assert code == 0
        assert "[1] %s:2: some_bid(M,P) :- bid(M,P,X)." % BIDDING in out
        assert (
            "[2] %s:3: bid(M,P,1) :- not some_bid(M,P), pc(M), paper(P)." % BIDDING
            in out
        )
        assert "{M=m2,P=p1,X=1}" in out
        assert "1. bid(m2,p1,1)" in out
        assert "3. some_bid(m1,p1)" in out

    def test_answering_yes_narrows_the_core(self):
        code, out, _ = run(["debug", BIDDING], "y\nq\n")
        assert code == 0
        # after the answer the second report shows rule 1 alone
        second = out.split("suspect rules:")[2]
        assert "[1]" in second and "[2]" not in second
        assert "conflicting expectations: bid(m2,p1,1)" in second

    def test_numbered_answer_picks_from_the_pool(self):
        code, out, _ = run(["debug", BIDDING], "n 3\nq\n")
        assert code == 0
        assert out.count("suspect rules:") == 2

    def test_undo_restores_the_wide_core(self):
        code, out, _ = run(["debug", BIDDING], "y\nundo\nq\n")
        assert code == 0
        reports = out.split("suspect rules:")[1:]
        assert len(reports) == 3
        assert "[2]" in reports[0] and "[2]" not in reports[1] and "[2]" in reports[2]

    def test_session_with_failing_test_file(self):
        test_file = str(FIXTURES / "tests" / "dry_umbrella.test")
        code, out, _ = run(
            ["debug", UMBRELLA, "--test", test_file], "y\ny\n"
        )
        assert code == 0
        assert "umbrella.lp:5" in out
        assert "dry_umbrella.test:2" in out
        assert "no further questions" in out

    def test_bad_input_reprompts(self):
        code, out, _ = run(["debug", BIDDING], "what\ny 99\nq\n")
        assert code == 0
        assert "say y or n" in out
        assert "no such atom" in out

    def test_eof_ends_the_session(self):
        code, out, _ = run(["debug", BIDDING], "")
        assert code == 0
        assert "suspect rules:" in out


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "aspdebug.cli", "solve", UMBRELLA],
            capture_output=True,
            text=True,
            cwd=str(ROOT),
        )
        assert proc.stdout == "no_umbrella rainy wet\n"
        assert proc.returncode == 0

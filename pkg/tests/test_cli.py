"""CLI surface tests: exact output strings, exit codes, determinism."""

from __future__ import annotations

import json

import pytest

from ucfreq.cli import main
from ucfreq.setfam import family, family_to_json, family_to_text


@pytest.fixture
def chain_family_json(tmp_path):
    path = tmp_path / "chain.json"
    path.write_text(family_to_json(family(2, [[], [1], [1, 2]])))
    return str(path)


@pytest.fixture
def flex_family_text(tmp_path):
    fam = family(5, [[2], [2, 4], [3], [1]])
    from ucfreq.setfam import union_closure

    path = tmp_path / "flex.txt"
    path.write_text(family_to_text(union_closure(fam)))
    return str(path)


class TestTable:
    def test_csv_matches_expected(self, capsys):
        assert main(["table"]) == 0
        out = capsys.readouterr().out
        assert out == (
            "s,|C|=0,|C|=1,|C|=2,|C|=3+\n"
            "4,81,81,114,infeasible\n"
            "5,237/2,231/2,122,114\n"
        )

    def test_deterministic(self, capsys):
        main(["table"])
        first = capsys.readouterr().out
        main(["table"])
        assert capsys.readouterr().out == first

    def test_json_with_certificates(self, capsys):
        assert main(["table", "--format", "json", "--certificates"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["schema"] == 1
        assert len(doc["cells"]) == 8
        assert all("certificate" in cell for cell in doc["cells"])

    def test_certificates_need_json(self, capsys):
        assert main(["table", "--certificates"]) == 2

    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "table.csv"
        assert main(["table", "--out", str(target)]) == 0
        assert capsys.readouterr().out == ""
        assert target.read_text().startswith("s,")


class TestSolveCommands:
    def test_solve_base_5(self, capsys):
        assert main(["solve-base", "--s", "5"]) == 0
        assert capsys.readouterr().out == "141/2\n"

    def test_solve_base_4_approx(self, capsys):
        assert main(["solve-base", "--s", "4", "--approx"]) == 0
        assert capsys.readouterr().out == "45.0\n"

    def test_solve_case_cells(self, capsys):
        assert main(["solve-case", "--s", "4", "--c", "3"]) == 0
        assert capsys.readouterr().out == "infeasible\n"
        assert main(["solve-case", "--s", "5", "--c", "1"]) == 0
        assert capsys.readouterr().out == "231/2\n"

    def test_solve_case_aux(self, capsys):
        assert main(["solve-case", "--s", "5", "--c", "aux"]) == 0
        assert capsys.readouterr().out == "129\n"

    def test_aux_needs_s5(self, capsys):
        assert main(["solve-case", "--s", "4", "--c", "aux"]) == 2

    def test_dump_lp(self, capsys):
        assert main(["solve-case", "--s", "4", "--c", "0", "--dump-lp"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("min: q_empty + q_a")
        assert "cap_a:" in out
        assert "floor_q_a: q_a >= 2" in out
        assert "status: optimal" in out
        assert "value: 81" in out

    def test_min_objective_tokens(self, capsys):
        assert main(["min-objective", "--s", "4", "--objective", "q_singleton"]) == 0
        assert capsys.readouterr().out == "8\n"
        assert main(["min-objective", "--s", "5", "--objective", "sum_singletons"]) == 0
        assert capsys.readouterr().out == "85/2\n"
        assert main(["min-objective", "--s", "4", "--objective", "q_a+q_b"]) == 0
        assert capsys.readouterr().out == "16\n"

    def test_min_objective_bad_term(self, capsys):
        assert main(["min-objective", "--s", "4", "--objective", "q_abcde"]) == 2


class TestAnalyze:
    def test_chain_family(self, chain_family_json, capsys):
        assert main(["analyze", chain_family_json]) == 0
        out = capsys.readouterr().out
        assert "m = 3\n" in out
        assert "frequencies: 1=2 2=1\n" in out
        assert "f_1 = 2/3\n" in out
        assert "f_2 = 1/3\n" in out
        assert "  {2} incidence=1" in out

    def test_trace_block(self, chain_family_json, capsys):
        assert main(["analyze", chain_family_json, "--base", "2"]) == 0
        out = capsys.readouterr().out
        assert "trace counts for S = {2}:\n  {} -> 2\n  {2} -> 1\n" in out

    def test_rejects_non_union_closed(self, tmp_path, capsys):
        path = tmp_path / "bad.txt"
        path.write_text("1\n2\n")
        assert main(["analyze", str(path)]) == 2

    def test_add_empty_changes_m(self, tmp_path, capsys):
        path = tmp_path / "f.txt"
        path.write_text("1\n1 2\n")
        assert main(["analyze", str(path)]) == 0
        assert "m = 2" in capsys.readouterr().out
        assert main(["analyze", str(path), "--add-empty"]) == 0
        assert "m = 3" in capsys.readouterr().out

    def test_missing_file(self, capsys):
        assert main(["analyze", "/nonexistent/f.json"]) == 2


class TestCovers:
    def test_two_edges(self, tmp_path, capsys):
        path = tmp_path / "edges.txt"
        path.write_text("1 2\n2 3\n")
        assert main(["covers", str(path)]) == 0
        out = capsys.readouterr().out
        assert out == (
            "minimal covers:\n"
            "  {1,3}\n"
            "  {2}\n"
            "input is antichain: yes\n"
            "MC(MC(F)) == F: yes\n"
        )

    def test_non_antichain_reports_reduction(self, tmp_path, capsys):
        path = tmp_path / "nest.txt"
        path.write_text("1\n1 2\n")
        assert main(["covers", str(path)]) == 0
        out = capsys.readouterr().out
        assert "input is antichain: no" in out
        assert "minimal elements" in out

    def test_empty_member_rejected(self, tmp_path, capsys):
        path = tmp_path / "empty.txt"
        path.write_text("-\n1\n")
        assert main(["covers", str(path)]) == 2


class TestSearchNagel:
    def test_n2_report(self, capsys):
        assert main(["search-nagel", "--n", "2", "--quiet"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["families_checked"] == 8
        assert doc["min_f2"] == "1/3"
        assert doc["passed"] is True

    def test_usage_error_on_n1(self, capsys):
        assert main(["search-nagel", "--n", "1", "--quiet"]) == 2


class TestCheckLemmas:
    def test_fixture(self, flex_family_text, capsys):
        assert main(["check-lemmas", flex_family_text, "--base", "2,3"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["passed"] is True

    def test_bad_base(self, flex_family_text, capsys):
        assert main(["check-lemmas", flex_family_text, "--base", "2"]) == 2


class TestUsage:
    def test_no_command(self, capsys):
        assert main([]) == 1

    def test_unknown_command(self, capsys):
        assert main(["bogus"]) == 1

    def test_bad_flag_value(self, capsys):
        assert main(["solve-base", "--s", "6"]) == 1

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0

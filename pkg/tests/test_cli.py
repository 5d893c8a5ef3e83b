from __future__ import annotations

import json

import pytest

from rbymatch.cli import main

FIG1_INSTANCE = "cycle RBYBRBYB\nrequire 1 2\n"


@pytest.fixture
def fig1_file(tmp_path):
    p = tmp_path / "fig1.txt"
    p.write_text(FIG1_INSTANCE)
    return str(p)


def test_solve_human(fig1_file, capsys):
    assert main(["solve", fig1_file]) == 0
    out = capsys.readouterr().out
    assert "alpha_star: 4" in out
    assert "face: segment" in out


def test_solve_json(fig1_file, capsys):
    assert main(["solve", fig1_file, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["alpha_star"] == "4/1"
    assert payload["face_class"] == "segment"
    assert payload["matching"] == sorted(payload["matching"])
    assert payload["guarantees"]["red_exact"] is True


def test_solve_infeasible_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("cycle RBYBRBYB\nrequire 3 0\n")
    assert main(["solve", str(p)]) == 2


def test_parse_error_exit_code(tmp_path, capsys):
    p = tmp_path / "broken.txt"
    p.write_text("graph 2\ne 0 9 R\nrequire 0 0\n")
    assert main(["solve", str(p)]) == 3
    assert "line 2" in capsys.readouterr().err


def test_cap_exit_code(tmp_path):
    p = tmp_path / "big.txt"
    lines = ["graph 30"] + [f"e {i} {i + 1} R" for i in range(29)] + ["require 1 0"]
    p.write_text("\n".join(lines) + "\n")
    assert main(["solve", str(p)]) == 4


def test_oracle_subcommand(fig1_file, capsys):
    assert main(["oracle", fig1_file, "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["alpha_prime"] == 4
    assert payload["optimum_size"] == 3


def test_cycle_subcommand(capsys):
    assert main(["cycle", "RBYBRBYB", "--kr", "1", "--kb", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["profile"]["red"] == 1
    assert payload["profile"]["blue"] == 2
    assert payload["certificate"]["size_ok"] is True


def test_fractional_subcommand(capsys):
    assert main(["fractional", "YBYBYRYRYR", "--kr", "1", "--kb", "2/3", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["profile"]["red"] == 1
    assert payload["profile"]["blue"] in (0, 1)
    assert payload["size"] >= 4


def test_curve_subcommand(capsys):
    rc = main(
        [
            "curve",
            "YBYBYRYRYBRBYRBRBR",
            "--kr",
            "3",
            "--kb",
            "3",
            "--points",
            "--pairs",
            "--json",
        ]
    )
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["delta"] == [4, 2]
    assert payload["q"] == [2, 1]
    assert payload["injective"] is True
    assert payload["breakpoints"][0] == [0, 0]
    assert {"u": 5, "v": 2} in payload["intersecting_pairs"]
    assert payload["crossing"] is not None


def test_gen_round_trip(capsys):
    assert main(["gen", "--mode", "random_cycle", "--nodes", "8", "--seed", "1"]) == 0
    first = capsys.readouterr().out
    assert main(["gen", "--mode", "random_cycle", "--nodes", "8", "--seed", "1"]) == 0
    second = capsys.readouterr().out
    assert first == second
    assert first.startswith("cycle ")


def test_verify_subcommand(tmp_path, capsys):
    p = tmp_path / "one.txt"
    p.write_text("graph 2\ne 0 1 R\nrequire 1 0\n")
    assert main(["verify", str(p), "--matching", "0"]) == 0
    assert capsys.readouterr().out.strip() == "ok"
    assert main(["verify", str(p), "--matching", ""]) == 1
    assert capsys.readouterr().out.strip() == "FAIL"

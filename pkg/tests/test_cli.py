"""CLI behavior: exit codes, reproducible reports, json mirroring, config."""

from __future__ import annotations

import json

import pytest

from sr_chroma.cli import main

K3 = "v 1\nv 2\nv 3\ne 1 2\ne 2 3\ne 1 3\n"
EDGE = "v a\nv b\ne a b\n"


@pytest.fixture
def k3_file(tmp_path):
    path = tmp_path / "k3.g"
    path.write_text(K3)
    return str(path)


@pytest.fixture
def edge_file(tmp_path):
    path = tmp_path / "edge.g"
    path.write_text(EDGE)
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_chromatic_text(capsys, k3_file):
    code, out, _ = run(capsys, ["chromatic", k3_file])
    assert code == 0
    assert out.splitlines()[0] == "chi = 3"


def test_chromatic_with_span_witness(capsys, k3_file):
    code, out, _ = run(capsys, ["chromatic", k3_file, "--span", "2"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "chi = 3"
    assert lines[1] == "s_2chi = 3"
    assert len(lines) == 5  # three witness lines


def test_missing_file_is_input_error(capsys, tmp_path):
    code, _, err = run(capsys, ["chromatic", str(tmp_path / "missing.g")])
    assert code == 2
    assert "error" in err


def test_parse_error_reports_line(capsys, tmp_path):
    path = tmp_path / "bad.g"
    path.write_text("v a\ne a a\n")
    code, _, err = run(capsys, ["chromatic", str(path)])
    assert code == 2
    assert "line 2" in err


def test_span_chromatic_command(capsys, edge_file):
    code, out, _ = run(capsys, ["span-chromatic", edge_file, "--p", "3"])
    assert code == 0
    assert out.splitlines()[0] == "s_3chi = 2"


def test_reports_are_byte_identical(capsys, k3_file):
    _, first, _ = run(capsys, ["realizable", "--family", "A", "--vector", "1,1", k3_file])
    _, second, _ = run(capsys, ["realizable", "--family", "A", "--vector", "1,1", k3_file])
    assert first == second


def test_json_round_trip(capsys, k3_file):
    code, out, _ = run(
        capsys, ["realizable", "--family", "A", "--vector", "1,1", "--format", "json", k3_file]
    )
    assert code == 1
    payload = json.loads(out)
    assert json.loads(json.dumps(payload)) == payload
    assert payload["status"] == "CertifiedNotRealizable"
    assert payload["witness"]["multiset"] == [4, 6, 8, 8]


def test_realizable_exit_codes(capsys, k3_file):
    code, out, _ = run(capsys, ["realizable", "--family", "B", "--vector", "3", k3_file])
    assert code == 0
    assert out.splitlines()[0] == "status: CertifiedRealizable"
    code, _, _ = run(capsys, ["realizable", "--family", "B", "--vector", "2", k3_file])
    assert code == 1


def test_realizable_inconclusive_exit(capsys, tmp_path):
    c5 = tmp_path / "c5.g"
    c5.write_text("v 1\nv 2\nv 3\nv 4\nv 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n")
    code, out, _ = run(capsys, ["realizable", "--family", "A", "--vector", "2,2", str(c5)])
    assert code == 4
    assert out.splitlines()[0] == "status: Inconclusive"


def test_necessary_exit_codes(capsys, edge_file, k3_file):
    code, out, _ = run(capsys, ["necessary", "--family", "B", "--vector", "1", edge_file])
    assert code == 1
    assert out.strip() == "s_3chi=2 > bound=1"
    code, _, _ = run(capsys, ["necessary", "--family", "B", "--vector", "3", k3_file])
    assert code == 4


def test_action_search_exhausted(capsys):
    code, out, _ = run(capsys, ["action-search", "--free", "y:8", "--p", "3"])
    assert code == 1
    assert out.startswith("exhausted (relative to relation set")


def test_action_search_found_and_check_round_trip(capsys, tmp_path):
    c4 = tmp_path / "c4.g"
    c4.write_text("v 1\nv 2\nv 3\nv 4\ne 1 2\ne 2 3\ne 3 4\ne 4 1\n")
    code, out, _ = run(
        capsys, ["action-search", "--family", "B", "--vector", "2", str(c4)]
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "found"
    table_file = tmp_path / "table.txt"
    table_file.write_text("\n".join(lines[1:]) + "\n")
    code, out, _ = run(
        capsys,
        ["action-check", "--family", "B", "--vector", "2", str(c4), "--table", str(table_file)],
    )
    assert code == 0
    assert "pass" in out


def test_action_check_flags_violations(capsys, tmp_path):
    table_file = tmp_path / "table.txt"
    table_file.write_text("P^1(y) = 0\nP^2(y) = 0\nP^3(y) = 0\n")
    code, out, _ = run(
        capsys, ["action-check", "--free", "y:8", "--p", "3", "--table", str(table_file)]
    )
    assert code == 1
    assert "violation" in out


def test_action_search_even_prime_usage_error(capsys):
    code, _, err = run(capsys, ["action-search", "--free", "y:8", "--p", "2"])
    assert code == 2
    assert "odd prime" in err


def test_action_search_cap_exit(capsys):
    code, _, err = run(capsys, ["action-search", "--free", "x:4", "--p", "3", "--cap", "1"])
    assert code == 3
    assert "budget" in err


def test_build_complex_output(capsys, k3_file):
    code, out, _ = run(capsys, ["build-complex", "--family", "B", "--vector", "2", k3_file])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "family = B"
    assert lines[1] == "p = 3"
    assert lines[2] == "vector = 2"
    assert "graph:" in lines
    assert "e 1 2" in lines


def test_partition_command(capsys, k3_file):
    code, out, _ = run(capsys, ["partition", "--family", "B", "--vector", "3", k3_file])
    assert code == 0
    assert out.splitlines()[0].startswith("V_1:")
    assert "verified: True" in out


def test_partition_command_non_uniform(capsys, edge_file, k3_file):
    code, out, _ = run(
        capsys, ["partition", "--family", "Bp", "--p", "5", "--vector", "3,2", edge_file]
    )
    assert code == 0
    assert "verified: True" in out
    code, _, _ = run(capsys, ["partition", "--family", "A", "--vector", "1,1", k3_file])
    assert code == 4  # chi = 3, no construction applies


def test_decompose_command(capsys):
    code, out, _ = run(capsys, ["decompose", "--vector", "5,3,4,2", "--c", "3"])
    assert code == 0
    assert out.splitlines() == ["s'  = 3,3,2,2", "s'' = 2,0,2,0"]
    code, _, _ = run(capsys, ["decompose", "--vector", "1,1", "--c", "3"])
    assert code == 1


def test_decompose_takes_chromatic_from_graph(capsys, k3_file):
    code, out, _ = run(capsys, ["decompose", "--vector", "3,2", k3_file])
    assert code == 0
    assert json.loads(run(capsys, ["decompose", "--vector", "3,2", k3_file, "--format", "json"])[1])["c"] == 3


def test_multiset_command(capsys):
    code, out, _ = run(capsys, ["multiset", "--entries", "4,6,8,8"])
    assert code == 1
    code, out, _ = run(capsys, ["multiset", "--entries", "4,4,6,8,8"])
    assert code == 0
    assert "{4,6,8} + {4,8}" in out


def test_multiset_family_file_override(capsys, tmp_path):
    fam = tmp_path / "fam.txt"
    fam.write_text("4,6,8,8\n")
    code, _, _ = run(
        capsys, ["multiset", "--entries", "4,6,8,8", "--multiset-family", str(fam)]
    )
    assert code == 0


def test_config_file_supplies_defaults_and_flags_win(capsys, tmp_path, k3_file):
    cfg = tmp_path / "run.cfg"
    cfg.write_text(f"family=B\nvector=3\ngraph={k3_file}\nformat=json\n")
    code, out, _ = run(capsys, ["realizable", "--config", str(cfg)])
    assert code == 0
    assert json.loads(out)["status"] == "CertifiedRealizable"
    # flag overrides config
    code, out, _ = run(capsys, ["realizable", "--config", str(cfg), "--vector", "2"])
    assert code == 1


def test_unknown_config_key_rejected(capsys, tmp_path, k3_file):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("nonsense=1\n")
    code, _, err = run(capsys, ["chromatic", k3_file, "--config", str(cfg)])
    assert code == 2
    assert "config line 1" in err


def test_missing_config_file(capsys, tmp_path, k3_file):
    code, _, err = run(capsys, ["chromatic", k3_file, "--config", str(tmp_path / "no.cfg")])
    assert code == 2
    assert "config" in err

"""End-to-end checks for the command line interface."""

import json
import subprocess
import sys

import pytest

from crcodes import cli
from crcodes.codes import load_code
from crcodes.graphs import build_coset_graph, parse_graph6
from crcodes.regularity import IntersectionArray


def run_cli(capsys, argv):
    code = cli.main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run_cli(capsys, argv + ["--format", "json"])
    return code, json.loads(out)


def test_verify_small_suites_pass(capsys):
    code, out = run_cli(capsys, ["verify", "--m", "4", "--suite", "cr,duals"])
    assert code == 0
    assert "FAIL" not in out
    assert "cria-array" in out and "dual-spectrum" in out


def test_verify_json_report_shape(capsys):
    code, report = run_json(capsys, ["verify", "--m", "4", "--suite", "duals"])
    assert code == 0
    assert report["schema"] == "crcodes-report/1"
    assert report["summary"]["verdict"] == "pass"
    assert report["summary"]["checks"] == len(report["results"])
    for row in report["results"]:
        assert set(row) == {
            "claim", "m", "level", "extended", "ok", "expected", "computed", "seconds",
        }
        assert row["ok"] is True


def test_verify_exhaustive_flag(capsys):
    code, report = run_json(
        capsys, ["verify", "--m", "4", "--suite", "cr", "--exhaustive"]
    )
    assert code == 0
    rows = [r for r in report["results"] if r["claim"] == "membership-syndrome"]
    assert rows and "exhaustive" in rows[0]["computed"]


def test_verify_extended_filter(capsys):
    code, report = run_json(
        capsys, ["verify", "--m", "4", "--suite", "up", "--extended"]
    )
    assert code == 0
    assert report["results"]
    assert all(row["extended"] for row in report["results"])


def test_verify_threads_deterministic(capsys):
    _, one = run_json(capsys, ["verify", "--m", "4", "--suite", "cr,duals"])
    _, four = run_json(
        capsys, ["verify", "--m", "4", "--suite", "cr,duals", "--threads", "4"]
    )
    strip = lambda rep: [
        {k: v for k, v in row.items() if k != "seconds"} for row in rep["results"]
    ]
    assert strip(one) == strip(four)


def test_verify_mismatch_exits_2(capsys, monkeypatch):
    # poison the expected array so a correct computation reads as a failure
    real = cli.cria_array

    def fake(m, i):
        arr = real(m, i)
        return IntersectionArray((arr.b[0] + 1,) + arr.b[1:], arr.c)

    monkeypatch.setattr(cli, "cria_array", fake)
    code, report = run_json(capsys, ["verify", "--m", "4", "--suite", "cr"])
    assert code == 2
    assert report["summary"]["verdict"] == "fail"
    assert any(not row["ok"] for row in report["results"])


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--m", "5"],
        ["verify", "--m", "4", "--suite", "nope"],
        ["verify", "--m", "4", "--subspace-basis", "01x"],
        ["build", "--m", "14"],
        ["export", "--m", "4", "--levels", "7"],
        ["no-such-command"],
        ["verify", "--bogus-flag"],
    ],
)
def test_config_errors_exit_3(capsys, argv):
    code = cli.main(argv)
    assert code == 3


def test_build_writes_descriptor_files(capsys, tmp_path):
    code, out = run_cli(
        capsys, ["build", "--m", "4", "--extended", "--out", str(tmp_path)]
    )
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert "code_m4_i2.json" in names and "code_m4_i2.pchk" in names
    assert "code_m4_i1_ext.json" in names
    assert len(names) == 12
    loaded = load_code(str(tmp_path / "code_m4_i2.json"))
    assert loaded.level == 2 and not loaded.extended
    loaded_ext = load_code(str(tmp_path / "code_m4_i1_ext.json"))
    assert loaded_ext.extended and loaded_ext.length == 16


def test_build_level_filter(capsys, tmp_path):
    code, _ = run_cli(
        capsys, ["build", "--m", "4", "--levels", "1", "--out", str(tmp_path)]
    )
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["code_m4_i1.json", "code_m4_i1.pchk"]


def test_build_alternate_basis_dimensions(capsys, tmp_path):
    code, report = run_json(
        capsys,
        ["build", "--m", "6", "--subspace-basis", "001,011,101",
         "--out", str(tmp_path)],
    )
    assert code == 0
    assert report["dimensions"] == {"0": 57, "1": 56, "2": 55, "3": 54}


def test_export_graph6_roundtrip(capsys, tmp_path, ctx4, chain4):
    code, _ = run_cli(
        capsys,
        ["export", "--m", "4", "--levels", "1", "--out", str(tmp_path)],
    )
    assert code == 0
    data = (tmp_path / "gamma_m4_i1.g6").read_bytes()
    graph = build_coset_graph(chain4[1])
    assert parse_graph6(data) == [tuple(row) for row in graph.adjacency.tolist()]


def test_export_is_deterministic(capsys, tmp_path):
    args = ["export", "--m", "4", "--levels", "2", "--extended"]
    run_cli(capsys, args + ["--out", str(tmp_path / "a")])
    run_cli(capsys, args + ["--out", str(tmp_path / "b")])
    first = (tmp_path / "a" / "gamma_m4_i2_ext.g6").read_bytes()
    second = (tmp_path / "b" / "gamma_m4_i2_ext.g6").read_bytes()
    assert first == second


def test_export_edge_list_size(capsys, tmp_path):
    code, _ = run_cli(
        capsys,
        ["export", "--m", "4", "--levels", "2", "--format", "edge-list",
         "--out", str(tmp_path)],
    )
    assert code == 0
    lines = (tmp_path / "gamma_m4_i2.edges").read_text().strip().splitlines()
    assert len(lines) == 64 * 15 // 2


def test_conjecture_text_names_the_group(capsys):
    code, out = run_cli(capsys, ["conjecture", "--m", "6"])
    assert code == 0
    assert out.count("certified") == 4
    assert "SL2+frob" in out


def test_conjecture_json(capsys):
    code, report = run_json(capsys, ["conjecture", "--m", "4"])
    assert code == 0
    assert [row["level"] for row in report["results"]] == [0, 1, 2]
    assert all(row["verdict"] == "certified" for row in report["results"])
    assert all(row["predicted"] for row in report["results"])


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "crcodes.cli", "build", "--m", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 3
    assert "error:" in proc.stderr

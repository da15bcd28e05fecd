"""End-to-end checks of the command-line interface (in-process)."""

import json
import math

import pytest

from symfermion.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json_lines(out):
    return [json.loads(line) for line in out.splitlines() if line.strip()]


def test_verify_staggered(capsys):
    code, out, err = _run(capsys, "verify-staggered")
    assert code == 0
    records = _json_lines(out)
    assert len(records) == 5
    assert [r["check"] for r in records] == [f"staggered_{c}" for c in "abcde"]
    assert all(r["passed"] for r in records)
    assert "all passed" in err


def test_verify_algebra(capsys):
    code, out, _ = _run(capsys, "verify-algebra", "--max-degree", "3", "--seed", "7")
    assert code == 0
    records = _json_lines(out)
    assert records[0] == {"check": "seed", "input": "7", "passed": True}
    assert all(r["passed"] for r in records)
    counts = {r["check"] for r in records}
    assert {"anticommutator", "basis_count", "automorphism_additive"} <= counts


def test_verify_virasoro(capsys):
    code, out, _ = _run(capsys, "verify-virasoro", "--max-degree", "3", "--max-mode", "3")
    assert code == 0
    assert all(r["passed"] for r in _json_lines(out))


def test_verify_determinism(capsys):
    _, out1, _ = _run(capsys, "verify-virasoro", "--max-degree", "2", "--seed", "5")
    _, out2, _ = _run(capsys, "verify-virasoro", "--max-degree", "2", "--seed", "5")
    assert out1 == out2


def test_eval_two_point_value(capsys):
    code, out, _ = _run(
        capsys, "eval", "corr(disk; 0; [xi@0.0+0.0i, theta@0.5+0.0i])", "--nodes", "64"
    )
    assert code == 0
    rec = _json_lines(out)[0]
    # <xi(0) theta(1/2)>_disk = 4 pi G(0, 1/2) = 2 log 2
    assert abs(rec["value_re"] - 2 * math.log(2)) < 1e-10
    assert abs(rec["value_im"]) < 1e-12
    assert rec["abs_err_estimate"] < 1e-10


def test_eval_parse_error_exit_2(capsys):
    code, _, err = _run(capsys, "eval", "corr(disk; 0; [xi@0.5])")
    assert code == 2
    assert "parse error" in err


def test_eval_exterior_point_exit_2(capsys):
    code, _, err = _run(capsys, "eval", "corr(disk; 0; [omega@2.0+0.0i])")
    assert code == 2
    assert "error" in err


def test_green_values(capsys):
    code, out, _ = _run(capsys, "green", "disk", "0.0+0.0i", "0.5+0.0i")
    assert code == 0
    rec = _json_lines(out)[0]
    assert abs(rec["total"] - math.log(2) / (2 * math.pi)) < 1e-12
    assert abs(rec["total"] - rec["regular"] - rec["singular"]) < 1e-14


def test_grid_csv_output(capsys):
    code, out, err = _run(
        capsys,
        "grid",
        "corr(disk; 0; [omega@0.1+0.1i])",
        "--nx", "4", "--ny", "4", "--nodes", "32",
        "--xmin", "-0.5", "--xmax", "0.5", "--ymin", "-0.5", "--ymax", "0.5",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "x,y,re,im"
    rows = [line.split(",") for line in lines[1:]]
    assert 0 < len(rows) <= 16
    for row in rows:
        assert len(row) == 4
        float(row[0]), float(row[1]), float(row[2]), float(row[3])
    assert "points" in err


def test_grid_figure_written(tmp_path, capsys):
    fig = tmp_path / "heatmap.png"
    code, _, _ = _run(
        capsys,
        "grid",
        "corr(disk; 0; [omega@0.1+0.1i])",
        "--nx", "3", "--ny", "3", "--nodes", "32",
        "--figure", str(fig),
    )
    assert code == 0
    assert fig.exists() and fig.stat().st_size > 0


def test_grid_index_out_of_range(capsys):
    code, _, err = _run(
        capsys, "grid", "corr(disk; 0; [omega@0.1+0.1i])", "--index", "3"
    )
    assert code == 2
    assert "out of range" in err


def test_alpha_override(capsys):
    _, out0, _ = _run(
        capsys, "eval", "corr(disk; 0; [omega@0.2+0.1i])", "--nodes", "32"
    )
    _, out1, _ = _run(
        capsys, "eval", "corr(disk; 0; [omega@0.2+0.1i])", "--alpha", "1.5", "--nodes", "32"
    )
    v0 = _json_lines(out0)[0]["value_re"]
    v1 = _json_lines(out1)[0]["value_re"]
    assert abs((v0 - v1) - 1.5) < 1e-10


def test_missing_subcommand_exits(capsys):
    with pytest.raises(SystemExit):
        main([])
    capsys.readouterr()

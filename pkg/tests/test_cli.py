import math
import subprocess
import sys

import pytest

from revan.cli import main
from revan.graph import complete_graph, path_graph, write_edge_list
from revan.models import SQRT2
from revan.sweep import COLUMNS, format_rows, parse_rows, read_rows


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def kv(text):
    return dict(line.split(" ", 1) for line in text.strip().splitlines())


def test_compute_path(tmp_path, capsys):
    f = tmp_path / "p4.txt"
    write_edge_list(path_graph(4), f)
    code, out, _ = run(capsys, "compute", f)
    assert code == 0
    assert "R1 8" in out.splitlines() and "M1 10" in out.splitlines()
    vals = kv(out)
    assert vals["Delta"] == "2" and vals["delta"] == "1" and vals["n"] == "4" and vals["m"] == "3"
    assert len([k for k in vals if k.startswith(("M", "R", "F", "S", "ln"))]) == 16
    assert vals["degenerate"] == "-"


def test_compute_triangle(tmp_path, capsys):
    f = tmp_path / "k3.txt"
    write_edge_list(complete_graph(3), f)
    code, out, _ = run(capsys, "compute", f)
    vals = kv(out)
    assert code == 0 and vals["R1"] == "12"
    assert vals["RSO"].startswith("8.485281")


def test_compute_rejects_duplicate(tmp_path, capsys):
    f = tmp_path / "dup.txt"
    f.write_text("3 2\n0 1\n0 1\n")
    code, _, err = run(capsys, "compute", f)
    assert code == 3
    assert "duplicate" in err and "line 3" in err


def test_compute_missing_file(tmp_path, capsys):
    code, _, err = run(capsys, "compute", tmp_path / "nope.txt")
    assert code == 3


def test_generate_round_trip(tmp_path, capsys):
    f = tmp_path / "g.txt"
    assert run(capsys, "generate", "RG", 30, "sqrt2", "--seed", 4, "-o", f)[0] == 0
    code, out, _ = run(capsys, "compute", f)
    assert kv(out)["m"] == str(30 * 29 // 2)
    code, out, _ = run(capsys, "generate", "ER", 8, 0.5, "--seed", 4, "--index", 2)
    assert out.splitlines()[0].startswith("8 ")
    assert run(capsys, "generate", "ER", 8, 1.5)[0] == 2


def test_ensemble_complete_graph_rows(tmp_path, capsys):
    out = tmp_path / "er.csv"
    code, _, err = run(capsys, "ensemble", "--model", "ER", "--n", 10, "--grid", 0.5, 1, "-R", 5, "-o", out)
    assert code == 0
    assert "[2/2]" in err  # progress on stderr
    rows = read_rows(out)
    assert [r.param for r in rows] == [0.5, 1.0]
    last = rows[-1]
    assert last.mean_d == last.mean_r == last.mean_Delta == last.mean_delta == 9
    assert last.sem_d == 0 and last.realizations == 5


def test_er_log_grid_ends_in_complete_graph(tmp_path, capsys):
    out = tmp_path / "er125.csv"
    code, _, _ = run(capsys, "ensemble", "--model", "ER", "--n", 125,
                     "--logspace", 0.001, 1, 25, "-R", 1000, "-o", out)
    rows = read_rows(out)
    assert code == 0 and len(rows) == 25
    assert rows[-1].param == 1.0 and rows[-1].mean_r == 124
    assert rows[0].param == 0.001
    d = [r.mean_d for r in rows]
    assert all(b > a for a, b in zip(d, d[1:]))


def test_rg_log_grid_ends_in_complete_graph(tmp_path, capsys):
    out = tmp_path / "rg125.csv"
    code, _, _ = run(capsys, "ensemble", "--model", "RG", "--n", 125,
                     "--logspace", 0.01, "sqrt2", 25, "-R", 1000, "-o", out)
    rows = read_rows(out)
    assert code == 0 and len(rows) == 25
    assert rows[-1].param == SQRT2 and rows[-1].mean_d == 124
    # Revan and degree curves approach each other at the dense end
    last = rows[-1]
    assert last.index_mean["R1"] == last.index_mean["M1"]


def test_dense_er_r1_prediction(tmp_path, capsys):
    out = tmp_path / "dense.csv"
    run(capsys, "ensemble", "--model", "ER", "--n", 500, "--grid", 0.5, "-R", 200, "-o", out)
    row = read_rows(out)[0]
    assert row.index_mean["R1"] / 500 == pytest.approx(row.mean_r**2, rel=0.05)


@pytest.mark.parametrize(
    "argv",
    [
        ["--model", "ER", "--grid", 0.5, 1.2],
        ["--model", "RG", "--grid", 1.5],
        ["--model", "ER", "--logspace", 0, 1, 5],
        ["--model", "ER", "--grid", 0.5, "-R", 0],
        ["--model", "ER", "--grid", 0.5, "--threads", 0],
    ],
)
def test_ensemble_rejects_bad_input_before_work(tmp_path, capsys, argv):
    out = tmp_path / "bad.csv"
    code, _, err = run(capsys, "ensemble", "--n", 10, *argv, "-o", out)
    assert code == 2 and "error" in err
    assert not out.exists()


def test_csv_round_trip_is_byte_identical(tmp_path, capsys):
    out = tmp_path / "s.csv"
    run(capsys, "ensemble", "--model", "ER", "--n", 15, 30, "--logspace", 0.01, 1, 6, "-R", 30, "-o", out)
    text = out.read_text()
    rows = parse_rows(text)
    assert text.splitlines()[0].split(",") == list(COLUMNS)
    assert format_rows(rows) == text
    # sparse points carry degenerate products; nan and counts survive too
    assert any(r.degenerate["lnR2Pi"] > 0 for r in rows)


def test_csv_missing_column(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("model,n,param\nER,10,0.5\n")
    code, _, err = run(capsys, "collapse", bad, bad)
    assert code == 3 and "missing columns" in err


@pytest.fixture
def dense_csvs(tmp_path, capsys):
    paths = []
    for name in ("a.csv", "b.csv"):
        p = tmp_path / name
        run(capsys, "ensemble", "--model", "ER", "--n", 200, "--grid", 0.5, 1, "-R", 20, "--seed", 8, "-o", p)
        paths.append(p)
    return paths


def test_collapse_identical_runs(dense_csvs, capsys):
    assert dense_csvs[0].read_bytes() == dense_csvs[1].read_bytes()
    code, out, _ = run(capsys, "collapse", *dense_csvs, "--index", "R1")
    assert code == 0
    assert "collapse=0 " in out and out.strip().endswith("PASS")


def test_collapse_zero_tolerance_fails(dense_csvs, capsys):
    code, out, _ = run(capsys, "collapse", *dense_csvs, "--tolerance", 0)
    assert code == 1 and out.strip().endswith("FAIL")


def test_collapse_all_revan_indices_and_degree_comparison(dense_csvs, capsys):
    code, out, _ = run(capsys, "collapse", *dense_csvs, "--compare-degree")
    lines = [l for l in out.splitlines() if l.startswith("ER ")]
    assert len(lines) == 8 and all("vs_" in l for l in lines)


def test_predict_table(capsys):
    code, out, _ = run(capsys, "predict", "R1", "--r", 10)
    assert code == 0
    assert out.splitlines() == ["r R1", "10 100"]
    _, out, _ = run(capsys, "predict", "FRPi", "--r", 1)
    x, y = out.splitlines()[1].split()
    assert float(y) == pytest.approx(math.log(math.sqrt(2)), rel=1e-15)
    assert float(y) == pytest.approx(0.3466, abs=1e-4)
    _, out, _ = run(capsys, "predict", "RSO", "--r", 10)
    assert float(out.splitlines()[1].split()[1]) == pytest.approx(70.711, abs=1e-3)
    _, out, _ = run(capsys, "predict", "lnR2Pi", "--logspace", 1, 100, 3)
    assert len(out.splitlines()) == 4


def test_predict_domain_errors(capsys):
    assert run(capsys, "predict", "FRPi", "--r", 0)[0] == 2
    assert run(capsys, "predict", "R1", "--r", -1)[0] == 2
    assert run(capsys, "predict", "Randic", "--r", 1)[0] == 2


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as info:
        main(["ensemble"])
    assert info.value.code == 2


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "revan", "predict", "R2", "--r", "10"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.splitlines()[1] == "10 500"

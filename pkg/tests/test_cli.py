import csv
import io
import json

import numpy as np
import pytest

from galerkin_lab import cli, integral
from galerkin_lab.quadrature import default_rule


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def table(text):
    rows = list(csv.reader(io.StringIO(text)))
    assert len({len(r) for r in rows}) == 1
    return rows[0], rows[1:]


@pytest.mark.parametrize("argv,header", [
    (["cond-table"], ["N", "cond2"]),
    (["bvp"], ["j", "xi"]),
    (["bvp", "--family", "monomial", "--n", "4"], ["j", "xi"]),
    (["kernel", "--n", "3", "--points", "4"], ["x", "t", "K"]),
    (["fredholm2"], ["j", "re", "im"]),
    (["wing", "--n", "6"], ["n", "cond2", "naive_err", "tsvd_k", "tsvd_err"]),
    (["wing", "--n", "3", "--vectors"], ["i", "s", "b", "x_exact"]),
    (["nonlinear", "--m", "3"], ["m", "norm_xi", "dist_to_finest", "newton_iters"]),
])
def test_subcommands_emit_csv(capsys, argv, header):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    got, rows = table(out)
    assert got == header and rows


def test_cond_table_rows(capsys):
    _, out, _ = run(capsys, "cond-table", "--n-max", "5")
    _, rows = table(out)
    assert [int(r[0]) for r in rows] == [3, 4, 5]
    assert float(rows[0][1]) == pytest.approx(891.6637, rel=5e-3)


def test_bvp_constant_forcing(capsys):
    _, out, _ = run(capsys, "bvp", "--n", "4")
    _, rows = table(out)
    j = np.array([int(r[0]) for r in rows])
    xi = np.array([float(r[1]) for r in rows])
    np.testing.assert_allclose(xi, 2 * (1 - (-1.0) ** j) / (np.pi ** 3 * j ** 3), atol=1e-12)


def test_kernel_grid_size(capsys):
    _, out, _ = run(capsys, "kernel", "--n", "2", "--points", "5")
    _, rows = table(out)
    assert len(rows) == 25


def test_fredholm2_cos_kernel(capsys):
    _, out, _ = run(capsys, "fredholm2", "--n", "4", "--lambda", "2", "--kernel", "cos", "--f", "expix")
    _, rows = table(out)
    c = {int(r[0]): complex(float(r[1]), float(r[2])) for r in rows}
    assert abs(c.pop(1) - 1 / (2 - np.pi)) <= 1e-10
    assert max(abs(v) for v in c.values()) <= 1e-10


def test_wing_vectors(capsys):
    _, out, _ = run(capsys, "wing", "--n", "3", "--vectors")
    _, rows = table(out)
    np.testing.assert_allclose([float(r[3]) for r in rows], [0, 1 / np.sqrt(3), 0], atol=1e-15)


def test_wing_export_matrix(capsys, tmp_path):
    path = tmp_path / "A.txt"
    assert run(capsys, "wing", "--n", "5", "--export-matrix", str(path))[0] == 0
    A, _, _ = integral.wing_generate(integral.WingProblem(5))
    np.testing.assert_array_equal(cli.read_matrix(path), A)


@pytest.mark.parametrize("t1,t2", [("0.6", "0.4"), ("0.5", "0.5")])
def test_wing_breakpoint_guard(capsys, t1, t2):
    code, out, err = run(capsys, "wing", "--t1", t1, "--t2", t2)
    assert code == 2 and out == ""
    assert "t1 must be smaller than t2" in err


def test_nonlinear_single_m(capsys):
    _, out, _ = run(capsys, "nonlinear", "--m", "5")
    _, rows = table(out)
    assert len(rows) == 1
    assert int(rows[0][3]) <= 20
    assert float(rows[0][1]) == pytest.approx(np.pi / np.sqrt(2), abs=1e-8)


def test_nonlinear_default_list(capsys):
    _, out, _ = run(capsys, "nonlinear")
    _, rows = table(out)
    assert [int(r[0]) for r in rows] == [3, 5, 10]
    assert all(float(r[2]) <= 1e-8 for r in rows)


def test_json_format(capsys):
    _, out, _ = run(capsys, "nonlinear", "--m-list", "3,5", "--format", "json")
    data = json.loads(out)
    assert data["m"] == [3, 5]
    assert set(data) == {"m", "norm_xi", "dist_to_finest", "newton_iters", "residual_norm"}
    assert all(r <= 1e-12 for r in data["residual_norm"])


def test_json_wing(capsys):
    _, out, _ = run(capsys, "wing", "--n", "4", "--format", "json")
    data = json.loads(out)
    assert data["n"] == [4] and len(data["cond2"]) == 1


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.csv"
    code, out, _ = run(capsys, "cond-table", "--n-max", "4", "-o", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("N,cond2\n")


def test_f_file_round_trip(capsys, tmp_path):
    _, out, _ = run(capsys, "bvp", "--n", "6", "--dump-nodes")
    _, rows = table(out)
    x = np.array([float(r[0]) for r in rows])
    np.testing.assert_array_equal(x, default_rule(6).nodes)
    path = tmp_path / "f.txt"
    np.savetxt(path, np.sin(2 * np.pi * x), fmt="%.17g")
    _, from_file, _ = run(capsys, "bvp", "--n", "6", "--f-file", str(path))
    _, named, _ = run(capsys, "bvp", "--n", "6", "--f", "sin2pi")
    np.testing.assert_allclose(np.array(table(from_file)[1], float), np.array(table(named)[1], float),
                               atol=1e-15)


def test_f_file_wrong_length(capsys, tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("1\n2\n3\n")
    assert run(capsys, "bvp", "--n", "6", "--f-file", str(path))[0] == 2


def test_f_and_f_file_exclusive(capsys, tmp_path):
    assert run(capsys, "bvp", "--f", "one", "--f-file", "x")[0] == 2


@pytest.mark.parametrize("argv", [
    [],
    ["bogus"],
    ["cond-table", "--nope"],
    ["cond-table", "--n-max", "13"],
    ["cond-table", "--n-min", "5", "--n-max", "4"],
    ["bvp", "--n", "0"],
    ["kernel", "--points", "1"],
    ["fredholm2", "--lambda", "0"],
    ["nonlinear", "--m-list", "5,3"],
    ["nonlinear", "--m-list", "a,b"],
    ["wing", "--n", "0"],
])
def test_invalid_input_exit_2(capsys, argv):
    code, out, _ = run(capsys, *argv)
    assert code == 2 and out == ""


def test_numerical_failure_exit_3(capsys):
    code, out, err = run(capsys, "nonlinear", "--m", "5", "--max-iters", "1")
    assert code == 3 and out == ""
    assert "NoConvergence" in err


def test_singular_second_kind_exit_3(capsys):
    # lambda = pi is the eigenvalue of the cos(x - y) kernel on e^{+-ix}; the
    # pivot may land just above the singularity threshold, in which case the
    # solve returns huge coefficients instead
    code, out, _ = run(capsys, "fredholm2", "--lambda", repr(np.pi))
    if code == 0:
        _, rows = table(out)
        assert max(abs(float(r[1])) for r in rows) > 1e12
    else:
        assert code == 3


def test_deterministic(capsys):
    for argv in (["cond-table"], ["wing", "--n", "10"], ["nonlinear"]):
        first = run(capsys, *argv)[1]
        assert run(capsys, *argv)[1] == first

import json
import subprocess
import sys

import numpy as np
import pytest

from gkdde.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestCoeffs:
    def test_n2(self, capsys):
        code, out, _ = run(capsys, "coeffs", "--n", "2")
        assert code == 0
        assert out.splitlines() == ["2", "4.5,7.5"]

    def test_n1(self, capsys):
        assert run(capsys, "coeffs", "--n", "1")[1] == "2\n"

    def test_n0(self, capsys):
        code, out, err = run(capsys, "coeffs", "--n", "0")
        assert code == 2
        assert out == ""
        assert len(err.strip().splitlines()) == 1

    def test_to_file(self, capsys, tmp_path):
        path = tmp_path / "a.csv"
        assert run(capsys, "coeffs", "--n", "3", "--out", str(path))[0] == 0
        assert len(path.read_text().splitlines()) == 3


class TestAssemble:
    def test_fixture(self, capsys, tmp_path):
        code, out, _ = run(capsys, "assemble", "--N", "6", "--alpha", "0.75", "--tau", "2",
                           "--fixture", "suarez-schopf-6d", "--out", str(tmp_path))
        assert code == 0
        report = json.loads(out)
        assert report["pass"]
        assert report["max_abs_dev_M1"] < 5e-5
        assert report["max_abs_dev_M2"] < 5e-5
        for name in ("A", "P", "Q", "nu"):
            assert (tmp_path / f"{name}.csv").exists()
        Q = np.loadtxt(tmp_path / "Q.csv", delimiter=",")
        assert Q.shape == (6, 6)

    def test_full_precision_roundtrip(self, capsys, tmp_path):
        from gkdde import assemble_matrix, get_model

        run(capsys, "assemble", "--N", "5", "--tau", "1.3", "--out", str(tmp_path))
        A = np.loadtxt(tmp_path / "A.csv", delimiter=",")
        assert np.array_equal(A, assemble_matrix(get_model("suarez-schopf", tau=1.3), 5).A)

    def test_zero_model(self, capsys):
        code, out, _ = run(capsys, "assemble", "--N", "1", "--model", "linear-discrete-delay",
                           "--a", "0", "--b", "0", "--tau", "1")
        assert code == 0
        assert out == "0\n"

    def test_negative_tau(self, capsys):
        assert run(capsys, "assemble", "--N", "2", "--tau", "-1")[0] == 2

    def test_fixture_needs_six(self, capsys):
        assert run(capsys, "assemble", "--N", "4", "--fixture", "suarez-schopf-6d")[0] == 2

    def test_digits(self, capsys):
        out = run(capsys, "assemble", "--N", "2", "--tau", "3", "--digits", "3")[1]
        assert all(len(v.lstrip("-").replace(".", "").lstrip("0")) <= 3 for line in out.splitlines()
                   for v in line.split(","))


class TestSimulate:
    def test_equilibrium(self, capsys, tmp_path):
        code, _, _ = run(capsys, "simulate", "--N", "6", "--tau", "2", "--h", "0.05", "--t-end", "5",
                         "--history-constant", "0", "--out", str(tmp_path))
        assert code == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["sup"] == 0.0 and report["rms"] == 0.0
        ref = np.loadtxt(tmp_path / "reference.csv", delimiter=",", skiprows=1)
        assert np.all(ref[:, 1] == 0.0)

    def test_sweep(self, capsys, tmp_path):
        code, _, _ = run(capsys, "simulate", "--tau", "2", "--h", "0.01", "--t-end", "10",
                         "--history-constant", "0.1", "--sweep", "8,4", "--out", str(tmp_path))
        assert code == 0
        sweep = json.loads((tmp_path / "sweep.json").read_text())
        assert list(sweep["errors"]) == ["4", "8"]
        assert sweep["errors"]["8"]["sup"] < sweep["errors"]["4"]["sup"]

    def test_incommensurate(self, capsys, tmp_path):
        code, _, err = run(capsys, "simulate", "--engine", "reference", "--tau", "1", "--h", "0.3",
                           "--t-end", "3", "--out", str(tmp_path))
        assert code == 2
        assert "divide" in err
        assert not (tmp_path / "reference.csv").exists()

    def test_tau_required(self, capsys, tmp_path):
        assert run(capsys, "simulate", "--N", "3", "--h", "0.1", "--t-end", "1", "--out", str(tmp_path))[0] == 2

    def test_missing_N(self, capsys, tmp_path):
        assert run(capsys, "simulate", "--tau", "1", "--h", "0.1", "--t-end", "1", "--out", str(tmp_path))[0] == 2

    def test_blow_up(self, capsys, tmp_path):
        code, _, err = run(capsys, "simulate", "--model", "linear-discrete-delay", "--a", "40", "--b", "0",
                           "--tau", "1", "--N", "1", "--engine", "reduced", "--h", "0.01", "--t-end", "10",
                           "--history-constant", "1", "--out", str(tmp_path))
        assert code == 3
        assert "blow-up" in err
        partial = np.loadtxt(tmp_path / "reduced.csv", delimiter=",", skiprows=1)
        assert partial[-1, 0] < 10

    def test_original_variable(self, capsys, tmp_path):
        run(capsys, "simulate", "--N", "3", "--tau", "2", "--h", "0.5", "--t-end", "1",
            "--history-constant", "0", "--variable", "original", "--out", str(tmp_path))
        red = np.loadtxt(tmp_path / "reduced.csv", delimiter=",", skiprows=1)
        assert np.allclose(red[:, 1], 0.5)

    def test_json_format(self, capsys, tmp_path):
        run(capsys, "simulate", "--N", "3", "--tau", "2", "--h", "0.5", "--t-end", "1",
            "--history-constant", "0.1", "--format", "json", "--out", str(tmp_path))
        data = json.loads((tmp_path / "reduced.json").read_text())
        assert data["t"] == [0.0, 0.5, 1.0]
        assert set(data) == {"t", "x_N", "y_0", "y_1", "y_2"}

    def test_model_file(self, capsys, tmp_path):
        model = tmp_path / "m.json"
        model.write_text(json.dumps({"a": -1.0, "b": 0.0, "c": 0.0, "tau": 1.0, "nonlinearity": []}))
        code, _, _ = run(capsys, "simulate", "--model-file", str(model), "--engine", "reference",
                         "--h", "0.01", "--t-end", "1", "--history-constant", "1", "--out", str(tmp_path))
        assert code == 0
        ref = np.loadtxt(tmp_path / "reference.csv", delimiter=",", skiprows=1)
        assert abs(ref[-1, 1] - np.exp(-1)) < 1e-8

    def test_bad_model_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "simulate", "--model-file", str(tmp_path / "none.json"), "--tau", "1",
                           "--N", "2", "--h", "0.1", "--t-end", "1", "--out", str(tmp_path))
        assert code == 2

    def test_quad_order_env(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("GK_QUAD_ORDER", "0")
        assert run(capsys, "simulate", "--N", "2", "--tau", "1", "--h", "0.1", "--t-end", "1",
                   "--out", str(tmp_path))[0] == 2
        monkeypatch.setenv("GK_QUAD_ORDER", "8")
        assert run(capsys, "simulate", "--N", "2", "--tau", "1", "--h", "0.1", "--t-end", "1",
                   "--history-poly", "0.1,0.2", "--out", str(tmp_path))[0] == 0

    def test_deterministic(self, capsys, tmp_path):
        args = ["simulate", "--N", "4", "--tau", "1", "--h", "0.05", "--t-end", "3", "--history-poly", "0.1,-0.3"]
        run(capsys, *args, "--out", str(tmp_path / "a"))
        run(capsys, *args, "--out", str(tmp_path / "b"))
        for name in ("reduced.csv", "reference.csv", "report.json"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


class TestField:
    def test_zero_slice_matches_simulate(self, capsys, tmp_path):
        common = ["--N", "5", "--tau", "2", "--h", "0.1", "--t-end", "4", "--history-constant", "0.3"]
        run(capsys, "simulate", *common, "--engine", "reduced", "--out", str(tmp_path))
        code, out, _ = run(capsys, "field", *common, "--theta-points", "5")
        assert code == 0
        sim = [line.split(",")[1] for line in (tmp_path / "reduced.csv").read_text().splitlines()[1:]]
        field_rows = [line.split(",") for line in out.splitlines()[1:]]
        zero = [row[2] for row in field_rows if row[1] == "0"]
        assert zero == sim

    def test_constant_mode(self, capsys):
        code, out, _ = run(capsys, "field", "--model", "linear-discrete-delay", "--a", "0", "--b", "0",
                           "--tau", "1", "--N", "1", "--h", "0.5", "--t-end", "1", "--history-constant", "1",
                           "--theta-points", "3")
        assert code == 0
        values = [float(line.split(",")[2]) for line in out.splitlines()[1:]]
        assert values == pytest.approx([1.0] * 9, abs=1e-15)

    def test_rejects_theta(self, capsys):
        code, out, _ = run(capsys, "field", "--N", "3", "--tau", "1", "--h", "0.5", "--t-end", "1", "--theta=-2,0")
        assert code == 2
        assert out == ""

    def test_long_format(self, capsys, tmp_path):
        path = tmp_path / "f.csv"
        run(capsys, "field", "--N", "3", "--tau", "1", "--h", "0.5", "--t-end", "1", "--theta-points", "4",
            "--out", str(path))
        lines = path.read_text().splitlines()
        assert lines[0] == "t,theta,u_N"
        assert len(lines) == 1 + 3 * 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gkdde", "coeffs", "--n", "2"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["2", "4.5,7.5"]


def test_unknown_subcommand(capsys):
    assert run(capsys, "bogus")[0] == 2

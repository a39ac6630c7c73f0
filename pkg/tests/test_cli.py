"""Command-line surface: outputs, exit codes, determinism."""

import json
import math

import pytest

from besselwave.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_rows(text):
    lines = [ln for ln in text.strip().splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [ln.split(",") for ln in lines[1:]]
    return header, rows


class TestBessel:
    def test_sinc_at_pi(self, capsys):
        code, out, _ = run_cli(capsys, "bessel", "--n", "3", "--r", "3.14159265")
        assert code == 0
        header, rows = csv_rows(out)
        value = float(rows[0][header.index("phi")])
        assert abs(value) < 1e-8

    def test_sweep_and_plot(self, capsys, tmp_path):
        out_path = tmp_path / "bessel.csv"
        code, _, _ = run_cli(capsys, "bessel", "--n", "2", "--points", "12",
                             "--out", str(out_path), "--plot")
        assert code == 0
        assert out_path.exists()
        assert (tmp_path / "bessel.svg").exists()
        text = out_path.read_text()
        assert text.startswith("# subcommand=bessel")
        assert "seed=" in text.splitlines()[0]
        assert "np." not in text  # plain decimal floats only
        header, rows = csv_rows(text)
        assert all(len(row) == len(header) for row in rows)
        float(rows[0][0])  # first column parses as a number


class TestSpectral:
    def test_json_schema(self, capsys):
        code, out, _ = run_cli(capsys, "spectral", "--domain", "circle", "--max-freq", "2",
                               "--format", "json", "--t", "0.37")
        assert code == 0
        payload = json.loads(out)
        assert payload["grading"] == [5, 5]
        assert [e["degree"] for e in payload["spectra"]] == [0, 1]
        assert payload["betti"]["by_degree"] == [1, 1]

    def test_simplicial_from_file(self, capsys, tmp_path):
        path = tmp_path / "octa.json"
        faces = [[0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 1],
                 [5, 1, 2], [5, 2, 3], [5, 3, 4], [5, 4, 1]]
        simplices = set()
        for f in faces:
            for size in (1, 2, 3):
                from itertools import combinations
                simplices.update(combinations(sorted(f), size))
        path.write_text(json.dumps({"simplices": [list(s) for s in simplices]}))
        code, out, _ = run_cli(capsys, "spectral", "--domain", "simplicial",
                               "--complex", str(path), "--format", "json", "--t", "0.43")
        assert code == 0
        payload = json.loads(out)
        assert payload["betti"]["by_degree"] == [1, 0, 1]

    def test_symmetry_and_orbit(self, capsys):
        code, out, _ = run_cli(capsys, "spectral", "--domain", "circle", "--max-freq", "3",
                               "--symmetry", "translation", "--shift", "0.25",
                               "--wave-steps", "200", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["symmetry"]["commutator"] < 1e-9
        assert payload["wave_orbit"]["max_norm"] <= payload["wave_orbit"]["bound"] * (1 + 1e-12)

    def test_missing_complex_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "spectral", "--domain", "simplicial")
        assert code == 2
        assert "complex" in err


class TestWave:
    def test_residual_columns(self, capsys):
        code, out, _ = run_cli(capsys, "wave", "--kind", "velocity", "--q", "3",
                               "--t-values", "0.5,1.0")
        assert code == 0
        header, rows = csv_rows(out)
        assert header[:3] == ["t", "residual", "norm"]
        for row in rows:
            assert float(row[1]) < 1e-6


class TestPizzettiPolarize:
    def test_pizzetti_deterministic(self, capsys):
        code1, out1, _ = run_cli(capsys, "pizzetti", "--count", "6", "--seed", "7")
        code2, out2, _ = run_cli(capsys, "pizzetti", "--count", "6", "--seed", "7")
        assert code1 == code2 == 0
        assert out1 == out2
        assert "failures=0" in out1

    def test_polarize_parallelogram(self, capsys):
        code, out, _ = run_cli(capsys, "polarize", "--exponents", "1,1")
        assert code == 0
        header, rows = csv_rows(out)
        assert len(rows) == 4
        assert "reproduces the monomial: True" in out


class TestProbe:
    def test_small_resolved_run(self, capsys, tmp_path):
        out_path = tmp_path / "probe.csv"
        code, _, _ = run_cli(capsys, "huygens-probe", "--q", "2", "--max-freq", "32",
                             "--sigma", "0.04", "--t", "0.3", "--w", "0.1",
                             "--grid", "128", "--out", str(out_path), "--plot")
        assert code == 0
        text = out_path.read_text()
        assert "deformed_leakage=" in text
        assert (tmp_path / "probe.svg").exists()

    def test_unresolved_reports(self, capsys):
        code, out, _ = run_cli(capsys, "huygens-probe", "--q", "2", "--max-freq", "8",
                               "--sigma", "0.02", "--t", "0.3", "--w", "0.05")
        assert code == 1
        payload = json.loads(out)
        assert payload["status"] == "unresolved"

    def test_diameter_guard_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "huygens-probe", "--t", "0.4", "--w", "0.2")
        assert code == 2


class TestCurvatureFront:
    def test_sphere_value(self, capsys):
        code, out, _ = run_cli(capsys, "curvature", "--chart", "sphere", "--h", "0.1")
        assert code == 0
        header, rows = csv_rows(out)
        value = float(rows[0][header.index("r2d2")])
        assert abs(value - 0.9975) < 3e-3

    def test_front_with_line_integral(self, capsys):
        code, out, _ = run_cli(capsys, "front", "--chart", "flat", "--point", "0.1,0.2",
                               "--t", "0.5", "--ntheta", "64", "--oneform=-y;x")
        assert code == 0
        assert "line_integral=" in out
        header, rows = csv_rows(out)
        assert len(rows) == 64

    def test_custom_chart(self, capsys):
        code, out, _ = run_cli(capsys, "curvature", "--chart", "custom",
                               "--g11", "1", "--g12", "0", "--g22", "sin(x)^2",
                               "--bounds", "0.05,3.09,-9,9", "--point", "1.5707963,0.0",
                               "--h", "0.1")
        assert code == 0
        header, rows = csv_rows(out)
        assert abs(float(rows[0][header.index("r2d2")]) - 0.9975) < 3e-3

    def test_custom_chart_from_json_config(self, capsys, tmp_path):
        config = tmp_path / "chart.json"
        config.write_text(json.dumps({
            "chart": "custom", "g11": "1", "g12": "0", "g22": "sin(x)^2",
            "bounds": "0.05,3.0915926,-9,9", "point": "1.5707963,0.0", "h": 0.1,
        }))
        code, out, _ = run_cli(capsys, "curvature", "--config", str(config))
        assert code == 0
        header, rows = csv_rows(out)
        assert abs(float(rows[0][header.index("r2d2")]) - 0.9975) < 3e-3


class TestVerifyAll:
    def test_quick_passes(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        code, out, _ = run_cli(capsys, "verify-all", "--quick", "--out", str(out_path))
        assert code == 0
        payload = json.loads(out_path.read_text())
        assert payload["status"] == "pass"
        assert {s["suite"] for s in payload["suites"]} >= {"bessel", "spectral", "wave",
                                                           "pizzetti", "polarization"}
        for suite in payload["suites"]:
            for case in suite["cases"]:
                assert case["status"] == "pass", (suite["suite"], case)


class TestConfigAndErrors:
    def test_config_file_defaults(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"n": 1, "r": math.pi}))
        code, out, _ = run_cli(capsys, "bessel", "--config", str(config))
        assert code == 0
        header, rows = csv_rows(out)
        assert float(rows[0][header.index("phi")]) == pytest.approx(-1.0, abs=1e-12)

    def test_explicit_flag_beats_config(self, capsys, tmp_path):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"n": 1, "r": math.pi}))
        code, out, _ = run_cli(capsys, "bessel", "--config", str(config), "--n", "3")
        header, rows = csv_rows(out)
        assert abs(float(rows[0][header.index("phi")])) < 1e-8

    def test_bad_arguments_exit_2(self, capsys):
        assert run_cli(capsys, "bessel", "--n", "not-a-number")[0] == 2
        assert run_cli(capsys, "no-such-command")[0] == 2

    def test_missing_config_exit_2(self, capsys):
        assert run_cli(capsys, "bessel", "--config", "/nonexistent.json")[0] == 2

import hashlib
import json

import pytest

from xraycap.cli import main

CUBE3 = {
    "dim": 3,
    "vertices": [
        [x, y, z] for x in (-1.0, 1.0) for y in (-1.0, 1.0) for z in (-1.0, 1.0)
    ],
}


def run(argv):
    return main(argv)


def write_cube(tmp_path):
    path = tmp_path / "cube.json"
    path.write_text(json.dumps(CUBE3))
    return str(path)


class TestConstruct:
    def test_cross_polytope_stdout(self, capsys):
        code = run(["construct", "cross-polytope", "-d", "3"])
        assert code == 0
        out = capsys.readouterr().out
        assert "54.7356 deg" in out
        assert "rad" in out

    def test_writes_config_artifact(self, tmp_path, capsys):
        out_path = tmp_path / "cfg.json"
        code = run(["construct", "hexagon-pair", "--out", str(out_path)])
        assert code == 0
        payload = json.loads(out_path.read_text())
        assert payload["dim"] == 4
        assert payload["antipodal"] is True
        assert len(payload["base_points"]) == 6
        assert payload["manifest"]["command"] == "construct"
        assert payload["manifest"]["output_paths"] == [str(out_path)]

    def test_join_from_files(self, tmp_path, capsys):
        hex_path = tmp_path / "hex.json"
        run(["construct", "polygon", "-k", "6", "--out", str(hex_path)])
        code = run(
            ["construct", "join", "--left", str(hex_path), "--right", str(hex_path)]
        )
        assert code == 0
        assert "dimension: 4" in capsys.readouterr().out

    def test_unknown_name_usage_error(self, capsys):
        with pytest.raises(SystemExit):
            run(["construct", "icosahedron"])

    def test_missing_dimension_is_usage_error(self, capsys):
        code = run(["construct", "cross-polytope"])
        assert code == 1
        assert "xraycap: error:" in capsys.readouterr().err


class TestRadius:
    def test_exact(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        run(["construct", "polygon", "-k", "16", "--out", str(cfg)])
        code = run(["radius", str(cfg)])
        assert code == 0
        assert "11.2500 deg" in capsys.readouterr().out

    def test_sampled_artifact(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        run(["construct", "hexagon-pair", "--out", str(cfg)])
        out = tmp_path / "radius.json"
        code = run(
            ["radius", str(cfg), "--samples", "50000", "--seed", "3", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["sample_count"] == 50000
        assert payload["manifest"]["seed"] == 3
        assert payload["manifest"]["input_hashes"]

    def test_missing_file_io_error(self, tmp_path, capsys):
        code = run(["radius", str(tmp_path / "nope.json")])
        assert code == 1
        assert "io-error" in capsys.readouterr().err


class TestCertify:
    def test_valid_exit_0(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        run(["construct", "cross-polytope", "-d", "3", "--out", str(cfg)])
        code = run(["certify", "almost_smooth", "3", "--config", str(cfg)])
        assert code == 0
        out = capsys.readouterr().out
        assert "VALID" in out and "X <= 3" in out

    def test_invalid_exit_2(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        run(["construct", "cross-polytope", "-d", "6", "--out", str(cfg)])
        code = run(["certify", "constant_width", "6", "--config", str(cfg)])
        assert code == 2
        assert "INVALID" in capsys.readouterr().out

    def test_certificate_artifact(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        run(["construct", "hexagon-pair", "--out", str(cfg)])
        out = tmp_path / "cert.json"
        code = run(
            ["certify", "constant_width", "4", "--config", str(cfg), "--out", str(out)]
        )
        assert code == 0
        cert = json.loads(out.read_text())["certificate"]
        assert cert["tight"]
        assert cert["config_reference"] == str(cfg)
        assert len(cert["config_hash"]) == 64


class TestOptimize:
    def test_run_and_plot_data(self, tmp_path, capsys):
        out = tmp_path / "run.json"
        csv = tmp_path / "history.csv"
        code = run(
            [
                "optimize", "2", "3",
                "--seed", "5", "--budget", "500", "--restarts", "2",
                "--out", str(out), "--plot-data", str(csv),
            ]
        )
        assert code == 0
        lines = csv.read_text().splitlines()
        assert lines[0] == "iteration,radius_rad"
        assert len(lines) > 2
        radii = [float(line.split(",")[1]) for line in lines[1:]]
        assert all(a >= b - 1e-15 for a, b in zip(radii, radii[1:]))
        payload = json.loads(out.read_text())
        assert payload["run"]["seed"] == 5
        assert payload["run"]["schedule"]["restarts"] == 2

    def test_same_manifest_same_artifact(self, tmp_path, capsys):
        argv = ["optimize", "2", "3", "--seed", "9", "--budget", "400", "--restarts", "2"]
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(argv + ["--out", str(a)])
        run(argv + ["--out", str(b)])
        da, db = json.loads(a.read_text()), json.loads(b.read_text())
        # identical except the recorded output path
        da["manifest"]["output_paths"] = db["manifest"]["output_paths"] = []
        ha = hashlib.sha256(json.dumps(da, sort_keys=True).encode()).hexdigest()
        hb = hashlib.sha256(json.dumps(db, sort_keys=True).encode()).hexdigest()
        assert ha == hb


class TestPolytope:
    def test_check(self, tmp_path, capsys):
        code = run(["polytope", "check", write_cube(tmp_path)])
        assert code == 0
        out = capsys.readouterr().out
        assert "antipodal: True" in out
        assert "weakly neighbourly: False" in out

    def test_search_then_verify_roundtrip(self, tmp_path, capsys):
        cube = write_cube(tmp_path)
        lines = tmp_path / "lines.json"
        code = run(["polytope", "xray-search", cube, "--lines-out", str(lines)])
        assert code == 0
        assert "4 lines" in capsys.readouterr().out
        code = run(["polytope", "xray-verify", cube, "--lines", str(lines)])
        assert code == 0
        assert "PASS" in capsys.readouterr().out

    def test_verify_failure_exit_3(self, tmp_path, capsys):
        cube = write_cube(tmp_path)
        lines = tmp_path / "short.json"
        lines.write_text(
            json.dumps({"dim": 3, "directions": [[1.0, 1.0, 1.0], [1.0, 1.0, -1.0]]})
        )
        code = run(["polytope", "xray-verify", cube, "--lines", str(lines)])
        assert code == 3
        out = capsys.readouterr().out
        assert "FAIL" in out and "uncovered" in out

    def test_verify_without_lines_usage_error(self, tmp_path, capsys):
        code = run(["polytope", "xray-verify", write_cube(tmp_path)])
        assert code == 1
        assert "needs --lines" in capsys.readouterr().err


class TestThresholds:
    def test_table(self, capsys):
        code = run(["thresholds", "4", "6"])
        assert code == 0
        out = capsys.readouterr().out
        assert "52.2388" in out
        assert "50.7685" in out
        assert "49.7970" in out

    def test_single_dimension(self, capsys):
        code = run(["thresholds", "4"])
        assert code == 0
        assert out_count(capsys.readouterr().out) == 2  # header + one row

    def test_bad_range(self, capsys):
        code = run(["thresholds", "6", "3"])
        assert code == 1


def out_count(text):
    return len([line for line in text.splitlines() if line.strip()])


class TestHelp:
    def test_help_lists_subcommands(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["--help"])
        assert exc.value.code == 0
        out = capsys.readouterr().out
        for name in ("construct", "radius", "certify", "optimize", "polytope", "thresholds", "serve"):
            assert name in out

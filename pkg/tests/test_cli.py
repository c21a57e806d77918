import json
import math

import numpy as np
import pytest

from partsentropy.cli import main
from partsentropy.geometry import box3d, save_geometry


@pytest.fixture
def geo(tmp_path):
    paths = {}
    for name, doc in {
        "disk1": {"dim": 2, "kind": "disk", "radius": 1.0},
        "disk05": {"dim": 2, "kind": "disk", "radius": 0.5},
        "disk4": {"dim": 2, "kind": "disk", "radius": 4.0},
        "ball1": {"dim": 3, "kind": "ball", "radius": 1.0},
        "ball3": {"dim": 3, "kind": "ball", "radius": 3.0},
        "square": {
            "dim": 2,
            "kind": "polygon",
            "vertices": [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]],
        },
    }.items():
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(doc))
        paths[name] = str(p)
    save_geometry(box3d(1, 1, 1), tmp_path / "cube.json")
    paths["cube"] = str(tmp_path / "cube.json")
    return paths


def read_report(path):
    return json.loads(path.read_text())


class TestExitCodes:
    def test_no_subcommand(self, capsys):
        assert main([]) == 1

    def test_unknown_subcommand(self, capsys):
        with pytest.raises(SystemExit) as err:
            main(["quux"])
        assert err.value.code == 1
        assert "usage" in capsys.readouterr().err

    def test_missing_flags(self, capsys):
        assert main(["pkf"]) == 1
        assert "missing required flags" in capsys.readouterr().err

    def test_bad_geometry_file(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"dim": 2, "kind": "polygon",
                                   "vertices": [[0, 0], [2, 0], [1, 0.2], [0, 2]]}))
        assert main(["pkf", "--a", str(bad), "--b", str(bad)]) == 1
        assert "vertex 2" in capsys.readouterr().err

    def test_infeasible_exit_2(self, geo, tmp_path):
        rc = main([
            "parts-entropy", "--part", geo["disk05"], "--container", geo["disk1"],
            "--obstacle", geo["disk1"], "--method", "analytic", "--no-jamming",
            "--out", str(tmp_path / "pe.json"),
        ])
        assert rc == 2
        assert read_report(tmp_path / "pe.json")["body"]["status"] == "infeasible"


class TestReports:
    def test_pkf_report(self, geo, tmp_path, capsys):
        out = tmp_path / "pkf.json"
        assert main(["pkf", "--a", geo["disk1"], "--b", geo["disk1"], "--out", str(out)]) == 0
        report = read_report(out)
        assert report["body"]["value"] == pytest.approx(8 * math.pi**2, rel=1e-12)
        assert "78.95" in capsys.readouterr().out

    def test_cube_pkf(self, geo, tmp_path):
        out = tmp_path / "c.json"
        assert main(["pkf", "--a", geo["cube"], "--b", geo["cube"], "--out", str(out)]) == 0
        assert read_report(out)["body"]["value"] == pytest.approx(88 * math.pi**2, rel=1e-12)

    def test_mc_containment_report_flags_formula(self, geo, tmp_path):
        out = tmp_path / "mc.json"
        rc = main([
            "mc", "--mode", "containment", "--a", geo["ball1"], "--b", geo["ball3"],
            "--n", "200000", "--seed", "1", "--out", str(out),
        ])
        assert rc == 0
        body = read_report(out)["body"]
        exact = 256 * math.pi**3 / 3
        assert body["estimate"]["ci_low"] <= exact <= body["estimate"]["ci_high"]
        assert body["analytic_value"] == pytest.approx(-exact, rel=1e-12)
        assert body["warning"] is True and body["ci_contains_analytic"] is False

    def test_reports_embed_seed_and_samples(self, geo, tmp_path):
        out = tmp_path / "mc.json"
        main(["mc", "--mode", "collision", "--a", geo["disk1"], "--b", geo["disk1"],
              "--n", "50000", "--seed", "99", "--out", str(out)])
        body = read_report(out)["body"]
        assert body["seed"] == 99 and body["n_samples"] == 50000
        assert body["estimate"]["seed"] == 99

    def test_byte_identical_reports_from_config(self, geo, tmp_path):
        config = tmp_path / "cfg.json"
        config.write_text(json.dumps({
            "mode": "collision",
            "a": {"dim": 2, "kind": "disk", "radius": 1.0},
            "b": {"dim": 2, "kind": "disk", "radius": 1.0},
            "n_samples": 50_000,
            "seed": 5,
        }))
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        assert main(["mc", "--config", str(config), "--out", str(out1)]) == 0
        assert main(["mc", "--config", str(config), "--out", str(out2)]) == 0
        body1 = json.dumps(read_report(out1)["body"], sort_keys=True)
        body2 = json.dumps(read_report(out2)["body"], sort_keys=True)
        assert body1.encode() == body2.encode()

    def test_convergence_csv(self, geo, tmp_path):
        out = tmp_path / "mc.json"
        csv_path = tmp_path / "conv.csv"
        main(["mc", "--mode", "collision", "--a", geo["disk1"], "--b", geo["disk1"],
              "--n", "20000", "--seed", "2", "--convergence", "1000,2000",
              "--csv", str(csv_path), "--out", str(out)])
        lines = csv_path.read_text().strip().splitlines()
        assert lines[0] == "n,estimate,std_error"
        assert len(lines) == 3

    def test_entropy_bits(self, tmp_path, capsys):
        pdf = tmp_path / "pdf.json"
        pdf.write_text(json.dumps({"kind": "discrete", "probs": [0.5, 0.25, 0.25]}))
        out = tmp_path / "e.json"
        assert main(["entropy", "--pdf", str(pdf), "--units", "bits", "--out", str(out)]) == 0
        body = read_report(out)["body"]
        assert body["value_bits"] == pytest.approx(1.5, rel=1e-12)
        assert "1.5" in capsys.readouterr().out

    def test_theorems_cli(self, tmp_path):
        out = tmp_path / "t.json"
        rc = main(["theorems", "--group", "octahedral", "--subgroup", "c4",
                   "--subgroup2", "c2", "--pdfs", "30", "--seed", "7", "--out", str(out)])
        assert rc == 0
        body = read_report(out)["body"]
        assert body["overall_min_slack"] >= -1e-12 and body["all_nonnegative"]

    def test_symmetrize_cli(self, tmp_path):
        out = tmp_path / "s.json"
        rc = main(["symmetrize", "--group", "cyclic", "--group-n", "6",
                   "--subgroup", "c3", "--seed", "4", "--out", str(out)])
        assert rc == 0
        assert read_report(out)["body"]["entropy_nondecreasing"]

    def test_dosr_cli(self, tmp_path, capsys):
        out = tmp_path / "d.json"
        assert main(["dosr", "--system", "100", "--parts", "3,5,10", "--out", str(out)]) == 0
        assert read_report(out)["body"]["value"] == pytest.approx(10.0)

    def test_generations_cli_with_trace(self, geo, tmp_path):
        out = tmp_path / "g.json"
        trace = tmp_path / "trace.csv"
        rc = main(["generations", "--shape", geo["square"], "--group", "cyclic",
                   "--group-n", "4", "--sigma", "0.02", "--generations", "3",
                   "--trials", "25", "--corrected", "--seed", "3",
                   "--csv", str(trace), "--out", str(out)])
        assert rc == 0
        lines = trace.read_text().strip().splitlines()
        assert lines[0] == "generation,mean_deviation,se,corrected"
        assert len(lines) == 5

    def test_outdir_env(self, geo, tmp_path, monkeypatch):
        monkeypatch.setenv("PARTSENTROPY_OUTDIR", str(tmp_path / "reports"))
        assert main(["pkf", "--a", geo["disk1"], "--b", geo["disk1"]]) == 0
        assert (tmp_path / "reports" / "pkf_report.json").exists()


class TestServerMode:
    def test_post_to_running_service(self, geo, tmp_path):
        # exercise the thin-client path against the app served over a real socket
        import threading
        import time
        import uvicorn

        from partsentropy.service.app import app

        config = uvicorn.Config(app, host="127.0.0.1", port=8731, log_level="error")
        server = uvicorn.Server(config)
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        try:
            for _ in range(100):
                if server.started:
                    break
                time.sleep(0.05)
            assert server.started
            out = tmp_path / "remote.json"
            rc = main(["pkf", "--a", geo["disk1"], "--b", geo["disk1"],
                       "--server", "http://127.0.0.1:8731", "--out", str(out)])
            assert rc == 0
            assert read_report(out)["body"]["value"] == pytest.approx(
                8 * math.pi**2, rel=1e-12
            )
        finally:
            server.should_exit = True
            thread.join(timeout=5)

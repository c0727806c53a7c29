import json
import math

import numpy as np
import pytest

from relaysec.cli import main
from relaysec.regions import region_from_dict, region_to_dict

from helpers import copy_channel, noiseless_y_blind_z, uniform_aux


@pytest.fixture
def copy_channel_file(tmp_path):
    path = tmp_path / "copy.json"
    path.write_text(json.dumps(copy_channel().to_json_dict()))
    return str(path)


@pytest.fixture
def aux_file(tmp_path):
    aux = uniform_aux(1, 1, 2)
    path = tmp_path / "aux.json"
    path.write_text(
        json.dumps({"p_us": aux.p_us.tolist(), "p_x_given_us": aux.p_x_given_us.tolist()})
    )
    return str(path)


class TestClassifyCmd:
    def test_copy_channel(self, copy_channel_file, tmp_path, capsys):
        out = tmp_path / "cls.json"
        assert main(["classify", copy_channel_file, "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert "Degraded" in data["satisfied"]
        assert "ReverselyDegraded" in data["satisfied"]
        assert data["residuals"]["Degraded"] <= 1e-12
        assert data["version"]

    def test_missing_file_exit_2(self, capsys):
        assert main(["classify", "/nonexistent/ch.json"]) == 2
        err = capsys.readouterr().err
        assert json.loads(err)["error"] == "FileNotFoundError"

    def test_malformed_channel_exit_2(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text(json.dumps({"prob": [[[[0.5, 0.0], [0.0, 0.0]]]]}))
        assert main(["classify", str(bad)]) == 2
        assert json.loads(capsys.readouterr().err)["error"] == "RowSumViolation"


class TestMiCmd:
    def test_battery(self, copy_channel_file, aux_file, tmp_path):
        out = tmp_path / "mi.json"
        assert main(["mi", copy_channel_file, "--aux", aux_file, "--out", str(out)]) == 0
        consts = json.loads(out.read_text())["constants"]
        assert consts["I(X;Y|US)"] == pytest.approx(1.0, abs=1e-12)
        assert consts["I(X;Z|US)"] == pytest.approx(1.0, abs=1e-12)
        assert consts["delta"] == pytest.approx(0.0, abs=1e-12)


class TestRegionDmcCmd:
    def test_json_round_trip_and_determinism(self, tmp_path, capsys):
        ch_file = tmp_path / "ch.json"
        ch_file.write_text(json.dumps(noiseless_y_blind_z().to_json_dict()))
        out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
        flags = [
            "region-dmc", str(ch_file), "--family", "tilde-in", "--resolution", "3",
            "--restarts", "3", "--maxiter", "40", "--nu", "2", "--seed", "1",
        ]
        assert main(flags + ["--out", str(out1)]) == 0
        assert main(flags + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        data = json.loads(out1.read_text())
        region = region_from_dict(data)
        assert region_to_dict(region)["points"] == data["points"]

    def test_csv_output(self, tmp_path):
        ch_file = tmp_path / "ch.json"
        ch_file.write_text(json.dumps(noiseless_y_blind_z().to_json_dict()))
        out = tmp_path / "r.csv"
        assert main([
            "region-dmc", str(ch_file), "--family", "tilde-in", "--resolution", "2",
            "--restarts", "2", "--maxiter", "30", "--nu", "2", "--format", "csv",
            "--out", str(out),
        ]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "r0,r1,re"
        assert len(lines) > 1


class TestRegionGaussCmd:
    def test_inner_frontier_value(self, tmp_path):
        out = tmp_path / "g.json"
        assert main([
            "region-gauss", "--N1", "1", "--N2", "2", "--rho", "0.7071068",
            "--P1", "1", "--P2", "1", "--family", "inner",
            "--theta-points", "5", "--eta-points", "17", "--out", str(out),
        ]) == 0
        data = json.loads(out.read_text())
        best_re = max(p["re"] for p in data["points"])
        assert best_re == pytest.approx(0.207519, abs=1e-5)
        thetas = {p["theta"] for p in data["points"]}
        assert thetas <= {0.0, 0.25, 0.5, 0.75, 1.0}

    def test_params_file_and_cds(self, tmp_path):
        params = tmp_path / "g.json"
        params.write_text(json.dumps({"N1": 1, "N2": 2, "rho": math.sqrt(0.5), "P1": 1, "P2": 1}))
        out = tmp_path / "cds.json"
        assert main([
            "region-gauss", "--params", str(params), "--family", "cds",
            "--theta-points", "9", "--eta-points", "9", "--out", str(out),
        ]) == 0
        data = json.loads(out.read_text())
        assert {"inner", "outer"} <= set(data)


class TestCapacityCmd:
    def test_gauss_closed_form(self, tmp_path):
        out = tmp_path / "cap.json"
        assert main([
            "capacity", "--N1", "1", "--N2", "2", "--rho", "0.7071068",
            "--P1", "1", "--P2", "1", "--out", str(out),
        ]) == 0
        data = json.loads(out.read_text())
        assert data["lower"] == pytest.approx(data["upper"], abs=1e-6)

    def test_dmc_search(self, copy_channel_file, tmp_path):
        out = tmp_path / "cap.json"
        assert main([
            "capacity", copy_channel_file, "--restarts", "3", "--maxiter", "40",
            "--nu", "2", "--out", str(out),
        ]) == 0
        data = json.loads(out.read_text())
        assert data["lower"] <= 1e-9
        assert data["upper"] <= 1e-9


class TestSimulateCmd:
    def test_noiseless_with_exact_equivocation(self, tmp_path):
        cfg = {
            "n": 4,
            "b": 3,
            "rates": {"r0": 0.0, "r1": 0.0, "r2": 0.0, "r": 0.0},
            "epsilon": 10.0,
            "seed": 0,
            "aux": {
                "p_us": uniform_aux(1, 1, 2).p_us.tolist(),
                "p_x_given_us": uniform_aux(1, 1, 2).p_x_given_us.tolist(),
            },
            "channel": noiseless_y_blind_z().to_json_dict(),
        }
        cfg_file = tmp_path / "sim.json"
        cfg_file.write_text(json.dumps(cfg))
        out = tmp_path / "rep.json"
        assert main([
            "simulate", str(cfg_file), "--trials", "5", "--exact-equivocation",
            "--out", str(out),
        ]) == 0
        data = json.loads(out.read_text())
        assert data["err_receiver"] == 0.0
        assert data["equivocation_rate"] == 0.0
        assert data["mode"] == "ExactEquivocation"


class TestParamMapCmd:
    def test_forward(self, capsys):
        assert main(["param-map", "--alpha", "0.8", "--beta", "0.5"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["theta"] == pytest.approx(0.4)
        assert data["eta"] == pytest.approx(2 / 3)

    def test_out_of_range_exit_2(self, capsys):
        assert main(["param-map", "--alpha", "1.5", "--beta", "0.5"]) == 2
        assert json.loads(capsys.readouterr().err)["error"] == "OutOfUnitInterval"

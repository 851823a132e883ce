import csv
import io
import json
import math
import time

import numpy as np
import pytest

from invsq.cli import main
from invsq.rgflow import FlowTrajectory
from invsq.scattering import ScatteringSolution


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def num(v):
    return math.nan if v in ("", None) else float(v)


class TestFlow:
    def test_subcritical_monotone_real(self, capsys):
        code, out, _ = run(
            capsys, "flow", "--alpha", "0.16", "--lambda0", "0.1", "--eps0", "1",
            "--eps-range", "0.01", "100", "--samples", "500", "--format", "csv",
        )
        assert code == 0
        data = rows(out)
        assert len(data) == 500
        re = np.array([num(r["re_Lambda"]) for r in data])
        im = np.array([num(r["im_Lambda"]) for r in data])
        assert np.all(np.diff(re) > 0)
        assert np.all(im == 0)

    def test_supercritical_log_periodic(self, capsys):
        period = math.pi
        code, out, _ = run(
            capsys, "flow", "--alpha", "1.25", "--lambda0", "0.5-0.4i",
            "--eps-range", "1", str(math.exp(2 * period)), "--samples", "201",
        )
        assert code == 0
        L = np.array([complex(num(r["re_Lambda"]), num(r["im_Lambda"])) for r in rows(out)])
        assert abs(L[0] - L[100]) < 1e-8
        assert abs(L[0] - L[200]) < 1e-8

    def test_fixed_point_constant(self, capsys):
        code, out, _ = run(capsys, "flow", "--alpha", "0.16", "--lambda0", "0.6", "--samples", "20")
        assert code == 0
        assert all(abs(num(r["re_Lambda"]) - 0.6) < 1e-14 for r in rows(out))

    def test_eps_star_trajectory(self, capsys):
        code, out, _ = run(capsys, "flow", "--alpha", "1.25", "--eps-star", "1.0", "--y-star", "-3", "--format", "json")
        assert code == 0
        tr = FlowTrajectory.from_record(json.loads(out))
        assert tr.y_star == pytest.approx(-3.0, rel=1e-8)
        n = math.log(tr.eps_star) / math.pi
        assert abs(n - round(n)) < 1e-8

    @pytest.mark.parametrize(
        "argv",
        [
            ["flow", "--alpha", "0.16", "--lambda0", "0.1", "--eps-star", "1.0"],
            ["flow", "--alpha", "0.16"],
            ["flow", "--alpha", "0.16", "--lambda0", "0.1", "--eps-range", "1", "0.1"],
            ["flow", "--alpha", "0.16", "--lambda0", "0.1", "--y-star", "1"],
            ["flow", "--lambda0", "0.1"],
            ["nonsense"],
        ],
    )
    def test_invalid(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 1
        assert err


class TestPortrait:
    def test_empty_seeds(self, capsys):
        code, out, _ = run(capsys, "portrait", "--alpha", "0.16", "--seeds", "")
        assert code == 0
        assert rows(out) == []

    def test_subcritical_terminates_at_ir_fixed_point(self, capsys):
        code, out, _ = run(capsys, "portrait", "--alpha", "0.16")
        assert code == 0
        data = rows(out)
        last = {}
        for r in data:
            last[r["seed_index"]] = complex(num(r["re_Lambda"]), num(r["im_Lambda"]))
        assert len(last) > 1
        for L in last.values():
            assert abs(L - 0.6) < 1e-3

    def test_supercritical_cycles_close(self, capsys):
        code, out, _ = run(capsys, "portrait", "--alpha", "1.25", "--seeds", "0.5i,1+1i,-2-0.3i", "--format", "json")
        assert code == 0
        recs = json.loads(out)
        assert [r["seed_index"] for r in recs] == [0, 1, 2]
        for rec in recs:
            tr = FlowTrajectory.from_record(rec)
            assert abs(tr.Lambda[0] - tr.Lambda[-1]) < 1e-8
            assert len(rec["arrows"]) == len(rec["samples"])

    def test_arrow_columns(self, capsys):
        code, out, _ = run(capsys, "portrait", "--alpha", "0.16", "--seeds", "0")
        r = rows(out)[0]
        L = complex(num(r["re_Lambda"]), num(r["im_Lambda"]))
        d = complex(num(r["re_dLambda"]), num(r["im_dLambda"]))
        assert d.real * (0.18 - L.real**2 / 2) >= 0


class TestScatter:
    def test_subcritical_sweep_unitary(self, capsys):
        code, out, _ = run(capsys, "scatter", "--alpha", "0.16", "--k-range", "0.1", "10", "7", "--eps-star", "0.8")
        assert code == 0
        data = rows(out)
        assert len(data) == 7
        assert all(abs(num(r["flux_deficit"])) < 1e-10 for r in data)

    def test_zero_eps_star_row(self, capsys):
        code, out, _ = run(capsys, "scatter", "--alpha", "0.16", "--k", "1", "--eps-star", "0", "--format", "json")
        assert code == 0
        (rec,) = json.loads(out)
        sol = ScatteringSolution.from_record(rec)
        assert sol.R == 1 and sol.T == 0

    def test_supercritical_sink_sweep(self, capsys):
        code, out, _ = run(
            capsys, "scatter", "--alpha", "1.25", "--k", "1", "--eps-star-range", "0.5", "5", "6", "--y-star", "-3"
        )
        assert code == 0
        assert all(num(r["flux_deficit"]) > 0 for r in rows(out))

    def test_resonance_reported_per_row(self, capsys):
        # zeta = 1: |X_*| = exp(pi) on this source trajectory, and k fixes arg X_* = 0
        y, k_res = "2.1806628214547366", 1.4792080749772583
        code, out, _ = run(
            capsys, "scatter", "--alpha", "1.25", "--k-range", repr(k_res), repr(2 * k_res), "2",
            "--eps-star", "1", "--y-star", y,
        )
        assert code == 0
        first, second = rows(out)
        assert "resonance" in first["error"]
        assert first["re_R"] == ""
        assert second["error"] == ""
        assert math.isfinite(num(second["re_R"]))

    def test_critical_band_rejected(self, capsys):
        code, _, err = run(capsys, "scatter", "--alpha", "0.2500001", "--k", "1", "--eps-star", "1")
        assert code == 1
        assert "critical" in err

    def test_both_k_forms_rejected(self, capsys):
        code, _, _ = run(capsys, "scatter", "--alpha", "0.16", "--k", "1", "--k-range", "1", "2", "3", "--eps-star", "1")
        assert code == 1


class TestVerify:
    def test_supporting_checks_pass(self, capsys):
        code, out, err = run(capsys, "verify", "--quick", "--checks", "mobius,flux")
        assert code == 0
        report = json.loads(out)
        assert report["passed"]
        assert "mobius" in err

    def test_mutation_breaches(self, capsys):
        code, out, _ = run(capsys, "verify", "--quick", "--checks", "mobius,flux", "--mutate")
        assert code == 2
        assert not json.loads(out)["passed"]

    def test_quick_runtime(self, capsys):
        t0 = time.perf_counter()
        code, _, _ = run(capsys, "verify", "--quick")
        assert time.perf_counter() - t0 < 60
        assert code in (0, 2)

    def test_unknown_check(self, capsys):
        code, _, _ = run(capsys, "verify", "--checks", "bogus")
        assert code == 1


class TestWavefunction:
    def test_monomial_fig_data(self, capsys):
        code, out, _ = run(capsys, "wavefunction", "--monomial", "--zeta", "20", "--samples", "2000")
        assert code == 0
        data = rows(out)
        Q = np.array([num(r["Q"]) for r in data])
        chi = np.array([complex(num(r["re_chi"]), num(r["im_chi"])) for r in data])
        assert np.allclose(np.abs(chi), np.sqrt(Q), rtol=1e-12)
        phase = np.unwrap(np.angle(chi))
        rate = (phase[-1] - phase[0]) / math.log(Q[-1] / Q[0])
        assert abs(abs(rate) - 20) < 1e-6

    def test_solved_excision(self, capsys):
        eps = 1e-3
        code, out, _ = run(
            capsys, "wavefunction", "--alpha", "0.1", "--k", "1", "--eps", str(eps), "--lambda", "300",
            "--q-range", "0", "5", "--samples", "100",
        )
        assert code == 0
        Q = np.array([num(r["Q"]) for r in rows(out)])
        assert len(Q) == 100
        assert np.all(np.abs(Q) >= eps * (1 - 1e-12))

    def test_solved_from_eps_star(self, capsys):
        code, out, _ = run(
            capsys, "wavefunction", "--alpha", "1.25", "--k", "1", "--eps", "1e-4", "--eps-star", "1",
            "--y-star", "-3", "--q-range", "1e-4", "1", "--log-grid", "--samples", "40", "--format", "json",
        )
        assert code == 0
        assert len(json.loads(out)) == 40

    @pytest.mark.parametrize(
        "argv",
        [
            ["wavefunction", "--monomial"],
            ["wavefunction", "--monomial", "--zeta", "1", "--alpha", "2"],
            ["wavefunction", "--alpha", "0.1", "--k", "1", "--eps", "1e-3"],
            ["wavefunction", "--alpha", "0.1", "--k", "1", "--eps", "0.1", "--lambda", "1"],
        ],
    )
    def test_invalid(self, capsys, argv):
        code, _, _ = run(capsys, *argv)
        assert code == 1


class TestContracts:
    ARGV = ["flow", "--alpha", "1.25", "--lambda0", "0.5-0.4i", "--samples", "50"]

    def test_deterministic(self, capsys):
        _, a, _ = run(capsys, *self.ARGV)
        _, b, _ = run(capsys, *self.ARGV)
        assert a == b

    def test_out_file_and_env_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("INVSQ_OUTPUT_DIR", str(tmp_path))
        code, out, _ = run(capsys, *self.ARGV, "--out", "traj.csv")
        assert code == 0 and out == ""
        _, ref, _ = run(capsys, *self.ARGV)
        monkeypatch.delenv("INVSQ_OUTPUT_DIR")
        assert (tmp_path / "traj.csv").read_text() == ref

    def test_full_precision(self, capsys):
        _, out, _ = run(capsys, *self.ARGV)
        r = rows(out)[1]
        assert len(r["epsilon"].replace(".", "").replace("-", "").lstrip("0").split("e")[0]) >= 15

    def test_json_roundtrip(self, capsys):
        _, out, _ = run(capsys, *self.ARGV, "--format", "json")
        rec = json.loads(out)
        assert FlowTrajectory.from_record(rec).to_record() == rec

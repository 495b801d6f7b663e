import math

import numpy as np
import pytest

import cqedpairs


def test_self_check_passes():
    ok, report = cqedpairs.self_check()
    assert ok, report
    assert report.count("PASS") >= 8


def test_basis():
    labels = cqedpairs.basis_labels(2)
    assert len(labels) == 25
    assert len(cqedpairs.basis_labels(1)) == 7


def test_lossless_ro():
    cfg = cqedpairs.Config.parse("scheme = ro\n")
    res = cqedpairs.simulate(cfg)
    assert abs(res["summary"]["F"] - 1.0) < 1e-6
    pops = res["populations"]
    assert pops.shape == (len(res["t"]), 5)
    assert abs(pops[-1, 3] - 1.0) < 1e-6


def test_overrides_and_errors():
    cfg = cqedpairs.Config.parse("scheme = stirap\npulse.tau = 3\nmethod = lindblad\ngrid = 100\n")
    lossy = cqedpairs.simulate(cfg, {"gamma": 0.05, "kappa": 0.005})
    assert 0.78 < lossy["summary"]["F"] < 0.88
    with pytest.raises(cqedpairs.ConfigError, match="gamme"):
        cqedpairs.Config.parse("gamme = 0.1\n")
    with pytest.raises(ValueError, match="kappa"):
        cqedpairs.Config.parse("kappa = -1\n")


def test_chsh():
    psi = np.array([0, 1, 1, 0]) / math.sqrt(2)
    rho = np.outer(psi, psi.conj()).astype(complex)
    assert abs(cqedpairs.chsh_fixed(rho) - 2 * math.sqrt(2)) < 1e-12
    assert abs(cqedpairs.chsh_optimal(rho) - 2 * math.sqrt(2)) < 1e-12
    mixed = np.diag([0, 0.5, 0.5, 0]).astype(complex)
    assert abs(cqedpairs.chsh_fixed(mixed) - math.sqrt(2)) < 1e-12
    assert cqedpairs.bell_fidelity(rho) == pytest.approx(1.0)


def test_rabi_oracle():
    i_amp, b_amp = cqedpairs.rabi_oracle(1.0, 0.0, math.pi / math.sqrt(8.0))
    assert abs(b_amp) == pytest.approx(1.0)
    assert abs(i_amp) < 1e-12


def test_sweep_rows():
    cfg = cqedpairs.Config.parse(
        "scheme = stirap\nmethod = lindblad\npulse.tau = 3\ngrid = 50\n"
        "sweep.x.param = gamma\nsweep.x.min = 0\nsweep.x.max = 0.1\nsweep.x.steps = 3\n"
    )
    rows = cqedpairs.sweep(cfg)
    assert [r["values"][0] for r in rows] == pytest.approx([0.0, 0.05, 0.1])
    assert rows[0]["F"] > rows[-1]["F"]


def test_run_experiment_writes_files(tmp_path):
    cfg = cqedpairs.Config.parse("scheme = ro\n")
    cqedpairs.run_experiment(cfg, tmp_path)
    assert (tmp_path / "timeseries.csv").read_text().startswith("t,P_I,P_B,P_D,P_E+,P_E-,norm")
    assert (tmp_path / "summary.csv").exists()

import json
import shutil
from pathlib import Path

import numpy as np
import pytest

from nsgframes.cli import main
from nsgframes.export import read_signal
from nsgframes.rng import noise

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def write(tmp_path, doc, name="cfg.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return p


def painless_doc(**kw):
    doc = json.loads((CONFIGS / "painless.json").read_text())
    doc.update(kw)
    return doc


def test_analyze_impulse(tmp_path):
    cfg = write(tmp_path, painless_doc())
    assert main(["analyze", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / "summary.json").read_text())
    assert summary["channels"] == 16 and summary["N_k"] == [12] * 16
    # hann windows of width 1 centered at 0, 1/2 and T - 1/2 see the impulse at 0
    nonzero = [k for k, e in enumerate(summary["energy"]) if e > 0]
    assert nonzero == [0]
    assert (tmp_path / "coefficients.csv").read_text().startswith("k,l,re,im\n")


def test_analyze_zero_signal(tmp_path):
    sig = tmp_path / "zero.csv"
    sig.write_text("n,re,im\n" + "".join(f"{n},0,0\n" for n in range(96)))
    cfg = write(tmp_path, painless_doc(signal={"csv": "zero.csv"}))
    assert main(["analyze", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    data = np.loadtxt(tmp_path / "coefficients.csv", delimiter=",", skiprows=1)
    assert not np.any(data[:, 2:])


def test_analyze_needs_signal(tmp_path):
    doc = painless_doc()
    del doc["signal"]
    assert main(["analyze", "--config", str(write(tmp_path, doc)), "--out", str(tmp_path)]) == 2


def test_round_trip_within_gap(tmp_path):
    shutil.copy(CONFIGS / "example1.json", tmp_path / "ex1.json")
    cfg = str(tmp_path / "ex1.json")
    assert main(["analyze", "--config", cfg, "--out", str(tmp_path)]) == 0
    assert main(["synthesize", "--config", cfg, "--coefficients", str(tmp_path / "coefficients.csv"),
                 "--method", "gamma1", "--out", str(tmp_path)]) == 0
    f = noise(1152, 7)
    rec = read_signal(tmp_path / "signal.csv")
    # measured gap of gamma^1 on this system is 4.19e-4
    assert np.linalg.norm(rec - f) <= 4.2e-4 * np.linalg.norm(f)


def test_synthesize_structure_mismatch(tmp_path):
    cfg = write(tmp_path, painless_doc())
    (tmp_path / "c.csv").write_text("k,l,re,im\n0,0,1,0\n")
    assert main(["synthesize", "--config", str(cfg), "--coefficients", str(tmp_path / "c.csv"),
                 "--method", "gamma3", "--out", str(tmp_path)]) == 2


def test_synthesize_missing_coefficients(tmp_path):
    cfg = write(tmp_path, painless_doc())
    assert main(["synthesize", "--config", str(cfg), "--coefficients", str(tmp_path / "none.csv"),
                 "--method", "gamma1", "--out", str(tmp_path)]) == 3


def test_synthesize_rejects_method_all(tmp_path):
    cfg = write(tmp_path, painless_doc())
    assert main(["synthesize", "--config", str(cfg), "--coefficients", str(tmp_path / "c.csv"),
                 "--out", str(tmp_path)]) == 2


def test_certify_painless(tmp_path, capsys):
    cfg = write(tmp_path, painless_doc())
    assert main(["certify", "--config", str(cfg), "--out", str(tmp_path)]) == 0
    reports = json.loads((tmp_path / "certify.json").read_text())
    assert set(reports) == {"gamma1", "gamma2", "gamma3"}
    for rep in reports.values():
        assert rep["analytic_bound"] == 0.0
        assert rep["measured_gap"] <= 1e-9
    assert (tmp_path / "gamma1_windows.csv").exists()


def test_certify_mismatched_dual_alarm(tmp_path):
    shutil.copy(CONFIGS / "mismatch.json", tmp_path / "m.json")
    assert main(["certify", "--config", str(tmp_path / "m.json"), "--out", str(tmp_path)]) == 4


def test_certify_tolerance_flag(tmp_path):
    shutil.copy(CONFIGS / "mismatch.json", tmp_path / "m.json")
    assert main(["certify", "--config", str(tmp_path / "m.json"), "--out", str(tmp_path),
                 "--tol", "1.0"]) == 0


def test_invalid_config_exit_code(tmp_path):
    doc = painless_doc(windows=[{"kind": "hann", "width": 1, "a": 0, "b": 5}])
    assert main(["certify", "--config", str(write(tmp_path, doc)), "--out", str(tmp_path)]) == 2


def test_missing_config_exit_code(tmp_path):
    assert main(["certify", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path)]) == 3


def test_unwritable_output(tmp_path):
    cfg = write(tmp_path, painless_doc())
    blocker = tmp_path / "file"
    blocker.write_text("")
    assert main(["analyze", "--config", str(cfg), "--out", str(blocker / "sub")]) == 3


@pytest.mark.parametrize("example", ["1", "2"])
def test_reproduce(tmp_path, example, capsys):
    assert main(["reproduce", example, "--out", str(tmp_path)]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    bundle = json.loads((tmp_path / f"example{example}" / "report.json").read_text())
    assert bundle["passed"]
    assert (tmp_path / f"example{example}" / "claims.csv").exists()
    assert (tmp_path / f"example{example}" / "gamma1.csv").exists()


def test_reproduce_is_deterministic(tmp_path):
    main(["reproduce", "2", "--out", str(tmp_path / "a")])
    main(["reproduce", "2", "--out", str(tmp_path / "b")])
    a = (tmp_path / "a" / "example2" / "report.json").read_text()
    assert a == (tmp_path / "b" / "example2" / "report.json").read_text()

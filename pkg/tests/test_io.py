import json

import numpy as np
import pytest

from nsgframes.config import ConfigError, load_config, make_signal, parse_config
from nsgframes.core import Coefficients, analyze
from nsgframes.export import (read_coefficients, read_signal, write_coefficients, write_signal,
                              write_windows)
from nsgframes.lattice import Grid
from nsgframes.rng import Xoshiro256, noise, splitmix64

from test_core import painless_hann


def base_doc(**kw):
    doc = {"version": 1, "grid": {"Q": 12, "L": 96}, "delta": 0.5,
           "windows": [{"kind": "hann", "width": 1, "a": k / 2, "b": 1} for k in range(16)]}
    doc.update(kw)
    return doc


def test_splitmix_reference():
    assert next(splitmix64(0)) == 0xE220A8397B1DCDAF


def test_xoshiro_reference_stream():
    r = Xoshiro256(0)
    r.s = [1, 2, 3, 4]
    assert [r.next_u64() for _ in range(4)] == [11520, 0, 1509978240, 1215971899390074240]


def test_noise_range_and_repeatability():
    a, b = noise(500, 7), noise(500, 7)
    assert np.array_equal(a, b)
    assert a.min() >= -1 and a.max() < 1
    assert not np.array_equal(a, noise(500, 8))


def test_parse_windows_config():
    cfg = parse_config(base_doc())
    assert len(cfg.system) == 16
    assert cfg.grid == Grid(12, 96)
    assert cfg.method == "gamma1"


def test_parse_top_level_grid_and_arrange():
    doc = {"version": 1, "Q": 48, "L": 1152,
           "arrange": {"scale_seq": "canonical", "kind": "gaussian", "sigma": 2.5, "closed": True}}
    cfg = parse_config(doc)
    assert len(cfg.system) == 46


def test_parse_custom_window():
    doc = base_doc(windows=[{"kind": "custom", "samples": [1.0] * 12 + [0.0] * 84, "a": 0.5, "b": 1}],
                   grid={"Q": 12, "L": 96})
    cfg = parse_config(doc)
    assert cfg.system.windows[0].kind == "custom"


@pytest.mark.parametrize("patch,where", [
    ({"version": 2}, "config.version"),
    ({"grid": {"Q": 12}}, "config.grid"),
    ({"grid": {"Q": 0, "L": 96}}, "config.grid"),
    ({"windows": [{"kind": "hann", "width": 1, "a": 0, "b": 5}]}, "config.windows[0]"),
    ({"windows": [{"kind": "cosine", "a": 0, "b": 1}]}, "config.windows[0].kind"),
    ({"windows": [{"kind": "gaussian", "sigma": -1, "a": 0, "b": 1}]}, "config.windows[0].sigma"),
    ({"windows": [{"kind": "gaussian", "sigma": 1.0, "a": 0, "b": 0.5}]}, "config.windows[0]"),
    ({"signal": {"kind": "sine"}}, "config.signal.kind"),
    ({"method": "gamma4"}, "config.method"),
    ({"windows": [{"kind": "custom", "samples": [0.0] * 96, "a": 0, "b": 1}]}, "config.windows[0].samples"),
    ({"arrange": {"scale_seq": [0, 0], "kind": "hann", "width": 1}}, "config"),
])
def test_config_diagnostics(patch, where):
    with pytest.raises(ConfigError) as info:
        parse_config(base_doc(**patch))
    assert info.value.where == where


def test_config_json_syntax_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"version": 1,\n "grid": }')
    with pytest.raises(ConfigError) as info:
        load_config(p)
    assert ":2:" in info.value.where


def test_config_missing_file(tmp_path):
    with pytest.raises(OSError):
        load_config(tmp_path / "none.json")


def test_signals(tmp_path):
    grid = Grid(12, 96)
    imp = make_signal({"kind": "impulse", "t": 1.0}, grid)
    assert imp[12] == 1 and imp.sum() == 1
    chirp = make_signal({"kind": "chirp", "f0": 0, "f1": 3}, grid)
    assert np.allclose(np.abs(chirp), 1)
    nz = make_signal({"kind": "noise", "seed": 3}, grid)
    assert np.array_equal(nz, noise(96, 3))
    write_signal(tmp_path / "s.csv", nz)
    assert np.array_equal(make_signal({"csv": "s.csv"}, grid, tmp_path), nz)


def test_coefficient_csv_round_trip(tmp_path):
    sys = painless_hann()
    f = np.random.default_rng(0).standard_normal(sys.grid.L)
    c = analyze(f, sys)
    write_coefficients(tmp_path / "c.csv", c)
    assert (tmp_path / "c.csv").read_text().startswith("k,l,re,im\n")
    back = read_coefficients(tmp_path / "c.csv", sys)
    assert all(np.array_equal(a, b) for a, b in zip(c.channels, back.channels))


def test_coefficient_csv_layout_checked(tmp_path):
    sys = painless_hann()
    c = Coefficients([np.zeros(d) for d in sys.d][:-1], sys.grid.L)
    write_coefficients(tmp_path / "c.csv", c)
    with pytest.raises(ValueError):
        read_coefficients(tmp_path / "c.csv", sys)


def test_signal_csv_checks(tmp_path):
    write_signal(tmp_path / "s.csv", np.ones(4))
    assert np.array_equal(read_signal(tmp_path / "s.csv"), np.ones(4))
    with pytest.raises(ValueError):
        read_signal(tmp_path / "s.csv", L=5)
    (tmp_path / "t.csv").write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_signal(tmp_path / "t.csv")


def test_window_csv(tmp_path):
    sys = painless_hann()
    write_windows(tmp_path / "w.csv", sys)
    data = np.loadtxt(tmp_path / "w.csv", delimiter=",", skiprows=1)
    assert (tmp_path / "w.csv").read_text().startswith("k,n,value\n")
    assert data.shape == (len(sys) * sys.grid.L, 3)
    write_windows(tmp_path / "z.csv", [np.array([1j, 2.0])])
    assert (tmp_path / "z.csv").read_text().startswith("k,n,value,im\n")

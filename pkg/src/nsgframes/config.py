"""JSON run configurations: grid, system, optional signal and dual source.

Example::

    {"version": 1,
     "grid": {"Q": 48, "L": 1152},
     "delta": 0.25,
     "arrange": {"scale_seq": "canonical", "kind": "gaussian", "sigma": 2.5, "closed": true},
     "signal": {"kind": "noise", "seed": 7}}

Instead of ``arrange`` a config may list windows explicitly::

    "windows": [{"kind": "gaussian", "sigma": 2.5, "a": 0, "b": 1},
                {"kind": "hann", "width": 1, "a": 0.5, "b": 1},
                {"kind": "custom", "samples": [...], "a": 1, "b": 1}]

``Q`` and ``L`` may also sit at the top level.  Every failure is reported
as a :class:`ConfigError` naming the offending field.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .lattice import Grid, validate_system
from .rng import noise
from .windows import (NsgSystem, Window, arrange, canonical_scale_seq, gaussian_window,
                      hann_window)

VERSION = 1
SIGNAL_KINDS = ("impulse", "chirp", "noise")
METHODS = ("gamma1", "gamma2", "gamma3")


class ConfigError(ValueError):
    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class Config:
    grid: Grid
    system: NsgSystem
    signal: dict | None = None
    method: str = "gamma1"
    seed: int | None = None
    dual_from: NsgSystem | None = None
    base_dir: Path = field(default_factory=Path)
    raw: dict = field(default_factory=dict)


def _need(obj: dict, key: str, where: str):
    if key not in obj:
        raise ConfigError(where, f"missing field {key!r}")
    return obj[key]


def _number(x, where: str, positive: bool = False) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ConfigError(where, f"expected a number, got {x!r}")
    if positive and not x > 0:
        raise ConfigError(where, f"must be positive, got {x}")
    return float(x)


def _integer(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise ConfigError(where, f"expected an integer, got {x!r}")
    return x


def parse_grid(doc: dict, where: str = "config") -> Grid:
    src = doc.get("grid", doc)
    gw = f"{where}.grid" if "grid" in doc else where
    Q = _integer(_need(src, "Q", gw), f"{gw}.Q")
    L = _integer(_need(src, "L", gw), f"{gw}.L")
    try:
        return Grid(Q, L)
    except ValueError as exc:
        raise ConfigError(gw, str(exc)) from None


def _window(spec: dict, grid: Grid, where: str) -> Window:
    if not isinstance(spec, dict):
        raise ConfigError(where, "window entry must be an object")
    kind = _need(spec, "kind", where)
    a = _number(_need(spec, "a", where), f"{where}.a")
    b = _number(_need(spec, "b", where), f"{where}.b", positive=True)
    try:
        if kind == "gaussian":
            return gaussian_window(_number(_need(spec, "sigma", where), f"{where}.sigma", True), b, a, grid)
        if kind == "hann":
            return hann_window(_number(_need(spec, "width", where), f"{where}.width", True), a, b, grid)
        if kind == "custom":
            re = np.asarray(_need(spec, "samples", where), dtype=float)
            im = np.asarray(spec.get("samples_im", np.zeros_like(re)), dtype=float)
            if re.shape != (grid.L,) or im.shape != (grid.L,):
                raise ConfigError(f"{where}.samples", f"need {grid.L} values, got {re.size}")
            s = re + 1j * im if np.any(im) else re
            if not np.any(s):
                raise ConfigError(f"{where}.samples", "window is identically zero")
            return Window(s, a, b, grid, "custom")
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(where, str(exc)) from None
    raise ConfigError(f"{where}.kind", f"unknown window kind {kind!r}")


def parse_system(doc: dict, grid: Grid, where: str = "config") -> NsgSystem:
    delta = _number(doc.get("delta", 0.25), f"{where}.delta", positive=True)
    if ("windows" in doc) == ("arrange" in doc):
        raise ConfigError(where, "give exactly one of 'windows' or 'arrange'")
    if "arrange" in doc:
        spec = doc["arrange"]
        aw = f"{where}.arrange"
        seq = _need(spec, "scale_seq", aw)
        if seq == "canonical":
            try:
                seq = canonical_scale_seq(grid.T)
            except ValueError as exc:
                raise ConfigError(f"{aw}.scale_seq", str(exc)) from None
        elif not isinstance(seq, list) or not all(isinstance(s, int) for s in seq):
            raise ConfigError(f"{aw}.scale_seq", "expected a list of integers or 'canonical'")
        kind = _need(spec, "kind", aw)
        key = {"gaussian": "sigma", "hann": "width"}.get(kind)
        if key is None:
            raise ConfigError(f"{aw}.kind", f"unknown window kind {kind!r}")
        param = _number(_need(spec, key, aw), f"{aw}.{key}", positive=True)
        try:
            sys = arrange(seq, kind, param, grid, delta, closed=bool(spec.get("closed", False)))
        except ValueError as exc:
            raise ConfigError(aw, str(exc)) from None
    else:
        specs = doc["windows"]
        if not isinstance(specs, list) or not specs:
            raise ConfigError(f"{where}.windows", "expected a nonempty list")
        wins = [_window(s, grid, f"{where}.windows[{k}]") for k, s in enumerate(specs)]
        bs = [w.freq_step for w in wins]
        b_lo = _number(doc.get("b_lower", min(bs)), f"{where}.b_lower", positive=True)
        b_hi = _number(doc.get("b_upper", max(bs)), f"{where}.b_upper", positive=True)
        sys = NsgSystem(grid, wins, delta, b_lo, b_hi)
    report = validate_system(sys)
    if not report.ok:
        k = report.violations[0][0]
        loc = f"{where}.windows[{k}]" if k >= 0 and "windows" in doc else where
        raise ConfigError(loc, f"system invalid: {report.summary()}")
    return sys


def _parse_signal(spec, where: str) -> dict:
    if not isinstance(spec, dict):
        raise ConfigError(where, "signal must be an object")
    if "csv" in spec:
        return {"csv": str(spec["csv"])}
    kind = _need(spec, "kind", where)
    if kind not in SIGNAL_KINDS:
        raise ConfigError(f"{where}.kind", f"unknown signal kind {kind!r}, expected one of {SIGNAL_KINDS}")
    if kind == "noise":
        _integer(_need(spec, "seed", where), f"{where}.seed")
    return dict(spec)


def parse_config(doc: dict, base_dir: Path | str = ".") -> Config:
    if not isinstance(doc, dict):
        raise ConfigError("config", "top level must be an object")
    version = doc.get("version")
    if version != VERSION:
        raise ConfigError("config.version", f"expected {VERSION}, got {version!r}")
    grid = parse_grid(doc)
    system = parse_system(doc, grid)
    signal = _parse_signal(doc["signal"], "config.signal") if "signal" in doc else None
    method = doc.get("method", "gamma1")
    if method not in METHODS + ("all",):
        raise ConfigError("config.method", f"unknown method {method!r}")
    seed = _integer(doc["seed"], "config.seed") if "seed" in doc else None
    dual_from = None
    if "dual_from" in doc:
        dual_from = parse_system(doc["dual_from"], grid, "config.dual_from")
        if dual_from.d != system.d:
            raise ConfigError("config.dual_from", "frequency steps differ from the primary system")
    return Config(grid, system, signal, method, seed, dual_from, Path(base_dir), doc)


def load_config(path: str | Path) -> Config:
    """Read and validate a config file.  I/O problems raise ``OSError``."""
    path = Path(path)
    text = path.read_text()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg) from None
    return parse_config(doc, path.parent)


def make_signal(spec: dict, grid: Grid, base_dir: Path | str = ".") -> np.ndarray:
    """Builtin test signal, or one read from CSV (relative to ``base_dir``)."""
    from .export import read_signal

    if "csv" in spec:
        p = Path(spec["csv"])
        return read_signal(p if p.is_absolute() else Path(base_dir) / p, grid.L)
    kind = spec["kind"]
    t = grid.times
    if kind == "impulse":
        f = np.zeros(grid.L)
        f[grid.index_of(float(spec.get("t", 0.0)) % grid.T)] = 1.0
        return f
    if kind == "chirp":
        # instantaneous frequency sweeps linearly from f0 to f1 over one period
        f0 = float(spec.get("f0", 0.0))
        f1 = float(spec.get("f1", grid.Q / 4))
        return np.exp(2j * np.pi * (f0 * t + (f1 - f0) * t ** 2 / (2 * grid.T)))
    return noise(grid.L, int(spec["seed"]))

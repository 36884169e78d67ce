"""CSV exchange formats.

* coefficients ``k,l,re,im``
* signals ``n,re,im``
* window curves ``k,n,value`` (plus ``im`` when any window is complex)
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import Coefficients
from .windows import NsgSystem

FMT = "%.17g"


def _save(path, rows: np.ndarray, header: str, int_cols: int) -> None:
    fmt = ["%d"] * int_cols + [FMT] * (rows.shape[1] - int_cols)
    np.savetxt(path, rows, fmt=fmt, delimiter=",", header=header, comments="")


def _load(path, header: str) -> np.ndarray:
    with open(path) as fh:
        first = fh.readline().strip()
        if first != header:
            raise ValueError(f"{path}: expected header {header!r}, got {first!r}")
        return np.loadtxt(fh, delimiter=",", ndmin=2)


def write_coefficients(path: str | Path, c: Coefficients) -> None:
    rows = [np.column_stack([np.full(len(ck), k), np.arange(len(ck)), ck.real, ck.imag])
            for k, ck in enumerate(c.channels)]
    _save(path, np.vstack(rows), "k,l,re,im", 2)


def read_coefficients(path: str | Path, sys: NsgSystem) -> Coefficients:
    """Read coefficients and check them against the layout of ``sys``."""
    data = _load(path, "k,l,re,im")
    chans = [np.zeros(d, dtype=complex) for d in sys.d]
    seen = [np.zeros(d, dtype=bool) for d in sys.d]
    for k, l, re, im in data:
        k, l = int(k), int(l)
        if not 0 <= k < len(chans) or not 0 <= l < len(chans[k]):
            raise ValueError(f"{path}: entry (k={k}, l={l}) outside the system layout {sys.d}")
        chans[k][l] = re + 1j * im
        seen[k][l] = True
    missing = [k for k, s in enumerate(seen) if not s.all()]
    if missing:
        raise ValueError(f"{path}: channels {missing[:5]} are incomplete")
    return Coefficients(chans, sys.grid.L)


def write_signal(path: str | Path, f) -> None:
    f = np.asarray(f, dtype=complex)
    _save(path, np.column_stack([np.arange(len(f)), f.real, f.imag]), "n,re,im", 1)


def read_signal(path: str | Path, L: int | None = None) -> np.ndarray:
    data = _load(path, "n,re,im")
    n = data[:, 0].astype(int)
    if not np.array_equal(n, np.arange(len(n))):
        raise ValueError(f"{path}: sample indices must run 0..N-1 in order")
    if L is not None and len(n) != L:
        raise ValueError(f"{path}: signal has {len(n)} samples, grid needs {L}")
    f = data[:, 1] + 1j * data[:, 2]
    return f if np.any(data[:, 2]) else f.real


def write_windows(path: str | Path, windows) -> None:
    """Sample curves of a system or any sequence of Windows/arrays."""
    if isinstance(windows, NsgSystem):
        windows = windows.windows
    arrs = [np.asarray(getattr(w, "samples", w)) for w in windows]
    cplx = any(np.iscomplexobj(a) and np.any(a.imag) for a in arrs)
    rows = []
    for k, a in enumerate(arrs):
        cols = [np.full(len(a), k), np.arange(len(a)), a.real]
        if cplx:
            cols.append(a.imag if np.iscomplexobj(a) else np.zeros(len(a)))
        rows.append(np.column_stack(cols))
    _save(path, np.vstack(rows), "k,n,value,im" if cplx else "k,n,value", 2)

"""Window families, arrangements and the painless core/residual split."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .lattice import Grid

GUARD_BAND = 1e-12

# one period of the canonical Example 1 arrangement; each scale change is
# followed by a same-scale neighbor
CANONICAL_PATTERN = (0, 0, 1, 1, 0, 0, -1, -1, 0, 0)


class GuardBandError(ValueError):
    """Window tail does not decay below the guard band within half a period."""


@dataclass(frozen=True, eq=False)
class Window:
    samples: np.ndarray
    center: float
    freq_step: float
    grid: Grid
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        s = np.asarray(self.samples)
        if s.shape != (self.grid.L,):
            raise ValueError(f"window needs {self.grid.L} samples, got shape {s.shape}")
        s = s.astype(complex if np.iscomplexobj(s) else float, copy=True)
        s.flags.writeable = False
        object.__setattr__(self, "samples", s)

    @property
    def peak(self) -> float:
        return float(np.max(np.abs(self.samples)))

    @property
    def d(self) -> int:
        """Time shift ``1/b`` in samples."""
        return round(self.grid.Q / self.freq_step)

    def with_samples(self, samples, kind: str = "custom", **params) -> "Window":
        return Window(samples, self.center, self.freq_step, self.grid, kind, params)

    def guard_band_ok(self, threshold: float = GUARD_BAND) -> bool:
        """Antipodal sample(s) below ``threshold`` relative to the peak."""
        u = np.abs(self.grid.offsets(self.center))
        far = u >= u.max() - 0.5 / self.grid.Q
        return bool(np.max(np.abs(self.samples[far])) < threshold * self.peak)


@dataclass(frozen=True, eq=False)
class NsgSystem:
    """The family ``{g_k, b_k}`` on one grid."""

    grid: Grid
    windows: tuple
    delta: float
    b_lower: float
    b_upper: float
    scale_seq: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "windows", tuple(self.windows))
        for w in self.windows:
            if w.grid != self.grid:
                raise ValueError("all windows must share the system grid")
        if self.scale_seq is not None:
            seq = tuple(int(s) for s in self.scale_seq)
            check_scale_seq(seq)
            if len(seq) != len(self.windows):
                raise ValueError("scale_seq length differs from channel count")
            object.__setattr__(self, "scale_seq", seq)

    def __len__(self):
        return len(self.windows)

    @property
    def b(self) -> np.ndarray:
        return np.array([w.freq_step for w in self.windows])

    @property
    def d(self) -> list[int]:
        return [w.d for w in self.windows]

    @property
    def centers(self) -> np.ndarray:
        return np.array([w.center for w in self.windows])

    @property
    def samples(self) -> list[np.ndarray]:
        return [w.samples for w in self.windows]

    @cached_property
    def groups(self) -> list[tuple[int, np.ndarray, np.ndarray]]:
        """Channels grouped by shift length: ``(d, channel indices, stacked samples)``."""
        out = []
        for d in sorted(set(self.d)):
            idx = np.array([k for k, w in enumerate(self.windows) if w.d == d])
            stack = np.array([self.windows[k].samples for k in idx], dtype=complex)
            out.append((d, idx, stack))
        return out

    def with_samples(self, samples: Sequence[np.ndarray], kind: str = "custom") -> "NsgSystem":
        """Same lattice, new window samples (used for duals and split parts)."""
        if len(samples) != len(self.windows):
            raise ValueError("channel count mismatch")
        wins = tuple(w.with_samples(s, kind) for w, s in zip(self.windows, samples))
        return replace(self, windows=wins)

    def scaled(self, alpha: complex) -> "NsgSystem":
        return self.with_samples([alpha * w.samples for w in self.windows])


@dataclass(frozen=True, eq=False)
class SplitSystem:
    core: NsgSystem
    residual: NsgSystem
    intervals: tuple


@dataclass(frozen=True)
class DecayEnvelope:
    C: float
    p: float
    center: float

    def __post_init__(self):
        if not self.C > 0:
            raise ValueError("envelope constant must be positive")
        if not self.p > 2:
            raise ValueError("decay exponent must exceed 2")


# --- generators -------------------------------------------------------------

def gaussian_window(sigma: float, b: float, a: float, grid: Grid) -> Window:
    """``sqrt(b) * exp(-pi * (sigma * b * (t - a))**2)`` on the circle."""
    if sigma <= 0 or b <= 0:
        raise ValueError("sigma and b must be positive")
    if not grid.is_integer(a * grid.Q):
        raise ValueError(f"center {a} is not on the grid")
    u = grid.offsets(a)
    w = Window(np.sqrt(b) * np.exp(-np.pi * (sigma * b * u) ** 2), a, b, grid,
               "gaussian", {"sigma": sigma})
    # tail at T/2 relative to peak
    tail = np.exp(-np.pi * (sigma * b * grid.T / 2) ** 2)
    if tail >= GUARD_BAND:
        raise GuardBandError(
            f"gaussian sigma={sigma}, b={b} has relative tail {tail:.3g} at T/2 = {grid.T / 2}")
    return w


def hann_window(width: float, a: float, b: float, grid: Grid) -> Window:
    """Hann bump of total support ``width`` centered at ``a``, scaled by ``sqrt(b)``."""
    if width <= 0:
        raise ValueError("width must be positive")
    if width > grid.T:
        raise ValueError(f"width {width} exceeds period {grid.T}")
    if not grid.is_integer(width * grid.Q):
        raise ValueError(f"width {width} is not a whole number of samples")
    if not grid.is_integer(a * grid.Q):
        raise ValueError(f"center {a} is not on the grid")
    u = grid.offsets(a)
    vals = np.where(np.abs(u) < width / 2, 0.5 * (1 + np.cos(2 * np.pi * u / width)), 0.0)
    return Window(np.sqrt(b) * vals, a, b, grid, "hann", {"width": width})


def center_step(s0: int, s1: int) -> Fraction:
    """Distance between consecutive centers with scale exponents ``s0 -> s1``."""
    b0, b1 = Fraction(2) ** s0, Fraction(2) ** s1
    if s0 == s1:
        return 1 / (2 * b0)
    if s0 > s1:
        return 1 / (3 * b1)
    return 1 / (3 * b0)


def check_scale_seq(seq: Sequence[int]) -> None:
    if not seq:
        raise ValueError("empty scale sequence")
    if any(s not in (-1, 0, 1) for s in seq):
        raise ValueError(f"scale exponents must lie in {{-1, 0, 1}}: {list(seq)}")
    changes = [seq[i] != seq[i + 1] for i in range(len(seq) - 1)]
    for i in range(len(seq) - 1):
        if abs(seq[i + 1] - seq[i]) > 1:
            raise ValueError(f"scale jump {seq[i]} -> {seq[i + 1]} at position {i}")
    for i in range(len(changes) - 1):
        if changes[i] and changes[i + 1]:
            raise ValueError(f"window {i + 1} has no same-scale neighbor")


def arrangement_centers(scale_seq: Sequence[int]) -> tuple[list[Fraction], Fraction]:
    """Exact centers from the recursion, plus the position where the next
    (wrapped) center would land."""
    a = [Fraction(0)]
    for s0, s1 in zip(scale_seq[:-1], scale_seq[1:]):
        a.append(a[-1] + center_step(s0, s1))
    return a, a[-1] + center_step(scale_seq[-1], scale_seq[0])


def canonical_scale_seq(period: float) -> list[int]:
    """Canonical pattern repeated to fill ``period``, padded with unit-scale windows."""
    span = arrangement_centers(CANONICAL_PATTERN)[1]
    P = Fraction(period).limit_denominator(10**6)
    n = int(P // span)
    while n >= 0:
        rest = P - n * span
        if (2 * rest).denominator == 1 and (n > 0 or rest > 0):
            return list(CANONICAL_PATTERN) * n + [0] * int(2 * rest)
        n -= 1
    raise ValueError(f"period {period} cannot be filled by the canonical arrangement")


def arrange(scale_seq: Sequence[int], kind: str, param: float, grid: Grid,
            delta: float = 0.25, closed: bool = False) -> NsgSystem:
    """Dilated/translated windows with ``b_k = 2**s_k`` and recursive centers.

    ``param`` is ``sigma`` for gaussian windows and the base support width for
    hann windows (support of channel ``k`` is ``param / b_k``).  With
    ``closed=True`` the wrapped spacing from the last center back to ``T``
    must equal the recursion step, so the arrangement tiles the circle.
    """
    seq = [int(s) for s in scale_seq]
    check_scale_seq(seq)
    centers, end = arrangement_centers(seq)
    T = Fraction(grid.L, grid.Q)
    if end > T:
        raise ValueError(f"arrangement spans {float(end)} time units, period is {float(T)}")
    if closed and end != T:
        raise ValueError(f"arrangement closes at {float(end)}, period is {float(T)}")
    wins = []
    for s, a in zip(seq, centers):
        if (a * grid.Q).denominator != 1:
            raise ValueError(f"center {a} is off the grid (Q={grid.Q})")
        b = 2.0 ** s
        if kind == "gaussian":
            wins.append(gaussian_window(param, b, float(a), grid))
        elif kind == "hann":
            wins.append(hann_window(param / b, float(a), b, grid))
        else:
            raise ValueError(f"unknown window kind {kind!r}")
    return NsgSystem(grid, wins, delta, 0.5, 2.0, tuple(seq))


def example1_system(grid: Grid | None = None, sigma: float = 2.5) -> NsgSystem:
    """Gaussian arrangement of Example 1 on the default ``Q=48, L=48*24`` grid."""
    grid = grid or Grid(48, 48 * 24)
    return arrange(canonical_scale_seq(grid.T), "gaussian", sigma, grid, closed=True)


# --- splitting and norms ----------------------------------------------------

def core_mask(w: Window) -> np.ndarray:
    """Half-open interval ``[a - 1/(2b), a + 1/(2b))`` as a boolean mask."""
    grid = w.grid
    d = grid.Q / w.freq_step
    if d > grid.L:
        raise ValueError("interval 1/b exceeds the period")
    j = np.rint(grid.offsets(w.center) * grid.Q)
    return (2 * j >= -d) & (2 * j < d)


def split(sys: NsgSystem) -> SplitSystem:
    core, resid, intervals = [], [], []
    for w in sys.windows:
        m = core_mask(w)
        core.append(np.where(m, w.samples, 0))
        resid.append(np.where(m, 0, w.samples))
        half = 0.5 / w.freq_step
        intervals.append((w.center - half, w.center + half))
    return SplitSystem(sys.with_samples(core), sys.with_samples(resid), tuple(intervals))


def wiener_norm(w: Window) -> float:
    """Sum over unit-length time blocks of the block maximum of ``|g|``."""
    Q, L = w.grid.Q, w.grid.L
    starts = np.arange(0, L, Q)
    return float(np.sum(np.maximum.reduceat(np.abs(w.samples), starts)))


def shift_sum_max(w: Window, d: int | None = None) -> float:
    """``max_n sum_l |g[n - l d]|`` over all periodic shifts by ``d`` samples."""
    d = w.d if d is None else d
    folded = np.abs(w.samples).reshape(-1, d).sum(axis=0)
    return float(folded.max())


def check_decay(w: Window, env: DecayEnvelope) -> bool:
    u = np.abs(w.grid.offsets(env.center))
    bound = env.C * (1 + u) ** (-env.p)
    # relative slack for the sample at the center, where bound == C exactly
    return bool(np.all(np.abs(w.samples) <= bound * (1 + 1e-12)))

"""Finite periodic discretization of the real line.

A :class:`Grid` with ``Q`` samples per unit time and ``L`` samples in total
replaces ``R`` by a circle of circumference ``T = L / Q``.  Sample ``n``
sits at time ``t = n / Q``.  Inner products carry the Riemann weight ``1/Q``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

# tolerance for deciding that a float time/frequency value lands on the grid
ON_GRID_TOL = 1e-9


@dataclass(frozen=True)
class Grid:
    Q: int
    L: int

    def __post_init__(self):
        if int(self.Q) != self.Q or int(self.L) != self.L:
            raise ValueError(f"grid parameters must be integers, got Q={self.Q}, L={self.L}")
        if self.Q < 1 or self.L < 1:
            raise ValueError(f"grid parameters must be positive, got Q={self.Q}, L={self.L}")

    @property
    def T(self) -> float:
        """Period in time units."""
        return self.L / self.Q

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.L) / self.Q

    def offsets(self, center: float) -> np.ndarray:
        """Signed periodic distance ``t_n - center`` folded into ``[-T/2, T/2)``."""
        T = self.T
        return np.mod(self.times - center + T / 2, T) - T / 2

    def index_of(self, t: float) -> int:
        """Grid index of time ``t``; raises if ``t`` is not a grid point."""
        x = t * self.Q
        n = round(x)
        if abs(x - n) > ON_GRID_TOL * max(1.0, abs(x)):
            raise ValueError(f"time {t} is not on the grid (t*Q = {x})")
        return n % self.L

    def is_integer(self, x: float) -> bool:
        return abs(x - round(x)) <= ON_GRID_TOL * max(1.0, abs(x))


def make_grid(Q: int, L: int) -> Grid:
    return Grid(Q, L)


@dataclass(frozen=True)
class ValidationReport:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def summary(self) -> str:
        if self.ok:
            return "ok"
        return "; ".join(f"channel {k}: {rule}: {detail}" for k, rule, detail in self.violations)


def validate_system(sys, grid: Grid | None = None) -> ValidationReport:
    """Check that an NSG system is exactly representable on ``grid``.

    Rules, per channel ``k``:

    * ``modulation``  -- ``Q / b_k`` is a positive integer
    * ``periodicity`` -- ``Q / b_k`` divides ``L``
    * ``center``      -- ``a_k * Q`` is an integer
    * ``separation``  -- centers are ``delta``-separated (periodic distance)
    * ``step_range``  -- ``b_k`` lies in ``[b_L, b_U]`` with ``0 < b_L <= b_U``

    Centers at distance exactly ``delta`` are accepted, since the canonical
    arrangement attains its declared minimum spacing.
    """
    grid = sys.grid if grid is None else grid
    violations = []
    if not sys.windows:
        return ValidationReport([(-1, "empty", "system has no channels")])
    if not 0 < sys.b_lower <= sys.b_upper:
        violations.append((-1, "step_range", f"invalid interval [{sys.b_lower}, {sys.b_upper}]"))

    for k, w in enumerate(sys.windows):
        if w.grid != grid:
            violations.append((k, "grid", f"window grid {w.grid} differs from {grid}"))
        b = w.freq_step
        if not b > 0:
            violations.append((k, "modulation", f"b_k = {b} is not positive"))
            continue
        d = grid.Q / b
        if not grid.is_integer(d) or round(d) < 1:
            violations.append((k, "modulation", f"Q/b_k = {d} is not a positive integer"))
        elif grid.L % round(d):
            violations.append((k, "periodicity", f"Q/b_k = {round(d)} does not divide L = {grid.L}"))
        if not grid.is_integer(w.center * grid.Q):
            violations.append((k, "center", f"a_k*Q = {w.center * grid.Q} is not an integer"))
        tol = ON_GRID_TOL * max(1.0, b)
        if b < sys.b_lower - tol or b > sys.b_upper + tol:
            violations.append((k, "step_range", f"b_k = {b} outside [{sys.b_lower}, {sys.b_upper}]"))

    centers = np.array([w.center for w in sys.windows]) % grid.T
    order = np.argsort(centers, kind="stable")
    if len(order) > 1:
        sorted_c = centers[order]
        gaps = np.diff(np.append(sorted_c, sorted_c[0] + grid.T))
        for i, gap in enumerate(gaps):
            if gap < sys.delta - ON_GRID_TOL:
                k = int(order[(i + 1) % len(order)])
                violations.append((k, "separation", f"distance {gap:.6g} to previous center below delta = {sys.delta}"))
    return ValidationReport(violations)

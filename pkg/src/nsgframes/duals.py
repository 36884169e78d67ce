"""Approximately dual window families built from the frame-operator diagonal."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .core import diagonal, offdiag_R
from .lattice import validate_system
from .windows import NsgSystem, SplitSystem

# invertibility threshold relative to max G_0
EPS_INV = 1e-8

PAINLESS_CANONICAL = "painless_canonical"
MIXED = "mixed"
SINGLE_PRECONDITIONING = "single_preconditioning"

METHOD_ALIASES = {
    "gamma1": PAINLESS_CANONICAL,
    "gamma2": MIXED,
    "gamma3": SINGLE_PRECONDITIONING,
}


class NotInvertible(ValueError):
    def __init__(self, min_g0, max_g0):
        super().__init__(f"diagonal G_0 not invertible: min {min_g0:.3g} vs max {max_g0:.3g}")
        self.min_g0 = min_g0
        self.max_g0 = max_g0


class Infeasible(RuntimeError):
    def __init__(self, iterations, detail=""):
        super().__init__(f"no feasible frequency steps after {iterations} iterations {detail}".strip())
        self.iterations = iterations


@dataclass(frozen=True, eq=False)
class DualFamily:
    system: NsgSystem
    method: str
    source: object


def _inverse_diagonal(sys: NsgSystem) -> np.ndarray:
    g0 = diagonal(sys, sys).values
    lo, hi = float(g0.min()), float(g0.max())
    if not lo > EPS_INV * hi:
        raise NotInvertible(lo, hi)
    return 1.0 / g0


def painless_canonical(split: SplitSystem) -> DualFamily:
    """gamma^1: canonical dual of the painless core, ``g°_k / G_0^{g°,g°}``."""
    inv = _inverse_diagonal(split.core)
    duals = split.core.with_samples([w.samples * inv for w in split.core.windows])
    return DualFamily(duals, PAINLESS_CANONICAL, split)


def mixed_dual(split: SplitSystem, full: NsgSystem) -> DualFamily:
    """gamma^2: full windows divided by the core diagonal, ``g_k / G_0^{g°,g°}``."""
    if full.d != split.core.d or full.grid != split.core.grid:
        raise ValueError("full system and split core have different lattices")
    inv = _inverse_diagonal(split.core)
    duals = full.with_samples([w.samples * inv for w in full.windows])
    return DualFamily(duals, MIXED, (split, full))


def single_preconditioning(full: NsgSystem) -> DualFamily:
    """gamma^3: ``g_k / G_0^{g,g}``."""
    inv = _inverse_diagonal(full)
    duals = full.with_samples([w.samples * inv for w in full.windows])
    return DualFamily(duals, SINGLE_PRECONDITIONING, full)


def is_feasible(sys: NsgSystem) -> bool:
    """Single-preconditioning condition ``R_{g,g} < min G_0^{g,g}``."""
    return offdiag_R(sys, sys) < diagonal(sys, sys).min()


def suggest_b(full: NsgSystem, shrink: Fraction | float = Fraction(1, 2),
              max_iters: int = 8) -> NsgSystem:
    """Shrink every frequency step geometrically until the system is feasible.

    Window shapes stay fixed while ``b_k`` shrinks, so the shifts ``1/b_k``
    grow past the (fixed) window decay.  Returns the first feasible system.
    """
    shrink = Fraction(shrink).limit_denominator(1000)
    if not 0 < shrink < 1:
        raise ValueError("shrink factor must lie in (0, 1)")
    sys = full
    for it in range(max_iters + 1):
        if is_feasible(sys):
            return sys
        if it == max_iters:
            break
        wins = tuple(replace(w, freq_step=float(Fraction(w.freq_step).limit_denominator(10**6) * shrink))
                     for w in sys.windows)
        sys = replace(sys, windows=wins, b_lower=sys.b_lower * float(shrink),
                      b_upper=sys.b_upper * float(shrink))
        report = validate_system(sys)
        bad = [v for v in report.violations if v[1] in ("modulation", "periodicity")]
        if bad:
            raise Infeasible(it + 1, f"(grid cannot hold the shrunk steps: {bad[0][2]})")
    raise Infeasible(max_iters)

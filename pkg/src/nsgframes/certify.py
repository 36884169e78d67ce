"""Analytic reconstruction-error bounds and their empirical counterparts."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.sparse.linalg import ArpackError, ArpackNoConvergence, LinearOperator, eigsh

from .core import (apply_frame_operator, correlation_sum, diagonal, gap_bound,
                   is_painless, offdiag_R)
from .duals import (MIXED, PAINLESS_CANONICAL, SINGLE_PRECONDITIONING,
                    mixed_dual, painless_canonical, single_preconditioning)
from .windows import NsgSystem, SplitSystem, example1_system, split

SEED = 0xC0FFEE
GAP_TOL = 1e-10
FRAME_TOL = 1e-8
MAX_ITER = 10_000
DOMINANCE_TOL = 1e-6

COMPONENT_KEYS = ("min_G0", "max_G0", "R_gr_go", "R_go_gr", "G_rr_sum", "C_psi_bound")


class NonConvergence(RuntimeError):
    def __init__(self, value, iterations):
        super().__init__(f"power iteration did not converge in {iterations} iterations "
                         f"(last estimate {value:.6g})")
        self.value = value
        self.iterations = iterations


class NotAFrame(ValueError):
    pass


BLOCK = 16


@dataclass
class PowerResult:
    value: float
    iterations: int
    converged: bool


def power_iteration(op, L: int, seed: int = SEED, tol: float = GAP_TOL,
                    max_iter: int = MAX_ITER, block: int = 1) -> PowerResult:
    """Largest eigenvalue of a self-adjoint positive semidefinite operator.

    ``op`` maps an ``(L, p)`` block to an ``(L, p)`` block.  With
    ``block=1`` this is plain power iteration on the Rayleigh quotient; a
    larger block runs subspace iteration with a Rayleigh-Ritz step, which
    copes with the clustered top eigenvalues of repeated window patterns.
    Stops when the estimated distance of the top Ritz value to its limit
    falls below ``tol`` relative to its value.  The estimate extrapolates
    the last change with the observed contraction ratio ``r`` of successive
    changes, ``delta * r / (1 - r)``, so slow geometric convergence is not
    mistaken for convergence.
    """
    rng = np.random.default_rng(seed)
    p = max(1, min(block, L))
    V = rng.standard_normal((L, p)) + 1j * rng.standard_normal((L, p))
    V, _ = np.linalg.qr(V)
    prev = None
    prev_delta = None
    top = 0.0
    for it in range(1, max_iter + 1):
        W = op(V)
        H = V.conj().T @ W
        top = float(np.linalg.eigvalsh((H + H.conj().T) / 2)[-1])
        scale = np.linalg.norm(W)
        if scale == 0.0:
            return PowerResult(0.0, it, True)
        # quotients at roundoff level: nothing left to resolve
        if abs(top) < 1e-26:
            return PowerResult(top, it, True)
        if prev is not None:
            delta = abs(top - prev)
            err = delta
            if prev_delta:
                r = delta / prev_delta
                err = delta * r / (1 - r) if r < 1 else np.inf
            if delta <= tol * abs(top) and err <= tol * abs(top):
                return PowerResult(top, it, True)
            prev_delta = delta
        prev = top
        V, _ = np.linalg.qr(W / scale)
    return PowerResult(top, max_iter, False)


def _lanczos_top(op, L: int, seed: int, tol: float, max_iter: int) -> PowerResult:
    lin = LinearOperator((L, L), matvec=lambda v: op(v.reshape(L, 1)).ravel(),
                         matmat=op, dtype=complex)
    v0 = np.random.default_rng(seed).standard_normal(L) + 0j
    try:
        vals = eigsh(lin, k=1, which="LA", tol=tol, v0=v0, maxiter=max_iter,
                     return_eigenvectors=False)
    except ArpackNoConvergence as exc:
        last = float(exc.eigenvalues[-1]) if len(exc.eigenvalues) else float("nan")
        return PowerResult(last, max_iter, False)
    except ArpackError:
        # e.g. an operator that annihilates the start vector (S = B*I)
        return power_iteration(op, L, seed, tol, max_iter, BLOCK)
    return PowerResult(float(vals[-1]), -1, True)


def top_eigenvalue(op, L: int, seed: int = SEED, tol: float = GAP_TOL,
                   max_iter: int = MAX_ITER, method: str = "lanczos",
                   block: int = BLOCK) -> PowerResult:
    """Largest eigenvalue of a self-adjoint PSD block operator."""
    if method == "lanczos":
        return _lanczos_top(op, L, seed, tol, max_iter)
    if method == "power":
        return power_iteration(op, L, seed, tol, max_iter, block)
    raise ValueError(f"unknown eigenvalue method {method!r}")


def measure_gap(g_sys: NsgSystem, gamma_sys: NsgSystem, seed: int = SEED,
                tol: float = GAP_TOL, max_iter: int = MAX_ITER, strict: bool = True,
                method: str = "lanczos") -> float:
    """``||I - S_{g,gamma}||`` as the square root of the top eigenvalue of
    ``(I - S_{gamma,g})(I - S_{g,gamma})``."""

    def op(v):
        u = v - apply_frame_operator(v, g_sys, gamma_sys)
        return u - apply_frame_operator(u, gamma_sys, g_sys)

    res = top_eigenvalue(op, g_sys.grid.L, seed, tol, max_iter, method)
    value = math.sqrt(max(res.value, 0.0))
    if strict and not res.converged:
        raise NonConvergence(value, res.iterations)
    return value


def measure_frame_bounds(g_sys: NsgSystem, seed: int = SEED, tol: float = FRAME_TOL,
                         max_iter: int = MAX_ITER, strict: bool = True,
                         method: str = "lanczos") -> tuple[float, float]:
    """Extreme eigenvalues ``(A, B)`` of ``S_{g,g}``; ``A`` via the reflection ``B*I - S``."""
    S = lambda v: apply_frame_operator(v, g_sys, g_sys)  # noqa: E731
    L = g_sys.grid.L
    top = top_eigenvalue(S, L, seed, tol, max_iter, method)
    B = top.value
    low = top_eigenvalue(lambda v: B * v - S(v), L, seed + 1, tol, max_iter, method)
    if strict and not (top.converged and low.converged):
        raise NonConvergence(B, max(top.iterations, low.iterations))
    A = min(max(B - low.value, 0.0), B)
    return A, B


@dataclass
class CertReport:
    method: str
    analytic_bound: float
    measured_gap: float | None
    A: float | None
    B: float | None
    components: dict = field(default_factory=dict)
    seed: int = SEED
    tolerances: dict = field(default_factory=dict)
    approx_dual: bool = False

    def __post_init__(self):
        for key in COMPONENT_KEYS:
            self.components.setdefault(key, None)

    def dominates(self, tol: float = DOMINANCE_TOL) -> bool:
        """Measured gap does not exceed the analytic bound (within ``tol``)."""
        if self.measured_gap is None:
            return True
        return self.measured_gap <= self.analytic_bound + tol

    def to_dict(self) -> dict:
        d = asdict(self)
        d["components"] = {k: _jsonable(v) for k, v in self.components.items()}
        for k in ("analytic_bound", "measured_gap", "A", "B"):
            d[k] = _jsonable(d[k])
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _jsonable(v):
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    return v if math.isfinite(v) else None


def _tolerances(seed_tol=GAP_TOL):
    return {"gap": seed_tol, "frame": FRAME_TOL, "dominance": DOMINANCE_TOL, "max_iter": MAX_ITER}


def _frame_bounds(full, frame_bounds, seed):
    return frame_bounds if frame_bounds is not None else measure_frame_bounds(full, seed)


def bound_single_preconditioning(full: NsgSystem, seed: int = SEED, measure: bool = True,
                                 frame_bounds=None) -> CertReport:
    g0 = diagonal(full, full)
    R = offdiag_R(full, full)
    dual = single_preconditioning(full)
    bound = R / g0.min()
    gap = measure_gap(full, dual.system, seed) if measure else None
    A, B = _frame_bounds(full, frame_bounds, seed) if measure else (None, None)
    comps = {"min_G0": g0.min(), "max_G0": g0.max(), "R_gg": R,
             "lemma_bound": gap_bound(full, dual.system)}
    return CertReport(SINGLE_PRECONDITIONING, bound, gap, A, B, comps, seed,
                      _tolerances(), approx_dual=bound < 1)


def bound_almost_painless(sp: SplitSystem, full: NsgSystem, which: str = "gamma1",
                          seed: int = SEED, measure: bool = True, frame_bounds=None) -> CertReport:
    g0 = diagonal(sp.core, sp.core)
    A0 = g0.min()
    if not A0 > 0:
        raise NotAFrame(f"painless core is not a frame (min G_0 = {A0:.3g})")
    r_rc = offdiag_R(sp.residual, sp.core)
    r_cr = offdiag_R(sp.core, sp.residual)
    g_rr = correlation_sum(sp.residual, sp.residual).max()
    if which in ("gamma1", PAINLESS_CANONICAL):
        method = PAINLESS_CANONICAL
        bound = math.sqrt(r_rc * r_cr) / A0
        dual = painless_canonical(sp)
    elif which in ("gamma2", MIXED):
        method = MIXED
        bound = (r_rc + r_cr + g_rr) / A0
        dual = mixed_dual(sp, full)
    else:
        raise ValueError(f"unknown dual {which!r}")
    gap = measure_gap(full, dual.system, seed) if measure else None
    A, B = _frame_bounds(full, frame_bounds, seed) if measure else (None, None)
    comps = {"min_G0": A0, "max_G0": g0.max(), "R_gr_go": r_rc, "R_go_gr": r_cr,
             "G_rr_sum": g_rr, "lemma_bound": gap_bound(full, dual.system)}
    return CertReport(method, bound, gap, A, B, comps, seed, _tolerances(),
                      approx_dual=bound < 1)


def bound_perturbation(g_sys: NsgSystem, h_sys: NsgSystem, which: str = "gamma1",
                       seed: int = SEED, measure: bool = True) -> CertReport:
    """Error bounds for duals derived from a nearby frame ``h``.

    ``gamma^1`` is the canonical dual of ``h``, ``gamma^2 = S_{h,h}^{-1} g``.
    Duals (and hence measured gaps) are only formed when ``h`` is painless.
    """
    if g_sys.grid != h_sys.grid or g_sys.d != h_sys.d:
        raise ValueError("g and h must share grid and frequency steps")
    psi = h_sys.with_samples([h.samples - g.samples for h, g in zip(h_sys.windows, g_sys.windows)])
    psi_sum = correlation_sum(psi, psi).max()
    c_psi = math.sqrt(psi_sum)
    painless = is_painless(h_sys)
    if painless:
        g0h = diagonal(h_sys, h_sys)
        A_h, B_h = g0h.min(), g0h.max()
    else:
        A_h, B_h = measure_frame_bounds(h_sys, seed)
    if not A_h > 1e-12:
        raise NotAFrame(f"reference system has lower frame bound {A_h:.3g}")
    A, B = measure_frame_bounds(g_sys, seed)
    comps = {"min_G0": A_h, "max_G0": B_h, "C_psi_bound": c_psi, "G_psi_sum": psi_sum,
             "A_h": A_h, "B_h": B_h}
    if which in ("gamma1", PAINLESS_CANONICAL):
        method = PAINLESS_CANONICAL
        bound = c_psi / math.sqrt(A_h)
        flag = psi_sum < A_h
        samples = [h.samples for h in h_sys.windows]
    elif which in ("gamma2", MIXED):
        method = MIXED
        bound = (math.sqrt(B_h) + math.sqrt(B)) * c_psi / A_h
        flag = psi_sum < A_h ** 2 / (math.sqrt(B_h) + math.sqrt(B)) ** 2
        samples = [g.samples for g in g_sys.windows]
    else:
        raise ValueError(f"unknown dual {which!r}")
    gap = None
    if painless and measure:
        inv = 1.0 / diagonal(h_sys, h_sys).values
        dual = h_sys.with_samples([s * inv for s in samples])
        gap = measure_gap(g_sys, dual, seed)
    return CertReport(method, bound, gap, A, B, comps, seed, _tolerances(), approx_dual=flag)


def certify_all(full: NsgSystem, seed: int = SEED, measure: bool = True) -> dict[str, CertReport]:
    """Reports for gamma^1, gamma^2 (almost painless) and gamma^3 (single preconditioning)."""
    sp = split(full)
    fb = measure_frame_bounds(full, seed) if measure else None
    return {
        "gamma1": bound_almost_painless(sp, full, "gamma1", seed, measure, fb),
        "gamma2": bound_almost_painless(sp, full, "gamma2", seed, measure, fb),
        "gamma3": bound_single_preconditioning(full, seed, measure, fb),
    }


# --- Gaussian tail-sum chain ----------------------------------------------

@dataclass
class TailBounds:
    sigma: float
    inner_sum_bound: float
    core_sum_factor: float
    claim1_bound: float
    claim2_bound: float
    grr_bound: float
    rgg_bound: float
    remainder: float
    A0: float
    gamma1_bound: float
    gamma2_bound: float
    gamma3_bound: float


def core_sum_factor(core: NsgSystem) -> float:
    """``max_n sum_k b_k^{-1/2} |g°_k[n]|``."""
    acc = np.zeros(core.grid.L)
    for w in core.windows:
        acc += np.abs(w.samples) / math.sqrt(w.freq_step)
    return float(acc.max())


def gaussian_tail_bounds(sigma: float, terms: int = 20, core: NsgSystem | None = None,
                         delta: float = 0.25, b_lower: float = 0.5) -> TailBounds:
    """End-point estimates of the residual sums for Gaussian arrangements.

    ``inner_sum_bound`` bounds ``sum_l b^{-1/2}|g^r_k(t - l/b)|`` on ``I_k``;
    ``claim2_bound`` bounds ``sum_k b^{-1/2}|g^r_k|`` using at most two
    maximal tails per half interval and ``delta``-separated centers with
    the slowest decay ``b_lower``.  Partial sums are truncated at ``terms``;
    ``remainder`` is the size of the first omitted term.
    """
    if terms < 1:
        raise ValueError("need at least one series term")
    if core is None:
        full = example1_system(sigma=sigma)
        core = split(full).core
        delta, b_lower = full.delta, full.b_lower
    gauss = lambda x: math.exp(-math.pi * x * x)  # noqa: E731
    ls = range(1, terms + 1)
    inner = sum(gauss(sigma * l) + gauss(sigma * (2 * l - 1) / 2) for l in ls)
    k0 = math.floor(2 / b_lower) + 1
    ks = range(k0, k0 + terms)
    claim2 = 2 * (gauss(sigma / 2) + sum(gauss(sigma * b_lower * k * delta) for k in ks))
    remainder = max(gauss(sigma * (terms + 1)) + gauss(sigma * (2 * terms + 1) / 2),
                    2 * gauss(sigma * b_lower * (k0 + terms) * delta))
    factor = core_sum_factor(core)
    claim1 = factor * inner
    grr = claim2 * inner
    rgg = claim1 + claim2 + grr
    A0 = diagonal(core, core).min()
    return TailBounds(sigma, inner, factor, claim1, claim2, grr, rgg, remainder, A0,
                      math.sqrt(claim1 * claim2) / A0, rgg / A0, rgg / A0)


def perturbation_frame_bound(A0: float, residual_bessel: float) -> float:
    """Lower frame bound ``(sqrt(A0) - sqrt(E))**2`` of ``g = g° + g^r`` when
    the residual system has Bessel bound ``E < A0``."""
    if residual_bessel < 0:
        raise ValueError("Bessel bound must be nonnegative")
    if residual_bessel >= A0:
        raise ValueError(f"perturbation too large: {residual_bessel} >= {A0}")
    return (math.sqrt(A0) - math.sqrt(residual_bessel)) ** 2

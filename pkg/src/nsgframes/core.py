"""NSG analysis/synthesis, the frame operator in Walnut form, and the
correlation quantities ``G_l`` and ``R`` that feed every error bound.

Conventions on a grid with ``Q`` samples per unit time:

* atoms ``g_{k,l}[n] = g_k[n] * exp(2j*pi*l*n/N_k)`` with ``N_k = Q/b_k``,
  ``l = 0..N_k-1``
* signal inner product ``<f, h> = (1/Q) * sum(f * conj(h))``; coefficient
  inner product unweighted

Channels are always reduced in ascending ``k``, so results are
deterministic for a fixed system.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .windows import NsgSystem, wiener_norm


@dataclass(frozen=True, eq=False)
class Coefficients:
    """Jagged per-channel coefficients ``c[k]`` of length ``N_k``."""

    channels: tuple
    L: int

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(np.asarray(c, dtype=complex) for c in self.channels))

    def __len__(self):
        return len(self.channels)

    def __getitem__(self, k):
        return self.channels[k]

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.channels]

    def vdot(self, other: "Coefficients") -> complex:
        """Unweighted inner product ``sum c * conj(other)``."""
        return complex(sum(np.vdot(o, c) for c, o in zip(self.channels, other.channels)))

    def energy(self) -> list[float]:
        return [float(np.sum(np.abs(c) ** 2)) for c in self.channels]


@dataclass(frozen=True, eq=False)
class CorrelationCurve:
    values: np.ndarray
    l: int | None
    pair: tuple = ("g", "gamma")

    def max(self) -> float:
        return float(self.values.max())

    def min(self) -> float:
        return float(self.values.min())


def signal_vdot(f, h, Q: int) -> complex:
    """Weighted signal inner product ``<f, h>``."""
    return complex(np.vdot(h, f) / Q)


def _check_signal(f, sys: NsgSystem) -> np.ndarray:
    f = np.asarray(f)
    if f.ndim not in (1, 2) or f.shape[0] != sys.grid.L:
        raise ValueError(f"signal has shape {f.shape}, grid needs ({sys.grid.L},) or ({sys.grid.L}, p)")
    return f


def _check_pair(g_sys: NsgSystem, gamma_sys: NsgSystem) -> None:
    if g_sys.grid != gamma_sys.grid:
        raise ValueError("systems live on different grids")
    if len(g_sys) != len(gamma_sys) or g_sys.d != gamma_sys.d:
        raise ValueError("systems have different frequency-step sequences")


def fold(x: np.ndarray, d: int) -> np.ndarray:
    """Periodic sum ``sum_j x[n + j*d]`` for ``n = 0..d-1`` along axis 0."""
    return x.reshape((-1, d) + x.shape[1:]).sum(axis=0)


def _tile(x: np.ndarray, reps: int) -> np.ndarray:
    return np.tile(x, (reps,) + (1,) * (x.ndim - 1))


def analyze(f, sys: NsgSystem) -> Coefficients:
    f = _check_signal(f, sys)
    Q = sys.grid.Q
    out = []
    win = (slice(None),) + (None,) * (f.ndim - 1)
    for w in sys.windows:
        p = fold(f * np.conj(w.samples)[win], w.d)
        out.append(np.fft.fft(p, axis=0) / Q)
    return Coefficients(out, sys.grid.L)


def synthesize(c: Coefficients, sys: NsgSystem) -> np.ndarray:
    if len(c) != len(sys) or c.sizes != sys.d:
        raise ValueError(f"coefficient layout {c.sizes} does not match system {sys.d}")
    L = sys.grid.L
    out = np.zeros(L, dtype=complex)
    for ck, w in zip(c.channels, sys.windows):
        N = w.d
        inner = np.fft.ifft(ck) * N
        out += w.samples * np.tile(inner, L // N)
    return out


def apply_frame_operator(f, g_sys: NsgSystem, gamma_sys: NsgSystem) -> np.ndarray:
    """``S_{g,gamma} f`` in Walnut form.

    ``out[n] = sum_k (1/b_k) gamma_k[n] sum_l conj(g_k[n - l d_k]) f[n - l d_k]``

    ``f`` may be a single signal or an ``(L, p)`` block of column signals.
    """
    _check_pair(g_sys, gamma_sys)
    f = _check_signal(f, g_sys)
    L = g_sys.grid.L
    fb = f.reshape(L, -1)
    p = fb.shape[1]
    out = np.zeros((L, p), dtype=complex)
    for (d, idx, G), (_, _, Gam) in zip(g_sys.groups, gamma_sys.groups):
        m = L // d
        inv_b = (d / g_sys.grid.Q)
        # periodic[k, n, :] = sum_j conj(g_k[j*d + n]) f[j*d + n, :]
        periodic = np.einsum("kjn,jnp->knp", np.conj(G).reshape(-1, m, d),
                             fb.reshape(m, d, p), optimize=True)
        contrib = np.einsum("kjn,knp->jnp", Gam.reshape(-1, m, d), periodic, optimize=True)
        out += inv_b * contrib.reshape(L, p)
    return out.reshape(f.shape)


def _shift_sums(g_sys: NsgSystem, gamma_sys: NsgSystem, include_zero: bool) -> np.ndarray:
    L = g_sys.grid.L
    acc = np.zeros(L)
    for g, gam in zip(g_sys.windows, gamma_sys.windows):
        ag = np.abs(g.samples)
        shifted = np.tile(fold(ag, g.d), L // g.d)
        if not include_zero:
            shifted = shifted - ag
        acc += (1.0 / g.freq_step) * shifted * np.abs(gam.samples)
    return np.maximum(acc, 0.0)


def correlation(g_sys: NsgSystem, gamma_sys: NsgSystem, l: int) -> CorrelationCurve:
    """``G_l[n] = sum_k (1/b_k) |g_k[n - l d_k]| |gamma_k[n]|``."""
    _check_pair(g_sys, gamma_sys)
    acc = np.zeros(g_sys.grid.L)
    for g, gam in zip(g_sys.windows, gamma_sys.windows):
        acc += (1.0 / g.freq_step) * np.abs(np.roll(g.samples, l * g.d)) * np.abs(gam.samples)
    return CorrelationCurve(acc, l)


def diagonal(g_sys: NsgSystem, gamma_sys: NsgSystem) -> CorrelationCurve:
    return correlation(g_sys, gamma_sys, 0)


def correlation_sum(g_sys: NsgSystem, gamma_sys: NsgSystem) -> CorrelationCurve:
    """``sum_l G_l`` over all periodic shifts, ``l = 0`` included."""
    _check_pair(g_sys, gamma_sys)
    return CorrelationCurve(_shift_sums(g_sys, gamma_sys, True), None)


def offdiag_curve(g_sys: NsgSystem, gamma_sys: NsgSystem) -> CorrelationCurve:
    _check_pair(g_sys, gamma_sys)
    return CorrelationCurve(_shift_sums(g_sys, gamma_sys, False), None)


def offdiag_R(g_sys: NsgSystem, gamma_sys: NsgSystem) -> float:
    """``R_{g,gamma}``: grid maximum of the off-diagonal correlation sum."""
    return offdiag_curve(g_sys, gamma_sys).max()


def norm_chain_bound(g_sys: NsgSystem, gamma_sys: NsgSystem) -> float:
    """Schur-type bound ``||S_{g,gamma}|| <= sqrt(max sum_l G_l^{g,gamma} * max sum_l G_l^{gamma,g})``."""
    return float(np.sqrt(correlation_sum(g_sys, gamma_sys).max()
                         * correlation_sum(gamma_sys, g_sys).max()))


def rayleigh_bound(g_sys: NsgSystem, gamma_sys: NsgSystem) -> float:
    """Upper bound on ``<S f, f> / ||f||^2``: ``max G_0 + sqrt(R_{g,gamma} R_{gamma,g})``."""
    return diagonal(g_sys, gamma_sys).max() + float(
        np.sqrt(offdiag_R(g_sys, gamma_sys) * offdiag_R(gamma_sys, g_sys)))


def bessel_bound(g_sys: NsgSystem) -> float:
    """Bessel bound ``max_n sum_k |g_k| * sup_k (1 + 1/b_k) ||g_k||_W``.

    The factor ``1 + 1/b_k`` is ``b_k^{-1}`` times the shift-sum constant
    ``1 + b_k`` for shifts of length ``1/b_k``.
    """
    B = float(np.sum([np.abs(w.samples) for w in g_sys.windows], axis=0).max())
    sup = max((1 + 1 / w.freq_step) * wiener_norm(w) for w in g_sys.windows)
    return B * sup


def diagonal_product(g_sys: NsgSystem, gamma_sys: NsgSystem) -> np.ndarray:
    """Signed diagonal ``sum_k (1/b_k) conj(g_k) gamma_k``."""
    _check_pair(g_sys, gamma_sys)
    acc = np.zeros(g_sys.grid.L, dtype=complex)
    for g, gam in zip(g_sys.windows, gamma_sys.windows):
        acc += (1.0 / g.freq_step) * np.conj(g.samples) * gam.samples
    return acc


def gap_bound(g_sys: NsgSystem, gamma_sys: NsgSystem) -> float:
    """Upper bound on ``||I - S_{g,gamma}||`` from the diagonal defect and
    the off-diagonal mass."""
    first = float(np.max(np.abs(1 - diagonal_product(g_sys, gamma_sys))))
    return first + float(np.sqrt(offdiag_R(g_sys, gamma_sys) * offdiag_R(gamma_sys, g_sys)))


def is_painless(sys: NsgSystem) -> bool:
    """Every window fits, up to exact zeros, in one period of its shifts."""
    return offdiag_R(sys, sys) == 0.0

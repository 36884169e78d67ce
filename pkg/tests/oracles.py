"""Independent dense reference implementations.

Everything here is built straight from the atom definitions with explicit
matrices and loops, sharing no code with the fast paths beyond reading
window samples.
"""

import math

import numpy as np


def atoms(sys):
    """Rows are the atoms ``g_k[n] exp(2j pi l n / N_k)`` in channel-major order."""
    L = sys.grid.L
    n = np.arange(L)
    rows = []
    for w in sys.windows:
        N = round(sys.grid.Q / w.freq_step)
        for l in range(N):
            rows.append(np.asarray(w.samples) * np.exp(2j * np.pi * l * n / N))
    return np.array(rows)


def analysis_matrix(sys):
    return np.conj(atoms(sys)) / sys.grid.Q


def frame_matrix(g_sys, gamma_sys):
    """``S_{g,gamma} = U_gamma C_g`` as an ``L x L`` matrix."""
    return atoms(gamma_sys).T @ analysis_matrix(g_sys)


def walnut_loop(f, g_sys, gamma_sys):
    """The Walnut sum evaluated term by term."""
    L, Q = g_sys.grid.L, g_sys.grid.Q
    out = np.zeros(L, dtype=complex)
    for g, gam in zip(g_sys.windows, gamma_sys.windows):
        d = round(Q / g.freq_step)
        for n in range(L):
            s = 0j
            for l in range(L // d):
                m = (n - l * d) % L
                s += np.conj(g.samples[m]) * f[m]
            out[n] += gam.samples[n] * s / g.freq_step
    return out


def gap_dense(g_sys, gamma_sys):
    S = frame_matrix(g_sys, gamma_sys)
    return float(np.linalg.norm(np.eye(len(S)) - S, 2))


def frame_bounds_dense(sys):
    ev = np.linalg.eigvalsh(frame_matrix(sys, sys))
    return float(ev[0]), float(ev[-1])


def gaussian_tail_series(sigma, terms=200):
    return math.fsum(math.exp(-math.pi * (sigma * l) ** 2)
                     + math.exp(-math.pi * (sigma * (2 * l - 1) / 2) ** 2)
                     for l in range(1, terms))


def wiener_blocks(values_at, T, Q):
    """Sum over unit blocks of the largest grid value, by explicit scanning."""
    total = 0.0
    for j in range(int(math.ceil(T))):
        total += max(values_at(n / Q) for n in range(j * Q, min((j + 1) * Q, int(T * Q))))
    return total

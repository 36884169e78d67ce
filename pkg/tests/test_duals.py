import numpy as np
import pytest

from nsgframes.duals import (MIXED, PAINLESS_CANONICAL, SINGLE_PRECONDITIONING, Infeasible,
                             NotInvertible, is_feasible, mixed_dual, painless_canonical,
                             single_preconditioning, suggest_b)
from nsgframes.lattice import Grid
from nsgframes.windows import NsgSystem, Window, gaussian_window, hann_window, split

from test_core import box_system, painless_hann


def widened_family(grid=Grid(8, 256), sigma=0.5):
    wins = [gaussian_window(sigma, 1.0, float(a), grid) for a in range(int(grid.T))]
    return NsgSystem(grid, wins, 0.5, 1.0, 1.0)


def feasibility_by_loops(sys):
    """R_{g,g} and min G_0 recomputed shift by shift."""
    L = sys.grid.L
    g0 = np.zeros(L)
    off = np.zeros(L)
    for w in sys.windows:
        d = round(sys.grid.Q / w.freq_step)
        a = np.abs(w.samples)
        g0 += a * a / w.freq_step
        for l in range(1, L // d):
            off += np.roll(a, l * d) * a / w.freq_step
    return off.max(), g0.min()


def test_partition_of_unity_dual_is_core():
    sys = box_system(4, 16, 1.0, 4)
    dual = painless_canonical(split(sys))
    assert dual.method == PAINLESS_CANONICAL
    assert all(np.allclose(d.samples, g.samples) for d, g in zip(dual.system.windows, sys.windows))


def test_painless_input_duals_coincide():
    sys = painless_hann()
    sp = split(sys)
    g1, g2, g3 = painless_canonical(sp), mixed_dual(sp, sys), single_preconditioning(sys)
    assert (g2.method, g3.method) == (MIXED, SINGLE_PRECONDITIONING)
    for a, b, c in zip(g1.system.windows, g2.system.windows, g3.system.windows):
        assert np.array_equal(a.samples, b.samples)
        assert np.allclose(a.samples, c.samples, rtol=1e-15)


def test_gamma1_diagonal_identity(ex1, ex1_split):
    dual = painless_canonical(ex1_split).system
    prod = sum(np.conj(g.samples) * d.samples / g.freq_step for g, d in zip(ex1.windows, dual.windows))
    assert np.max(np.abs(prod - 1)) <= 1e-12


def test_gamma3_diagonal_identity(ex1):
    dual = single_preconditioning(ex1).system
    prod = sum(np.abs(g.samples) ** 2 / g.freq_step / 1 for g in ex1.windows)
    ratio = sum(np.conj(g.samples) * d.samples / g.freq_step for g, d in zip(ex1.windows, dual.windows))
    assert np.max(np.abs(ratio - 1)) <= 1e-12
    assert np.all(prod > 0)


def test_duals_keep_lattice(ex1, ex1_split):
    for fam in (painless_canonical(ex1_split), mixed_dual(ex1_split, ex1), single_preconditioning(ex1)):
        assert fam.system.grid == ex1.grid
        assert fam.system.d == ex1.d
        assert np.array_equal(fam.system.centers, ex1.centers)


def test_not_invertible_on_coverage_gap():
    grid = Grid(8, 64)
    sys = NsgSystem(grid, [hann_window(1.0, 0.0, 1.0, grid), hann_window(1.0, 4.0, 1.0, grid)], 0.5, 1, 1)
    with pytest.raises(NotInvertible) as info:
        single_preconditioning(sys)
    assert info.value.min_g0 == 0.0
    with pytest.raises(NotInvertible):
        painless_canonical(split(sys))


def test_mixed_dual_requires_same_lattice(ex1, ex1_split):
    other = painless_hann()
    with pytest.raises(ValueError):
        mixed_dual(ex1_split, other)


def test_example1_is_feasible(ex1):
    assert is_feasible(ex1)
    assert suggest_b(ex1) is ex1


def test_suggest_b_widened_family():
    sys = widened_family()
    assert not is_feasible(sys)
    out = suggest_b(sys)
    assert out.b[0] < sys.b[0]
    R, m = feasibility_by_loops(out)
    assert R < m
    # each window keeps its samples, only the steps shrink
    assert all(np.array_equal(a.samples, b.samples) for a, b in zip(out.windows, sys.windows))
    assert np.all(out.b <= out.b_upper) and np.all(out.b >= out.b_lower)


def test_suggest_b_needs_exactly_one_step():
    sys = widened_family()
    out = suggest_b(sys)
    assert np.all(out.b == 0.5)
    assert out.b_lower == 0.5 and out.b_upper == 0.5


def test_suggest_b_runs_out_of_grid():
    # odd period: Q/b = 16 no longer divides L after one halving
    grid = Grid(8, 8 * 33)
    wins = [gaussian_window(0.5, 1.0, float(a), grid) for a in range(33)]
    sys = NsgSystem(grid, wins, 0.5, 1.0, 1.0)
    with pytest.raises(Infeasible):
        suggest_b(sys)


def test_suggest_b_iteration_cap():
    with pytest.raises(Infeasible) as info:
        suggest_b(widened_family(), max_iters=0)
    assert info.value.iterations == 0


def test_suggest_b_rejects_bad_factor(ex1):
    with pytest.raises(ValueError):
        suggest_b(ex1, shrink=1.5)


def test_zero_window_allowed():
    # residuals of compactly supported windows are legitimately zero
    grid = Grid(8, 32)
    w = Window(np.zeros(32), 0.0, 1.0, grid)
    assert w.peak == 0.0

"""Nonstationary Gabor frames, approximately dual windows and error certificates."""

from .certify import (CertReport, NonConvergence, NotAFrame, TailBounds, bound_almost_painless,
                      bound_perturbation, bound_single_preconditioning, certify_all,
                      gaussian_tail_bounds, measure_frame_bounds, measure_gap,
                      perturbation_frame_bound)
from .core import (Coefficients, CorrelationCurve, analyze, apply_frame_operator, bessel_bound,
                   correlation, correlation_sum, diagonal, gap_bound, norm_chain_bound,
                   offdiag_R, synthesize)
from .duals import (DualFamily, Infeasible, NotInvertible, mixed_dual, painless_canonical,
                    single_preconditioning, suggest_b)
from .filterbank import FirBank, build_example2, fourier_side, reproduce_example2
from .lattice import Grid, ValidationReport, make_grid, validate_system
from .windows import (DecayEnvelope, NsgSystem, SplitSystem, Window, arrange, check_decay,
                      example1_system, gaussian_window, hann_window, split, wiener_norm)

__version__ = "0.1.0"

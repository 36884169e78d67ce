"""End-to-end reproduction of the two worked examples.

Each run returns a :class:`Bundle`: a claim table with pass/fail against
fixed tolerances, the certification reports, and named sample curves for
external plotting.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from .certify import (DOMINANCE_TOL, SEED, CertReport, certify_all, gaussian_tail_bounds,
                      perturbation_frame_bound)
from .core import bessel_bound, diagonal, norm_chain_bound, offdiag_curve
from .duals import mixed_dual, painless_canonical, single_preconditioning
from .export import write_windows
from .filterbank import (HANN_SPAN, PUBLISHED_GAPS, build_example2, example2_ordering_holds,
                         fourier_side, idft, reproduce_example2)
from .lattice import Grid
from .windows import example1_system, split


@dataclass
class Example1Config:
    Q: int = 48
    periods: int = 24
    sigma: float = 2.5
    terms: int = 20
    seed: int = SEED

    @property
    def grid(self) -> Grid:
        return Grid(self.Q, self.Q * self.periods)


@dataclass
class Example2Config:
    Q: int = 24
    periods: int = 48
    span: float = HANN_SPAN
    seed: int = SEED

    @property
    def grid(self) -> Grid:
        return Grid(self.Q, self.Q * self.periods)


@dataclass
class Claim:
    """One row of a claim table.

    ``relation`` is ``"approx"`` (``|value - target| <= tol``), ``"le"``
    (``value <= target + tol``), ``"ge"`` (``value >= target - tol``),
    ``"band"`` (``target`` is a ``(lo, hi)`` pair) or ``"true"``.
    """

    name: str
    value: float
    target: float | tuple | None
    relation: str
    tol: float = 0.0

    @property
    def passed(self) -> bool:
        v, t = self.value, self.target
        if v is None or (isinstance(v, float) and not math.isfinite(v)):
            return False
        if self.relation == "approx":
            return abs(v - t) <= self.tol
        if self.relation == "le":
            return v <= t + self.tol
        if self.relation == "ge":
            return v >= t - self.tol
        if self.relation == "band":
            return t[0] <= v <= t[1]
        if self.relation == "true":
            return bool(v)
        raise ValueError(f"unknown relation {self.relation!r}")

    def row(self) -> str:
        sym = {"approx": "~", "le": "<=", "ge": ">=", "band": "in", "true": "is"}[self.relation]
        tgt = self.target
        if self.relation == "true":
            tgt = "true"
        elif isinstance(tgt, float):
            tgt = f"{tgt:.7g}"
        tol = f" (tol {self.tol:g})" if self.tol else ""
        val = self.value if isinstance(self.value, bool) else f"{self.value:.7g}"
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}: {val} {sym} {tgt}{tol}"


@dataclass
class Bundle:
    claims: list
    reports: dict
    curves: dict = field(default_factory=dict)
    info: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.claims)

    def table(self) -> str:
        return "\n".join(c.row() for c in self.claims)

    def to_dict(self) -> dict:
        claims = [{**asdict(c), "passed": c.passed} for c in self.claims]
        return {"claims": claims, "reports": {k: r.to_dict() for k, r in self.reports.items()},
                "info": self.info, "passed": self.passed}

    def write(self, out: str | Path) -> list[Path]:
        """Write ``report.json``, ``claims.csv`` and one CSV per curve."""
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / "report.json", out / "claims.csv"]
        paths[0].write_text(json.dumps(self.to_dict(), indent=2, default=_plain))
        with open(paths[1], "w") as fh:
            fh.write("name,value,target,relation,tol,passed\n")
            for c in self.claims:
                tgt = "" if c.target is None else (
                    f"{c.target[0]}..{c.target[1]}" if isinstance(c.target, tuple) else c.target)
                fh.write(f"{c.name},{c.value},{tgt},{c.relation},{c.tol},{c.passed}\n")
        for name, curve in self.curves.items():
            p = out / f"{name}.csv"
            write_windows(p, curve)
            paths.append(p)
        return paths


def _plain(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    raise TypeError(f"cannot serialize {type(x)}")


def _dominance_claims(reports: dict[str, CertReport]) -> list[Claim]:
    return [Claim(f"{k} measured gap <= analytic bound", r.measured_gap, r.analytic_bound,
                  "le", DOMINANCE_TOL) for k, r in reports.items()]


def run_example1(cfg: Example1Config | None = None) -> Bundle:
    """Gaussian arrangement: claim chain, bounds, measured gaps and frame bounds."""
    cfg = cfg or Example1Config()
    full = example1_system(cfg.grid, cfg.sigma)
    sp = split(full)
    tails = gaussian_tail_bounds(cfg.sigma, cfg.terms, sp.core, full.delta, full.b_lower)
    reports = certify_all(full, cfg.seed)
    r1, r2, r3 = reports["gamma1"], reports["gamma2"], reports["gamma3"]
    A, B = r1.A, r1.B
    A_pert = perturbation_frame_bound(tails.A0, tails.grr_bound)

    claims = [
        Claim("A0 = min G0 of painless core", tails.A0, 0.1718, "approx", 1e-3),
        Claim("inner tail sum", tails.inner_sum_bound, 0.00738, "approx", 1e-5),
        Claim("core-sum factor", tails.core_sum_factor, 1.1206, "approx", 1e-3),
        Claim("R_{gr,go} tail bound", tails.claim1_bound, 0.00827, "le", 1e-4),
        Claim("R_{gr,go} on grid", r1.components["R_gr_go"], 0.00827, "le", 1e-4),
        Claim("R_{go,gr} tail bound", tails.claim2_bound, 0.0157, "le", 1e-4),
        Claim("R_{go,gr} on grid", r1.components["R_go_gr"], 0.0157, "le", 1e-4),
        Claim("sum_l G_l^{gr,gr} tail bound", tails.grr_bound, 0.0001158, "le", 1e-5),
        Claim("sum_l G_l^{gr,gr} on grid", r1.components["G_rr_sum"], 0.0001158, "le", 1e-5),
        Claim("R_{g,g} tail bound", tails.rgg_bound, 0.0241, "le", 1e-3),
        Claim("R_{g,g} on grid", r3.components["R_gg"], 0.0241, "le", 1e-3),
        Claim("gamma1 bound from tail chain", tails.gamma1_bound, 0.0663, "le", 1e-3),
        Claim("gamma1 bound on grid", r1.analytic_bound, 0.0663, "le", 1e-3),
        Claim("gamma2 bound from tail chain", tails.gamma2_bound, 0.1402, "le", 1e-3),
        Claim("gamma2 bound on grid", r2.analytic_bound, 0.1402, "le", 1e-3),
        Claim("gamma3 bound from tail chain", tails.gamma3_bound, 0.1402, "le", 1e-3),
        Claim("gamma3 bound on grid", r3.analytic_bound, 0.1402, "le", 1e-3),
        Claim("perturbation lower frame bound", A_pert, 0.1630, "approx", 5e-4),
        Claim("measured lower frame bound A", A, 0.1630, "ge", 1e-3),
        *_dominance_claims(reports),
        Claim("Bessel bound >= measured B", bessel_bound(full), B, "ge"),
        Claim("norm-chain bound >= measured B", norm_chain_bound(full, full), B, "ge"),
    ]
    curves = {
        "windows": full,
        "core": sp.core,
        "residual": sp.residual,
        "gamma1": painless_canonical(sp).system,
        "gamma2": mixed_dual(sp, full).system,
        "gamma3": single_preconditioning(full).system,
        "diagonals": [diagonal(sp.core, sp.core).values, diagonal(full, full).values,
                      offdiag_curve(full, full).values],
    }
    info = {"config": asdict(cfg), "tail_bounds": asdict(tails), "A": A, "B": B,
            "channels": len(full), "diagonals_rows": ["G0 core", "G0 full", "offdiag sum g,g"]}
    return Bundle(claims, reports, curves, info)


def run_example2(cfg: Example2Config | None = None) -> Bundle:
    """Hann filter bank on the Fourier side: ordering and band checks."""
    cfg = cfg or Example2Config()
    bank = build_example2(cfg.grid, cfg.span)
    reports = reproduce_example2(cfg.grid, cfg.seed, cfg.span)
    g1, g2, g3 = (reports[k].measured_gap for k in ("gamma1", "gamma2", "gamma3"))
    claims = [
        Claim("gap(gamma1) < gap(gamma2) and gap(gamma3)", example2_ordering_holds(reports), None, "true"),
        Claim("gap(gamma1) band", g1, (0.01, 0.04), "band"),
        Claim("|gap(gamma2) - gap(gamma3)| / gap(gamma2)", abs(g2 - g3) / g2, 0.25, "le"),
        *_dominance_claims(reports),
    ]
    full = fourier_side(bank)
    sp = split(full)
    fgrid = full.grid
    duals = {"gamma1": painless_canonical(sp).system, "gamma2": mixed_dual(sp, full).system,
             "gamma3": single_preconditioning(full).system}
    curves = {"filters": bank.time_windows, "spectra": full, **duals}
    # time-domain shape of each dual, for the decay comparison
    for k, sys in duals.items():
        curves[f"{k}_time"] = [idft(w.samples, bank.grid) for w in sys.windows]
    info = {"config": asdict(cfg), "published_gaps": PUBLISHED_GAPS,
            "measured_gaps": {"gamma1": g1, "gamma2": g2, "gamma3": g3},
            "channels": len(bank), "center_freqs": list(bank.center_freqs),
            "freq_grid": {"Q": fgrid.Q, "L": fgrid.L}}
    return Bundle(claims, reports, curves, info)

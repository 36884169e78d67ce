"""``nsg`` command line.

Exit codes: 0 success, 2 config/validation error, 3 I/O error,
4 bound or acceptance violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .certify import (DOMINANCE_TOL, SEED, CertReport, NonConvergence, NotAFrame, bound_almost_painless,
                      bound_single_preconditioning, measure_frame_bounds, measure_gap)
from .config import METHODS, Config, ConfigError, load_config, make_signal
from .core import analyze, synthesize
from .duals import (Infeasible, NotInvertible, mixed_dual, painless_canonical,
                    single_preconditioning)
from .export import read_coefficients, write_coefficients, write_signal, write_windows
from .reproduce import Example1Config, Example2Config, run_example1, run_example2
from .windows import NsgSystem, split

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_IO = 3
EXIT_VIOLATION = 4


def dual_system(full: NsgSystem, method: str) -> NsgSystem:
    if method == "gamma1":
        return painless_canonical(split(full)).system
    if method == "gamma2":
        return mixed_dual(split(full), full).system
    if method == "gamma3":
        return single_preconditioning(full).system
    raise ValueError(f"unknown method {method!r}")


def _seed(args, cfg: Config | None = None) -> int:
    if args.seed is not None:
        return args.seed
    if cfg is not None and cfg.seed is not None:
        return cfg.seed
    return SEED


def _method(args, cfg: Config, allow_all: bool) -> str:
    m = args.method or cfg.method
    if m == "all" and not allow_all:
        raise ConfigError("--method", "choose one of gamma1, gamma2, gamma3")
    return m


def cmd_analyze(args) -> int:
    cfg = load_config(args.config)
    if cfg.signal is None:
        raise ConfigError("config.signal", "analyze needs a signal")
    f = make_signal(cfg.signal, cfg.grid, cfg.base_dir)
    c = analyze(f, cfg.system)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_coefficients(out / "coefficients.csv", c)
    summary = {"channels": len(c), "N_k": c.sizes, "energy": c.energy()}
    (out / "summary.json").write_text(json.dumps(summary, indent=2))
    print(f"analyzed {len(c)} channels -> {out / 'coefficients.csv'}")
    return EXIT_OK


def cmd_synthesize(args) -> int:
    cfg = load_config(args.config)
    method = _method(args, cfg, allow_all=False)
    if not args.coefficients:
        raise ConfigError("--coefficients", "synthesize needs a coefficient CSV")
    try:
        c = read_coefficients(args.coefficients, cfg.system)
    except ValueError as exc:
        raise ConfigError("--coefficients", str(exc)) from None
    gamma = cfg.system if method == "primal" else dual_system(cfg.system, method)
    f = synthesize(c, gamma)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_signal(out / "signal.csv", f)
    print(f"synthesized with {method} -> {out / 'signal.csv'}")
    return EXIT_OK


def certify_config(cfg: Config, method: str, seed: int) -> dict[str, CertReport]:
    """Reports for the configured system.  With ``dual_from`` the measured
    gaps use duals built from that other system, against the bounds of the
    configured one; this exists to exercise the violation alarm."""
    full = cfg.system
    methods = METHODS if method == "all" else (method,)
    sp = split(full)
    fb = measure_frame_bounds(full, seed)
    reports = {}
    for m in methods:
        if m == "gamma3":
            rep = bound_single_preconditioning(full, seed, frame_bounds=fb)
        else:
            rep = bound_almost_painless(sp, full, m, seed, frame_bounds=fb)
        if cfg.dual_from is not None:
            rep.measured_gap = measure_gap(full, dual_system(cfg.dual_from, m), seed)
            rep.components["dual_from"] = True
        reports[m] = rep
    return reports


def cmd_certify(args) -> int:
    cfg = load_config(args.config)
    method = _method(args, cfg, allow_all=True)
    seed = _seed(args, cfg)
    reports = certify_config(cfg, method, seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for m, rep in reports.items():
        rep.tolerances["dominance"] = args.tol
        write_windows(out / f"{m}_windows.csv", dual_system(cfg.system, m))
    (out / "certify.json").write_text(
        json.dumps({k: r.to_dict() for k, r in reports.items()}, indent=2))
    bad = []
    for k, r in reports.items():
        ok = r.dominates(args.tol)
        print(f"{'PASS' if ok else 'FAIL'}  {k} ({r.method}): measured {r.measured_gap:.6g} "
              f"<= bound {r.analytic_bound:.6g}; A={r.A:.6g} B={r.B:.6g}")
        if not ok:
            bad.append(k)
    if bad:
        print(f"bound violated for {', '.join(bad)}", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_reproduce(args) -> int:
    seed = _seed(args)
    if args.example == 1:
        bundle = run_example1(Example1Config(seed=seed))
    else:
        bundle = run_example2(Example2Config(seed=seed))
    paths = bundle.write(Path(args.out) / f"example{args.example}")
    print(bundle.table())
    if args.example == 2:
        gaps = bundle.info["measured_gaps"]
        for k, target in bundle.info["published_gaps"].items():
            print(f"info  {k}: measured {gaps[k]:.4f}, published {target:.4f}")
    print(f"wrote {len(paths)} files to {paths[0].parent}")
    if not bundle.passed:
        print("acceptance failure", file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nsg", description="Nonstationary Gabor frames and approximate duals.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, config=True):
        if config:
            sp.add_argument("--config", required=True, help="JSON run configuration")
        sp.add_argument("--out", default="nsg-out", help="output directory")
        sp.add_argument("--seed", type=int, default=None, help="seed for randomized measurements")
        sp.add_argument("--tol", type=float, default=DOMINANCE_TOL, help="dominance slack")

    a = sub.add_parser("analyze", help="coefficients of the configured signal")
    common(a)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("synthesize", help="signal from coefficients with a dual family")
    common(s)
    s.add_argument("--coefficients", help="coefficient CSV (k,l,re,im)")
    s.add_argument("--method", choices=METHODS + ("primal",), default=None)
    s.set_defaults(func=cmd_synthesize)

    c = sub.add_parser("certify", help="analytic bounds versus measured gaps")
    common(c)
    c.add_argument("--method", choices=METHODS + ("all",), default=None)
    c.set_defaults(func=cmd_certify)

    r = sub.add_parser("reproduce", help="rerun a worked example with its claim table")
    common(r, config=False)
    r.add_argument("example", type=int, choices=(1, 2))
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, NotInvertible, NotAFrame, Infeasible) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except NonConvergence as exc:
        print(f"measurement failed: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())

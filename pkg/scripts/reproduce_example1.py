"""Gaussian arrangement: claim table, bounds and measured gaps.

    python3 scripts/reproduce_example1.py --out results/example1
"""

import argparse
import sys

from nsgframes.reproduce import Example1Config, run_example1


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--Q", type=int, default=Example1Config.Q)
    p.add_argument("--periods", type=int, default=Example1Config.periods)
    p.add_argument("--sigma", type=float, default=Example1Config.sigma)
    p.add_argument("--seed", type=int, default=Example1Config.seed)
    p.add_argument("--out", default="results/example1")
    args = p.parse_args()
    cfg = Example1Config(Q=args.Q, periods=args.periods, sigma=args.sigma, seed=args.seed)
    bundle = run_example1(cfg)
    print(bundle.table())
    tb = bundle.info["tail_bounds"]
    print(f"\nchannels {bundle.info['channels']}, A = {bundle.info['A']:.6f}, B = {bundle.info['B']:.6f}")
    print(f"tail chain: gamma1 {tb['gamma1_bound']:.5f}, gamma2/3 {tb['gamma2_bound']:.5f}")
    bundle.write(args.out)
    return 0 if bundle.passed else 4


if __name__ == "__main__":
    sys.exit(main())

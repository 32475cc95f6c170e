"""Run every verification suite and summarise slack and violations."""

import argparse
import time

from bohrsharp import verify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--radii", type=int, default=20)
    args = ap.parse_args()

    grid = verify.radius_grid(steps=args.radii)
    runs = {
        "classic": lambda: verify.verify_bohr_classic(args.samples, args.seed, grid),
        "condition-i": lambda: verify.condition_i_spotcheck(args.samples, args.seed, grid),
    }
    for kind in verify.IMPROVED_KINDS:
        runs[kind] = lambda kind=kind: verify.verify_improved(kind, samples=args.samples, seed=args.seed,
                                                              r_grid=grid)
    failed = False
    for name, run in runs.items():
        t = time.perf_counter()
        rep = run()
        d = rep.to_dict()
        failed |= not rep.clean
        print(f"{name:20s} slack_min={d['slack_min']: .3e} violations={len(d['violations'])} "
              f"({time.perf_counter() - t:.1f} s)")
    dom = verify.dominance_check()
    print(f"{'dominance':20s} max_excess={dom.max_excess: .3e} scalar_min={dom.scalar_min:.9f} passed={dom.passed}")
    raise SystemExit(1 if failed or not dom.passed else 0)


if __name__ == "__main__":
    main()

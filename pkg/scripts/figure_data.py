"""Write CSV data for every figure into a directory."""

import argparse
from pathlib import Path

from bohrsharp.cli import main as cli

FIGURES = [
    ("bounds.csv", ["--figure", "bounds"]),
    ("bounds_zoom.csv", ["--figure", "bounds-zoom"]),
] + [
    (f"psi_phi0_r_{tag}.csv", ["--figure", "psi-vs-phi0-a", "--r", r])
    for tag, r in (("1_3", "1/3"), ("1_4", "1/4"), ("1_5", "1/5"), ("1_10", "1/10"))
] + [
    (f"psi_phi0_a_{tag}.csv", ["--figure", "psi-vs-phi0-r", "--a", a])
    for tag, a in (("3_4", "3/4"), ("1_2", "1/2"), ("1_3", "1/3"), ("1_5", "1/5"))
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="figure_data")
    ap.add_argument("--steps", default="200")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    for name, flags in FIGURES:
        code = cli(["plot", *flags, "--steps", args.steps, "-o", str(out / name)])
        print(f"{name}: exit {code}")


if __name__ == "__main__":
    main()

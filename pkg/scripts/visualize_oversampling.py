#!/usr/bin/env python3
"""Scatter the synthetic shapes before and after oversampling.

Produces one row per shape: the raw imbalanced dataset on the left, the
dataset with synthetic minority points (default: simplicial sampler) on the
right. Needs matplotlib, which is not a package dependency.

Example:
    python3 scripts/visualize_oversampling.py --method simplicial -k 5 -o shapes.png
"""

import argparse
import sys

import numpy as np

from simbal import (
    MAXIMAL,
    MINORITY,
    SamplerConfig,
    Shape,
    SyntheticSpec,
    generate_synthetic,
    oversample,
    parse_method,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--method", default="simplicial")
    parser.add_argument("-k", type=int, default=5)
    parser.add_argument("-p", default="max")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("-o", "--output", default="oversampling.png")
    args = parser.parse_args()

    try:
        import matplotlib
        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("error: this script needs matplotlib (pip install matplotlib)",
              file=sys.stderr)
        return 1

    method = parse_method(args.method)
    p = MAXIMAL if args.p == "max" else int(args.p)
    shapes = list(Shape)
    fig, axes = plt.subplots(len(shapes), 2, figsize=(9, 4 * len(shapes)))
    for row, shape in enumerate(shapes):
        ds = generate_synthetic(SyntheticSpec(shape, seed=args.seed))
        cfg = SamplerConfig(method=method, k=args.k, p=p, seed=args.seed)
        batch = oversample(ds, cfg)
        mino = ds.features[ds.labels == MINORITY]
        maj = ds.features[ds.labels != MINORITY]
        for col, title in enumerate(("imbalanced", f"+{batch.m} synthetic")):
            ax = axes[row, col]
            ax.scatter(maj[:, 0], maj[:, 1], s=8, c="#9aa5b1", label="majority")
            ax.scatter(mino[:, 0], mino[:, 1], s=14, c="#d64550", label="minority")
            if col == 1:
                ax.scatter(batch.points[:, 0], batch.points[:, 1], s=10,
                           c="#2a6f97", marker="x", label="synthetic")
            ax.set_title(f"{shape.value}: {title}", fontsize=10)
            ax.set_aspect("equal", adjustable="datalim")
            if row == 0 and col == 1:
                ax.legend(fontsize=8, loc="upper right")
    fig.tight_layout()
    fig.savefig(args.output, dpi=130)
    print(f"wrote {args.output}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Heatmap of a 2-D sweep CSV; masked cells are drawn distinctly.

Usage: python3 heatmap.py GRID.csv [-o OUT.png] [--title TITLE]
"""
from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from common import FigureSpec, load_sweep_csv


def render(spec: FigureSpec) -> dict:
    """Write the heatmap; returns the masked array that was drawn."""
    data = load_sweep_csv(spec.input_path)
    grid, mask = data["grid"], data["mask"]
    if not np.all(np.isfinite(grid[~mask])):
        raise ValueError("unmasked sweep cells contain non-finite values")
    shown = np.ma.array(grid, mask=mask)

    fig, ax = plt.subplots(figsize=(6.5, 5))
    cmap = plt.get_cmap("viridis").copy()
    cmap.set_bad("white")  # failed / floored cells
    extent = (data["axis2"][0], data["axis2"][-1],
              data["axis1"][0], data["axis1"][-1])
    im = ax.imshow(shown, origin="lower", aspect="auto", cmap=cmap,
                   extent=extent, interpolation="nearest")
    ax.set_xlabel(spec.xlabel or data["axis2_name"])
    ax.set_ylabel(spec.ylabel or data["axis1_name"])
    if spec.title:
        ax.set_title(spec.title)
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)
    return {"shown": shown, "axis1": data["axis1"], "axis2": data["axis2"]}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("input")
    ap.add_argument("-o", "--out", default="heatmap.png")
    ap.add_argument("--title", default="")
    args = ap.parse_args(argv)
    try:
        render(FigureSpec(kind="heatmap", input_path=args.input,
                          output_path=args.out, title=args.title))
    except (OSError, ValueError) as e:
        print(f"heatmap: {e}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

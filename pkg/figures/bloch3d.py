#!/usr/bin/env python3
"""3-D Bloch-sphere trajectory from a trajectory CSV.

Usage: python3 bloch3d.py RUN.csv [-o OUT.png] [--title TITLE]
"""
from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from common import FigureSpec, assert_finite, bloch_norms, load_trajectory_csv


def render(spec: FigureSpec) -> dict:
    """Write the Bloch figure; returns the plotted coordinates and norms."""
    data = load_trajectory_csv(spec.input_path)
    x = assert_finite("bloch_x", data["bloch_x"])
    y = assert_finite("bloch_y", data["bloch_y"])
    z = assert_finite("bloch_z", data["bloch_z"])
    norms = bloch_norms(data)

    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    u = np.linspace(0, 2 * np.pi, 40)
    v = np.linspace(0, np.pi, 20)
    ax.plot_wireframe(np.outer(np.cos(u), np.sin(v)),
                      np.outer(np.sin(u), np.sin(v)),
                      np.outer(np.ones_like(u), np.cos(v)),
                      color="lightgray", linewidth=0.3)
    pts = ax.scatter(x, y, z, c=data["t_ps"], cmap="plasma", s=6)
    ax.scatter([0], [0], [1], color="green", s=40)   # start pole |R>
    ax.scatter([0], [0], [-1], color="red", s=40)    # target pole |L>
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    ax.set_box_aspect((1, 1, 1))
    if spec.title:
        ax.set_title(spec.title)
    fig.colorbar(pts, ax=ax, shrink=0.6, label="t (ps)")
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)
    return {"x": x, "y": y, "z": z, "norms": norms}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("input")
    ap.add_argument("-o", "--out", default="bloch.png")
    ap.add_argument("--title", default="")
    args = ap.parse_args(argv)
    try:
        render(FigureSpec(kind="bloch3d", input_path=args.input,
                          output_path=args.out, title=args.title))
    except (OSError, ValueError) as e:
        print(f"bloch3d: {e}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

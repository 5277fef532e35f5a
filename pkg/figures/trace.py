#!/usr/bin/env python3
"""Population/fidelity/control-field traces from a trajectory CSV.

Usage: python3 trace.py RUN.csv [-o OUT.png] [--title TITLE]
"""
from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from common import FigureSpec, assert_finite, load_trajectory_csv


def render(spec: FigureSpec) -> dict:
    """Write the trace figure; returns the plotted arrays for checking."""
    data = load_trajectory_csv(spec.input_path)
    t = assert_finite("t_ps", data["t_ps"])
    plotted = {k: assert_finite(k, data[k])
               for k in ("p_l", "fidelity", "f1_uev", "f2_uev", "v")}

    fig, (ax_top, ax_bot) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    ax_top.plot(t, plotted["p_l"], label="target population")
    ax_top.plot(t, plotted["fidelity"], label="fidelity", ls="--")
    ax_top.plot(t, plotted["v"], label="V", ls=":")
    ax_top.set_ylabel("population / fidelity / V")
    ax_top.legend(loc="best", fontsize=8)
    ax_bot.plot(t, plotted["f1_uev"], label="f1 (ueV)")
    ax_bot.plot(t, plotted["f2_uev"], label="f2 (ueV)")
    ax_bot.set_xlabel(spec.xlabel or "t (ps)")
    ax_bot.set_ylabel(spec.ylabel or "control fields (ueV)")
    ax_bot.legend(loc="best", fontsize=8)
    if spec.title:
        ax_top.set_title(spec.title)
    fig.tight_layout()
    fig.savefig(spec.output_path, dpi=150)
    plt.close(fig)
    return {"t": t, **plotted}


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("input")
    ap.add_argument("-o", "--out", default="trace.png")
    ap.add_argument("--title", default="")
    args = ap.parse_args(argv)
    try:
        render(FigureSpec(kind="trace", input_path=args.input,
                          output_path=args.out, title=args.title))
    except (OSError, ValueError) as e:
        print(f"trace: {e}", file=sys.stderr)
        return 1
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

#!/usr/bin/env python3
"""Plot a uavcoop CSV sweep: analytic columns as lines, simulated columns as markers."""

import argparse
import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd


def read_sweep(path):
    with open(path) as f:
        lines = f.readlines()
    header = {}
    body = []
    for line in lines:
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            if value:
                header[key.strip()] = value.strip()
        else:
            body.append(line)
    return header, pd.read_csv(io.StringIO("".join(body)))


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("-o", "--output", default="sweep.png")
    ap.add_argument("--logx", action="store_true")
    args = ap.parse_args()

    header, df = read_sweep(args.csv)
    x = df.columns[0]
    sim_cols = {"estimate", "sim_f1", "sim_f2", "sim_f3", "sim_nse_proposed", "sim_nse_uav_only", "sim_nse_ground_only"}
    skip = {x, "ci_halfwidth", "scheme", "seed", "check", "point", "status"}

    fig, ax = plt.subplots(figsize=(6, 4))
    for col in df.columns:
        if col in skip or df[col].isna().all():
            continue
        if col in sim_cols:
            ax.plot(df[x], df[col], "o", label=col)
        else:
            ax.plot(df[x], df[col], "-", label=col)
    if args.logx:
        ax.set_xscale("log")
    ax.set_xlabel(x)
    ax.grid(alpha=0.3)
    ax.legend(fontsize=8)
    title = header.get("sweep", "")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)


if __name__ == "__main__":
    main()

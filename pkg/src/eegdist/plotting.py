"""Static SVG figures: distortion surface, per-F distortion lines, channel box plots."""
from __future__ import annotations

from collections import defaultdict

import numpy as np

from .signal_io import records_to_columns

KINDS = ("surface", "lines", "box")


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # fixed salt keeps SVG element ids stable between runs
    matplotlib.rcParams["svg.hashsalt"] = "eegdist"
    return plt


def _mean_by(cols, keys, value="prd"):
    acc = defaultdict(list)
    for row in zip(*(cols[k] for k in keys), cols[value]):
        acc[row[:-1]].append(row[-1])
    return {k: float(np.mean(v)) for k, v in sorted(acc.items())}


def plot_records(records, kind: str, out_path) -> None:
    if kind not in KINDS:
        raise ValueError(f"unknown plot kind {kind!r}; choose from {', '.join(KINDS)}")
    if not records:
        raise ValueError("no records to plot")
    plt = _pyplot()
    cols = records_to_columns(records)
    if kind == "lines":
        fig, ax = plt.subplots(figsize=(6, 4))
        means = _mean_by(cols, ("filter_length", "cr"))
        for flen in sorted({k[0] for k in means}):
            pts = sorted((cr, v) for (f, cr), v in means.items() if f == flen)
            ax.plot([p[0] for p in pts], [p[1] for p in pts], marker="o", ms=3, label=f"F={int(flen)}")
        ax.set_xlabel("compression ratio Cr (%)")
        ax.set_ylabel("distortion PRD (%)")
        ax.legend(fontsize=7, ncol=2)
    elif kind == "surface":
        fig = plt.figure(figsize=(6, 5))
        ax = fig.add_subplot(projection="3d")
        means = _mean_by(cols, ("cr", "filter_length"))
        pts = np.array([(cr, f, v) for (cr, f), v in means.items()])
        if len(pts) >= 3 and np.ptp(pts[:, 0]) > 0 and np.ptp(pts[:, 1]) > 0:
            ax.plot_trisurf(pts[:, 0], pts[:, 1], pts[:, 2], cmap="viridis", linewidth=0.2)
        else:
            ax.scatter(pts[:, 0], pts[:, 1], pts[:, 2])
        ax.set_xlabel("Cr (%)")
        ax.set_ylabel("filter length F")
        ax.set_zlabel("PRD (%)")
    else:
        fig, ax = plt.subplots(figsize=(6, 4))
        channels = sorted({int(c) for c in cols["channel"]})
        data = [cols["log_prd"][cols["channel"] == c] for c in channels]
        data = [d[np.isfinite(d)] for d in data]
        ax.boxplot(data)
        ax.set_xticks(range(1, len(channels) + 1), [str(c) for c in channels])
        ax.set_xlabel("channel model")
        ax.set_ylabel("log distortion")
    fig.tight_layout()
    fig.savefig(out_path, format="svg", metadata={"Date": None})
    plt.close(fig)

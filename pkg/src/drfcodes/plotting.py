"""Figures for the comparison report.

Rendering is headless (Agg) and always to a file; nothing here is needed by
the library proper.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "axes.titlesize": 10,
    "legend.fontsize": 8,
    "xtick.labelsize": 8,
    "ytick.labelsize": 8,
    "lines.linewidth": 1.3,
    "lines.markersize": 3.5,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.bbox": "tight",
}

SERIES_STYLE = {
    "c1": dict(color="tab:blue", marker="o"),
    "c2_bw": dict(color="tab:orange", marker="s"),
    "c2_access": dict(color="tab:green", marker="^"),
    "bound_5_8": dict(color="black", linestyle="--", marker=""),
    "bound_delta3": dict(color="tab:red", linestyle=":", marker=""),
    "bound_nondrf_access": dict(color="gray", linestyle="-.", marker=""),
}

LABELS = {
    "c1": "c1 (n = 4m)",
    "c2_bw": "c2 (n = 3m), bandwidth repair",
    "c2_access": "c2 (n = 3m), access repair",
    "bound_5_8": "non-DRF bandwidth bound 5/8",
    "bound_delta3": "DRF access bound (delta3)",
    "bound_nondrf_access": "non-DRF access bound (4k+1)/6k",
}


def plot_comparison(series: dict[str, dict[str, list]], path, title: str | None = None) -> Path:
    """Two panels, bandwidth and access, each a set of ``{name: {"n": [...], "y": [...]}}``.

    ``series`` maps "bandwidth" and "access" to such name -> points dicts.
    """
    path = Path(path)
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 2, figsize=(8.0, 3.2), sharex=True)
        for ax, metric in zip(axes, ("bandwidth", "access")):
            for name, pts in series.get(metric, {}).items():
                if not pts["n"]:
                    continue
                ax.plot(pts["n"], pts["y"], label=LABELS.get(name, name), **SERIES_STYLE.get(name, {}))
            ax.set_xlabel("code length n")
            ax.set_ylabel(f"avg. normalized {'repair bandwidth' if metric == 'bandwidth' else 'rebuilding access'}")
            ax.grid(alpha=0.3, linewidth=0.5)
            ax.legend(frameon=False)
        if title:
            fig.suptitle(title)
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)
    return path

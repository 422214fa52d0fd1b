"""Figure rendering for pairwise geometry reports.

Renders histograms of the per-pair diversity and chordal distance values
to image files.  Uses the Agg backend so the report path works headless;
nothing here opens a window.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .geometry import PairGeometry  # noqa: E402


def _histogram(values, path: str, title: str, xlabel: str,
               color: str) -> str:
    fig, ax = plt.subplots(figsize=(5.0, 3.2))
    bins = min(40, max(8, len(values) // 4))
    ax.hist(values, bins=bins, color=color, edgecolor="black",
            linewidth=0.4)
    lo = min(values)
    ax.axvline(lo, color="darkred", linestyle="--", linewidth=1.0,
               label=f"min = {lo:.6g}")
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("pairs")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_pair_histograms(table: list[PairGeometry],
                         prefix: str) -> list[str]:
    """Write diversity and chordal histograms next to the report.

    Returns the written paths; an empty pair table yields no files.
    """
    if not table:
        return []
    written = []
    written.append(_histogram(
        [g.lam for g in table], f"{prefix}-diversity.png",
        "Pairwise diversity product", "m * prod sin^2(theta_i)",
        "steelblue"))
    written.append(_histogram(
        [g.chordal for g in table], f"{prefix}-chordal.png",
        "Pairwise chordal distance", "sum sin^2(theta_i)",
        "seagreen"))
    return written

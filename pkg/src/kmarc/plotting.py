"""Report figures: line-intersection histograms rendered to files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402


def plot_histogram(histogram: dict[int, int], path: str,
                   title: str = "Line intersection census") -> None:
    """Bar chart of intersection size vs number of lines (SVG/PNG by suffix)."""
    sizes = sorted(histogram)
    counts = [histogram[s] for s in sizes]
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ax.bar([str(s) for s in sizes], counts, color="#36618e")
    for i, c in enumerate(counts):
        ax.text(i, c, str(c), ha="center", va="bottom", fontsize=8)
    ax.set_xlabel("points on line")
    ax.set_ylabel("number of lines")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def write_histogram_csv(histogram: dict[int, int], path: str) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["intersection_size", "line_count"])
        for size in sorted(histogram):
            writer.writerow([size, histogram[size]])

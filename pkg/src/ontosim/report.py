"""Run reports: human-readable text, machine-readable JSON, and figures.

Every report embeds the fully resolved configuration and the tool version so
a run can be reproduced from its outputs alone. Figures are rendered to PNG
next to the delimited outputs; rendering is deterministic for identical
inputs (fixed size, fixed metadata, no timestamps).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Sequence

from . import TOOL_NAME, __version__

_SAVEFIG_KWARGS = {"dpi": 110, "metadata": {"Software": TOOL_NAME}}


def _plt():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def tool_info() -> dict[str, str]:
    return {"name": TOOL_NAME, "version": __version__}


def write_json_summary(path: str | Path, payload: dict, config: dict) -> None:
    document = {"tool": tool_info(), "config": config}
    document.update(payload)
    Path(path).write_text(
        json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )


def write_text_report(
    path: str | Path,
    title: str,
    sections: Sequence[tuple[str, Sequence[str]]],
    config: dict | None = None,
) -> None:
    lines = [title, "=" * len(title), ""]
    for heading, body in sections:
        lines.append(heading)
        lines.append("-" * len(heading))
        lines.extend(body)
        lines.append("")
    lines.append(f"tool: {TOOL_NAME} {__version__}")
    if config is not None:
        lines.append("resolved config:")
        lines.extend(
            "  " + line
            for line in json.dumps(config, indent=2, sort_keys=True).splitlines()
        )
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def metric_lines(values: dict[str, Any]) -> list[str]:
    width = max((len(k) for k in values), default=0)
    return [f"{key.ljust(width)}  {_format_value(v)}" for key, v in values.items()]


def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


# ---------------------------------------------------------------------------
# figures
# ---------------------------------------------------------------------------


def plot_recall_curve(
    path: str | Path, r_at_k: dict[int, float], arr: float, mrr_value: float
) -> None:
    plt = _plt()
    ks = sorted(r_at_k)
    fig, ax = plt.subplots(figsize=(5.0, 3.4))
    ax.plot(ks, [r_at_k[k] for k in ks], marker="o", color="#e41a1c")
    ax.set_xscale("log")
    ax.set_xticks(ks)
    ax.get_xaxis().set_major_formatter(plt.matplotlib.ticker.ScalarFormatter())
    ax.set_ylim(0.0, 1.05)
    ax.set_xlabel("rank k")
    ax.set_ylabel("recall at rank")
    ax.set_title(f"MRR {mrr_value:.3f}   ARR {arr:.3f}")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, **_SAVEFIG_KWARGS)
    plt.close(fig)


def plot_tuning_grid(
    path: str | Path,
    char_grid: Sequence[int],
    score_grid: Sequence[float],
    q_matrix: Sequence[Sequence[float]],
) -> None:
    """Heatmap of combined score: rows = score thresholds, cols = distances."""
    plt = _plt()
    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    image = ax.imshow(q_matrix, cmap="viridis", aspect="auto", vmin=0.0)
    ax.set_xticks(range(len(char_grid)), [str(c) for c in char_grid])
    ax.set_yticks(range(len(score_grid)), [f"{s:g}" for s in score_grid])
    ax.set_xlabel("char distance threshold")
    ax.set_ylabel("score threshold")
    for i in range(len(score_grid)):
        for j in range(len(char_grid)):
            ax.text(
                j, i, f"{q_matrix[i][j]:.3f}", ha="center", va="center",
                color="white", fontsize=8,
            )
    fig.colorbar(image, ax=ax, label="plagdet")
    fig.tight_layout()
    fig.savefig(path, **_SAVEFIG_KWARGS)
    plt.close(fig)


def plot_plagdet_bars(path: str | Path, groups: dict[str, dict[str, float]]) -> None:
    """Grouped P/R/F1/Q bars, one group per label (overall, facets, ...)."""
    plt = _plt()
    labels = list(groups)
    measures = ["precision", "recall", "f1", "plagdet"]
    colors = ["#377eb8", "#4daf4a", "#984ea3", "#e41a1c"]
    fig, ax = plt.subplots(figsize=(max(5.0, 1.6 * len(labels) + 2), 3.4))
    width = 0.8 / len(measures)
    for m_index, measure in enumerate(measures):
        xs = [i + m_index * width for i in range(len(labels))]
        ax.bar(
            xs,
            [groups[label].get(measure, 0.0) for label in labels],
            width=width,
            label=measure,
            color=colors[m_index],
        )
    ax.set_xticks([i + 0.4 - width / 2 for i in range(len(labels))], labels)
    ax.set_ylim(0.0, 1.05)
    ax.legend(fontsize=8)
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, **_SAVEFIG_KWARGS)
    plt.close(fig)

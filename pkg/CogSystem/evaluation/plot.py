import os
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from loguru import logger
from CogSystem.evaluation.report import MetricsReport

# Line colors per agent, in the order agents appear in the report.
AGENT_COLORS = [
    (207 / 255, 218 / 255, 236 / 255),
    (191 / 255, 187 / 255, 186 / 255),
    (242 / 255, 190 / 255, 150 / 255),
    (120 / 255, 160 / 255, 200 / 255),
]


def plot_report(report: MetricsReport, path: str) -> None:
    """Draw per-iteration Authenticity and Rationality curves, one line per agent and variant.

    Args:
        `report` (`MetricsReport`): The evaluation report.
        `path` (`str`): Output image path; the format follows the extension.
    """
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(12, 5))
    for i, agent in enumerate(report.agents):
        color = AGENT_COLORS[i % len(AGENT_COLORS)]
        label = f"{agent.agent} ({agent.variant})"
        for ax, metric in ((ax1, "authenticity"), (ax2, "rationality")):
            points = [
                (m.iteration, getattr(m, metric))
                for m in agent.iterations
                if getattr(m, metric) is not None
            ]
            if not points:
                continue
            xs, ys = zip(*points)
            ax.plot(xs, ys, color=color, marker="o", linestyle="-", linewidth=2, label=label)
    ax1.set_xlabel("Iteration")
    ax1.set_ylabel("Authenticity")
    ax2.set_xlabel("Iteration")
    ax2.set_ylabel("Rationality")
    ax2.set_ylim(1, 5)
    border_thickness = 1.5
    for ax in (ax1, ax2):
        for spine in ["top", "bottom", "left", "right"]:
            ax.spines[spine].set_visible(True)
            ax.spines[spine].set_linewidth(border_thickness)
            ax.spines[spine].set_color("black")
        if ax.lines:
            ax.legend(loc="lower right")
    plt.tight_layout()
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.savefig(path)
    plt.close(fig)
    logger.info(f"Saved plot to {path}")

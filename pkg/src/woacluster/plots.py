"""SVG line charts for the per-round comparison series."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

SERIES_LABELS = {
    "residual_energy": "Total residual energy (J)",
    "dead_nodes": "Dead nodes",
    "throughput": "Bits delivered to BS",
}


def emit_plots(series: dict, out_dir) -> tuple[list[str], list[str]]:
    """Render one SVG per (scenario, metric) from the series tables.

    ``series`` maps scenario name -> metric name -> {strategy: list of per-round
    means}. Returns (written file paths, notes for skipped charts).
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written: list[str] = []
    notes: list[str] = []
    for scenario_name, metrics in series.items():
        for metric, by_strategy in metrics.items():
            if not by_strategy or all(len(v) == 0 for v in by_strategy.values()):
                notes.append(f"plot skipped: no data for {scenario_name}/{metric}")
                continue
            fig, ax = plt.subplots(figsize=(7, 4.5))
            for strategy, values in by_strategy.items():
                ax.plot(range(1, len(values) + 1), values, label=strategy, linewidth=1.2)
            ax.set_xlabel("round")
            ax.set_ylabel(SERIES_LABELS.get(metric, metric))
            ax.set_title(f"{scenario_name}: {metric.replace('_', ' ')}")
            ax.legend()
            ax.grid(True, alpha=0.3)
            path = out_dir / f"{scenario_name}_{metric}.svg"
            fig.savefig(path, format="svg")
            plt.close(fig)
            written.append(str(path))
    return written, notes

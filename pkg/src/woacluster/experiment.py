"""Experiment matrix runner: scenarios x strategies x replicates.

Replicate r of every strategy runs on the same deployment (seed = base_seed
+ r), so protocol comparisons are paired. Outputs are byte-stable: fixed row
ordering, repr-formatted floats, and no timestamps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .config import ExperimentConfig, RunConfig
from .network import save_deployment
from .plots import emit_plots
from .simulation import (
    SimulationResult,
    run_simulation,
    summary_dict,
    write_rounds_csv,
    write_summary_json,
)


class ExperimentError(RuntimeError):
    """A cell failed; a partial-results manifest has been written."""


@dataclass
class ExperimentResult:
    replicate_rows: list[dict]
    cell_rows: list[dict]
    series: dict
    manifest: dict


def run_one(config: RunConfig, out_dir=None) -> SimulationResult:
    """Run a single configured simulation, optionally writing its artifacts."""
    result = run_simulation(
        config.scenario.to_scenario(),
        config.build_strategy(),
        config.radio.to_radio(),
    )
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        write_rounds_csv(out_dir / "rounds.csv", result.rounds)
        write_summary_json(out_dir / "summary.json", result)
        save_deployment(out_dir / "deployment.csv", result.network.positions)
    return result


def _checkpoint_columns(config: ExperimentConfig) -> list[str]:
    cols = [f"throughput_at_{r}" for r in config.throughput_rounds]
    cols += [f"energy_at_{r}" for r in config.energy_rounds]
    return cols


def _replicate_row(config, scenario, strategy_name, rep, result) -> dict:
    s = result.summary
    max_rounds = scenario.max_rounds
    row = {
        "scenario": scenario.name,
        "strategy": strategy_name,
        "replicate": rep,
        "seed": result.seed,
        # censored runs are right-censored at the round budget
        "fnd": s.fnd if s.fnd is not None else max_rounds,
        "lnd": s.lnd if s.lnd is not None else max_rounds,
        "censored": s.censored,
    }
    for cp in config.throughput_rounds:
        row[f"throughput_at_{cp}"] = s.throughput_at.get(cp)
    for cp in config.energy_rounds:
        row[f"energy_at_{cp}"] = s.consumed_at.get(cp)
    return row


def _aggregate_cells(config, rows) -> list[dict]:
    stat_cols = ["fnd", "lnd"] + _checkpoint_columns(config)
    cells = []
    for scenario in config.scenarios:
        for strategy in config.strategies:
            group = [
                r for r in rows if r["scenario"] == scenario.name and r["strategy"] == strategy
            ]
            if not group:
                continue
            cell = {
                "scenario": scenario.name,
                "strategy": strategy,
                "replicates": len(group),
                "censored": sum(1 for r in group if r["censored"]),
            }
            for col in stat_cols:
                values = [r[col] for r in group if r[col] is not None]
                if values:
                    cell[f"{col}_mean"] = float(np.mean(values))
                    cell[f"{col}_std"] = float(np.std(values))
                else:
                    cell[f"{col}_mean"] = None
                    cell[f"{col}_std"] = None
            cells.append(cell)
    return cells


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path, header: list[str], rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_csv_cell(row.get(col)) for col in header) + "\n")


def _series_tables(config, results) -> dict:
    """Replicate-averaged per-round series for plotting and external tooling."""
    series: dict = {}
    for scenario in config.scenarios:
        n = scenario.node_count
        per_metric: dict = {"residual_energy": {}, "dead_nodes": {}, "throughput": {}}
        lengths = [
            len(res.rounds)
            for (scen_name, _, _), res in results.items()
            if scen_name == scenario.name
        ]
        horizon = max(lengths, default=0)
        for strategy in config.strategies:
            runs = [
                res
                for (scen_name, strat, _), res in sorted(results.items())
                if scen_name == scenario.name and strat == strategy
            ]
            if not runs or horizon == 0:
                continue
            residual = np.zeros((len(runs), horizon))
            dead = np.full((len(runs), horizon), float(n))
            bits = np.zeros((len(runs), horizon))
            for i, res in enumerate(runs):
                for m in res.rounds:
                    j = m.round - 1
                    residual[i, j] = m.total_residual
                    dead[i, j] = n - m.alive
                    bits[i, j] = m.bits_to_bs
            per_metric["residual_energy"][strategy] = residual.mean(axis=0).tolist()
            per_metric["dead_nodes"][strategy] = dead.mean(axis=0).tolist()
            per_metric["throughput"][strategy] = bits.mean(axis=0).tolist()
        series[scenario.name] = per_metric
    return series


def _write_series_csvs(series, out_dir: Path) -> list[str]:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for scenario_name, metrics in series.items():
        for metric, by_strategy in metrics.items():
            if not by_strategy:
                continue
            strategies = list(by_strategy)
            horizon = max(len(v) for v in by_strategy.values())
            path = out_dir / f"{scenario_name}_{metric}.csv"
            with open(path, "w", newline="") as fh:
                fh.write(",".join(["round"] + strategies) + "\n")
                for j in range(horizon):
                    vals = [
                        repr(by_strategy[s][j]) if j < len(by_strategy[s]) else ""
                        for s in strategies
                    ]
                    fh.write(",".join([str(j + 1)] + vals) + "\n")
            written.append(str(path))
    return written


def run_experiment(
    config: ExperimentConfig, out_dir, *, make_plots: bool = True
) -> ExperimentResult:
    """Run the full matrix and write summary, long-format, series, and plot files.

    A failing cell stops the experiment after writing a manifest that lists
    everything completed so far plus the error.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    radio = config.radio.to_radio()
    results: dict = {}
    rows: list[dict] = []
    completed: list[str] = []
    notes: list[str] = []

    def finalize_manifest(status: str, error: Optional[str] = None) -> dict:
        manifest = {
            "status": status,
            "completed_cells": completed,
            "notes": notes,
            "error": error,
            "replicates": config.replicates,
            "base_seed": config.base_seed,
            "scenarios": [s.name for s in config.scenarios],
            "strategies": list(config.strategies),
        }
        with open(out_dir / "manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=2)
            fh.write("\n")
        return manifest

    for scenario_model in config.scenarios:
        base_scenario = scenario_model.to_scenario()
        for rep in range(config.replicates):
            scenario = replace(base_scenario, seed=config.base_seed + rep)
            for strategy_name in config.strategies:
                try:
                    result = run_simulation(
                        scenario,
                        config.build_strategy(strategy_name),
                        radio,
                        throughput_rounds=tuple(config.throughput_rounds),
                        energy_rounds=tuple(config.energy_rounds),
                    )
                except Exception as exc:
                    manifest = finalize_manifest(
                        "failed",
                        f"{scenario.name}/{strategy_name}/rep{rep}: {exc}",
                    )
                    raise ExperimentError(manifest["error"]) from exc
                key = (scenario.name, strategy_name, rep)
                results[key] = result
                rows.append(_replicate_row(config, scenario, strategy_name, rep, result))
                run_dir = out_dir / "runs" / scenario.name / strategy_name / f"rep{rep:02d}"
                run_dir.mkdir(parents=True, exist_ok=True)
                write_rounds_csv(run_dir / "rounds.csv", result.rounds)
                write_summary_json(run_dir / "summary.json", result)
                save_deployment(run_dir / "deployment.csv", result.network.positions)
                completed.append(f"{scenario.name}/{strategy_name}/rep{rep}")

    rep_header = ["scenario", "strategy", "replicate", "seed", "fnd", "lnd", "censored"]
    rep_header += _checkpoint_columns(config)
    _write_csv(out_dir / "replicates.csv", rep_header, rows)

    cells = _aggregate_cells(config, rows)
    cell_header = ["scenario", "strategy", "replicates", "censored"]
    for col in ["fnd", "lnd"] + _checkpoint_columns(config):
        cell_header += [f"{col}_mean", f"{col}_std"]
    _write_csv(out_dir / "summary.csv", cell_header, cells)

    series = _series_tables(config, results)
    _write_series_csvs(series, out_dir / "series")
    if make_plots:
        _, plot_notes = emit_plots(series, out_dir / "plots")
        notes.extend(plot_notes)

    manifest = finalize_manifest("ok")
    return ExperimentResult(
        replicate_rows=rows, cell_rows=cells, series=series, manifest=manifest
    )

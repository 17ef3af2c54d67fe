"""Round loop: setup costs, CH selection, steady-state bookkeeping, metrics.

Every round charges, in order: the setup exchange (status report up, CH
announcement down), member transmissions to their CHs (or straight to the BS),
then each CH's receive/aggregate/forward sequence. A node that cannot afford
the next action in its own sequence finishes what it can pay for, forfeits the
remainder, and dies with energy clamped to zero, so the invariant
``residual + consumed == node_count * initial_energy`` holds exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .energy import RadioParams, aggregation_energy, rx_energy, tx_energy
from .network import Network, ScenarioConfig
from .protocols import BS_ID, ChAssignment, NoAliveNodesError, SelectionContext

ROUNDS_CSV_HEADER = "round,alive,total_residual_J,consumed_J,bits_to_bs,num_chs"


@dataclass(frozen=True)
class RoundMetrics:
    round: int
    alive: int
    total_residual: float
    consumed_cumulative: float
    bits_to_bs: int
    ch_ids: tuple[int, ...]


@dataclass(frozen=True)
class LifetimeSummary:
    """First/last death rounds plus checkpoint lookups.

    ``lnd`` (and ``fnd``) are None when censored by the round budget. A
    checkpoint maps to None only when the budget ended, with survivors, before
    the checkpoint round; after extinction throughput is 0 and consumption
    stays at the full budget.
    """

    fnd: Optional[int]
    lnd: Optional[int]
    censored: bool
    throughput_at: dict[int, Optional[int]]
    consumed_at: dict[int, Optional[float]]


@dataclass
class SimulationResult:
    scenario: ScenarioConfig
    strategy_name: str
    seed: int
    rounds: list[RoundMetrics]
    summary: LifetimeSummary
    network: Network


def _charge(net: Network, ids: np.ndarray, costs) -> np.ndarray:
    """Charge each node in `ids` its cost; unaffordable nodes die clamped to 0.

    Returns the bool mask (aligned to `ids`) of nodes that paid in full. A
    node that pays down to exactly zero completes the action, then dies.
    """
    ids = np.asarray(ids, dtype=int)
    costs = np.broadcast_to(np.asarray(costs, dtype=float), ids.shape)
    live = net.alive[ids]
    paid = live & (net.energy[ids] >= costs)
    died = live & ~paid
    die_ids = ids[died]
    net.consumed += float(costs[paid].sum()) + float(net.energy[die_ids].sum())
    net.energy[ids[paid]] -= costs[paid]
    net.energy[die_ids] = 0.0
    net.alive[die_ids] = False
    drained = ids[paid][net.energy[ids[paid]] <= 0.0]
    net.energy[drained] = 0.0
    net.alive[drained] = False
    return paid


def run_round(
    net: Network,
    strategy,
    radio: RadioParams,
    rng: np.random.Generator,
    round_no: int,
    k: int,
    area: tuple[float, float],
) -> RoundMetrics:
    """Execute one setup + steady-state round and return its metrics.

    ``bits_to_bs`` counts packet_bits for every source whose data reached the
    BS this round: direct senders that afforded their transmission, plus the
    members and own data of every CH that completed its full
    receive/aggregate/forward sequence.
    """
    if not net.alive.any():
        raise NoAliveNodesError("round refused: no alive nodes")

    # (1) setup: status report to the BS, then the CH announcement back
    setup_ids = np.flatnonzero(net.alive)
    _charge(net, setup_ids, tx_energy(radio.msg_bits, net.d_bs[setup_ids], radio))
    setup_ids = np.flatnonzero(net.alive)
    _charge(net, setup_ids, rx_energy(radio.msg_bits, radio))

    # (2) selection on post-setup energies
    if net.alive.any():
        ctx = SelectionContext(
            network=net,
            round=round_no,
            k=k,
            bs_position=net.bs_position,
            radio=radio,
            rng=rng,
            area=area,
        )
        assignment = strategy.select(ctx)
    else:
        assignment = ChAssignment(ch_ids=(), member_of={})
    net.is_ch[:] = False
    ch_arr = np.array(sorted(assignment.ch_ids), dtype=int)
    if ch_arr.size:
        net.is_ch[ch_arr] = True

    bits = 0
    packet = radio.packet_bits

    # (3a) members transmit to their CHs (id order; independent charges)
    member_ids = np.array(sorted(assignment.member_of), dtype=int)
    received = np.zeros(len(net), dtype=int)
    dt_ids = np.array([], dtype=int)
    if member_ids.size:
        targets = np.array([assignment.member_of[int(i)] for i in member_ids], dtype=int)
        direct = targets == BS_ID
        dt_ids = member_ids[direct]
        clustered = member_ids[~direct]
        ch_targets = targets[~direct]
        if clustered.size:
            dist = np.sqrt(net.d2[clustered, ch_targets])
            paid = _charge(net, clustered, tx_energy(packet, dist, radio))
            if paid.any():
                received = np.bincount(ch_targets[paid], minlength=len(net))

    # (3b) direct senders transmit straight to the BS
    if dt_ids.size:
        paid = _charge(net, dt_ids, tx_energy(packet, net.d_bs[dt_ids], radio))
        bits += packet * int(paid.sum())

    # (3c) each CH receives, aggregates (own data included), and forwards
    if ch_arr.size:
        m = received[ch_arr]
        ok = _charge(net, ch_arr, m * rx_energy(packet, radio))
        ok &= net.alive[ch_arr]
        if ok.any():
            agg = np.array([aggregation_energy(packet * (int(c) + 1), radio) for c in m])
            step = np.zeros_like(ok)
            step[ok] = _charge(net, ch_arr[ok], agg[ok])
            ok = step & net.alive[ch_arr]
        if ok.any():
            step = np.zeros_like(ok)
            step[ok] = _charge(net, ch_arr[ok], tx_energy(packet, net.d_bs[ch_arr[ok]], radio))
            ok = step
        bits += packet * int((m[ok] + 1).sum())

    return RoundMetrics(
        round=round_no,
        alive=int(net.alive.sum()),
        total_residual=float(net.energy.sum()),
        consumed_cumulative=float(net.consumed),
        bits_to_bs=bits,
        ch_ids=tuple(int(c) for c in ch_arr),
    )


def run_simulation(
    scenario: ScenarioConfig,
    strategy,
    radio: RadioParams = RadioParams(),
    *,
    positions: Optional[np.ndarray] = None,
    throughput_rounds=(2000,),
    energy_rounds=(5000,),
) -> SimulationResult:
    """Run rounds until extinction or the budget; collect the lifetime summary.

    The scenario seed drives one random stream for both deployment and round
    dynamics, so identical (scenario, strategy) runs are bit-identical and
    different strategies on the same seed share the deployment. An explicit
    ``positions`` array replays a stored layout instead of deploying.
    """
    rng = np.random.default_rng(scenario.seed)
    if positions is None:
        net = Network.deploy(scenario, rng)
    else:
        net = Network(positions, scenario.initial_energy, scenario.bs_position)
    n = len(net)
    rounds: list[RoundMetrics] = []
    fnd: Optional[int] = None
    lnd: Optional[int] = None
    for round_no in range(1, scenario.max_rounds + 1):
        if not net.alive.any():
            break
        metrics = run_round(net, strategy, radio, rng, round_no, scenario.ch_count, scenario.area)
        rounds.append(metrics)
        if fnd is None and metrics.alive < n:
            fnd = round_no
        if lnd is None and metrics.alive == 0:
            lnd = round_no
            break
    censored = bool(net.alive.any())

    def checkpoint(table_rounds, value_of, extinct_value):
        out = {}
        for cp in table_rounds:
            if 1 <= cp <= len(rounds):
                out[int(cp)] = value_of(rounds[cp - 1])
            elif not censored:
                out[int(cp)] = extinct_value()
            else:
                out[int(cp)] = None
        return out

    summary = LifetimeSummary(
        fnd=fnd,
        lnd=lnd,
        censored=censored,
        throughput_at=checkpoint(throughput_rounds, lambda m: m.bits_to_bs, lambda: 0),
        consumed_at=checkpoint(
            energy_rounds, lambda m: m.consumed_cumulative, lambda: float(net.consumed)
        ),
    )
    return SimulationResult(
        scenario=scenario,
        strategy_name=getattr(strategy, "name", strategy.__class__.__name__),
        seed=scenario.seed,
        rounds=rounds,
        summary=summary,
        network=net,
    )


def write_rounds_csv(path, rounds: list[RoundMetrics]) -> None:
    """Per-round metrics stream; floats written via repr for byte-stable output."""
    with open(path, "w", newline="") as fh:
        fh.write(ROUNDS_CSV_HEADER + "\n")
        for m in rounds:
            fh.write(
                f"{m.round},{m.alive},{m.total_residual!r},"
                f"{m.consumed_cumulative!r},{m.bits_to_bs},{len(m.ch_ids)}\n"
            )


def summary_dict(result: SimulationResult) -> dict:
    """Flat JSON-ready summary with checkpoint keys like throughput_at_2000."""
    s = result.summary
    out = {
        "scenario": result.scenario.name,
        "strategy": result.strategy_name,
        "seed": result.seed,
        "fnd": s.fnd,
        "lnd": s.lnd,
        "censored": s.censored,
    }
    for cp in sorted(s.throughput_at):
        out[f"throughput_at_{cp}"] = s.throughput_at[cp]
    for cp in sorted(s.consumed_at):
        out[f"energy_at_{cp}"] = s.consumed_at[cp]
    return out


def write_summary_json(path, result: SimulationResult) -> None:
    with open(path, "w") as fh:
        json.dump(summary_dict(result), fh, indent=2)
        fh.write("\n")

"""Acceptance suite: one test per release criterion, each printing a
[criterion NN] PASS/FAIL line (run with `pytest tests/test_acceptance.py -rA`
to see every line).

Criteria 6-10 compare strategy orderings and anchor bands on the 100-node
center-BS scenario over 20 paired replicates. The swarm selectors run at a
reduced per-round budget (12 agents x 25 iterations) to keep the matrix in
the minutes range; orderings, not point values, are under test.
"""

import itertools

import numpy as np
import pytest
from scipy import stats

from woacluster.energy import RadioParams, aggregation_energy, rx_energy, tx_energy
from woacluster.network import Network, ScenarioConfig
from woacluster.protocols import (
    FitnessWeights,
    PsoParams,
    SelectionContext,
    eligible_candidates,
    make_strategy,
    node_scores,
    select_chs_woa,
)
from woacluster.simulation import run_simulation, write_rounds_csv, write_summary_json
from woacluster.woa import WoaParams, WoaSettings, woa_optimize

RADIO = RadioParams()
WEIGHTS = FitnessWeights()
STRATEGIES = ["dt", "leach", "leach-c", "pso", "woa"]

# anchor values for the 100-node, 10-CH, center-BS comparison table
REFERENCE = {
    "dt": {"fnd": 31, "lnd": 732},
    "leach": {"fnd": 260, "lnd": 2747},
    "leach-c": {"fnd": 814, "lnd": 4755},
    "pso": {"fnd": 1949, "lnd": 6639},
    "woa": {"fnd": 2482, "lnd": 7268},
}

REPLICATES = 20
ACCEPT_WOA = WoaSettings(agents=12, iterations=25)
ACCEPT_PSO = PsoParams(agents=12, iterations=25)


def report(num: int, ok: bool, detail: str) -> None:
    print(f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'} {detail}")


def accept_strategy(name: str):
    return make_strategy(name, woa=ACCEPT_WOA, pso=ACCEPT_PSO)


def wsn1(seed: int, bs=(50.0, 50.0), max_rounds: int = 6000, initial_energy: float = 0.5):
    return ScenarioConfig(
        name="wsn1",
        node_count=100,
        ch_count=10,
        bs_position=bs,
        initial_energy=initial_energy,
        max_rounds=max_rounds,
        seed=seed,
    )


def lifetime_row(result):
    s = result.summary
    return {
        "fnd": s.fnd if s.fnd is not None else result.scenario.max_rounds,
        "lnd": s.lnd if s.lnd is not None else result.scenario.max_rounds,
        "bits_round1": result.rounds[0].bits_to_bs if result.rounds else 0,
        "throughput_2000": s.throughput_at.get(2000),
        "energy_5000": s.consumed_at.get(5000),
    }


@pytest.fixture(scope="session")
def wsn1_matrix():
    """20 paired replicates of all five strategies on the center-BS scenario."""
    table = {name: [] for name in STRATEGIES}
    for rep in range(REPLICATES):
        scenario = wsn1(seed=1 + rep)
        for name in STRATEGIES:
            result = run_simulation(
                scenario,
                accept_strategy(name),
                RADIO,
                throughput_rounds=(2000,),
                energy_rounds=(5000,),
            )
            table[name].append(lifetime_row(result))
    return table


@pytest.fixture(scope="session")
def woa_bs_positions():
    """20 replicates of the whale selector at the three BS placements."""
    table = {}
    for label, bs in [("center", (50.0, 50.0)), ("corner", (100.0, 100.0)), ("outfield", (50.0, 200.0))]:
        rows = []
        for rep in range(REPLICATES):
            result = run_simulation(
                wsn1(seed=1 + rep, bs=bs), accept_strategy("woa"), RADIO
            )
            rows.append(lifetime_row(result))
        table[label] = rows
    return table


def sign_test_greater(a, b) -> float:
    """One-sided paired sign test p-value for a > b (ties dropped)."""
    wins = sum(x > y for x, y in zip(a, b))
    losses = sum(x < y for x, y in zip(a, b))
    n = wins + losses
    if n == 0:
        return 1.0
    return stats.binomtest(wins, n, 0.5, alternative="greater").pvalue


def mean(rows, col):
    return float(np.mean([r[col] for r in rows]))


def test_criterion_01_energy_model_exact_values():
    checks = [
        (tx_energy(4000, 10.0, RADIO), 204e-6),
        (tx_energy(4000, 100.0, RADIO), 720e-6),
        (rx_energy(4000, RADIO), 200e-6),
        (aggregation_energy(4000, RADIO), 20e-6),
    ]
    ok = all(abs(got - want) <= 1e-15 * want for got, want in checks)
    report(1, ok, "energy primitives: 204uJ / 720uJ / 200uJ / 20uJ at 1e-15 rel tol")
    for got, want in checks:
        assert got == pytest.approx(want, rel=1e-15)


def test_criterion_02_energy_conservation_50_runs():
    budget = 50.0  # 100 nodes x 0.5 J
    worst = 0.0
    runs = 0
    # truncated runs across all strategies plus full runs through extinction
    plans = [(1000 + i, STRATEGIES[i % 5], 60) for i in range(46)]
    plans += [(2000, "dt", 6000), (2001, "dt", 6000), (2002, "leach", 6000), (2003, "leach", 6000)]
    for seed, name, max_rounds in plans:
        result = run_simulation(wsn1(seed=seed, max_rounds=max_rounds), accept_strategy(name), RADIO)
        runs += 1
        for m in result.rounds:
            worst = max(worst, abs(m.total_residual + m.consumed_cumulative - budget))
    ok = worst < 1e-9 and runs == 50
    report(2, ok, f"conservation over {runs} runs: worst |residual+consumed-50J| = {worst:.2e}")
    assert runs == 50
    assert worst < 1e-9


def test_criterion_03_woa_engine_sanity():
    bounds = np.array([[-10.0, 10.0]] * 4)
    params = WoaParams(bounds=bounds, agents=30, iterations=500)
    hits = 0
    monotone = True
    finals = []
    for seed in range(10):
        result = woa_optimize(
            lambda x: -float(np.dot(x, x)),
            "maximize",
            params,
            np.random.default_rng(seed),
            vector_objective=lambda pop: -(pop**2).sum(axis=1),
        )
        finals.append(result.best_fitness)
        hits += result.best_fitness >= -1e-2
        monotone &= bool(np.all(np.diff(result.trace) >= 0))
    ok = hits >= 9 and monotone
    report(
        3,
        ok,
        f"sphere maximization: {hits}/10 seeds reached -1e-2 (worst {min(finals):.2e}), "
        f"traces monotone: {monotone}",
    )
    assert hits >= 9
    assert monotone


def test_criterion_04_brute_force_oracle_equivalence():
    hit = 0
    layouts = 0
    seed = 0
    rng_master = np.random.default_rng(4242)
    while layouts < 20:
        seed += 1
        positions = rng_master.uniform(0, 100, (10, 2))
        energies = rng_master.uniform(0.25, 0.5, 10)
        net = Network(positions, 0.5, (50.0, 50.0))
        net.energy[:] = energies
        pool, fallback = eligible_candidates(net, 2)
        if fallback or pool.size < 3:
            continue
        layouts += 1
        scores = node_scores(net, WEIGHTS)
        enumerated = sorted(
            float(scores[list(pair)].sum()) for pair in itertools.combinations(pool, 2)
        )
        threshold = float(np.quantile(enumerated, 0.9))
        ctx = SelectionContext(
            network=net,
            round=1,
            k=2,
            bs_position=net.bs_position,
            radio=RADIO,
            rng=np.random.default_rng(seed),
            area=(100.0, 100.0),
        )
        assignment = select_chs_woa(ctx, WEIGHTS, WoaSettings(agents=30, iterations=500))
        achieved = float(scores[list(assignment.ch_ids)].sum())
        hit += achieved >= threshold
    ok = hit >= 18
    report(4, ok, f"whale selector in top decile of exhaustive pairs on {hit}/20 layouts")
    assert hit >= 18


def test_criterion_05_determinism_byte_identical_csv(tmp_path):
    outputs = []
    for tag in ("a", "b"):
        result = run_simulation(wsn1(seed=77), accept_strategy("woa"), RADIO)
        rounds_path = tmp_path / f"rounds_{tag}.csv"
        summary_path = tmp_path / f"summary_{tag}.json"
        write_rounds_csv(rounds_path, result.rounds)
        write_summary_json(summary_path, result)
        outputs.append((rounds_path.read_bytes(), summary_path.read_bytes()))
    ok = outputs[0] == outputs[1]
    report(5, ok, "two identical-seed runs produced byte-identical CSV/JSON outputs")
    assert outputs[0] == outputs[1]


def chain_detail(means: dict) -> str:
    return " / ".join(f"{name}={means[name]:.0f}" for name in STRATEGIES)


def test_criterion_06_lifetime_ordering_and_bands(wsn1_matrix):
    means = {name: mean(wsn1_matrix[name], "lnd") for name in STRATEGIES}
    chain = [("woa", "pso"), ("pso", "leach-c"), ("leach-c", "leach"), ("leach", "dt")]
    pvalues = {
        pair: sign_test_greater(
            [r["lnd"] for r in wsn1_matrix[pair[0]]], [r["lnd"] for r in wsn1_matrix[pair[1]]]
        )
        for pair in chain
    }
    ordering_ok = all(p < 0.05 for p in pvalues.values())
    bands_ok = all(
        REFERENCE[name]["lnd"] / 2 <= means[name] <= REFERENCE[name]["lnd"] * 2
        for name in STRATEGIES
    )
    ok = ordering_ok and bands_ok
    report(
        6,
        ok,
        f"mean LND {chain_detail(means)}; sign tests "
        + ", ".join(f"{a}>{b}: p={p:.3f}" for (a, b), p in pvalues.items())
        + f"; factor-2 bands ok: {bands_ok}",
    )
    for (a, b), p in pvalues.items():
        assert p < 0.05, f"LND ordering {a} > {b} not significant (p={p:.3f})"
    for name in STRATEGIES:
        anchor = REFERENCE[name]["lnd"]
        assert anchor / 2 <= means[name] <= anchor * 2, (
            f"{name} mean LND {means[name]:.0f} outside factor-2 band of {anchor}"
        )


def test_criterion_07_fnd_ordering(wsn1_matrix):
    means = {name: mean(wsn1_matrix[name], "fnd") for name in STRATEGIES}
    chain = [("woa", "pso"), ("pso", "leach-c"), ("leach-c", "leach"), ("leach", "dt")]
    pvalues = {
        pair: sign_test_greater(
            [r["fnd"] for r in wsn1_matrix[pair[0]]], [r["fnd"] for r in wsn1_matrix[pair[1]]]
        )
        for pair in chain
    }
    ordering_ok = all(p < 0.05 for p in pvalues.values())
    gap_ok = means["woa"] >= 2 * means["leach-c"]
    ok = ordering_ok and gap_ok
    report(
        7,
        ok,
        f"mean FND {chain_detail(means)}; woa >= 2x leach-c: {gap_ok}; sign tests "
        + ", ".join(f"{a}>{b}: p={p:.3f}" for (a, b), p in pvalues.items()),
    )
    for (a, b), p in pvalues.items():
        assert p < 0.05, f"FND ordering {a} > {b} not significant (p={p:.3f})"
    assert gap_ok, f"woa FND {means['woa']:.0f} < 2x leach-c FND {means['leach-c']:.0f}"


def test_criterion_08_energy_at_round_5000(wsn1_matrix):
    means = {name: mean(wsn1_matrix[name], "energy_5000") for name in STRATEGIES}
    saturated = all(abs(means[name] - 50.0) <= 5e-3 for name in ("dt", "leach", "leach-c"))
    strict = means["woa"] < means["pso"] < 50.0
    ok = saturated and strict
    report(
        8,
        ok,
        "consumed@5000: "
        + ", ".join(f"{name}={means[name]:.2f}J" for name in STRATEGIES)
        + f"; dt/leach/leach-c saturated: {saturated}; woa < pso < 50: {strict}",
    )
    assert saturated, f"baseline rows did not saturate at 50.00 J: {means}"
    assert strict, f"expected woa < pso < 50 J, got woa={means['woa']:.2f}, pso={means['pso']:.2f}"


def test_criterion_09_throughput_convention_and_ordering(wsn1_matrix):
    round1 = {r["bits_round1"] for r in wsn1_matrix["woa"]}
    exact = round1 == {400_000}
    means = {name: mean(wsn1_matrix[name], "throughput_2000") for name in STRATEGIES}
    ordering = (
        means["woa"] >= means["pso"]
        and means["pso"] > means["leach-c"]
        and means["leach-c"] > means["leach"]
    )
    ok = exact and ordering
    report(
        9,
        ok,
        f"round-1 clustered bits: {sorted(round1)} (want exactly 400000); mean bits@2000 "
        + ", ".join(f"{name}={means[name]:.0f}" for name in STRATEGIES),
    )
    assert exact, f"round-1 throughput convention violated: {sorted(round1)}"
    assert ordering, f"throughput@2000 ordering failed: {means}"


def test_criterion_10_bs_position_monotonicity(woa_bs_positions):
    means = {label: mean(rows, "lnd") for label, rows in woa_bs_positions.items()}
    ok = means["center"] >= means["corner"] >= means["outfield"]
    report(
        10,
        ok,
        "whale-selector mean LND by BS position: "
        + ", ".join(f"{label}={means[label]:.0f}" for label in ("center", "corner", "outfield")),
    )
    assert means["center"] >= means["corner"] >= means["outfield"], means

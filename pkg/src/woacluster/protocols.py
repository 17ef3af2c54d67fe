"""Cluster-head selection strategies behind one interface.

Five strategies share the ``select(ctx) -> ChAssignment`` surface: direct
transmission (no clusters), classic distributed LEACH, centralized LEACH-C,
a PSO-driven baseline, and the whale-optimization selector. The two swarm
selectors share one encoding: an agent is K concatenated (x, y) points inside
the field, each snapped to the nearest energy-eligible node, scored by the
connectivity/energy fitness, and penalized when snaps collapse onto fewer
than K distinct nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .energy import RadioParams
from .network import Network
from .woa import WoaParams, WoaSettings, woa_optimize

# member_of target for nodes that transmit straight to the base station
BS_ID = -1

STRATEGY_NAMES = ("dt", "leach", "leach-c", "pso", "woa")


class NoAliveNodesError(RuntimeError):
    """Raised when a selection is requested on a fully dead network."""


@dataclass(frozen=True)
class FitnessWeights:
    """Weights of the selection fitness and the neighborhood scale in meters."""

    p1: float = 0.7
    p2: float = 0.3
    neighbor_radius: float = 30.0

    def __post_init__(self):
        if not (0.0 <= self.p1 <= 1.0 and 0.0 <= self.p2 <= 1.0):
            raise ValueError("p1 and p2 must lie in [0, 1]")
        if self.neighbor_radius <= 0:
            raise ValueError("neighbor_radius must be positive")


@dataclass
class SelectionContext:
    """Everything a strategy may consult when picking this round's CHs."""

    network: Network
    round: int
    k: int
    bs_position: tuple[float, float]
    radio: RadioParams
    rng: np.random.Generator
    area: tuple[float, float]


@dataclass(frozen=True)
class ChAssignment:
    """Selected CH ids plus the member -> CH map (BS_ID means direct to BS)."""

    ch_ids: tuple[int, ...]
    member_of: dict[int, int] = field(default_factory=dict)


def node_scores(network: Network, w: FitnessWeights) -> np.ndarray:
    """Per-node fitness contribution: p1 * |neighbors| + p2 * neighbor energy.

    Neighbors are the *other* alive nodes within ``neighbor_radius``. Entries
    for dead nodes are zeroed.
    """
    r2 = w.neighbor_radius**2
    mask = network.d2 <= r2
    mask &= network.alive[None, :]
    np.fill_diagonal(mask, False)
    counts = mask.sum(axis=1)
    energy_sums = mask @ network.energy
    scores = w.p1 * counts + w.p2 * energy_sums
    scores[~network.alive] = 0.0
    return scores


def ch_fitness(candidate_ids, ctx: SelectionContext, w: FitnessWeights) -> float:
    """Fitness of a candidate CH set: sum of the members' per-node scores."""
    ids = sorted({int(i) for i in candidate_ids})
    if not all(ctx.network.alive[i] for i in ids):
        raise ValueError("fitness candidates must be alive")
    scores = node_scores(ctx.network, w)
    return float(scores[ids].sum())


def eligible_candidates(network: Network, k: int) -> tuple[np.ndarray, bool]:
    """Alive nodes with residual energy at or above the alive-mean.

    Falls back to the K highest-energy alive nodes when fewer than K qualify
    (all alive nodes when fewer than K remain). Returns (sorted ids, fallback
    flag).
    """
    alive_ids = np.flatnonzero(network.alive)
    if alive_ids.size == 0:
        raise NoAliveNodesError("no alive nodes to select from")
    energies = network.energy[alive_ids]
    eligible = alive_ids[energies >= energies.mean()]
    if eligible.size >= k:
        return eligible, False
    if alive_ids.size <= k:
        return alive_ids, True
    order = np.lexsort((alive_ids, -energies))
    return np.sort(alive_ids[order[:k]]), True


def assign_members(network: Network, ch_ids) -> ChAssignment:
    """Map every alive non-CH node to its nearest CH (ties to the lowest id)."""
    chs = np.array(sorted({int(c) for c in ch_ids}), dtype=int)
    if chs.size == 0:
        raise ValueError("ch_ids must be nonempty; callers fall back to DT")
    if not network.alive[chs].all():
        raise ValueError("cluster heads must be alive")
    alive_ids = np.flatnonzero(network.alive)
    members = alive_ids[~np.isin(alive_ids, chs)]
    member_of: dict[int, int] = {}
    if members.size:
        nearest = network.d2[np.ix_(members, chs)].argmin(axis=1)
        member_of = {int(m): int(chs[j]) for m, j in zip(members, nearest)}
    return ChAssignment(ch_ids=tuple(int(c) for c in chs), member_of=member_of)


class SnapEncoding:
    """Flat 2K-vector <-> CH-set encoding used by the WOA and PSO selectors.

    Each (x, y) pair snaps to the nearest eligible node (ties to the lowest
    node id). The batch fitness multiplies the summed per-node scores by
    distinct/K so collapsed snaps always score below K-distinct ones.
    """

    def __init__(self, positions: np.ndarray, scores: np.ndarray, k: int):
        self.positions = np.asarray(positions, dtype=float)
        self.scores = np.asarray(scores, dtype=float)
        self.k = k

    def snap(self, x) -> np.ndarray:
        """Local (eligible-array) indices of the K snapped nodes."""
        pts = np.asarray(x, dtype=float).reshape(self.k, 2)
        d2 = ((pts[:, None, :] - self.positions[None, :, :]) ** 2).sum(-1)
        return d2.argmin(axis=1)

    def decode(self, x) -> np.ndarray:
        """Deduplicated local indices encoded by agent vector x."""
        return np.unique(self.snap(x))

    def batch_fitness(self, pop: np.ndarray) -> np.ndarray:
        pts = pop.reshape(len(pop), self.k, 2)
        d2 = ((pts[:, :, None, :] - self.positions[None, None, :, :]) ** 2).sum(-1)
        snapped = np.sort(d2.argmin(-1), axis=1)
        first = np.ones_like(snapped, dtype=bool)
        first[:, 1:] = snapped[:, 1:] != snapped[:, :-1]
        distinct = first.sum(axis=1)
        totals = (self.scores[snapped] * first).sum(axis=1)
        return totals * distinct / self.k

    def fitness(self, x) -> float:
        return float(self.batch_fitness(np.asarray(x, dtype=float)[None, :])[0])


def _field_bounds(area, k: int) -> np.ndarray:
    w, h = area
    return np.tile(np.array([[0.0, w], [0.0, h]]), (k, 1))


def select_chs_woa(
    ctx: SelectionContext, w: FitnessWeights, settings: WoaSettings = WoaSettings()
) -> ChAssignment:
    """Whale-optimization CH selection over energy-eligible nodes.

    Computes the eligibility pool, then maximizes the snapped-set fitness over
    the field box in dimension 2K. When eligibility already forces the choice
    (pool size <= K) the pool is returned directly.
    """
    candidates, _ = eligible_candidates(ctx.network, ctx.k)
    if candidates.size <= ctx.k:
        return assign_members(ctx.network, candidates)
    scores = node_scores(ctx.network, w)[candidates]
    encoding = SnapEncoding(ctx.network.positions[candidates], scores, ctx.k)
    params = WoaParams.from_settings(settings, _field_bounds(ctx.area, ctx.k))
    result = woa_optimize(
        encoding.fitness,
        "maximize",
        params,
        ctx.rng,
        vector_objective=encoding.batch_fitness,
    )
    chosen = candidates[encoding.decode(result.best_position)]
    return assign_members(ctx.network, chosen)


def select_chs_dt(ctx: SelectionContext) -> ChAssignment:
    """Direct transmission: no clusters, every alive node reports to the BS."""
    alive_ids = np.flatnonzero(ctx.network.alive)
    return ChAssignment(ch_ids=(), member_of={int(i): BS_ID for i in alive_ids})


def leach_threshold(p: float, protocol_round: int) -> float:
    """Self-election threshold for nodes that have not served this epoch."""
    epoch = math.ceil(1.0 / p)
    return p / (1.0 - p * (protocol_round % epoch))


def select_chs_leach(
    ctx: SelectionContext, p_desired: float, served: Optional[set] = None
) -> ChAssignment:
    """Distributed LEACH self-election.

    ``served`` carries the ids elected earlier in the current epoch; it is
    cleared whenever a new epoch starts. A round may elect zero CHs, in which
    case every alive node transmits directly to the BS.
    """
    if not 0.0 < p_desired < 1.0:
        raise ValueError("p_desired must lie strictly between 0 and 1")
    served = set() if served is None else served
    alive_ids = np.flatnonzero(ctx.network.alive)
    protocol_round = ctx.round - 1  # engine rounds are 1-based
    if protocol_round % math.ceil(1.0 / p_desired) == 0:
        served.clear()
    fresh = np.array([i for i in alive_ids if int(i) not in served], dtype=int)
    threshold = leach_threshold(p_desired, protocol_round)
    draws = ctx.rng.random(fresh.size)
    elected = fresh[draws < threshold]
    served.update(int(i) for i in elected)
    if elected.size == 0:
        return ChAssignment(ch_ids=(), member_of={int(i): BS_ID for i in alive_ids})
    return assign_members(ctx.network, elected)


def _squared_distance_descent(
    network: Network, candidates: np.ndarray, k: int, rng, max_sweeps: int = 200
) -> np.ndarray:
    """Steepest-descent swap search minimizing total member->CH squared distance."""
    alive_ids = np.flatnonzero(network.alive)
    dist2 = network.d2[np.ix_(alive_ids, candidates)]  # (members, pool)
    current = np.sort(rng.choice(candidates.size, size=k, replace=False))
    for _ in range(max_sweeps):
        chosen_cols = dist2[:, current]
        arg1 = chosen_cols.argmin(axis=1)
        min1 = chosen_cols[np.arange(len(chosen_cols)), arg1]
        if k >= 2:
            min2 = np.partition(chosen_cols, 1, axis=1)[:, 1]
        else:
            min2 = np.full(len(chosen_cols), np.inf)
        outside = np.flatnonzero(~np.isin(np.arange(candidates.size), current))
        if outside.size == 0:
            break
        best_cost = min1.sum()
        best_swap = None
        out_cols = dist2[:, outside]
        for slot in range(k):
            without = np.where(arg1 == slot, min2, min1)
            swapped_costs = np.minimum(without[:, None], out_cols).sum(axis=0)
            j = int(swapped_costs.argmin())
            if swapped_costs[j] < best_cost:
                best_cost = float(swapped_costs[j])
                best_swap = (slot, outside[j])
        if best_swap is None:
            break
        current[best_swap[0]] = best_swap[1]
        current.sort()
    return candidates[current]


def select_chs_leach_c(ctx: SelectionContext, max_sweeps: int = 200) -> ChAssignment:
    """Centralized LEACH-C: K eligible CHs minimizing squared member distances."""
    candidates, _ = eligible_candidates(ctx.network, ctx.k)
    if candidates.size <= ctx.k:
        return assign_members(ctx.network, candidates)
    chosen = _squared_distance_descent(ctx.network, candidates, ctx.k, ctx.rng, max_sweeps)
    return assign_members(ctx.network, chosen)


@dataclass(frozen=True)
class PsoParams:
    """Velocity/position update constants for the PSO baseline."""

    agents: int = 30
    iterations: int = 500
    inertia: float = 0.72
    cognitive: float = 1.49
    social: float = 1.49

    def __post_init__(self):
        if self.agents < 2:
            raise ValueError("agents must be >= 2")
        if self.iterations < 0:
            raise ValueError("iterations must be nonnegative")


def pso_maximize(vector_objective, bounds: np.ndarray, params: PsoParams, rng):
    """Global-best PSO over a box; returns (best position, best fitness)."""
    lo, hi = bounds[:, 0], bounds[:, 1]
    n, dim = params.agents, len(bounds)
    pop = rng.uniform(lo, hi, size=(n, dim))
    vel = np.zeros((n, dim))
    fits = np.asarray(vector_objective(pop), dtype=float)
    pbest = pop.copy()
    pbest_f = fits.copy()
    g = int(np.argmax(pbest_f))
    gbest, gbest_f = pbest[g].copy(), float(pbest_f[g])
    for _ in range(params.iterations):
        r1 = rng.random((n, dim))
        r2 = rng.random((n, dim))
        vel = (
            params.inertia * vel
            + params.cognitive * r1 * (pbest - pop)
            + params.social * r2 * (gbest - pop)
        )
        pop = np.clip(pop + vel, lo, hi)
        fits = np.asarray(vector_objective(pop), dtype=float)
        improved = fits > pbest_f
        pbest[improved] = pop[improved]
        pbest_f[improved] = fits[improved]
        g = int(np.argmax(pbest_f))
        if pbest_f[g] > gbest_f:
            gbest, gbest_f = pbest[g].copy(), float(pbest_f[g])
    return gbest, gbest_f


def select_chs_pso(
    ctx: SelectionContext, w: FitnessWeights, params: PsoParams = PsoParams()
) -> ChAssignment:
    """PSO-dynamics baseline over the same encoding and fitness as the WOA selector."""
    candidates, _ = eligible_candidates(ctx.network, ctx.k)
    if candidates.size <= ctx.k:
        return assign_members(ctx.network, candidates)
    scores = node_scores(ctx.network, w)[candidates]
    encoding = SnapEncoding(ctx.network.positions[candidates], scores, ctx.k)
    best_pos, _ = pso_maximize(
        encoding.batch_fitness, _field_bounds(ctx.area, ctx.k), params, ctx.rng
    )
    chosen = candidates[encoding.decode(best_pos)]
    return assign_members(ctx.network, chosen)


class DtStrategy:
    name = "dt"

    def select(self, ctx: SelectionContext) -> ChAssignment:
        return select_chs_dt(ctx)


class LeachStrategy:
    """Stateful LEACH: remembers who served as CH in the current epoch."""

    name = "leach"

    def __init__(self, p_desired: Optional[float] = None):
        self.p_desired = p_desired
        self._served: set[int] = set()

    def select(self, ctx: SelectionContext) -> ChAssignment:
        p = self.p_desired
        if p is None:
            p = ctx.k / max(len(ctx.network), 1)
        return select_chs_leach(ctx, p, self._served)


class LeachCStrategy:
    name = "leach-c"

    def __init__(self, max_sweeps: int = 200):
        self.max_sweeps = max_sweeps

    def select(self, ctx: SelectionContext) -> ChAssignment:
        return select_chs_leach_c(ctx, self.max_sweeps)


class PsoStrategy:
    name = "pso"

    def __init__(self, weights: FitnessWeights = FitnessWeights(), params: PsoParams = PsoParams()):
        self.weights = weights
        self.params = params

    def select(self, ctx: SelectionContext) -> ChAssignment:
        return select_chs_pso(ctx, self.weights, self.params)


class WoaStrategy:
    name = "woa"

    def __init__(self, weights: FitnessWeights = FitnessWeights(), settings: WoaSettings = WoaSettings()):
        self.weights = weights
        self.settings = settings

    def select(self, ctx: SelectionContext) -> ChAssignment:
        return select_chs_woa(ctx, self.weights, self.settings)


def make_strategy(
    name: str,
    *,
    weights: FitnessWeights = FitnessWeights(),
    woa: WoaSettings = WoaSettings(),
    pso: PsoParams = PsoParams(),
    leach_p: Optional[float] = None,
):
    """Build a fresh strategy object by registry name."""
    if name == "dt":
        return DtStrategy()
    if name == "leach":
        return LeachStrategy(leach_p)
    if name == "leach-c":
        return LeachCStrategy()
    if name == "pso":
        return PsoStrategy(weights, pso)
    if name == "woa":
        return WoaStrategy(weights, woa)
    raise ValueError(f"unknown strategy {name!r}; expected one of {STRATEGY_NAMES}")

"""Generic continuous-domain whale optimization over a bounded box.

The population update follows the classic three-branch rule: with p < 0.5 an
agent either encircles the best-known position (|A| < 1) or explores toward a
random agent (|A| >= 1); with p >= 0.5 it rides the logarithmic spiral toward
the best position. The control scalar `a` decays linearly from 2 to 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional

import numpy as np

Sense = Literal["maximize", "minimize"]


@dataclass(frozen=True)
class WoaSettings:
    """Engine knobs independent of the search box."""

    agents: int = 30
    iterations: int = 500
    b: float = 1.0
    # True draws per-dimension A and C vectors; False shares one scalar draw
    # across dimensions and branches on |A| of that scalar.
    vector_coefficients: bool = True

    def __post_init__(self):
        if self.agents < 2:
            raise ValueError("agents must be >= 2")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")


@dataclass(frozen=True)
class WoaParams:
    """Settings plus the per-dimension [low, high] search box."""

    bounds: np.ndarray
    agents: int = 30
    iterations: int = 500
    b: float = 1.0
    vector_coefficients: bool = True

    def __post_init__(self):
        bounds = np.asarray(self.bounds, dtype=float)
        if bounds.ndim != 2 or bounds.shape[1] != 2 or bounds.shape[0] == 0:
            raise ValueError("bounds must be a nonempty (D, 2) array")
        if np.any(bounds[:, 0] >= bounds[:, 1]):
            raise ValueError("each bound must satisfy low < high")
        object.__setattr__(self, "bounds", bounds)
        if self.agents < 2:
            raise ValueError("agents must be >= 2")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")

    @property
    def dim(self) -> int:
        return len(self.bounds)

    @classmethod
    def from_settings(cls, settings: WoaSettings, bounds) -> "WoaParams":
        return cls(
            bounds=np.asarray(bounds, dtype=float),
            agents=settings.agents,
            iterations=settings.iterations,
            b=settings.b,
            vector_coefficients=settings.vector_coefficients,
        )


@dataclass
class WoaCoefficients:
    """One agent's draw of the update coefficients at iteration t."""

    a: float
    A: np.ndarray
    C: np.ndarray
    l: float
    p: float

    def branch_metric(self, vector: bool = True) -> float:
        """|A| used by the branch rule: Euclidean norm in vector mode."""
        return float(np.linalg.norm(self.A)) if vector else abs(float(self.A[0]))


def compute_coefficients(
    t: int, t_max: int, dim: int, rng: np.random.Generator, vector: bool = True
) -> WoaCoefficients:
    """Draw fresh coefficients for iteration t of t_max.

    a = 2(1 - t/t_max); each A component is 2*a*r - a with r ~ U[0,1] and each
    C component 2*r'; l ~ U[-1,1]; p ~ U[0,1].
    """
    if not 0 <= t < t_max:
        raise ValueError("iteration index must satisfy 0 <= t < t_max")
    a = 2.0 * (1.0 - t / t_max)
    if vector:
        A = 2.0 * a * rng.random(dim) - a
        C = 2.0 * rng.random(dim)
    else:
        A = np.full(dim, 2.0 * a * rng.random() - a)
        C = np.full(dim, 2.0 * rng.random())
    l = rng.uniform(-1.0, 1.0)
    p = float(rng.random())
    return WoaCoefficients(a=a, A=A, C=C, l=float(l), p=p)


def _check_dims(*vectors) -> None:
    dims = {np.shape(v) for v in vectors}
    if len(dims) != 1:
        raise ValueError(f"dimension mismatch among update vectors: {sorted(dims)}")


def encircle_update(x, x_star, A, C) -> np.ndarray:
    """Shrinking-encircling move toward the best position: X* - A o |C o X* - X|."""
    x, x_star, A, C = map(np.asarray, (x, x_star, A, C))
    _check_dims(x, x_star, A, C)
    d = np.abs(C * x_star - x)
    return x_star - A * d


def explore_update(x, x_rand, A, C) -> np.ndarray:
    """Exploration move toward a random agent: X_rand - A o |C o X_rand - X|."""
    x, x_rand, A, C = map(np.asarray, (x, x_rand, A, C))
    _check_dims(x, x_rand, A, C)
    d = np.abs(C * x_rand - x)
    return x_rand - A * d


def spiral_update(x, x_star, b: float, l: float) -> np.ndarray:
    """Logarithmic-spiral move: |X* - X| * e^(b*l) * cos(2*pi*l) + X*."""
    x, x_star = np.asarray(x), np.asarray(x_star)
    _check_dims(x, x_star)
    d = np.abs(x_star - x)
    return d * math.exp(b * l) * math.cos(2.0 * math.pi * l) + x_star


@dataclass
class WoaResult:
    best_position: np.ndarray
    best_fitness: float
    trace: np.ndarray  # best-so-far fitness after each iteration


def woa_optimize(
    objective: Callable[[np.ndarray], float],
    sense: Sense,
    params: WoaParams,
    rng: np.random.Generator,
    vector_objective: Optional[Callable[[np.ndarray], np.ndarray]] = None,
) -> WoaResult:
    """Run the whale optimization loop and return the best solution found.

    Every iteration draws fresh per-agent coefficients (same distributions as
    ``compute_coefficients``, drawn as whole-population batches so the update
    math stays vectorized), moves the whole population, clamps to the box,
    re-evaluates, and promotes a strictly better agent to X*. The trace holds
    the best-so-far fitness after each iteration and is therefore monotone.

    ``vector_objective`` optionally evaluates an (N, D) batch to an (N,)
    vector; otherwise ``objective`` is applied row by row.
    """
    lo, hi = params.bounds[:, 0], params.bounds[:, 1]
    n, dim = params.agents, params.dim
    maximize = sense == "maximize"

    def evaluate(pop: np.ndarray) -> np.ndarray:
        if vector_objective is not None:
            return np.asarray(vector_objective(pop), dtype=float)
        return np.array([objective(row) for row in pop], dtype=float)

    pop = rng.uniform(lo, hi, size=(n, dim))
    fits = evaluate(pop)
    best_idx = int(np.argmax(fits)) if maximize else int(np.argmin(fits))
    best_pos = pop[best_idx].copy()
    best_fit = float(fits[best_idx])

    trace = np.empty(params.iterations)
    for t in range(params.iterations):
        a = 2.0 * (1.0 - t / params.iterations)
        if params.vector_coefficients:
            A = 2.0 * a * rng.random((n, dim)) - a
            C = 2.0 * rng.random((n, dim))
            metric = np.linalg.norm(A, axis=1)
        else:
            A = np.repeat(2.0 * a * rng.random((n, 1)) - a, dim, axis=1)
            C = np.repeat(2.0 * rng.random((n, 1)), dim, axis=1)
            metric = np.abs(A[:, 0])
        l = rng.uniform(-1.0, 1.0, size=n)
        p = rng.random(n)
        rand_idx = rng.integers(0, n, size=n)

        spiral = p >= 0.5
        explore = ~spiral & (metric >= 1.0)

        d_best = np.abs(C * best_pos - pop)
        moved = best_pos - A * d_best
        x_rand = pop[rand_idx]
        d_rand = np.abs(C * x_rand - pop)
        moved = np.where(explore[:, None], x_rand - A * d_rand, moved)
        swirl = np.exp(params.b * l) * np.cos(2.0 * np.pi * l)
        moved = np.where(
            spiral[:, None], np.abs(best_pos - pop) * swirl[:, None] + best_pos, moved
        )

        pop = np.clip(moved, lo, hi)
        fits = evaluate(pop)
        idx = int(np.argmax(fits)) if maximize else int(np.argmin(fits))
        if (maximize and fits[idx] > best_fit) or (not maximize and fits[idx] < best_fit):
            best_fit = float(fits[idx])
            best_pos = pop[idx].copy()
        trace[t] = best_fit

    return WoaResult(best_position=best_pos, best_fitness=best_fit, trace=trace)

"""Sensor field deployment, geometry, and mutable per-node state."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

MEMBER = "member"
CLUSTER_HEAD = "cluster_head"


@dataclass(frozen=True)
class ScenarioConfig:
    """One simulation scenario: field, population, CH budget, BS, and budgets."""

    name: str = "wsn1"
    area: tuple[float, float] = (100.0, 100.0)
    node_count: int = 100
    ch_count: int = 10
    bs_position: tuple[float, float] = (50.0, 50.0)
    initial_energy: float = 0.5
    max_rounds: int = 8000
    seed: int = 1

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be nonnegative")
        if not 0 < self.ch_count <= max(self.node_count, 1):
            raise ValueError("ch_count must satisfy 0 < K <= node_count")
        if self.area[0] <= 0 or self.area[1] <= 0:
            raise ValueError("area must be positive")
        if self.initial_energy <= 0:
            raise ValueError("initial_energy must be positive")
        if self.max_rounds < 0:
            raise ValueError("max_rounds must be nonnegative")


@dataclass
class NodeState:
    """Snapshot of one sensor node."""

    id: int
    position: tuple[float, float]
    residual_energy: float
    alive: bool = True
    role: str = MEMBER


def distance(a, b) -> float:
    """Euclidean distance between two (x, y) points in meters."""
    return math.hypot(a[0] - b[0], a[1] - b[1])


def draw_positions(config: ScenarioConfig, rng: np.random.Generator) -> np.ndarray:
    """i.i.d. uniform node positions over the area rectangle, shape (n, 2)."""
    w, h = config.area
    return rng.uniform((0.0, 0.0), (w, h), size=(config.node_count, 2))


def deploy_nodes(config: ScenarioConfig, rng: np.random.Generator) -> list[NodeState]:
    """Deploy `node_count` stationary nodes at full energy, all members."""
    positions = draw_positions(config, rng)
    return [
        NodeState(id=i, position=(float(x), float(y)), residual_energy=config.initial_energy)
        for i, (x, y) in enumerate(positions)
    ]


class Network:
    """Mutable field state used by the round loop.

    Positions are immutable after deployment; energy, alive flags, and roles
    are mutated only by the simulation engine. `consumed` accumulates every
    joule charged (including the clamped remainder of nodes that die
    mid-action), so `energy.sum() + consumed` stays at the initial budget.
    """

    def __init__(self, positions: np.ndarray, initial_energy: float, bs_position):
        self.positions = np.asarray(positions, dtype=float)
        if self.positions.ndim != 2 or (self.positions.size and self.positions.shape[1] != 2):
            raise ValueError("positions must have shape (n, 2)")
        n = len(self.positions)
        self.initial_energy = float(initial_energy)
        self.bs_position = (float(bs_position[0]), float(bs_position[1]))
        self.energy = np.full(n, float(initial_energy))
        self.alive = np.ones(n, dtype=bool)
        self.is_ch = np.zeros(n, dtype=bool)
        self.consumed = 0.0
        diff = self.positions - np.asarray(self.bs_position)
        self.d_bs = np.hypot(diff[:, 0], diff[:, 1]) if n else np.zeros(0)
        self._d2 = None

    @classmethod
    def deploy(cls, config: ScenarioConfig, rng: np.random.Generator) -> "Network":
        return cls(draw_positions(config, rng), config.initial_energy, config.bs_position)

    def __len__(self) -> int:
        return len(self.positions)

    @property
    def d2(self) -> np.ndarray:
        """Full pairwise squared-distance matrix, built lazily and cached."""
        if self._d2 is None:
            diff = self.positions[:, None, :] - self.positions[None, :, :]
            self._d2 = (diff**2).sum(axis=2)
        return self._d2

    def nodes(self) -> list[NodeState]:
        """Per-node snapshots (id order)."""
        return [
            NodeState(
                id=i,
                position=(float(p[0]), float(p[1])),
                residual_energy=float(e),
                alive=bool(a),
                role=CLUSTER_HEAD if ch else MEMBER,
            )
            for i, (p, e, a, ch) in enumerate(
                zip(self.positions, self.energy, self.alive, self.is_ch)
            )
        ]

    def initial_budget(self) -> float:
        return len(self) * self.initial_energy


def save_deployment(path, positions: np.ndarray) -> None:
    """Write a (id, x, y) CSV so a layout can be replayed across protocols."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "x", "y"])
        for i, (x, y) in enumerate(positions):
            writer.writerow([i, repr(float(x)), repr(float(y))])


def load_deployment(path) -> np.ndarray:
    """Read a deployment CSV back into an (n, 2) position array."""
    rows = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for rec in reader:
            rows.append((int(rec["id"]), float(rec["x"]), float(rec["y"])))
    rows.sort()
    return np.array([[x, y] for _, x, y in rows], dtype=float).reshape(-1, 2)

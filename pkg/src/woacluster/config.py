"""Config documents: validated models, YAML loading, and key=value overrides.

Defaults reproduce the primary benchmark: a 100x100 m field, 100 nodes,
10 CHs, BS at the center, 0.5 J nodes, and the standard radio constants.
"""

from __future__ import annotations

from typing import Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .energy import RadioParams
from .network import ScenarioConfig
from .protocols import STRATEGY_NAMES, FitnessWeights, PsoParams, make_strategy
from .woa import WoaSettings


class ConfigError(Exception):
    """Configuration file or override rejected; message carries the context."""


class RadioModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    e_elec: float = Field(50e-9, gt=0)
    eps_fs: float = Field(10e-12, gt=0)
    eps_mp: float = Field(0.0013e-12, gt=0)
    e_da: float = Field(5e-9, gt=0)
    d0: float = Field(30.0, gt=0)
    packet_bits: int = Field(4000, gt=0)
    msg_bits: int = Field(200, gt=0)

    def to_radio(self) -> RadioParams:
        return RadioParams(**self.model_dump())


class ScenarioModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str = "wsn1"
    area: tuple[float, float] = (100.0, 100.0)
    node_count: int = Field(100, gt=0)
    ch_count: int = Field(10, gt=0)
    bs_position: tuple[float, float] = (50.0, 50.0)
    initial_energy: float = Field(0.5, gt=0)
    max_rounds: int = Field(8000, ge=0)
    seed: int = 1

    @model_validator(mode="after")
    def _check_counts(self):
        if self.ch_count > self.node_count:
            raise ValueError("ch_count must not exceed node_count")
        if self.area[0] <= 0 or self.area[1] <= 0:
            raise ValueError("area must be positive")
        return self

    def to_scenario(self) -> ScenarioConfig:
        return ScenarioConfig(
            name=self.name,
            area=tuple(self.area),
            node_count=self.node_count,
            ch_count=self.ch_count,
            bs_position=tuple(self.bs_position),
            initial_energy=self.initial_energy,
            max_rounds=self.max_rounds,
            seed=self.seed,
        )


class FitnessModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    p1: float = Field(0.7, ge=0, le=1)
    p2: float = Field(0.3, ge=0, le=1)
    # None resolves to the radio threshold d0
    neighbor_radius: Optional[float] = Field(None, gt=0)


class WoaModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    agents: int = Field(30, ge=2)
    iterations: int = Field(500, ge=1)
    spiral_b: float = 1.0
    vector_coefficients: bool = True

    def to_settings(self) -> WoaSettings:
        return WoaSettings(
            agents=self.agents,
            iterations=self.iterations,
            b=self.spiral_b,
            vector_coefficients=self.vector_coefficients,
        )


class PsoModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    agents: int = Field(30, ge=2)
    iterations: int = Field(500, ge=0)
    inertia: float = 0.72
    cognitive: float = 1.49
    social: float = 1.49

    def to_params(self) -> PsoParams:
        return PsoParams(**self.model_dump())


class LeachModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    # None resolves to ch_count / node_count
    p_desired: Optional[float] = Field(None, gt=0, lt=1)


def _validate_strategy_names(names):
    for name in names:
        if name not in STRATEGY_NAMES:
            raise ValueError(f"unknown strategy {name!r}; expected one of {STRATEGY_NAMES}")
    return names


class RunConfig(BaseModel):
    """One simulation: a scenario plus a strategy and all parameter groups."""

    model_config = ConfigDict(extra="forbid")

    scenario: ScenarioModel = ScenarioModel()
    strategy: str = "woa"
    radio: RadioModel = RadioModel()
    fitness: FitnessModel = FitnessModel()
    woa: WoaModel = WoaModel()
    pso: PsoModel = PsoModel()
    leach: LeachModel = LeachModel()

    @field_validator("strategy")
    @classmethod
    def _known_strategy(cls, v):
        _validate_strategy_names([v])
        return v

    def weights(self) -> FitnessWeights:
        radius = self.fitness.neighbor_radius
        return FitnessWeights(
            p1=self.fitness.p1,
            p2=self.fitness.p2,
            neighbor_radius=self.radio.d0 if radius is None else radius,
        )

    def build_strategy(self, name: Optional[str] = None):
        return make_strategy(
            name or self.strategy,
            weights=self.weights(),
            woa=self.woa.to_settings(),
            pso=self.pso.to_params(),
            leach_p=self.leach.p_desired,
        )

    def resolved(self) -> dict:
        """Full parameter set with every deferred default filled in."""
        data = self.model_dump()
        if data["fitness"]["neighbor_radius"] is None:
            data["fitness"]["neighbor_radius"] = data["radio"]["d0"]
        if data["leach"]["p_desired"] is None:
            data["leach"]["p_desired"] = self.scenario.ch_count / self.scenario.node_count
        return data


class ExperimentConfig(BaseModel):
    """Experiment matrix: scenarios x strategies x replicates."""

    model_config = ConfigDict(extra="forbid")

    scenarios: list[ScenarioModel] = Field(default_factory=lambda: [ScenarioModel()])
    strategies: list[str] = Field(default_factory=lambda: list(STRATEGY_NAMES))
    replicates: int = Field(20, ge=1)
    base_seed: int = 1
    radio: RadioModel = RadioModel()
    fitness: FitnessModel = FitnessModel()
    woa: WoaModel = WoaModel()
    pso: PsoModel = PsoModel()
    leach: LeachModel = LeachModel()
    throughput_rounds: list[int] = Field(default_factory=lambda: [2000])
    energy_rounds: list[int] = Field(default_factory=lambda: [5000])

    @field_validator("strategies")
    @classmethod
    def _known_strategies(cls, v):
        if not v:
            raise ValueError("strategies must be nonempty")
        return _validate_strategy_names(v)

    @field_validator("scenarios")
    @classmethod
    def _nonempty_scenarios(cls, v):
        if not v:
            raise ValueError("scenarios must be nonempty")
        return v

    @field_validator("throughput_rounds", "energy_rounds")
    @classmethod
    def _positive_rounds(cls, v):
        if any(r < 1 for r in v):
            raise ValueError("checkpoint rounds must be >= 1")
        return v

    def weights(self) -> FitnessWeights:
        radius = self.fitness.neighbor_radius
        return FitnessWeights(
            p1=self.fitness.p1,
            p2=self.fitness.p2,
            neighbor_radius=self.radio.d0 if radius is None else radius,
        )

    def build_strategy(self, name: str):
        return make_strategy(
            name,
            weights=self.weights(),
            woa=self.woa.to_settings(),
            pso=self.pso.to_params(),
            leach_p=self.leach.p_desired,
        )


def parse_override(item: str) -> tuple[list[str], object]:
    """Split 'a.b.c=value' into the key path and a YAML-parsed value."""
    key, sep, raw = item.partition("=")
    if not sep or not key:
        raise ConfigError(f"override {item!r} must look like key.path=value")
    try:
        value = yaml.safe_load(raw) if raw != "" else ""
    except yaml.YAMLError:
        value = raw
    return key.split("."), value


def apply_overrides(data: dict, overrides) -> dict:
    """Apply key.path=value items onto a raw config mapping."""
    for item in overrides:
        path, value = parse_override(item)
        node = data
        for part in path[:-1]:
            nxt = node.get(part)
            if nxt is None:
                nxt = node[part] = {}
            if not isinstance(nxt, dict):
                raise ConfigError(f"override {item!r} descends into non-mapping {part!r}")
            node = nxt
        node[path[-1]] = value
    return data


def load_yaml(path) -> dict:
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh)
    except FileNotFoundError as exc:
        raise ConfigError(f"{path}: config file not found") from exc
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark
        where = f"{path}:{mark.line + 1}" if mark else str(path)
        raise ConfigError(f"{where}: invalid YAML: {exc.problem}") from exc
    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: config root must be a mapping")
    return data


def _validate(model_cls, data: dict, source: str):
    try:
        return model_cls.model_validate(data)
    except Exception as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def load_run_config(path=None, overrides=()) -> RunConfig:
    """Load a run config, or the built-in defaults when no path is given."""
    data = load_yaml(path) if path is not None else {}
    apply_overrides(data, overrides)
    return _validate(RunConfig, data, str(path) if path else "<defaults>")


def load_experiment_config(path=None, overrides=()) -> ExperimentConfig:
    data = load_yaml(path) if path is not None else {}
    apply_overrides(data, overrides)
    return _validate(ExperimentConfig, data, str(path) if path else "<defaults>")

import dataclasses
import math
import os
from collections.abc import Mapping
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

import yaml

from .errors import ParameterError
from .fields import ModelParams

THREADS_ENV = "MBL_THREADS"


def _extent(value: Any) -> float:
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "∞"):
        return math.inf
    if value == math.inf:
        return math.inf
    return int(value)


def default_threads() -> int:
    value = os.environ.get(THREADS_ENV)
    if not value:
        return 1
    try:
        threads = int(value)
    except ValueError as exc:
        raise ParameterError(f"{THREADS_ENV} must be an integer, got {value!r}") from exc
    if threads < 1:
        raise ParameterError(f"{THREADS_ENV} must be at least 1")
    return threads


@dataclass
class ExperimentConfig:
    """Everything an experiment needs; keys outside this list are rejected."""

    experiment: str = "prop1"
    a: float = 0.8
    q: float = 0.6
    eta: float = 1.0
    theta: float = 1.0
    alpha: float = 0.0
    M: float = math.inf
    N: float = math.inf
    n: int = 10_000
    seed: int = 0
    H: int = 4
    eps: list[float] = field(default_factory=lambda: [0.2, 0.1, 0.05])
    sizes: list[int] = field(default_factory=lambda: [8, 16, 32])
    grid: list[float] = field(default_factory=list)
    tv_tol: float = 1e-9
    truncation: int = 64
    tolerance: float | None = None
    threads: int = field(default_factory=default_threads)
    centering: str = "derived"

    def __post_init__(self):
        self.M = _extent(self.M)
        self.N = _extent(self.N)
        if self.n < 1:
            raise ParameterError(f"n must be at least 1, got {self.n}")
        if self.threads < 1:
            raise ParameterError(f"threads must be at least 1, got {self.threads}")
        if self.tv_tol <= 0:
            raise ParameterError(f"tv_tol must be positive, got {self.tv_tol}")

    @property
    def params(self) -> ModelParams:
        return ModelParams(a=self.a, q=self.q, eta=self.eta, theta=self.theta, alpha=self.alpha, M=self.M, N=self.N)

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any]) -> "ExperimentConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ParameterError(f"unknown configuration keys: {', '.join(unknown)}")
        try:
            return cls(**dict(data))
        except ParameterError:
            raise
        except (TypeError, ValueError) as exc:
            raise ParameterError(f"invalid configuration: {exc}") from exc

    def merged(self, overrides: Mapping[str, Any]) -> "ExperimentConfig":
        return ExperimentConfig.from_mapping({**self.as_dict(), **overrides})

    def as_dict(self) -> dict[str, Any]:
        data = dataclasses.asdict(self)
        for key in ("M", "N"):
            if data[key] == math.inf:
                data[key] = "inf"
        return data


def read_config_file(path: Path) -> dict[str, Any]:
    """Mapping from a YAML or JSON file (JSON is read as YAML)."""
    try:
        with open(path) as f:
            data = yaml.safe_load(f)
    except yaml.YAMLError as exc:
        raise ParameterError(f"cannot parse {path}: {exc}") from exc
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ParameterError(f"{path} must hold a mapping")
    return data


import cmath
import copy
import math
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import ConfigError

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib


class Settings(BaseSettings):
    # Logging
    log_level: str = "INFO"
    log_dir: str = "logs"

    # Output
    output_dir: str = "results"

    # Numerics
    default_seed: int = 20190513
    default_burn_in: int = 1000
    pinv_cutoff: float = 1e-10
    chop_tolerance: float = 0.0

    model_config = SettingsConfigDict(env_file=".env", env_prefix="EDMD_", extra="ignore")


settings = Settings()

# Relative chop that keeps the doubling-map matrices exactly nilpotent
EXACT_CHOP_TOLERANCE = 1e-14

EXPERIMENT_KINDS = ("bernoulli-check", "spectrum", "converge", "timeseries", "catmap", "density")
OUTPUT_FORMATS = ("csv", "json", "svg")

ComplexPair = Tuple[float, float]


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class MapConfig(_Section):
    """Map definition; complex parameters are written as [re, im]."""

    kind: Literal["blaschke", "bernoulli", "catmap"] = "blaschke"
    mu: ComplexPair = (0.0, 0.0)
    rho: ComplexPair = (0.0, 0.0)

    @field_validator("mu", "rho")
    @classmethod
    def _inside_unit_disk(cls, value: ComplexPair) -> ComplexPair:
        if abs(complex(*value)) >= 1.0:
            raise ValueError(f"modulus of [{value[0]}, {value[1]}] must be < 1")
        return value

    @property
    def dimension(self) -> int:
        return 2 if self.kind == "catmap" else 1

    def mu_complex(self) -> complex:
        return complex(*self.mu)

    def rho_complex(self) -> complex:
        return complex(*self.rho)


class DictionaryConfig(_Section):
    nbar: int = Field(5, ge=0)


class SamplingConfig(_Section):
    mode: Literal["grid", "lattice", "trajectory"] = "grid"
    nodes: int = Field(100, ge=1)
    nodes2: Optional[int] = Field(None, ge=1)
    seed: Optional[int] = settings.default_seed
    replicate_seeds: List[int] = []
    start: Optional[Union[float, ComplexPair]] = None
    burn_in: int = Field(settings.default_burn_in, ge=0)
    series_file: Optional[str] = None


class SolverConfig(_Section):
    cutoff: float = Field(settings.pinv_cutoff, gt=0.0, lt=1.0)
    chop: float = Field(settings.chop_tolerance, ge=0.0, lt=1e-6)
    compensated: bool = False
    eigen_count: int = Field(11, ge=1)
    stability_threshold: float = Field(1e-2, gt=0.0)


class SweepConfig(_Section):
    n_list: List[int] = [11, 15, 21, 27, 33, 41]
    pairs: int = Field(5, ge=1)
    noise_floor: float = Field(1e-13, gt=0.0)

    @field_validator("n_list")
    @classmethod
    def _odd_increasing(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("n_list must not be empty")
        if any(n < 1 or n % 2 == 0 for n in value):
            raise ValueError("every N in n_list must be a positive odd number (N = 2*nbar + 1)")
        if any(b <= a for a, b in zip(value, value[1:])):
            raise ValueError("n_list must be strictly increasing")
        return value


class OutputConfig(_Section):
    out_dir: str = settings.output_dir
    formats: List[Literal["csv", "json", "svg"]] = list(OUTPUT_FORMATS)
    density_bins: int = Field(512, ge=8)


class ExperimentConfig(_Section):
    name: str = "experiment"
    map: MapConfig = Field(default_factory=MapConfig)
    dictionary: DictionaryConfig = Field(default_factory=DictionaryConfig)
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    sweep: SweepConfig = Field(default_factory=SweepConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def _check_consistency(self) -> "ExperimentConfig":
        dim = self.map.dimension
        mode = self.sampling.mode
        if mode == "grid" and dim != 1:
            raise ValueError("grid sampling requires a circle map (use 'lattice' for catmap)")
        if mode == "lattice" and dim != 2:
            raise ValueError("lattice sampling requires the torus map 'catmap'")
        if mode == "trajectory" and self.sampling.seed is None and self.sampling.start is None:
            if self.sampling.series_file is None:
                raise ValueError("trajectory sampling requires a seed or an explicit start")
        if self.sampling.start is not None:
            is_pair = isinstance(self.sampling.start, (tuple, list))
            if is_pair != (dim == 2):
                raise ValueError(f"start must be {'a pair of angles' if dim == 2 else 'a single angle'} for this map")
        return self


# Built-in presets reproduce the reference figures; files and CLI flags override them.
_REFERENCE = cmath.rect(0.33, math.pi / 25)
REFERENCE_MU = (_REFERENCE.real, _REFERENCE.imag)

PRESETS: Dict[str, Dict[str, Any]] = {
    "bernoulli-check": {
        "name": "bernoulli_check",
        "map": {"kind": "bernoulli"},
        "dictionary": {"nbar": 5},
        "sampling": {"mode": "grid", "nodes": 100},
        "solver": {"chop": EXACT_CHOP_TOLERANCE},
    },
    "spectrum": {
        "name": "blaschke_spectrum",
        "map": {"kind": "blaschke", "mu": REFERENCE_MU, "rho": REFERENCE_MU},
        "dictionary": {"nbar": 10},
        "sampling": {"mode": "grid", "nodes": 100},
    },
    "converge": {
        "name": "blaschke_convergence",
        "map": {"kind": "blaschke", "mu": REFERENCE_MU, "rho": REFERENCE_MU},
        "sampling": {"mode": "grid", "nodes": 1000},
    },
    "timeseries": {
        "name": "blaschke_timeseries",
        "map": {"kind": "blaschke", "mu": REFERENCE_MU, "rho": REFERENCE_MU},
        "dictionary": {"nbar": 5},
        "sampling": {"mode": "trajectory", "nodes": 50000, "replicate_seeds": [1, 2, 3, 4]},
    },
    "catmap": {
        "name": "catmap_spectrum",
        "map": {"kind": "catmap", "mu": (-0.6, -0.55)},
        "dictionary": {"nbar": 5},
        "sampling": {"mode": "lattice", "nodes": 201, "nodes2": 201},
        "solver": {"eigen_count": 5},
    },
    "density": {
        "name": "catmap_density",
        "map": {"kind": "catmap", "mu": (-0.6, -0.55)},
        "sampling": {"mode": "trajectory", "nodes": 200000},
    },
}


def _deep_merge(base: Dict[str, Any], update: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in update.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def _format_validation_error(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        if item["type"] == "extra_forbidden":
            lines.append(f"{location}: unknown key")
        elif item["type"] == "missing":
            lines.append(f"{location}: missing field")
        else:
            lines.append(f"{location}: {item['msg']}")
    return "; ".join(lines)


def build_experiment_config(kind: str, data: Optional[Dict[str, Any]] = None,
                            overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Merge preset, file data and overrides, then validate."""
    if kind not in PRESETS:
        raise ConfigError(f"unknown experiment kind '{kind}' (expected one of {', '.join(EXPERIMENT_KINDS)})")
    merged = _deep_merge(PRESETS[kind], data or {})
    merged = _deep_merge(merged, overrides or {})
    try:
        return ExperimentConfig.model_validate(merged)
    except ValidationError as e:
        raise ConfigError(f"invalid configuration: {_format_validation_error(e)}") from e


def load_experiment_config(kind: str, path: Optional[Union[str, Path]] = None,
                           overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """Load a TOML experiment file (optional) on top of the preset for `kind`."""
    data: Dict[str, Any] = {}
    if path is not None:
        path = Path(path)
        try:
            with open(path, "rb") as f:
                data = tomllib.load(f)
        except FileNotFoundError as e:
            raise ConfigError(f"config file not found: {path}") from e
        except tomllib.TOMLDecodeError as e:
            raise ConfigError(f"cannot parse {path}: {e}") from e
    return build_experiment_config(kind, data, overrides)

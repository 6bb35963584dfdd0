import logging
from dataclasses import dataclass
from typing import Union

import numpy as np

from ..utils.errors import DimensionMismatchError, DomainError
from .blaschke import BlaschkeParams, angle_map, wrap_angle
from .torus import TorusMapParams, torus_map

logger = logging.getLogger('dynamics')


@dataclass(frozen=True)
class MapSpec:
    """A map tau on the circle (dimension 1) or the torus (dimension 2).

    Phase points are stored as angles: a float on the circle, a pair on the torus.
    """
    params: Union[BlaschkeParams, TorusMapParams]
    dimension: int
    name: str = ""

    def __post_init__(self):
        if not isinstance(self.params, (BlaschkeParams, TorusMapParams)):
            raise DomainError(f"unsupported map parameters {type(self.params).__name__}")
        expected = 1 if isinstance(self.params, BlaschkeParams) else 2
        if self.dimension != expected:
            raise DimensionMismatchError(
                f"{type(self.params).__name__} lives in dimension {expected}, got dimension tag {self.dimension}"
            )
        if not self.name:
            object.__setattr__(self, 'name', self._default_name())

    def _default_name(self) -> str:
        if isinstance(self.params, TorusMapParams):
            return "cat" if self.params.is_linear else "deformed-cat"
        return "bernoulli" if self.params.is_bernoulli else "blaschke"

    @classmethod
    def blaschke(cls, mu: complex, rho: complex) -> 'MapSpec':
        return cls(BlaschkeParams(mu, rho), 1)

    @classmethod
    def bernoulli(cls) -> 'MapSpec':
        return cls(BlaschkeParams.bernoulli(), 1)

    @classmethod
    def catmap(cls, mu: complex = 0j) -> 'MapSpec':
        return cls(TorusMapParams(mu), 2)

    def apply(self, points):
        """Image of one phase point or of an array of phase points."""
        if self.dimension == 1:
            return angle_map(self.params, points)
        return torus_map(self.params, points)

    def check_point(self, point) -> np.ndarray:
        point = np.asarray(point, dtype=float)
        if point.shape != ((2,) if self.dimension == 2 else ()):
            raise DimensionMismatchError(
                f"phase point of shape {point.shape} does not belong to the {self.dimension}D map '{self.name}'"
            )
        return np.asarray(wrap_angle(point), dtype=float)


def iterate_trajectory(map_spec: MapSpec, start, burn_in: int, length: int) -> np.ndarray:
    """Discard burn_in iterates, then record length consecutive points (the first is recorded as is).

    Returns shape (length,) on the circle and (length, 2) on the torus.
    """
    if burn_in < 0 or length < 1:
        raise ValueError(f"need burn_in >= 0 and length >= 1, got burn_in={burn_in}, length={length}")
    point = map_spec.check_point(start)
    for _ in range(burn_in):
        point = np.asarray(map_spec.apply(point), dtype=float)

    shape = (length,) if map_spec.dimension == 1 else (length, 2)
    trajectory = np.empty(shape, dtype=float)
    trajectory[0] = point
    for m in range(1, length):
        point = np.asarray(map_spec.apply(point), dtype=float)
        trajectory[m] = point

    logger.info(f"Iterated {map_spec.name} map: burn_in={burn_in}, recorded {length} points")
    return trajectory


def map_from_config(map_config) -> MapSpec:
    """Build a MapSpec from a validated MapConfig section."""
    if map_config.kind == "bernoulli":
        return MapSpec.bernoulli()
    if map_config.kind == "catmap":
        return MapSpec.catmap(map_config.mu_complex())
    return MapSpec.blaschke(map_config.mu_complex(), map_config.rho_complex())

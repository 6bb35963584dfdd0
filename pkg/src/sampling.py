"""Sample node sets paired with their images under the map."""
import logging
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from .dynamics.blaschke import TWO_PI, wrap_angle
from .dynamics.maps import MapSpec, iterate_trajectory
from .observables import Dictionary
from .utils.errors import ConfigError, DimensionMismatchError

logger = logging.getLogger('edmd')


class Provenance(str, Enum):
    GRID = "equidistant-grid"
    LATTICE = "torus-lattice"
    TRAJECTORY = "trajectory"


@dataclass
class SampleSet:
    """Nodes stored as angles, (M,) on the circle or (M, 2) on the torus."""
    points: np.ndarray = field(repr=False)
    images: np.ndarray = field(repr=False)
    provenance: Provenance
    counts: Tuple[int, ...]
    map_name: str = ""
    start: Optional[Any] = None
    burn_in: Optional[int] = None
    seed: Optional[int] = None
    source: Optional[str] = None

    @property
    def size(self) -> int:
        return len(self.points)

    @property
    def dimension(self) -> int:
        return 1 if self.points.ndim == 1 else 2

    def metadata(self) -> Dict[str, Any]:
        start = self.start
        if isinstance(start, np.ndarray):
            start = start.tolist()
        return {
            'provenance': self.provenance.value,
            'counts': list(self.counts),
            'samples': self.size,
            'map': self.map_name,
            'start': start,
            'burn_in': self.burn_in,
            'seed': self.seed,
            'source': self.source,
        }


def equidistant_circle_nodes(map_spec: MapSpec, m: int) -> SampleSet:
    """Nodes phi_m = 2 pi m / M, m = 0..M-1, with their images."""
    if m < 1:
        raise ValueError(f"need at least one node, got {m}")
    if map_spec.dimension != 1:
        raise DimensionMismatchError(f"equidistant circle nodes need a circle map, got '{map_spec.name}'")
    points = TWO_PI * np.arange(m) / m
    return SampleSet(points, np.asarray(map_spec.apply(points)), Provenance.GRID, (m,), map_spec.name)


def torus_lattice_nodes(map_spec: MapSpec, m1: int, m2: int) -> SampleSet:
    """Row-major lattice (2 pi j / m1, 2 pi k / m2) with torus-map images."""
    if m1 < 1 or m2 < 1:
        raise ValueError(f"lattice needs positive counts, got {m1}x{m2}")
    if map_spec.dimension != 2:
        raise DimensionMismatchError(f"torus lattice nodes need a torus map, got '{map_spec.name}'")
    axis1 = TWO_PI * np.arange(m1) / m1
    axis2 = TWO_PI * np.arange(m2) / m2
    grid1, grid2 = np.meshgrid(axis1, axis2, indexing='ij')
    points = np.column_stack((grid1.ravel(), grid2.ravel()))
    return SampleSet(points, map_spec.apply(points), Provenance.LATTICE, (m1, m2), map_spec.name)


def random_start(map_spec: MapSpec, seed: int):
    rng = np.random.default_rng(seed)
    if map_spec.dimension == 1:
        return float(rng.uniform(0.0, TWO_PI))
    return rng.uniform(0.0, TWO_PI, size=2)


def trajectory_nodes(map_spec: MapSpec, start=None, burn_in: int = 1000, m: int = 1,
                     seed: Optional[int] = None) -> SampleSet:
    """m consecutive trajectory points after burn_in discarded iterates.

    images[j] = points[j + 1]; the image of the last point costs one extra step.
    Without an explicit start, the start is drawn from `seed`.
    """
    if m < 1:
        raise ValueError(f"need at least one sample, got {m}")
    if start is None:
        if seed is None:
            raise ValueError("trajectory sampling needs an explicit start or a seed")
        start = random_start(map_spec, seed)
    orbit = iterate_trajectory(map_spec, start, burn_in, m + 1)
    return SampleSet(orbit[:-1], orbit[1:], Provenance.TRAJECTORY, (m,), map_spec.name,
                     start=start, burn_in=burn_in, seed=seed)


def load_angle_series(path: Union[str, Path], dimension: int = 1) -> SampleSet:
    """Plain-text angle sequence (one angle, or one angle pair, per line; '#' comments).

    Consecutive entries are paired as (point, image).
    """
    path = Path(path)
    try:
        series = np.loadtxt(path, comments='#', ndmin=1 if dimension == 1 else 2)
    except OSError as e:
        raise ConfigError(f"cannot read angle series {path}: {e}") from e
    except ValueError as e:
        raise ConfigError(f"malformed angle series {path}: {e}") from e
    if dimension == 2 and series.shape[-1] != 2:
        raise DimensionMismatchError(f"{path} holds {series.shape[-1]} columns, expected angle pairs")
    if len(series) < 2:
        raise ConfigError(f"angle series {path} needs at least two entries, got {len(series)}")
    series = np.asarray(wrap_angle(series), dtype=float)
    logger.info(f"Loaded {len(series)} angles from {path}")
    return SampleSet(series[:-1], series[1:], Provenance.TRAJECTORY, (len(series) - 1,),
                     map_name="external", source=str(path))


def check_node_count(dictionary: Dictionary, samples: SampleSet) -> Dict[str, bool]:
    """Flag node counts below the exactness thresholds of the grid rules.

    M >= N keeps H the index reversal; M >= 3N/2 keeps the doubling-map G exact.
    Per axis on the torus. Trajectories carry no such threshold.
    """
    if samples.provenance == Provenance.TRAJECTORY:
        return {'orthogonal': False, 'aliased': False}
    width = 2 * dictionary.nbar + 1
    smallest = min(samples.counts)
    flags = {'orthogonal': smallest >= width, 'aliased': 2 * smallest < 3 * width}
    if flags['aliased']:
        logger.warning(f"Node count {smallest} below 3N/2 for N={width}: quadrature aliasing expected")
    return flags

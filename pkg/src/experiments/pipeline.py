"""Steps shared by the experiment runners: samples from a config, EDMD spectrum of a sample set."""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from ..dynamics.maps import MapSpec
from ..edmd.gram import EdmdMatrices, assemble_edmd, build_gram_matrices
from ..observables import Dictionary, fourier_dictionary
from ..sampling import (SampleSet, check_node_count, equidistant_circle_nodes, load_angle_series,
                        torus_lattice_nodes, trajectory_nodes)
from ..spectral import Spectrum, eigendecompose
from ..utils.config import ExperimentConfig, SamplingConfig, SolverConfig

logger = logging.getLogger('experiments')


@dataclass
class EdmdRun:
    dictionary: Dictionary
    matrices: EdmdMatrices
    spectrum: Spectrum
    node_flags: Dict[str, bool]

    def metadata(self) -> Dict[str, Any]:
        return {'N': self.dictionary.size, 'nbar': self.dictionary.nbar, **self.matrices.metadata(),
                'node_flags': self.node_flags}


def config_echo(config: ExperimentConfig) -> Dict[str, Any]:
    return config.model_dump(mode='json')


def samples_from_config(map_spec: MapSpec, sampling: SamplingConfig) -> SampleSet:
    if sampling.mode == "grid":
        return equidistant_circle_nodes(map_spec, sampling.nodes)
    if sampling.mode == "lattice":
        return torus_lattice_nodes(map_spec, sampling.nodes, sampling.nodes2 or sampling.nodes)
    if sampling.series_file:
        return load_angle_series(sampling.series_file, map_spec.dimension)
    start = sampling.start
    if start is not None and map_spec.dimension == 2:
        start = np.asarray(start, dtype=float)
    return trajectory_nodes(map_spec, start=start, burn_in=sampling.burn_in, m=sampling.nodes,
                            seed=None if start is not None else sampling.seed)


def head(samples: SampleSet, count: int) -> SampleSet:
    """The first `count` (point, image) pairs of a trajectory sample set."""
    return SampleSet(samples.points[:count], samples.images[:count], samples.provenance, (count,),
                     samples.map_name, samples.start, samples.burn_in, samples.seed, samples.source)


def edmd_spectrum(dictionary: Dictionary, samples: SampleSet, solver: Optional[SolverConfig] = None) -> EdmdRun:
    solver = solver or SolverConfig()
    flags = check_node_count(dictionary, samples)
    G, H = build_gram_matrices(dictionary, samples, compensated=solver.compensated, chop_tolerance=solver.chop)
    matrices = assemble_edmd(G, H, solver.cutoff)
    spectrum = eigendecompose(matrices.A)
    logger.info(f"EDMD spectrum: N={dictionary.size}, {samples.size} samples, "
                f"leading |lambda|={abs(spectrum.eigenvalues[0]):.12g}")
    return EdmdRun(dictionary, matrices, spectrum, flags)


def dictionary_for(config: ExperimentConfig, nbar: Optional[int] = None) -> Dictionary:
    return fourier_dictionary(config.dictionary.nbar if nbar is None else nbar, config.map.dimension)

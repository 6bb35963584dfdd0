import logging

import numpy as np

from ..dynamics.blaschke import TWO_PI
from ..dynamics.maps import map_from_config
from ..oracle import catmap_exact_spectrum
from ..spectral import match_spectra
from ..utils.config import ExperimentConfig
from ..utils.errors import ConfigError, DimensionMismatchError
from .pipeline import config_echo, dictionary_for, edmd_spectrum, samples_from_config
from .reports import ExperimentReport
from .spectrum_experiment import match_summary

logger = logging.getLogger('experiments')


def _require_torus_map(config: ExperimentConfig):
    map_spec = map_from_config(config.map)
    if map_spec.dimension != 2:
        raise DimensionMismatchError(f"this experiment needs the torus map 'catmap', got '{map_spec.name}'")
    return map_spec


def run_catmap_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Tensor Fourier dictionary on the torus lattice, matched against {1} and the powers of -mu."""
    map_spec = _require_torus_map(config)
    samples = samples_from_config(map_spec, config.sampling)
    run = edmd_spectrum(dictionary_for(config), samples, config.solver)

    count = min(config.solver.eigen_count, run.dictionary.size)
    oracle = catmap_exact_spectrum(map_spec.params, count)
    match = match_spectra(run.spectrum, oracle, count)
    summary = match_summary(run.spectrum, match)
    logger.info(f"Cat map experiment '{config.name}': {run.dictionary.size} modes, "
                f"max error over {count} oracle values {match.max_error:.3e}")
    return ExperimentReport(
        kind="catmap",
        name=config.name,
        config=config_echo(config),
        spectrum=run.spectrum,
        oracle=oracle,
        match=match,
        metadata={'edmd': run.metadata(), 'samples': samples.metadata()},
        summary=summary,
    )


def run_density_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Histogram of a long torus-map trajectory on a bins x bins grid, normalised to a density."""
    map_spec = _require_torus_map(config)
    if config.sampling.mode != "trajectory":
        raise ConfigError("the density experiment needs trajectory sampling")
    samples = samples_from_config(map_spec, config.sampling)
    bins = config.output.density_bins
    counts, _, _ = np.histogram2d(samples.points[:, 0], samples.points[:, 1], bins=bins,
                                  range=[[0.0, TWO_PI], [0.0, TWO_PI]])
    cell = (TWO_PI / bins) ** 2
    density = counts / (samples.size * cell)
    logger.info(f"Density of {samples.size} trajectory points on a {bins}x{bins} grid")
    return ExperimentReport(
        kind="density",
        name=config.name,
        config=config_echo(config),
        metadata={'samples': samples.metadata(), 'bins': bins},
        summary={
            'samples': samples.size,
            'bins': bins,
            'occupied_cells': int(np.count_nonzero(counts)),
            'max_density': float(density.max()),
            'uniform_density': 1.0 / TWO_PI ** 2,
        },
        density=density,
    )

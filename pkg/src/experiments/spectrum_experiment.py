import logging
from typing import Any, Dict, List, Optional

import numpy as np

from ..dynamics.maps import map_from_config
from ..oracle import blaschke_exact_spectrum, blaschke_fixed_point
from ..spectral import Spectrum, SpectrumMatch, conjugate_symmetrize_report, flag_unstable, match_spectra
from ..utils.config import ExperimentConfig, SamplingConfig
from ..utils.errors import ConfigError, DimensionMismatchError
from .pipeline import config_echo, dictionary_for, edmd_spectrum, head, samples_from_config
from .reports import ExperimentReport

logger = logging.getLogger('experiments')

MATCH_TOLERANCE = 1e-2


def pair_errors(match: SpectrumMatch) -> List[float]:
    """Error of conjugate pair n (n = 1, 2, ...): the larger of oracle positions 2n - 1 and 2n."""
    errors = match.errors
    return [float(max(errors[i], errors[i + 1])) for i in range(1, len(errors) - 1, 2)]


def match_summary(spectrum: Spectrum, match: SpectrumMatch) -> Dict[str, Any]:
    pairs = pair_errors(match)
    return {
        'leading_error': float(match.errors[0]) if len(match.errors) else None,
        'pair_errors': pairs,
        'matched_within_tolerance': int(np.count_nonzero(match.errors <= MATCH_TOLERANCE)),
        'match_tolerance': MATCH_TOLERANCE,
        'conjugate_symmetry': conjugate_symmetrize_report(spectrum)['hausdorff_distance'],
    }


def _require_circle_map(config: ExperimentConfig):
    map_spec = map_from_config(config.map)
    if map_spec.dimension != 1:
        raise DimensionMismatchError(f"the spectrum experiment needs a circle map, got '{map_spec.name}'")
    return map_spec


def run_spectrum_experiment(config: ExperimentConfig) -> ExperimentReport:
    """EDMD spectrum of a Blaschke map against the multiplier-power spectrum.

    Eigenvalues that move by more than the stability threshold when the
    dictionary grows by two modes on each side are flagged unstable.
    """
    map_spec = _require_circle_map(config)
    samples = samples_from_config(map_spec, config.sampling)
    run = edmd_spectrum(dictionary_for(config), samples, config.solver)

    count = min(config.solver.eigen_count, run.dictionary.size)
    oracle = blaschke_exact_spectrum(map_spec.params, count)
    match = match_spectra(run.spectrum, oracle, count)

    refined = edmd_spectrum(dictionary_for(config, config.dictionary.nbar + 2), samples, config.solver)
    unstable = flag_unstable(run.spectrum, refined.spectrum, config.solver.stability_threshold)
    if np.any(unstable):
        logger.warning(f"{int(np.count_nonzero(unstable))} of {run.spectrum.size} eigenvalues are unstable "
                       f"between N={run.dictionary.size} and N={refined.dictionary.size}")

    summary = match_summary(run.spectrum, match)
    summary['stable_count'] = int(np.count_nonzero(~unstable))
    logger.info(f"Spectrum experiment '{config.name}': leading error {summary['leading_error']:.3e}, "
                f"{summary['stable_count']} stable eigenvalues")
    return ExperimentReport(
        kind="spectrum",
        name=config.name,
        config=config_echo(config),
        spectrum=run.spectrum,
        oracle=oracle,
        match=match,
        unstable=unstable,
        metadata={
            'edmd': run.metadata(),
            'samples': samples.metadata(),
            'fixed_point': blaschke_fixed_point(map_spec.params).to_dict(),
            'stability_reference_N': refined.dictionary.size,
        },
        summary=summary,
    )


def _first_pair_error(match: SpectrumMatch) -> float:
    pairs = pair_errors(match)
    return pairs[0] if pairs else float(match.errors[0])


def _trajectory_seeds(sampling: SamplingConfig) -> List[Optional[int]]:
    if sampling.start is not None or sampling.series_file:
        return [None]
    return [seed for seed in dict.fromkeys([sampling.seed, *sampling.replicate_seeds]) if seed is not None]


def run_timeseries_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Trajectory-sampled spectrum at M samples and at the first M/2 of them, for every seed.

    The first-pair error is statistical, so the summary compares medians over
    the seeds; the eigenvalues reported are those of the first seed.
    """
    map_spec = _require_circle_map(config)
    if config.sampling.mode != "trajectory":
        raise ConfigError("the time-series experiment needs trajectory sampling")
    dictionary = dictionary_for(config)
    count = min(config.solver.eigen_count, dictionary.size)
    oracle = blaschke_exact_spectrum(map_spec.params, count)

    seeds = _trajectory_seeds(config.sampling)
    runs = []
    for seed in seeds:
        samples = samples_from_config(map_spec, config.sampling.model_copy(update={'seed': seed}))
        half = head(samples, samples.size // 2)
        full_run = edmd_spectrum(dictionary, samples, config.solver)
        half_run = edmd_spectrum(dictionary, half, config.solver)
        runs.append((samples, half, full_run, match_spectra(full_run.spectrum, oracle, count),
                     match_spectra(half_run.spectrum, oracle, count)))

    samples, half, first_run, first_match, first_half_match = runs[0]
    full_errors = [_first_pair_error(run[3]) for run in runs]
    half_errors = [_first_pair_error(run[4]) for run in runs]
    median_full, median_half = float(np.median(full_errors)), float(np.median(half_errors))

    summary = match_summary(first_run.spectrum, first_match)
    summary.update({
        'samples': samples.size,
        'half_samples': half.size,
        'seeds': seeds,
        'half_leading_error': float(first_half_match.errors[0]),
        'half_pair_errors': pair_errors(first_half_match),
        'median_leading_error': float(np.median([run[3].errors[0] for run in runs])),
        'first_pair_errors': full_errors,
        'half_first_pair_errors': half_errors,
        'median_first_pair_error': median_full,
        'half_median_first_pair_error': median_half,
        'halving_improves_first_pair': bool(median_half < median_full),
    })
    logger.info(f"Time-series experiment over {len(seeds)} seeds: median first-pair error "
                f"{median_full:.3e} at M={samples.size}, {median_half:.3e} at M={half.size}")
    return ExperimentReport(
        kind="timeseries",
        name=config.name,
        config=config_echo(config),
        spectrum=first_run.spectrum,
        oracle=oracle,
        match=first_match,
        metadata={'edmd': first_run.metadata(), 'samples': samples.metadata()},
        summary=summary,
    )

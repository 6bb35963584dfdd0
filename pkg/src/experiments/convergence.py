"""Eigenvalue error against the dictionary size N, with a log-linear decay fit per conjugate pair."""
import logging
from typing import List, Optional, Sequence

import numpy as np

from ..dynamics.maps import map_from_config
from ..observables import fourier_dictionary
from ..oracle import blaschke_exact_spectrum
from ..spectral import match_spectra
from ..utils.config import ExperimentConfig
from ..utils.errors import DimensionMismatchError
from .pipeline import config_echo, edmd_spectrum, samples_from_config
from .reports import ConvergenceReport, DecayFit
from .spectrum_experiment import pair_errors

logger = logging.getLogger('experiments')


def fit_decay_rate(n_values: Sequence[int], errors: Sequence[float], noise_floor: float = 1e-13,
                   pair: int = 1) -> DecayFit:
    """Least-squares fit of log10(error) against N over the errors above the noise floor.

    Fewer than two usable points gives a fit marked not applicable.
    """
    n_values = np.asarray(n_values, dtype=float)
    errors = np.asarray(errors, dtype=float)
    usable = np.isfinite(errors) & (errors > noise_floor)
    points = int(np.count_nonzero(usable))
    if points < 2:
        return DecayFit(pair, None, None, None, points)
    x, y = n_values[usable], np.log10(errors[usable])
    slope, intercept = np.polyfit(x, y, 1)
    r_squared = float(np.corrcoef(x, y)[0, 1] ** 2) if points > 2 else 1.0
    return DecayFit(pair, float(slope), float(intercept), r_squared, points)


def non_increasing_above_floor(errors: Sequence[float], noise_floor: float = 1e-13) -> bool:
    """True when no error grows between consecutive N while both sit above the noise floor."""
    errors = np.asarray(errors, dtype=float)
    above = np.isfinite(errors) & (errors > noise_floor)
    steps = above[:-1] & above[1:]
    return bool(np.all(errors[1:][steps] <= errors[:-1][steps]))


def run_convergence_sweep(config: ExperimentConfig, n_list: Optional[List[int]] = None) -> ConvergenceReport:
    """Errors of the first `sweep.pairs` subleading conjugate pairs for each N on fixed samples.

    Pairs the dictionary cannot hold at a given N are recorded as NaN.
    """
    map_spec = map_from_config(config.map)
    if map_spec.dimension != 1:
        raise DimensionMismatchError(f"the convergence sweep needs a circle map, got '{map_spec.name}'")
    n_list = list(n_list or config.sweep.n_list)
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError(f"N values must be strictly increasing, got {n_list}")
    pairs = config.sweep.pairs
    samples = samples_from_config(map_spec, config.sampling)
    oracle = blaschke_exact_spectrum(map_spec.params, 1 + 2 * pairs)

    errors = np.full((len(n_list), pairs), np.nan)
    for i, n in enumerate(n_list):
        if n < 1 or n % 2 == 0:
            raise ValueError(f"N must be a positive odd number, got {n}")
        run = edmd_spectrum(fourier_dictionary((n - 1) // 2), samples, config.solver)
        count = min(oracle.size, run.spectrum.size)
        row = pair_errors(match_spectra(run.spectrum, oracle, count))
        errors[i, :len(row)] = row
        logger.info(f"N={n}: pair errors {', '.join(f'{e:.3e}' for e in row)}")

    fits = [fit_decay_rate(n_list, errors[:, j], config.sweep.noise_floor, pair=j + 1) for j in range(pairs)]
    slopes = [fit.slope for fit in fits]
    monotone = [non_increasing_above_floor(errors[:, j], config.sweep.noise_floor) for j in range(pairs)]
    if not all(monotone):
        logger.warning(f"Pair errors grow with N for pairs "
                       f"{[j + 1 for j, ok in enumerate(monotone) if not ok]}")
    return ConvergenceReport(
        kind="converge",
        name=config.name,
        n_values=n_list,
        errors=errors,
        fits=fits,
        config=config_echo(config),
        metadata={'samples': samples.metadata(), 'oracle': oracle.as_pairs()},
        summary={
            'slopes': slopes,
            'all_slopes_negative': all(s is not None and s < 0 for s in slopes),
            'non_increasing': monotone,
            'noise_floor': config.sweep.noise_floor,
        },
    )

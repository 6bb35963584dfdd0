import logging
from typing import Any, Callable, Dict, Optional, Union

from ..utils.config import EXPERIMENT_KINDS, ExperimentConfig, build_experiment_config
from ..utils.errors import ConfigError
from .bernoulli_check import run_bernoulli_check
from .catmap_experiment import run_catmap_experiment, run_density_experiment
from .convergence import run_convergence_sweep
from .reports import ConvergenceReport, ExperimentReport
from .spectrum_experiment import run_spectrum_experiment, run_timeseries_experiment

logger = logging.getLogger('experiments')

Report = Union[ExperimentReport, ConvergenceReport]

RUNNERS: Dict[str, Callable[[ExperimentConfig], Report]] = {
    "bernoulli-check": lambda config: run_bernoulli_check(config.dictionary.nbar, config.sampling.nodes, config),
    "spectrum": run_spectrum_experiment,
    "converge": run_convergence_sweep,
    "timeseries": run_timeseries_experiment,
    "catmap": run_catmap_experiment,
    "density": run_density_experiment,
}


def run_experiment(kind: str, config: Optional[ExperimentConfig] = None,
                   overrides: Optional[Dict[str, Any]] = None) -> Report:
    """Run one experiment kind on a validated config (the kind's preset plus overrides when omitted)."""
    if kind not in RUNNERS:
        raise ConfigError(f"unknown experiment kind '{kind}' (expected one of {', '.join(EXPERIMENT_KINDS)})")
    if config is None:
        config = build_experiment_config(kind, overrides=overrides)
    logger.info(f"Running {kind} experiment '{config.name}'")
    return RUNNERS[kind](config)

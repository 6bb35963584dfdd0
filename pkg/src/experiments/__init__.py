from .reports import ExperimentReport, ConvergenceReport, DecayFit
from .bernoulli_check import run_bernoulli_check
from .spectrum_experiment import run_spectrum_experiment, run_timeseries_experiment
from .convergence import run_convergence_sweep, fit_decay_rate, non_increasing_above_floor
from .catmap_experiment import run_catmap_experiment, run_density_experiment
from .outputs import emit_outputs
from .runner import run_experiment, RUNNERS

__all__ = ['ExperimentReport', 'ConvergenceReport', 'DecayFit', 'run_bernoulli_check', 'run_spectrum_experiment',
           'run_timeseries_experiment', 'run_convergence_sweep', 'fit_decay_rate', 'non_increasing_above_floor',
           'run_catmap_experiment', 'run_density_experiment', 'emit_outputs', 'run_experiment', 'RUNNERS']

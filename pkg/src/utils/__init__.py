from .config import settings, ExperimentConfig, load_experiment_config, build_experiment_config
from .logging_config import setup_logging
from .errors import EdmdError, ConfigError

__all__ = ['settings', 'ExperimentConfig', 'load_experiment_config', 'build_experiment_config',
           'setup_logging', 'EdmdError', 'ConfigError']

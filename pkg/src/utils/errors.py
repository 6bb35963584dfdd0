"""Exception hierarchy shared by the library, the CLI and the service."""

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


class EdmdError(Exception):
    """Base class for every error raised by this package."""

    exit_code = EXIT_NUMERICAL


class ConfigError(EdmdError, ValueError):
    """Invalid experiment configuration (unknown key, missing field, range)."""

    exit_code = EXIT_CONFIG


class DomainError(EdmdError, ValueError):
    """Map parameters or evaluation points outside the admissible domain."""

    exit_code = EXIT_CONFIG


class DimensionMismatchError(EdmdError, ValueError):
    exit_code = EXIT_CONFIG


class DegenerateBranchError(EdmdError):
    """The two inverse branches coincide (critical point on the circle)."""


class SingularGramError(EdmdError):
    """Every singular value of H fell below the cutoff."""


class SingularDataError(EdmdError):
    """The data matrix X has numerical rank zero."""


class ConvergenceFailureError(EdmdError):
    """The eigensolver failed or violated the residual contract."""

    def __init__(self, message: str, index: int = -1):
        super().__init__(message)
        self.index = index


class NoInteriorFixedPointError(EdmdError):
    """The Blaschke product has no unique attracting fixed point in the disk."""


class OutputError(EdmdError):
    exit_code = EXIT_IO

    def __init__(self, message: str, path=None):
        super().__init__(f"{message} ({path})" if path is not None else message)
        self.path = path

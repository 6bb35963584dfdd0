import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import scipy.linalg

from .utils.errors import ConvergenceFailureError, DomainError

logger = logging.getLogger('spectral')

RESIDUAL_TOLERANCE = 1e-8
ORDER_DECIMALS = 10
ORDERING = "modulus-desc"


@dataclass
class Spectrum:
    """Eigenvalues in canonical order, with optional right eigenvectors (columns) and residuals."""
    eigenvalues: np.ndarray
    eigenvectors: Optional[np.ndarray] = field(default=None, repr=False)
    residuals: Optional[np.ndarray] = field(default=None, repr=False)
    ordering: str = ORDERING
    source: str = "computed"

    @property
    def size(self) -> int:
        return len(self.eigenvalues)

    def as_pairs(self) -> List[List[float]]:
        return [[float(z.real), float(z.imag)] for z in self.eigenvalues]


@dataclass
class SpectrumMatch:
    """Greedy matching of the leading oracle eigenvalues into the computed multiset."""
    oracle: np.ndarray
    computed: np.ndarray
    errors: np.ndarray
    computed_indices: List[int]
    unmatched_indices: List[int]

    @property
    def max_error(self) -> float:
        return float(np.max(self.errors)) if len(self.errors) else 0.0

    def rows(self) -> List[Dict[str, Any]]:
        return [
            {
                'index': i,
                'oracle': [float(o.real), float(o.imag)],
                'computed': [float(c.real), float(c.imag)],
                'error': float(e),
            }
            for i, (o, c, e) in enumerate(zip(self.oracle, self.computed, self.errors))
        ]


def order_indices(eigenvalues: np.ndarray) -> List[int]:
    """Descending modulus; ties by ascending |arg|, then positive imaginary part first.

    Moduli and arguments are compared after rounding to ORDER_DECIMALS so that
    conjugate pairs tie.
    """
    values = np.asarray(eigenvalues, dtype=complex)
    moduli = np.round(np.abs(values), ORDER_DECIMALS)
    args = np.round(np.abs(np.angle(values)), ORDER_DECIMALS)
    return sorted(range(len(values)), key=lambda i: (-moduli[i], args[i], values[i].imag <= 0, i))


def order_eigenvalues(eigenvalues) -> np.ndarray:
    values = np.asarray(eigenvalues, dtype=complex)
    return values[order_indices(values)]


def make_spectrum(eigenvalues, source: str = "oracle") -> Spectrum:
    return Spectrum(order_eigenvalues(eigenvalues), source=source)


def eigendecompose(matrix: np.ndarray, residual_tolerance: float = RESIDUAL_TOLERANCE) -> Spectrum:
    """All eigenpairs of a dense complex matrix, ordered, with relative residuals
    ||A v - lambda v|| / ||A||_F checked after the solve."""
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DomainError(f"eigendecompose needs a square matrix, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise DomainError("matrix has non-finite entries")
    if matrix.size == 0:
        return Spectrum(np.zeros(0, dtype=complex), np.zeros((0, 0), dtype=complex), np.zeros(0))

    try:
        eigenvalues, eigenvectors = scipy.linalg.eig(matrix)
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError) as e:
        raise ConvergenceFailureError(f"eigensolver did not converge: {e}") from e

    scale = np.linalg.norm(matrix, 'fro') or 1.0
    residuals = np.linalg.norm(matrix @ eigenvectors - eigenvectors * eigenvalues[None, :], axis=0) / scale
    worst = int(np.argmax(residuals))
    if residuals[worst] > residual_tolerance:
        raise ConvergenceFailureError(
            f"eigenpair {worst} (lambda={eigenvalues[worst]:.6g}) has residual {residuals[worst]:.3e} "
            f"> {residual_tolerance:g}", index=worst
        )

    order = order_indices(eigenvalues)
    return Spectrum(eigenvalues[order], eigenvectors[:, order], residuals[order])


def match_spectra(computed: Spectrum, oracle: Spectrum, p: int) -> SpectrumMatch:
    """Oracle values in their canonical order each take the nearest unmatched computed value."""
    if p > min(computed.size, oracle.size):
        raise ValueError(f"cannot match {p} eigenvalues between spectra of sizes {computed.size} and {oracle.size}")
    available = np.ones(computed.size, dtype=bool)
    chosen: List[int] = []
    for target in oracle.eigenvalues[:p]:
        distances = np.where(available, np.abs(computed.eigenvalues - target), np.inf)
        index = int(np.argmin(distances))
        available[index] = False
        chosen.append(index)
    matched = computed.eigenvalues[chosen] if chosen else np.zeros(0, dtype=complex)
    errors = np.abs(oracle.eigenvalues[:p] - matched)
    unmatched = [int(i) for i in np.flatnonzero(available)]
    return SpectrumMatch(oracle.eigenvalues[:p].copy(), matched, errors, chosen, unmatched)


def spectral_distance(first: Spectrum, second: Spectrum) -> float:
    """Largest greedy-matching error between two spectra of equal size."""
    if first.size != second.size:
        raise ValueError(f"spectra differ in size: {first.size} vs {second.size}")
    return match_spectra(first, second, first.size).max_error


def conjugate_symmetrize_report(spectrum: Spectrum) -> Dict[str, Any]:
    """Hausdorff distance between the eigenvalue set and its complex conjugate."""
    values = spectrum.eigenvalues
    if len(values) == 0:
        return {'hausdorff_distance': 0.0, 'size': 0}
    distances = np.abs(values[:, None] - np.conj(values)[None, :])
    hausdorff = max(float(np.max(np.min(distances, axis=1))), float(np.max(np.min(distances, axis=0))))
    return {'hausdorff_distance': hausdorff, 'size': int(len(values))}


def flag_unstable(current: Spectrum, refined: Spectrum, threshold: float = 1e-2) -> np.ndarray:
    """True where an eigenvalue moves by more than `threshold` when the dictionary grows (N -> N + 4).

    A heuristic for spurious eigenvalues; stable values are taken as converged.
    """
    if current.size == 0:
        return np.zeros(0, dtype=bool)
    if refined.size == 0:
        return np.ones(current.size, dtype=bool)
    nearest = np.min(np.abs(current.eigenvalues[:, None] - refined.eigenvalues[None, :]), axis=1)
    flags = nearest > threshold
    logger.info(f"{int(np.count_nonzero(~flags))} of {current.size} eigenvalues stable within {threshold:g}")
    return flags

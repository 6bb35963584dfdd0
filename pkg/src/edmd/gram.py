"""EDMD matrices G, H and A = G H^+ from sampled observables.

G[k, l] = 1/M sum_m psi_k(tau(z_m)) psi_l(z_m)
H[k, l] = 1/M sum_m psi_k(z_m) psi_l(z_m)

Both sums run without complex conjugation; the symmetric Fourier dictionary
supplies conjugation closure, which makes G H^+ equal to the least-squares
solution Y X^+.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..observables import Dictionary, evaluate_dictionary
from ..sampling import SampleSet
from ..utils.config import settings
from ..utils.errors import DimensionMismatchError, SingularDataError, SingularGramError

logger = logging.getLogger('edmd')

REVERSAL_TOLERANCE = 1e-12


@dataclass
class EdmdMatrices:
    G: np.ndarray
    H: np.ndarray
    A: np.ndarray
    cutoff: float
    truncated: int
    rank: int
    condition: float
    reversal_shortcut: bool = False

    def metadata(self) -> Dict[str, Any]:
        return {
            'size': int(self.A.shape[0]),
            'cutoff': self.cutoff,
            'truncated_singular_values': self.truncated,
            'rank': self.rank,
            'condition_estimate': self.condition,
            'reversal_shortcut': self.reversal_shortcut,
        }


def _neumaier_add(total: np.ndarray, correction: np.ndarray, term: np.ndarray) -> None:
    updated = total + term
    correction += np.where(np.abs(total) >= np.abs(term), (total - updated) + term, (term - updated) + total)
    total[...] = updated


def node_sum(left: np.ndarray, right: np.ndarray, compensated: bool = False) -> np.ndarray:
    """1/M sum_m left[:, m] right[:, m]^T, accumulated in ascending m.

    The per-entry order is fixed, so the result does not depend on how the
    entries are scheduled. `compensated` switches to Neumaier summation.
    """
    if left.shape[1] != right.shape[1]:
        raise DimensionMismatchError(f"sample counts differ: {left.shape[1]} vs {right.shape[1]}")
    m = left.shape[1]
    total = np.zeros((left.shape[0], right.shape[0]), dtype=complex)
    correction = np.zeros_like(total) if compensated else None
    for j in range(m):
        term = np.multiply.outer(left[:, j], right[:, j])
        if compensated:
            _neumaier_add(total.real, correction.real, term.real)
            _neumaier_add(total.imag, correction.imag, term.imag)
        else:
            total += term
    if compensated:
        total += correction
    return total / m


def chop(matrix: np.ndarray, tolerance: float) -> np.ndarray:
    """Zero real and imaginary parts below tolerance * max|entry|."""
    if tolerance <= 0.0 or matrix.size == 0:
        return matrix
    threshold = tolerance * float(np.max(np.abs(matrix)))
    real = np.where(np.abs(matrix.real) <= threshold, 0.0, matrix.real)
    imag = np.where(np.abs(matrix.imag) <= threshold, 0.0, matrix.imag)
    return real + 1j * imag


def _check_dimensions(dictionary: Dictionary, samples: SampleSet) -> None:
    if dictionary.dimension != samples.dimension:
        raise DimensionMismatchError(
            f"{dictionary.dimension}D dictionary with {samples.dimension}D samples ({samples.provenance.value})"
        )


def build_gram_matrices(dictionary: Dictionary, samples: SampleSet, compensated: bool = False,
                        chop_tolerance: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    _check_dimensions(dictionary, samples)
    tol = settings.chop_tolerance if chop_tolerance is None else chop_tolerance
    X = evaluate_dictionary(dictionary, samples.points)
    Y = evaluate_dictionary(dictionary, samples.images)
    G = chop(node_sum(Y, X, compensated), tol)
    H = chop(node_sum(X, X, compensated), tol)
    logger.info(f"Built {dictionary.size}x{dictionary.size} Gram matrices from {samples.size} "
                f"{samples.provenance.value} samples")
    return G, H


def _pseudoinverse(matrix: np.ndarray, cutoff: float, error_cls, label: str):
    u, s, vh = np.linalg.svd(matrix, full_matrices=False)
    if s.size == 0 or not np.isfinite(s[0]) or s[0] == 0.0:
        raise error_cls(f"{label} has numerical rank 0")
    keep = s > cutoff * s[0]
    truncated = int(s.size - np.count_nonzero(keep))
    if truncated:
        logger.warning(f"Pseudoinverse of {label} truncated {truncated} of {s.size} singular values "
                       f"(cutoff {cutoff:g} x {s[0]:.3e})")
    pinv = (vh[keep].conj().T / s[keep]) @ u[:, keep].conj().T
    condition = float(s[0] / s[keep][-1])
    return pinv, truncated, int(np.count_nonzero(keep)), condition


def assemble_edmd(G: np.ndarray, H: np.ndarray, cutoff: Optional[float] = None) -> EdmdMatrices:
    """A = G pinv(H) with a relative singular-value cutoff.

    When H is the index reversal R (equidistant nodes, M >= N), A = G R exactly.
    """
    cutoff = settings.pinv_cutoff if cutoff is None else cutoff
    if G.shape != H.shape or G.shape[0] != G.shape[1]:
        raise DimensionMismatchError(f"G {G.shape} and H {H.shape} must be equal square matrices")
    n = H.shape[0]
    reversal = np.eye(n)[::-1]
    if n and np.max(np.abs(H - reversal)) <= REVERSAL_TOLERANCE:
        return EdmdMatrices(G, H, G[:, ::-1].copy(), cutoff, 0, n, 1.0, reversal_shortcut=True)

    pinv, truncated, rank, condition = _pseudoinverse(H, cutoff, SingularGramError, "H")
    return EdmdMatrices(G, H, G @ pinv, cutoff, truncated, rank, condition)


def least_squares_edmd(X: np.ndarray, Y: np.ndarray, cutoff: Optional[float] = None) -> np.ndarray:
    """A = Y X^+ from an SVD of X; minimises ||A X - Y||_F."""
    cutoff = settings.pinv_cutoff if cutoff is None else cutoff
    if X.shape != Y.shape:
        raise DimensionMismatchError(f"X {X.shape} and Y {Y.shape} must have the same shape")
    pinv, _, _, _ = _pseudoinverse(X, cutoff, SingularDataError, "X")
    return Y @ pinv

"""Fourier observable dictionaries psi_k(z) = z^k on the circle and the torus."""
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .utils.errors import DimensionMismatchError


@dataclass(frozen=True)
class Dictionary:
    """Symmetric Fourier index set.

    1D modes are k = -nbar..nbar ascending; 2D modes are (k1, k2) in row-major
    order over the same range. In both cases the mode at position i is the
    negation of the mode at position N - 1 - i.
    """
    nbar: int
    dimension: int
    modes: np.ndarray = field(repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.modes)

    @property
    def zero_index(self) -> int:
        return self.size // 2

    def index_of(self, mode) -> int:
        """Row position of mode k (1D) or (k1, k2) (2D)."""
        if self.dimension == 1:
            k = int(mode)
            if abs(k) > self.nbar:
                raise KeyError(f"mode {k} outside |k| <= {self.nbar}")
            return k + self.nbar
        k1, k2 = (int(x) for x in mode)
        if max(abs(k1), abs(k2)) > self.nbar:
            raise KeyError(f"mode {(k1, k2)} outside the {2 * self.nbar + 1}^2 grid")
        width = 2 * self.nbar + 1
        return (k1 + self.nbar) * width + (k2 + self.nbar)

    def reversal(self) -> np.ndarray:
        """Permutation matrix R with R[i, j] = 1 iff mode_j = -mode_i."""
        return np.eye(self.size)[::-1].copy()


def fourier_dictionary(nbar: int, dimension: int = 1) -> Dictionary:
    if nbar < 0:
        raise ValueError(f"nbar must be >= 0, got {nbar}")
    if dimension not in (1, 2):
        raise DimensionMismatchError(f"Fourier dictionaries exist in dimension 1 or 2, got {dimension}")
    ks = range(-nbar, nbar + 1)
    if dimension == 1:
        modes = np.arange(-nbar, nbar + 1)
    else:
        modes = np.array(list(product(ks, ks)), dtype=int)
    modes.setflags(write=False)
    return Dictionary(nbar=nbar, dimension=dimension, modes=modes)


def evaluate_dictionary(dictionary: Dictionary, points) -> np.ndarray:
    """Data matrix X with X[k, m] = exp(i k . phi_m); rows are modes, columns samples.

    `points` is a SampleSet (its nodes are used), a single angle or an array of
    angles of shape (M,) in 1D or (M, 2) in 2D. Rows of opposite modes are exact conjugates.
    """
    phi = np.asarray(getattr(points, 'points', points), dtype=float)
    if dictionary.dimension == 1:
        phi = np.atleast_1d(phi)
    point_dim = 1 if phi.ndim == 1 else phi.shape[-1]
    if point_dim != dictionary.dimension or phi.ndim > 2:
        raise DimensionMismatchError(
            f"{dictionary.dimension}D dictionary cannot be evaluated on points of shape {phi.shape}"
        )

    if dictionary.dimension == 1:
        phases = phi[:, None] * dictionary.modes[None, :]
    else:
        phases = phi[:, 0, None] * dictionary.modes[None, :, 0] + phi[:, 1, None] * dictionary.modes[None, :, 1]

    # (M, N) in C order, so the (N, M) view below has contiguous sample columns
    data = np.exp(1j * phases).T
    half = dictionary.zero_index
    data[:half] = np.conj(data[::-1][:half])
    return data

"""Analytic deformation of the cat map on the two-torus."""
from dataclasses import dataclass

import numpy as np

from ..utils.errors import DomainError
from .blaschke import wrap_angle


@dataclass(frozen=True)
class TorusMapParams:
    mu: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, 'mu', complex(self.mu))
        if not np.isfinite(self.mu) or abs(self.mu) >= 1.0:
            raise DomainError(f"torus map parameter mu={self.mu} must satisfy |mu| < 1")

    @property
    def is_linear(self) -> bool:
        return self.mu == 0


def _deformation(params: TorusMapParams, phi1, phi2):
    radius, alpha = abs(params.mu), float(np.angle(params.mu))
    s = phi1 + phi2 - alpha
    return 2.0 * np.arctan2(radius * np.sin(s), 1.0 - radius * np.cos(s))


def torus_map(params: TorusMapParams, phi):
    """(phi1, phi2) -> (2 phi1 + phi2 + d, phi1 + phi2 + d) mod 2*pi.

    d is the shared arctan deformation of phi1 + phi2 - alpha; mu = 0 gives the
    linear cat map. Accepts a pair or an array of shape (M, 2).
    """
    phi = np.asarray(phi, dtype=float)
    phi1, phi2 = phi[..., 0], phi[..., 1]
    d = _deformation(params, phi1, phi2)
    image = np.stack((2.0 * phi1 + phi2 + d, phi1 + phi2 + d), axis=-1)
    image = np.asarray(wrap_angle(image))
    return tuple(float(x) for x in image) if image.ndim == 1 else image

"""Degree-two Blaschke products on the unit circle.

tau(z) = (z - mu)/(1 - conj(mu) z) * (z - rho)/(1 - conj(rho) z),  |mu|, |rho| < 1.

On |z| = 1 the map preserves the circle and induces a two-branch analytic
interval map in the angle coordinate. mu = rho = 0 is the Bernoulli doubling map.
"""
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from ..utils.errors import DegenerateBranchError, DomainError

TWO_PI = 2.0 * np.pi
POLE_TOLERANCE = 1e-12
CIRCLE_TOLERANCE = 1e-10
BRANCH_SEPARATION = 1e-12

ArrayLike = Union[complex, float, np.ndarray]


def wrap_angle(phi):
    """Reduce angles into [0, 2*pi)."""
    wrapped = np.mod(phi, TWO_PI)
    # np.mod can round tiny negatives up to exactly 2*pi
    wrapped = np.where(wrapped >= TWO_PI, 0.0, wrapped)
    return float(wrapped) if np.ndim(wrapped) == 0 else wrapped


def principal_arg(z) -> np.ndarray:
    """Argument in (-pi, pi]; -pi (from a signed zero imaginary part) is mapped to pi."""
    arg = np.angle(z)
    return np.where(arg <= -np.pi, np.pi, arg)


@dataclass(frozen=True)
class BlaschkeParams:
    mu: complex = 0j
    rho: complex = 0j

    def __post_init__(self):
        object.__setattr__(self, 'mu', complex(self.mu))
        object.__setattr__(self, 'rho', complex(self.rho))
        for name, value in (('mu', self.mu), ('rho', self.rho)):
            if not np.isfinite(value) or abs(value) >= 1.0:
                raise DomainError(f"Blaschke parameter {name}={value} must satisfy |{name}| < 1")

    @classmethod
    def bernoulli(cls) -> 'BlaschkeParams':
        return cls(0j, 0j)

    @property
    def is_bernoulli(self) -> bool:
        return self.mu == 0 and self.rho == 0

    @property
    def polar(self) -> Tuple[float, float, float, float]:
        """(|mu|, alpha, |rho|, beta) with mu = |mu| e^{i alpha}, rho = |rho| e^{i beta}."""
        return abs(self.mu), float(np.angle(self.mu)), abs(self.rho), float(np.angle(self.rho))


def _denominators(params: BlaschkeParams, z):
    z = np.asarray(z, dtype=complex)
    d_mu = 1.0 - np.conj(params.mu) * z
    d_rho = 1.0 - np.conj(params.rho) * z
    closest = float(np.min(np.minimum(np.abs(d_mu), np.abs(d_rho)))) if z.size else np.inf
    if closest < POLE_TOLERANCE:
        raise DomainError(
            f"evaluation point within {closest:.3e} of a pole of tau "
            f"(poles at 1/conj(mu) and 1/conj(rho) for mu={params.mu}, rho={params.rho})"
        )
    return z, d_mu, d_rho


def _unwrap(value, like):
    return complex(value) if np.ndim(like) == 0 else value


def blaschke_eval(params: BlaschkeParams, z: ArrayLike):
    """tau(z); accepts scalars or arrays."""
    zz, d_mu, d_rho = _denominators(params, z)
    value = (zz - params.mu) / d_mu * ((zz - params.rho) / d_rho)
    return _unwrap(value, z)


def blaschke_derivative(params: BlaschkeParams, z: ArrayLike):
    """tau'(z) from the product rule on the two Moebius factors."""
    zz, d_mu, d_rho = _denominators(params, z)
    f_mu = (zz - params.mu) / d_mu
    f_rho = (zz - params.rho) / d_rho
    df_mu = (1.0 - abs(params.mu) ** 2) / d_mu ** 2
    df_rho = (1.0 - abs(params.rho) ** 2) / d_rho ** 2
    return _unwrap(df_mu * f_rho + f_mu * df_rho, z)


def _angle_correction(radius: float, phase: float, phi):
    # arg of 1 - radius e^{i(phase - phi)}, doubled
    return 2.0 * np.arctan2(radius * np.sin(phi - phase), 1.0 - radius * np.cos(phi - phase))


def angle_map(params: BlaschkeParams, phi):
    """Induced interval map on [0, 2*pi): 2 phi plus two arctan corrections, mod 2*pi."""
    r_mu, alpha, r_rho, beta = params.polar
    phi = np.asarray(phi, dtype=float)
    image = 2.0 * phi + _angle_correction(r_mu, alpha, phi) + _angle_correction(r_rho, beta, phi)
    result = wrap_angle(image)
    return float(result) if np.ndim(result) == 0 else result


def inverse_branches(params: BlaschkeParams, w: complex) -> Tuple[complex, complex]:
    """The two preimages of w on the unit circle, ordered by ascending principal argument.

    tau(z) = w  <=>  (1 - w conj(mu) conj(rho)) z^2 + (w (conj(mu) + conj(rho)) - (mu + rho)) z
                     + (mu rho - w) = 0
    """
    w = complex(w)
    if abs(abs(w) - 1.0) > CIRCLE_TOLERANCE:
        raise DomainError(f"inverse branches are defined on the unit circle, got |w|={abs(w)}")
    mu, rho = params.mu, params.rho
    a = 1.0 - w * np.conj(mu) * np.conj(rho)
    b = w * (np.conj(mu) + np.conj(rho)) - (mu + rho)
    c = mu * rho - w

    root = np.sqrt(b * b - 4.0 * a * c)
    # pick the sign that avoids cancellation in b + root
    if (np.conj(b) * root).real < 0.0:
        root = -root
    q = -0.5 * (b + root)
    if abs(q) == 0.0:
        raise DegenerateBranchError(f"inverse branches of w={w} coincide at z=0")
    z1 = complex(q / a)
    z2 = complex(c / q)
    if abs(z1 - z2) < BRANCH_SEPARATION:
        raise DegenerateBranchError(
            f"inverse branches of w={w} coincide (|z1 - z2|={abs(z1 - z2):.2e}); "
            f"the map is not expanding for mu={mu}, rho={rho}"
        )
    return tuple(sorted((z1, z2), key=lambda z: float(principal_arg(z))))


def inverse_branches_on_grid(params: BlaschkeParams, w: np.ndarray) -> np.ndarray:
    """Vectorised inverse_branches; returns shape (2, len(w))."""
    return np.array([inverse_branches(params, value) for value in np.asarray(w, dtype=complex)]).T

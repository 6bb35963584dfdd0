"""Closed-form reference spectra and matrices.

For an eventually expanding Blaschke product the transfer-operator spectrum is
{1} together with the powers of the multiplier tau'(z*) at the attracting
interior fixed point and their conjugates. The deformed cat map has the same
structure with multiplier -mu.
"""
import logging
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from .dynamics.blaschke import BlaschkeParams, blaschke_derivative, blaschke_eval
from .dynamics.torus import TorusMapParams
from .spectral import Spectrum, make_spectrum
from .utils.config import settings
from .utils.errors import NoInteriorFixedPointError

logger = logging.getLogger('oracle')

INTERIOR_MARGIN = 1e-8
RESIDUAL_TOLERANCE = 1e-12
AGREEMENT_TOLERANCE = 1e-10
MAX_ITERATIONS = 100000


@dataclass
class FixedPointData:
    z_star: complex
    multiplier: complex
    residual: float
    iterated: complex
    iterations: int

    @property
    def agreement(self) -> float:
        return abs(self.z_star - self.iterated)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'z_star': [self.z_star.real, self.z_star.imag],
            'multiplier': [self.multiplier.real, self.multiplier.imag],
            'residual': self.residual,
            'iterations': self.iterations,
            'solver_agreement': self.agreement,
        }


@dataclass
class BernoulliMatrices:
    G: np.ndarray
    H: np.ndarray
    A: np.ndarray
    aliased: bool


def fixed_point_polynomial(params: BlaschkeParams) -> np.ndarray:
    """Coefficients (highest degree first) of z(1 - conj(mu) z)(1 - conj(rho) z) - (z - mu)(z - rho)."""
    mu, rho = params.mu, params.rho
    mu_c, rho_c = np.conj(mu), np.conj(rho)
    return np.array([mu_c * rho_c, -(mu_c + rho_c + 1.0), 1.0 + mu + rho, -mu * rho], dtype=complex)


def _fixed_point_roots(params: BlaschkeParams) -> np.ndarray:
    coefficients = fixed_point_polynomial(params)
    # a negligible leading coefficient sends one root to infinity; drop it
    scale = float(np.max(np.abs(coefficients)))
    while len(coefficients) > 1 and abs(coefficients[0]) <= np.finfo(float).eps * scale:
        coefficients = coefficients[1:]
    try:
        return np.roots(coefficients)
    except np.linalg.LinAlgError as e:
        raise NoInteriorFixedPointError(
            f"fixed-point polynomial of mu={params.mu}, rho={params.rho} has no computable roots: {e}"
        ) from e


def _iterate_to_fixed_point(params: BlaschkeParams):
    z = 0j
    for count in range(1, MAX_ITERATIONS + 1):
        updated = blaschke_eval(params, z)
        if abs(updated - z) < 1e-15:
            return updated, count
        z = updated
    raise NoInteriorFixedPointError(f"fixed-point iteration from 0 did not settle in {MAX_ITERATIONS} steps")


def blaschke_fixed_point(params: BlaschkeParams) -> FixedPointData:
    """The unique attracting fixed point of tau inside the unit disk.

    Roots of the fixed-point cubic come from its companion matrix; the interior
    one is polished by Newton steps and cross-checked against plain iteration
    of tau from z = 0.
    """
    roots = _fixed_point_roots(params)
    interior = [complex(r) for r in roots if abs(r) < 1.0 - INTERIOR_MARGIN]
    if len(interior) != 1:
        raise NoInteriorFixedPointError(
            f"expected exactly one fixed point inside the disk for mu={params.mu}, rho={params.rho}, "
            f"found {len(interior)} (roots {np.round(roots, 12).tolist()})"
        )

    z = interior[0]
    for _ in range(3):
        slope = blaschke_derivative(params, z) - 1.0
        if slope == 0:
            break
        z = z - (blaschke_eval(params, z) - z) / slope

    multiplier = blaschke_derivative(params, z)
    if abs(multiplier) >= 1.0:
        raise NoInteriorFixedPointError(f"interior fixed point {z} is not attracting (|tau'(z*)|={abs(multiplier):.6g})")
    residual = abs(blaschke_eval(params, z) - z)
    if residual > RESIDUAL_TOLERANCE:
        raise NoInteriorFixedPointError(f"fixed-point residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:g}")

    iterated, iterations = _iterate_to_fixed_point(params)
    data = FixedPointData(z, complex(multiplier), float(residual), iterated, iterations)
    if data.agreement > AGREEMENT_TOLERANCE:
        raise NoInteriorFixedPointError(
            f"root finder ({z}) and iteration ({iterated}) disagree by {data.agreement:.3e}"
        )
    logger.info(f"Fixed point z*={z:.12g}, multiplier={multiplier:.12g} ({iterations} iterations to confirm)")
    return data


def multiplier_spectrum(multiplier: complex, count: int, source: str = "oracle") -> Spectrum:
    """1, then (multiplier^n, conj(multiplier)^n) for n = 1, 2, ...; the first `count` values in canonical order."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    values = [1.0 + 0j]
    n = 1
    while len(values) < count:
        power = complex(multiplier) ** n
        values.extend((power, power.conjugate()))
        n += 1
    spectrum = make_spectrum(values, source=source)
    spectrum.eigenvalues = spectrum.eigenvalues[:count]
    return spectrum


def blaschke_exact_spectrum(params: BlaschkeParams, count: int) -> Spectrum:
    fixed_point = blaschke_fixed_point(params)
    return multiplier_spectrum(fixed_point.multiplier, count, source="blaschke-oracle")


def catmap_exact_spectrum(params: TorusMapParams, count: int) -> Spectrum:
    """{1} with the powers of -mu and their conjugates."""
    return multiplier_spectrum(-params.mu, count, source="catmap-oracle")


def bernoulli_exact_matrices(nbar: int, m: int) -> BernoulliMatrices:
    """Closed-form G, H, A for the doubling map on m equidistant nodes.

    G[k, l] = [2k + l = 0 mod m], H[k, l] = [k + l = 0 mod m]. With m >= N,
    H is the index reversal and A[k, l] = [2k - l = 0 mod m]; below that A is
    G pinv(H). The prediction is exact for every m, including aliased counts
    (2m < 3N) where extra entries appear.
    """
    if nbar < 0 or m < 1:
        raise ValueError(f"need nbar >= 0 and m >= 1, got nbar={nbar}, m={m}")
    ks = np.arange(-nbar, nbar + 1)
    size = len(ks)
    G = (np.mod(2 * ks[:, None] + ks[None, :], m) == 0).astype(complex)
    H = (np.mod(ks[:, None] + ks[None, :], m) == 0).astype(complex)
    if m >= size:
        A = (np.mod(2 * ks[:, None] - ks[None, :], m) == 0).astype(complex)
    else:
        A = G @ np.linalg.pinv(H, settings.pinv_cutoff)
    aliased = 2 * m < 3 * size
    if aliased:
        logger.warning(f"Bernoulli matrices on {m} nodes alias for N={size} (need m >= {3 * size / 2:g})")
    return BernoulliMatrices(G, H, A, aliased)

"""Transfer-operator matrices by quadrature and by inverse branches."""
import logging
from dataclasses import dataclass
from typing import Literal, Optional, Tuple, Union

import numpy as np

from ..dynamics.blaschke import BlaschkeParams, blaschke_derivative, inverse_branches_on_grid, wrap_angle
from ..dynamics.maps import MapSpec
from ..observables import Dictionary, evaluate_dictionary
from ..sampling import equidistant_circle_nodes, torus_lattice_nodes
from ..utils.config import settings
from ..utils.errors import DimensionMismatchError
from .gram import chop, node_sum

logger = logging.getLogger('edmd')


@dataclass
class OperatorMatrix:
    L: np.ndarray
    nodes: Union[int, Tuple[int, int]]
    representation: Literal["raw", "galerkin"] = "raw"
    dimension: int = 1

    @property
    def size(self) -> int:
        return self.L.shape[0]


def transfer_matrix_quadrature(map_spec: MapSpec, dictionary: Dictionary, m: int, compensated: bool = False,
                               chop_tolerance: Optional[float] = None) -> OperatorMatrix:
    """L[k, l] = 1/(2 pi) int psi_k(tau(e^{i phi})) psi_l(e^{i phi}) dphi by the M-point rectangle rule.

    The rule is the same node sum as G on the equidistant grid (the m x m
    product lattice on the torus).
    """
    if dictionary.dimension != map_spec.dimension:
        raise DimensionMismatchError(f"{dictionary.dimension}D dictionary for the {map_spec.dimension}D map")
    if m < dictionary.size and dictionary.dimension == 1:
        logger.warning(f"Quadrature with {m} nodes for {dictionary.size} modes is under-resolved")
    if map_spec.dimension == 1:
        samples = equidistant_circle_nodes(map_spec, m)
    else:
        samples = torus_lattice_nodes(map_spec, m, m)
    tol = settings.chop_tolerance if chop_tolerance is None else chop_tolerance
    X = evaluate_dictionary(dictionary, samples.points)
    Y = evaluate_dictionary(dictionary, samples.images)
    L = chop(node_sum(Y, X, compensated), tol)
    return OperatorMatrix(L, samples.counts[0] if map_spec.dimension == 1 else samples.counts,
                          "raw", map_spec.dimension)


def galerkin_representation(operator: OperatorMatrix) -> OperatorMatrix:
    """Matrix of P_N L P_N: M[k, l] = L[-k, l], i.e. the rows in reverse order."""
    if operator.representation != "raw":
        raise ValueError("galerkin_representation expects the raw quadrature matrix")
    return OperatorMatrix(operator.L[::-1].copy(), operator.nodes, "galerkin", operator.dimension)


def transfer_apply_inverse_branches(map_spec: MapSpec, dictionary: Dictionary, m: int,
                                    compensated: bool = False,
                                    chop_tolerance: Optional[float] = None) -> OperatorMatrix:
    """Galerkin matrix of the transfer operator built from its inverse branches.

    (L f)(w) = sum_j f(z_j) / T'(z_j) over the preimages z_j of w, where
    T'(z) = z tau'(z) / tau(z) is the angle-coordinate derivative; on the circle
    this is phi_j'(w) w / phi_j(w). L psi_l is sampled on the M-node grid and
    projected onto psi_k with the same rectangle rule.
    """
    if not isinstance(map_spec.params, BlaschkeParams):
        raise DimensionMismatchError(f"inverse branches need a circle Blaschke map, got '{map_spec.name}'")
    params = map_spec.params
    nodes = 2.0 * np.pi * np.arange(m) / m
    w = np.exp(1j * nodes)

    branches = inverse_branches_on_grid(params, w).T  # (M, 2)
    weights = w[:, None] / (branches * blaschke_derivative(params, branches))

    transferred = np.zeros((dictionary.size, m), dtype=complex)
    for j in range(2):
        angles = np.asarray(wrap_angle(np.angle(branches[:, j])), dtype=float)
        transferred += evaluate_dictionary(dictionary, angles) * weights[None, :, j]

    # psi_{-k}(w) rows project onto psi_k
    projector = evaluate_dictionary(dictionary, nodes)[::-1]
    tol = settings.chop_tolerance if chop_tolerance is None else chop_tolerance
    galerkin = chop(node_sum(projector, transferred, compensated), tol)
    logger.info(f"Inverse-branch transfer matrix: {dictionary.size} modes on {m} nodes")
    return OperatorMatrix(galerkin, m, "galerkin", 1)

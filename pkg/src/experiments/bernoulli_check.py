import logging
from typing import Optional

import numpy as np

from ..dynamics.maps import MapSpec
from ..edmd.gram import assemble_edmd, build_gram_matrices
from ..observables import fourier_dictionary
from ..oracle import bernoulli_exact_matrices, blaschke_exact_spectrum
from ..sampling import equidistant_circle_nodes
from ..spectral import eigendecompose, match_spectra
from ..utils.config import EXACT_CHOP_TOLERANCE, ExperimentConfig, SolverConfig
from .pipeline import config_echo
from .reports import ExperimentReport

logger = logging.getLogger('experiments')


def run_bernoulli_check(nbar: int, m: int, config: Optional[ExperimentConfig] = None) -> ExperimentReport:
    """Assembled G, H, A for the doubling map against their closed forms on m grid nodes."""
    solver = config.solver if config is not None else SolverConfig(chop=EXACT_CHOP_TOLERANCE)
    map_spec = MapSpec.bernoulli()
    dictionary = fourier_dictionary(nbar)
    samples = equidistant_circle_nodes(map_spec, m)

    G, H = build_gram_matrices(dictionary, samples, compensated=solver.compensated, chop_tolerance=solver.chop)
    matrices = assemble_edmd(G, H, solver.cutoff)
    exact = bernoulli_exact_matrices(nbar, m)
    deviations = {
        'G': float(np.max(np.abs(G - exact.G))),
        'H': float(np.max(np.abs(H - exact.H))),
        'A': float(np.max(np.abs(matrices.A - exact.A))),
    }

    spectrum = eigendecompose(matrices.A)
    oracle = blaschke_exact_spectrum(map_spec.params, dictionary.size)
    match = match_spectra(spectrum, oracle, dictionary.size)
    max_deviation = max(deviations.values())
    logger.info(f"Bernoulli check nbar={nbar}, m={m}: max deviation {max_deviation:.3e}"
                f"{' (aliased)' if exact.aliased else ''}")
    return ExperimentReport(
        kind="bernoulli-check",
        name=config.name if config is not None else "bernoulli_check",
        config=config_echo(config) if config is not None else {'dictionary': {'nbar': nbar},
                                                              'sampling': {'mode': 'grid', 'nodes': m}},
        spectrum=spectrum,
        oracle=oracle,
        match=match,
        metadata={'edmd': {'N': dictionary.size, **matrices.metadata()}, 'samples': samples.metadata()},
        summary={
            'max_deviation': max_deviation,
            'deviations': deviations,
            'aliased': exact.aliased,
            'spectrum_error': match.max_error,
            'nonzero_eigenvalues': int(np.count_nonzero(np.abs(spectrum.eigenvalues) > 1e-10)),
        },
    )

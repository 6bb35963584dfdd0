"""Report containers shared by the experiment runners, the CLI and the service."""
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..spectral import Spectrum, SpectrumMatch


def _clean(value: Any) -> Any:
    """JSON-safe copy: numpy scalars and arrays become Python values, non-finite floats None."""
    if isinstance(value, dict):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, np.ndarray):
        return _clean(value.tolist())
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [_clean(float(value.real)), _clean(float(value.imag))]
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


@dataclass
class ExperimentReport:
    kind: str
    name: str
    config: Dict[str, Any] = field(default_factory=dict)
    spectrum: Optional[Spectrum] = None
    oracle: Optional[Spectrum] = None
    match: Optional[SpectrumMatch] = None
    unstable: Optional[np.ndarray] = None
    metadata: Dict[str, Any] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)
    density: Optional[np.ndarray] = field(default=None, repr=False)

    def eigenvalue_rows(self) -> List[Dict[str, Any]]:
        """One row per computed and per oracle eigenvalue."""
        rows = []
        for source, spectrum in (('computed', self.spectrum), ('oracle', self.oracle)):
            if spectrum is None:
                continue
            for i, value in enumerate(spectrum.eigenvalues):
                row = {'source': source, 'index': i, 're': float(value.real), 'im': float(value.imag),
                       'modulus': float(abs(value)), 'unstable': ''}
                if source == 'computed' and self.unstable is not None:
                    row['unstable'] = bool(self.unstable[i])
                rows.append(row)
        return rows

    def scatter_data(self) -> Dict[str, np.ndarray]:
        """Points for the unit-circle plot: computed values, oracle values, the circle itself."""
        theta = np.linspace(0.0, 2.0 * np.pi, 361)
        return {
            'computed': self.spectrum.eigenvalues if self.spectrum is not None else np.zeros(0, dtype=complex),
            'oracle': self.oracle.eigenvalues if self.oracle is not None else np.zeros(0, dtype=complex),
            'circle': np.exp(1j * theta),
        }

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'kind': self.kind,
            'name': self.name,
            'config': self.config,
            'metadata': self.metadata,
            'summary': self.summary,
            'eigenvalues': self.spectrum.as_pairs() if self.spectrum is not None else [],
            'residual_max': float(np.max(self.spectrum.residuals))
            if self.spectrum is not None and self.spectrum.residuals is not None and self.spectrum.size else None,
            'oracle': self.oracle.as_pairs() if self.oracle is not None else [],
            'matches': self.match.rows() if self.match is not None else [],
            'unmatched_indices': self.match.unmatched_indices if self.match is not None else [],
            'unstable': self.unstable if self.unstable is not None else [],
        }
        return _clean(data)


@dataclass
class DecayFit:
    """log10(error) = slope * N + intercept over the points above the noise floor."""
    pair: int
    slope: Optional[float]
    intercept: Optional[float]
    r_squared: Optional[float]
    points: int

    @property
    def applicable(self) -> bool:
        return self.slope is not None

    def to_dict(self) -> Dict[str, Any]:
        return _clean({'pair': self.pair, 'slope': self.slope, 'intercept': self.intercept,
                       'r_squared': self.r_squared, 'points': self.points, 'applicable': self.applicable})


@dataclass
class ConvergenceReport:
    """Errors of the first `pairs` subleading conjugate pairs for every N of the sweep.

    errors[i, n - 1] is the error of pair n at n_values[i]; the pair error is the
    larger of its two members' matching errors.
    """
    kind: str
    name: str
    n_values: List[int]
    errors: np.ndarray
    fits: List[DecayFit]
    config: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)
    summary: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ValueError(f"sweep rows must be strictly increasing in N, got {self.n_values}")

    @property
    def pairs(self) -> int:
        return self.errors.shape[1] if self.errors.ndim == 2 else 0

    def pair_errors(self, pair: int) -> np.ndarray:
        return self.errors[:, pair - 1]

    def error_rows(self) -> List[Dict[str, Any]]:
        return [
            {'N': n, 'pair': pair + 1, 'error': float(self.errors[i, pair])}
            for i, n in enumerate(self.n_values)
            for pair in range(self.pairs)
        ]

    def to_dict(self) -> Dict[str, Any]:
        return _clean({
            'kind': self.kind,
            'name': self.name,
            'config': self.config,
            'metadata': self.metadata,
            'summary': self.summary,
            'table': [{'N': n, 'errors': self.errors[i].tolist()} for i, n in enumerate(self.n_values)],
            'fits': [fit.to_dict() for fit in self.fits],
        })

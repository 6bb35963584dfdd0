"""Report files: structured JSON, delimited tables and SVG plots.

Every format is written even for an empty report (headers only, an empty plot),
and identical reports produce identical files.
"""
import csv
import json
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

from ..dynamics.blaschke import TWO_PI
from ..utils.config import OUTPUT_FORMATS, settings
from ..utils.errors import OutputError
from .reports import ConvergenceReport, ExperimentReport

logger = logging.getLogger('experiments')

Report = Union[ExperimentReport, ConvergenceReport]

plt.rcParams['svg.hashsalt'] = 'edmd'
plt.rcParams['svg.fonttype'] = 'none'

EIGENVALUE_FIELDS = ['source', 'index', 're', 'im', 'modulus', 'unstable']
MATCH_FIELDS = ['index', 'oracle_re', 'oracle_im', 'computed_re', 'computed_im', 'error']
ERROR_FIELDS = ['N', 'pair', 'error']
FIT_FIELDS = ['pair', 'slope', 'intercept', 'r_squared', 'points', 'applicable']


def _format(value) -> str:
    if isinstance(value, bool) or value is None:
        return '' if value is None else str(value).lower()
    if isinstance(value, float):
        return format(value, '.17g')
    return str(value)


def _write_csv(path: Path, fields: Sequence[str], rows: Iterable[dict]) -> Path:
    try:
        with open(path, 'w', newline='', encoding='utf-8') as f:
            writer = csv.writer(f, lineterminator='\n')
            writer.writerow(fields)
            for row in rows:
                writer.writerow([_format(row.get(name)) for name in fields])
    except OSError as e:
        raise OutputError(f"cannot write table: {e.strerror}", path) from e
    return path


def _write_json(path: Path, report: Report) -> Path:
    try:
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(report.to_dict(), f, sort_keys=True, indent=2, allow_nan=False)
            f.write('\n')
    except OSError as e:
        raise OutputError(f"cannot write report: {e.strerror}", path) from e
    return path


def _save_figure(fig, path: Path) -> Path:
    try:
        fig.savefig(path, format='svg', bbox_inches='tight', metadata={'Date': None})
    except OSError as e:
        raise OutputError(f"cannot write plot: {e.strerror}", path) from e
    finally:
        plt.close(fig)
    return path


def _spectrum_plot(report: ExperimentReport, path: Path) -> Path:
    data = report.scatter_data()
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.plot(data['circle'].real, data['circle'].imag, color='0.6', linewidth=0.8, label='unit circle')
    ax.scatter(data['computed'].real, data['computed'].imag, s=22, color='tab:blue', label='EDMD')
    ax.scatter(data['oracle'].real, data['oracle'].imag, s=60, facecolors='none', edgecolors='tab:red',
               label='exact')
    ax.set_aspect('equal')
    ax.set_xlabel('Re λ')
    ax.set_ylabel('Im λ')
    ax.set_title(report.name)
    ax.legend(loc='upper left', fontsize='small')
    return _save_figure(fig, path)


def _convergence_plot(report: ConvergenceReport, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for pair in range(1, report.pairs + 1):
        ax.semilogy(report.n_values, report.pair_errors(pair), marker='o', label=f'pair {pair}')
    ax.set_xlabel('N')
    ax.set_ylabel('absolute error')
    ax.set_title(report.name)
    if report.pairs:
        ax.legend(fontsize='small')
    return _save_figure(fig, path)


def _density_plot(report: ExperimentReport, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(5, 5))
    if report.density is not None:
        image = ax.imshow(report.density.T, origin='lower', extent=(0.0, TWO_PI, 0.0, TWO_PI),
                          cmap='viridis', interpolation='nearest')
        fig.colorbar(image, ax=ax, shrink=0.8, label='density')
    ax.set_xlabel('φ₁')
    ax.set_ylabel('φ₂')
    ax.set_title(report.name)
    return _save_figure(fig, path)


def emit_outputs(report: Report, formats: Optional[Sequence[str]] = None,
                 out_dir: Optional[Union[str, Path]] = None) -> List[Path]:
    """Write the requested formats to out_dir (the report's configured directory by default)."""
    formats = list(formats if formats is not None else OUTPUT_FORMATS)
    unknown = [f for f in formats if f not in OUTPUT_FORMATS]
    if unknown:
        raise ValueError(f"unknown output formats {unknown}; expected a subset of {list(OUTPUT_FORMATS)}")
    if out_dir is None:
        out_dir = report.config.get('output', {}).get('out_dir', settings.output_dir)
    out_dir = Path(out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise OutputError(f"cannot create output directory: {e.strerror}", out_dir) from e

    stem = report.name
    written: List[Path] = []
    if 'json' in formats:
        written.append(_write_json(out_dir / f"{stem}.json", report))
    if 'csv' in formats:
        if isinstance(report, ConvergenceReport):
            written.append(_write_csv(out_dir / f"{stem}_errors.csv", ERROR_FIELDS, report.error_rows()))
            written.append(_write_csv(out_dir / f"{stem}_fits.csv", FIT_FIELDS,
                                      (fit.to_dict() for fit in report.fits)))
        else:
            written.append(_write_csv(out_dir / f"{stem}_eigenvalues.csv", EIGENVALUE_FIELDS,
                                      report.eigenvalue_rows()))
            rows = []
            for row in (report.match.rows() if report.match is not None else []):
                rows.append({'index': row['index'], 'oracle_re': row['oracle'][0], 'oracle_im': row['oracle'][1],
                             'computed_re': row['computed'][0], 'computed_im': row['computed'][1],
                             'error': row['error']})
            written.append(_write_csv(out_dir / f"{stem}_matches.csv", MATCH_FIELDS, rows))
    if 'svg' in formats:
        if isinstance(report, ConvergenceReport):
            written.append(_convergence_plot(report, out_dir / f"{stem}_convergence.svg"))
        elif report.kind == 'density':
            written.append(_density_plot(report, out_dir / f"{stem}_density.svg"))
        else:
            written.append(_spectrum_plot(report, out_dir / f"{stem}_spectrum.svg"))

    logger.info(f"Wrote {len(written)} files for '{stem}' to {out_dir}")
    return written

"""Command-line entry point: one subcommand per experiment."""
import argparse
import json
import sys
from typing import Any, Dict, List, Optional

from src.experiments import emit_outputs, run_experiment
from src.utils.config import EXPERIMENT_KINDS, OUTPUT_FORMATS, load_experiment_config
from src.utils.errors import EXIT_CONFIG, EXIT_OK, EdmdError
from src.utils.logging_config import setup_logging

DESCRIPTIONS = {
    "bernoulli-check": "assembled doubling-map matrices against their closed forms",
    "spectrum": "EDMD spectrum of a Blaschke map against the exact spectrum",
    "converge": "eigenvalue error against the dictionary size N",
    "timeseries": "spectrum from seeded trajectories, median errors at M and M/2 samples",
    "catmap": "EDMD spectrum of the deformed cat map on a torus lattice",
    "density": "histogram of a long cat-map trajectory",
}


def _int_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'") from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edmd", description="EDMD spectra of analytic circle and torus maps")
    parser.add_argument("--log-level", default=None, help="override EDMD_LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="kind", required=True)
    for kind in EXPERIMENT_KINDS:
        sub = subparsers.add_parser(kind, help=DESCRIPTIONS[kind])
        sub.add_argument("--config", help="TOML experiment file (defaults to the built-in preset)")
        sub.add_argument("--nbar", type=int, help="dictionary half-width; N = 2*nbar + 1 per axis")
        sub.add_argument("--nodes", type=int, help="sample count M (per axis on a lattice)")
        sub.add_argument("--seed", type=int, help="trajectory seed")
        sub.add_argument("--out-dir", help="output directory")
        sub.add_argument("--format", action="append", choices=OUTPUT_FORMATS, dest="formats",
                         help="output format; repeat for several (default: all)")
        if kind == "converge":
            sub.add_argument("--n-list", type=_int_list, help="comma-separated odd N values")
    return parser


def overrides_from_args(args: argparse.Namespace) -> Dict[str, Any]:
    overrides: Dict[str, Any] = {}
    if args.nbar is not None:
        overrides.setdefault('dictionary', {})['nbar'] = args.nbar
    if args.nodes is not None:
        overrides.setdefault('sampling', {})['nodes'] = args.nodes
        if args.kind == "catmap":
            overrides['sampling']['nodes2'] = args.nodes
    if args.seed is not None:
        overrides.setdefault('sampling', {})['seed'] = args.seed
    if args.out_dir is not None:
        overrides.setdefault('output', {})['out_dir'] = args.out_dir
    if args.formats:
        overrides.setdefault('output', {})['formats'] = sorted(set(args.formats))
    if getattr(args, 'n_list', None):
        overrides.setdefault('sweep', {})['n_list'] = args.n_list
    return overrides


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        config = load_experiment_config(args.kind, args.config, overrides_from_args(args))
        report = run_experiment(args.kind, config)
        written = emit_outputs(report, config.output.formats, config.output.out_dir)
    except EdmdError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    print(json.dumps(report.to_dict()['summary'], sort_keys=True, indent=2))
    for path in written:
        print(path)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

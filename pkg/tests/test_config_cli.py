import contextlib
import io
import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

import cli
from src.utils.config import (REFERENCE_MU, Settings, build_experiment_config, load_experiment_config)
from src.utils.errors import EXIT_CONFIG, EXIT_IO, EXIT_NUMERICAL, EXIT_OK, ConfigError

CONFIG_DIR = Path(__file__).resolve().parents[1] / 'configs'

CONFIG_FILES = {
    'bernoulli-check': 'bernoulli_check.toml',
    'spectrum': 'blaschke_spectrum.toml',
    'converge': 'blaschke_convergence.toml',
    'timeseries': 'blaschke_timeseries.toml',
    'catmap': 'catmap_spectrum.toml',
    'density': 'catmap_density.toml',
}


class TestExperimentConfig(unittest.TestCase):
    """Presets, TOML files and validation"""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.temp_dir.cleanup()

    def write_config(self, text):
        path = os.path.join(self.temp_dir.name, 'experiment.toml')
        with open(path, 'w') as f:
            f.write(text)
        return path

    def test_shipped_files_load(self):
        """Test every shipped experiment file validates"""
        for kind, filename in CONFIG_FILES.items():
            config = load_experiment_config(kind, CONFIG_DIR / filename)
            self.assertEqual(config.name, filename[:-len('.toml')])

    def test_files_agree_with_presets(self):
        """Test the shipped files describe the built-in presets"""
        from_file = load_experiment_config('spectrum', CONFIG_DIR / 'blaschke_spectrum.toml')
        preset = build_experiment_config('spectrum')
        self.assertAlmostEqual(from_file.map.mu[0], REFERENCE_MU[0], places=15)
        self.assertAlmostEqual(from_file.map.mu[1], REFERENCE_MU[1], places=15)
        self.assertEqual(from_file.dictionary.nbar, preset.dictionary.nbar)
        self.assertEqual(from_file.sampling.nodes, preset.sampling.nodes)

    def test_overrides_win(self):
        """Test overrides are merged over the file and the preset"""
        config = load_experiment_config('spectrum', CONFIG_DIR / 'blaschke_spectrum.toml',
                                        {'dictionary': {'nbar': 3}})
        self.assertEqual(config.dictionary.nbar, 3)
        self.assertEqual(config.map.kind, 'blaschke')

    def test_unknown_key(self):
        """Test misspelt keys are rejected with their location"""
        path = self.write_config('[sampling]\nnodez = 10\n')
        with self.assertRaises(ConfigError) as ctx:
            load_experiment_config('spectrum', path)
        self.assertIn('sampling.nodez', str(ctx.exception))

    def test_range_checks(self):
        """Test parameters outside the disk and negative nbar"""
        with self.assertRaises(ConfigError):
            build_experiment_config('spectrum', {'map': {'mu': [1.0, 0.0]}})
        with self.assertRaises(ConfigError):
            build_experiment_config('spectrum', overrides={'dictionary': {'nbar': -1}})

    def test_sampling_consistency(self):
        """Test grid sampling with the torus map and a scalar start on the torus"""
        with self.assertRaises(ConfigError):
            build_experiment_config('catmap', {'sampling': {'mode': 'grid'}})
        with self.assertRaises(ConfigError):
            build_experiment_config('density', {'sampling': {'start': 0.5}})
        config = build_experiment_config('density', {'sampling': {'start': [0.5, 1.0]}})
        self.assertEqual(list(config.sampling.start), [0.5, 1.0])

    def test_file_errors(self):
        """Test missing and malformed files"""
        with self.assertRaises(ConfigError):
            load_experiment_config('spectrum', os.path.join(self.temp_dir.name, 'missing.toml'))
        with self.assertRaises(ConfigError):
            load_experiment_config('spectrum', self.write_config('[map\n'))

    def test_unknown_kind(self):
        """Test an unknown preset name"""
        with self.assertRaises(ConfigError):
            build_experiment_config('lyapunov')

    def test_environment_settings(self):
        """Test EDMD_ variables override numerical defaults"""
        with patch.dict(os.environ, {'EDMD_PINV_CUTOFF': '1e-8', 'EDMD_DEFAULT_SEED': '7'}):
            settings = Settings()
        self.assertEqual(settings.pinv_cutoff, 1e-8)
        self.assertEqual(settings.default_seed, 7)


class TestCommandLine(unittest.TestCase):
    """Subcommands and exit codes"""

    def setUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.temp_dir.cleanup()

    def run_cli(self, *argv):
        stdout, stderr = io.StringIO(), io.StringIO()
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            code = cli.main(['--log-level', 'WARNING', *argv])
        return code, stdout.getvalue(), stderr.getvalue()

    def test_bernoulli_check(self):
        """Test a successful run prints the summary and writes the requested files"""
        code, out, _ = self.run_cli('bernoulli-check', '--out-dir', self.temp_dir.name, '--format', 'json')
        self.assertEqual(code, EXIT_OK)
        summary = json.loads(out[:out.rindex('}') + 1])
        self.assertLessEqual(summary['max_deviation'], 1e-12)
        self.assertTrue(os.path.exists(os.path.join(self.temp_dir.name, 'bernoulli_check.json')))
        self.assertFalse(os.path.exists(os.path.join(self.temp_dir.name, 'bernoulli_check_spectrum.svg')))

    def test_invalid_config_exit_code(self):
        """Test a negative nbar exits with the configuration code"""
        code, _, err = self.run_cli('spectrum', '--nbar', '-1', '--out-dir', self.temp_dir.name)
        self.assertEqual(code, EXIT_CONFIG)
        self.assertIn('dictionary.nbar', err)

    def test_numerical_exit_code(self):
        """Test a map without an interior fixed point exits with the numerical code"""
        path = os.path.join(self.temp_dir.name, 'unstable.toml')
        with open(path, 'w') as f:
            f.write('[map]\nmu = [-0.9, 0.0]\nrho = [-0.9, 0.0]\n\n[dictionary]\nnbar = 2\n')
        code, _, err = self.run_cli('spectrum', '--config', path, '--out-dir', self.temp_dir.name)
        self.assertEqual(code, EXIT_NUMERICAL)
        lines = err.strip().splitlines()
        self.assertTrue(lines[-1].startswith('error:'))
        self.assertEqual(sum('fixed point' in line for line in lines), 1)

    def test_output_exit_code(self):
        """Test an output path that is a file exits with the output code"""
        blocker = os.path.join(self.temp_dir.name, 'blocker')
        with open(blocker, 'w') as f:
            f.write('x')
        code, _, _ = self.run_cli('bernoulli-check', '--out-dir', blocker)
        self.assertEqual(code, EXIT_IO)

    def test_overrides_from_args(self):
        """Test flags become config overrides"""
        args = cli.build_parser().parse_args(['catmap', '--nodes', '51', '--format', 'svg', '--format', 'csv'])
        overrides = cli.overrides_from_args(args)
        self.assertEqual(overrides['sampling'], {'nodes': 51, 'nodes2': 51})
        self.assertEqual(overrides['output']['formats'], ['csv', 'svg'])

        args = cli.build_parser().parse_args(['converge', '--n-list', '11,21,31'])
        self.assertEqual(cli.overrides_from_args(args), {'sweep': {'n_list': [11, 21, 31]}})

    def test_n_list_parsing(self):
        """Test a malformed N list is a usage error"""
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit):
                cli.build_parser().parse_args(['converge', '--n-list', '11,x'])


if __name__ == '__main__':
    unittest.main()

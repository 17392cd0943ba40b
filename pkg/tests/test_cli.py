"""Test suite for the command-line surface and report export."""

import io
import json
import tempfile
import unittest
import os
import sys
from unittest import mock

# Add src directory to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from main import run
from services.export_service import PANDAS_AVAILABLE, ExportService
from utils.config import config
from utils.validators import ValidationError


def _invoke(argv):
    stdout = io.StringIO()
    code = run(argv, stdout=stdout)
    return code, stdout.getvalue()


class TestCommands(unittest.TestCase):
    """Test cases for the subcommands."""

    def test_coeffs_json(self):
        """Test the a_0 report and its provenance."""
        code, output = _invoke(['coeffs', '--family', 'an', '--n', '0', '--digits', '20'])
        self.assertEqual(code, 0)
        report = json.loads(output)
        self.assertEqual(report['command'], 'coeffs')
        self.assertEqual(report['results'], {'n': 0, 'value': '1/(1+x)'})
        self.assertEqual(report['provenance']['digits'], 20)
        self.assertEqual(report['provenance']['package'], 'resurgent-anger')

    def test_coeffs_csv(self):
        """Test one CSV record per coefficient."""
        code, output = _invoke(['coeffs', '--family', 'un', '--n', '0', '--n-max', '2', '--format', 'csv',
                                '--digits', '20'])
        self.assertEqual(code, 0)
        lines = output.strip().split('\n')
        self.assertEqual(lines[0], 'n,value')
        self.assertEqual(len(lines), 4)

    def test_deterministic_output(self):
        """Test identical runs give identical bytes."""
        argv = ['coeffs', '--family', 'd2n', '--n', '0', '--n-max', '3', '--digits', '25']
        self.assertEqual(_invoke(argv), _invoke(argv))

    def test_eval_with_verification(self):
        """Test optimal truncation with the oracle comparison."""
        code, output = _invoke(['eval', '--case', 'secb', '--nu', '10', '--beta', 'pi/3',
                                '--auto-truncate', '--verify', '--digits', '30'])
        self.assertEqual(code, 0)
        results = json.loads(output)['results']
        self.assertEqual(results['truncation'], {'N': 3})
        self.assertTrue(results['bound']['valid'])
        self.assertEqual(results['value']['tag'], 'certified_bound')
        self.assertTrue(results['within_bound'])

    def test_bounds_with_excess(self):
        """Test the bound and excess interval report."""
        code, output = _invoke(['bounds', '--case', 'secb', '--nu', '10', '--beta', 'pi/3', '--N', '0',
                                '--excess', '--digits', '20'])
        self.assertEqual(code, 0)
        results = json.loads(output)['results']
        self.assertEqual(results['bound']['formula'], 'csc_secb')
        self.assertEqual(float(results['excess']['lower']['value']), 0.0)
        self.assertAlmostEqual(float(results['excess']['upper']['value']), 0.0318309886, places=9)

    def test_late_dingle(self):
        """Test the experimental flag in late-term output."""
        code, output = _invoke(['late', '--kind', 'dingle', '--n', '6,8', '--alpha', '1', '--digits', '20'])
        self.assertEqual(code, 0)
        rows = json.loads(output)['results']
        self.assertEqual(len(rows), 2)
        self.assertTrue(all(row['experimental'] for row in rows))

    def test_check_equivalence(self):
        """Test the coefficient equivalence suite."""
        code, output = _invoke(['check', '--suite', 'equivalence', '--digits', '20'])
        self.assertEqual(code, 0)
        self.assertTrue(json.loads(output)['results']['passed'])

    def test_table1_defaults_to_csv(self):
        """Test the table command writes four CSV rows."""
        code, output = _invoke(['table1'])
        self.assertEqual(code, 0)
        lines = output.strip().split('\n')
        self.assertEqual(lines[0], 'beta,n,M,exact,approximation,error,bound')
        self.assertEqual(len(lines), 5)


class TestCommandErrors(unittest.TestCase):
    """Test cases for exit codes and error records."""

    def test_usage_errors(self):
        """Test malformed input exits with 2."""
        code, output = _invoke(['eval'])
        self.assertEqual(code, 2)
        self.assertEqual(json.loads(output)['error']['code'], 'usage')
        code, _ = _invoke(['eval', '--case', 'secb', '--nu', 'ten', '--beta', 'pi/3'])
        self.assertEqual(code, 2)

    def test_sector_error(self):
        """Test a Stokes-line argument exits with 3."""
        code, output = _invoke(['eval', '--case', 'secb', '--nu', '10@pi/2', '--beta', 'pi/3', '--digits', '20'])
        self.assertEqual(code, 3)
        self.assertEqual(json.loads(output)['error']['code'], 'sector')

    def test_precision_errors(self):
        """Test rejected precisions from the flag and the environment."""
        code, _ = _invoke(['coeffs', '--family', 'an', '--n', '0', '--digits', '8'])
        self.assertEqual(code, 3)
        with mock.patch.dict(os.environ, {'RA_DIGITS': '10'}):
            code, _ = _invoke(['coeffs', '--family', 'an', '--n', '0'])
        self.assertEqual(code, 3)

    def test_help(self):
        """Test --help exits cleanly."""
        with mock.patch('sys.stdout', new_callable=io.StringIO):
            code, _ = _invoke(['--help'])
        self.assertEqual(code, 0)


class TestExportService(unittest.TestCase):
    """Test cases for ExportService."""

    def setUp(self):
        self.service = ExportService()
        self.report = {'command': 'coeffs', 'inputs': {'n': '1'}, 'results': {'n': 1},
                       'provenance': {'digits': 20}}
        self.rows = [{'n': 1, 'value': {'value': '0.5', 'tag': 'heuristic'}}]

    @unittest.skipUnless(PANDAS_AVAILABLE, "pandas not installed")
    def test_render_csv_flattens(self):
        """Test nested fields become dotted columns."""
        output = self.service.render_csv(self.rows)
        self.assertEqual(output.split('\n')[0], 'n,value.value,value.tag')

    def test_render_json(self):
        """Test JSON rendering ends with a newline."""
        output = self.service.render_json(self.report)
        self.assertTrue(output.endswith('\n'))
        self.assertEqual(json.loads(output), self.report)

    def test_export_report(self):
        """Test saving into the reports directory."""
        with tempfile.TemporaryDirectory() as directory:
            with mock.patch.object(type(config), 'REPORTS_DIR', directory):
                path = self.service.export_report(self.report, self.rows, 'json', filename='run')
                self.assertEqual(path, os.path.join(directory, 'run.json'))
                self.assertTrue(os.path.exists(path))
                with self.assertRaises(ValidationError):
                    self.service.export_report(self.report, self.rows, 'xml')


def run_tests():
    """Run all tests."""
    test_classes = [
        TestCommands,
        TestCommandErrors,
        TestExportService
    ]

    suite = unittest.TestSuite()

    for test_class in test_classes:
        tests = unittest.TestLoader().loadTestsFromTestCase(test_class)
        suite.addTests(tests)

    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)

    return result.wasSuccessful()


if __name__ == "__main__":
    success = run_tests()
    sys.exit(0 if success else 1)

"""Test suite for the domain models, parsers and configuration."""

import unittest
import os
import sys
from fractions import Fraction
from unittest import mock

# Add src directory to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from models.algebra import Polynomial, PowerSeries, RationalFunction
from models.precision import HPComplex, PrecisionContext
from models.results import (AsymptoticValue, CubeRootRational, ErrorBound, ExcessInterval,
                            LateTermResult, ScanRecord, TerminantEval, TruncationIndices)
from models.run_config import AngleSpec, NuSpec, RunConfig
from utils.config import config
from utils.validators import (AngleParser, NuParser, PrecisionValidator, TruncationValidator,
                              UsageError, ValidationError)


class TestPrecisionModel(unittest.TestCase):
    """Test cases for PrecisionContext and HPComplex."""

    def setUp(self):
        self.ctx = PrecisionContext(30)
        self.mp = self.ctx.mp

    def test_context_creation(self):
        """Test the default quadrature target and private precision."""
        self.assertEqual(self.mp.dps, 30)
        self.assertAlmostEqual(float(self.ctx.quad_target), 1e-25, delta=1e-35)
        other = PrecisionContext(60)
        self.assertEqual(self.mp.dps, 30)
        self.assertEqual(other.mp.dps, 60)

    def test_context_validation(self):
        """Test rejected precisions and targets."""
        with self.assertRaises(ValueError):
            PrecisionContext(10)
        with self.assertRaises(ValueError):
            PrecisionContext(30, quad_target=1e-40)

    def test_polar_keeps_branch(self):
        """Test that the carried argument survives beyond (-pi, pi]."""
        nu = HPComplex.polar(2, 3 * self.mp.pi / 2 + 1, self.ctx)
        self.assertAlmostEqual(float(nu.arg), float(3 * self.mp.pi / 2 + 1), places=20)
        self.assertLess(abs(nu.value - 2 * self.mp.expj(3 * self.mp.pi / 2 + 1)), 1e-25)

    def test_power_on_carried_branch(self):
        """Test fractional powers on a non-principal sheet."""
        z = HPComplex.polar(1, 2 * self.mp.pi, self.ctx)
        root = z.power(self.mp.mpf(1) / 2, self.ctx)
        self.assertLess(abs(root + 1), 1e-25)

    def test_rotate_and_conjugate(self):
        """Test rotation and conjugation bookkeeping."""
        nu = HPComplex.real(3, self.ctx).rotate(self.mp.pi, self.ctx)
        self.assertLess(abs(nu.value + 3), 1e-25)
        self.assertAlmostEqual(float(nu.conjugate(self.ctx).arg), -float(self.mp.pi), places=20)


class TestAlgebraModel(unittest.TestCase):
    """Test cases for exact polynomials, power series and rational functions."""

    def test_polynomial_arithmetic(self):
        """Test products, derivatives and exact division."""
        p = Polynomial((1, 1))
        q = p * p
        self.assertEqual(q, Polynomial((1, 2, 1)))
        self.assertEqual(q.derivative(), Polynomial((2, 2)))
        self.assertEqual(q.exact_div(p), p)
        self.assertEqual(Polynomial.one_plus_x_power(3), Polynomial((1, 3, 3, 1)))

    def test_polynomial_string(self):
        """Test the canonical string form."""
        self.assertEqual(Polynomial((0, 1, -54, 225)).to_string(), '225*x^3 - 54*x^2 + x')
        self.assertEqual(str(Polynomial((0, Fraction(1, 8), 0, Fraction(-5, 24)))), '(-5*x^3 + 3*x)/24')

    def test_polynomial_gcd(self):
        """Test the monic polynomial gcd."""
        a = Polynomial((1, 1)) * Polynomial((2, 1))
        b = Polynomial((1, 1)) * Polynomial((3, 1))
        self.assertEqual(Polynomial.gcd(a, b), Polynomial((1, 1)))

    def test_power_series_power(self):
        """Test rational powers against the binomial series."""
        series = PowerSeries((1, 1), 4)
        root = series.power(Fraction(1, 2))
        self.assertEqual(root.coefficients[:3], (Fraction(1), Fraction(1, 2), Fraction(-1, 8)))
        inverse = series.power(-1)
        self.assertEqual(inverse.coefficients, (1, -1, 1, -1, 1))

    def test_rational_function_reduction(self):
        """Test gcd reduction and the canonical string."""
        f = RationalFunction(Polynomial((1, 1)), Polynomial((1, 2, 1)))
        self.assertEqual(f.denominator, Polynomial((1, 1)))
        self.assertEqual(str(f), '1/(1+x)')
        self.assertEqual(f.evaluate(Fraction(1)), Fraction(1, 2))


class TestResultModels(unittest.TestCase):
    """Test cases for the result dataclasses."""

    def setUp(self):
        self.ctx = PrecisionContext(20)
        self.mp = self.ctx.mp

    def test_truncation_indices(self):
        """Test totals and validation."""
        self.assertEqual(TruncationIndices(3, 3, 3).total, 9)
        self.assertEqual(TruncationIndices(4).to_dict(), {'N': 4})
        with self.assertRaises(ValueError):
            TruncationIndices(-1)

    def test_error_bound_validation(self):
        """Test unknown tags and missing radii."""
        with self.assertRaises(ValueError):
            ErrorBound(radius=1, formula_tag='unknown', valid=True)
        with self.assertRaises(ValueError):
            ErrorBound(radius=None, formula_tag='csc_secb', valid=True)
        self.assertFalse(ErrorBound(radius=None, formula_tag='stokes_x1', valid=False).to_dict(self.ctx)['valid'])

    def test_certified_tagging(self):
        """Test that only bounded values are tagged certified."""
        bound = ErrorBound(radius=self.mp.mpf('0.1'), formula_tag='csc_secb', valid=True, factor=self.mp.one)
        certified = AsymptoticValue(value=self.mp.mpf(1), truncation=TruncationIndices(1), sector='s', bound=bound)
        heuristic = AsymptoticValue(value=self.mp.mpf(1), truncation=TruncationIndices(1), sector='s')
        self.assertEqual(certified.to_dict(self.ctx)['value']['tag'], 'certified_bound')
        self.assertEqual(heuristic.to_dict(self.ctx)['value']['tag'], 'heuristic')

    def test_excess_interval(self):
        """Test strict containment."""
        interval = ExcessInterval(lower=-1, upper=0, first_omitted_term=-1)
        self.assertTrue(interval.contains(-0.5))
        self.assertFalse(interval.contains(0))

    def test_other_records(self):
        """Test validation of terminant, scan and late-term records."""
        w = HPComplex.real(1, self.ctx)
        with self.assertRaises(ValueError):
            TerminantEval(p=0, w=w, value=0, route='incgamma')
        with self.assertRaises(ValueError):
            ScanRecord(theta=0, measured_multiplier=0, erf_prediction=0, residual=-1)
        late = LateTermResult(n=2, approx=1, exact=1, error=0, bound=None, M=1, experimental=True)
        self.assertIsNone(late.within_bound)

    def test_cube_root_rational(self):
        """Test the exact cube-root value."""
        d = CubeRootRational(Fraction(-1, 20), 3)
        self.assertLess(abs(d.evaluate(self.ctx) + self.mp.mpf(3) / 10), 1e-18)
        self.assertEqual(str(d), '-1/20 * 6^(3/3)')


class TestParsers(unittest.TestCase):
    """Test cases for the angle and nu parsers and run configuration."""

    def setUp(self):
        self.ctx = PrecisionContext(30)
        self.mp = self.ctx.mp

    def test_angle_fractions(self):
        """Test exact pi-fractions."""
        self.assertEqual(AngleParser.parse('pi/6').pi_multiple, Fraction(1, 6))
        self.assertEqual(AngleParser.parse('6pi/13').pi_multiple, Fraction(6, 13))
        self.assertEqual(AngleParser.parse('7*pi/15').pi_multiple, Fraction(7, 15))
        self.assertEqual(AngleParser.parse('-pi').pi_multiple, Fraction(-1))
        value = AngleParser.parse('pi/3').evaluate(self.ctx)
        self.assertLess(abs(value - self.mp.pi / 3), 1e-29)

    def test_angle_decimal_and_errors(self):
        """Test decimal radians and malformed input."""
        self.assertEqual(AngleParser.parse('1.25').radians, '1.25')
        with self.assertRaises(UsageError):
            AngleParser.parse('pie')
        with self.assertRaises(UsageError):
            AngleParser.parse('pi/0')

    def test_nu_forms(self):
        """Test the three accepted nu forms."""
        nu = NuParser.parse('10').evaluate(self.ctx)
        self.assertEqual(nu.arg, 0)
        nu = NuParser.parse('15@pi').evaluate(self.ctx)
        self.assertLess(abs(nu.arg - self.mp.pi), 1e-29)
        nu = NuParser.parse('3,4').evaluate(self.ctx)
        self.assertLess(abs(nu.modulus - 5), 1e-29)
        with self.assertRaises(UsageError):
            NuParser.parse('ten')

    def test_spec_models(self):
        """Test AngleSpec and NuSpec validation."""
        with self.assertRaises(ValueError):
            AngleSpec()
        with self.assertRaises(ValueError):
            NuSpec(real='1', modulus='1', arg=AngleSpec(radians='0'))

    def test_run_config(self):
        """Test command and precision validation."""
        run = RunConfig(command='eval', digits=30, parameters={'nu': '10'})
        self.assertEqual(run.to_dict()['parameters'], {'nu': '10'})
        with self.assertRaises(ValueError):
            RunConfig(command='plot', digits=30)
        with self.assertRaises(ValueError):
            RunConfig(command='eval', digits=8)


class TestValidators(unittest.TestCase):
    """Test cases for the validator classes and configuration."""

    def test_digits(self):
        """Test precision validation."""
        self.assertTrue(PrecisionValidator.validate_digits(50)[0])
        is_valid, errors = PrecisionValidator.validate_digits(8)
        self.assertFalse(is_valid)
        self.assertEqual(len(errors), 1)
        with self.assertRaises(ValidationError):
            PrecisionValidator.require_digits(8)

    def test_truncation(self):
        """Test index and multiple-of-three validation."""
        self.assertTrue(TruncationValidator.validate_index(3)[0])
        self.assertFalse(TruncationValidator.validate_index(-1)[0])
        self.assertFalse(TruncationValidator.validate_index(5, maximum=4)[0])
        self.assertTrue(TruncationValidator.validate_multiple_of_three({'J': 3, 'L': 0})[0])
        self.assertFalse(TruncationValidator.validate_multiple_of_three({'J': 2})[0])

    def test_digits_override(self):
        """Test the RA_DIGITS environment override."""
        with mock.patch.dict(os.environ, {'RA_DIGITS': '40'}):
            self.assertEqual(config.default_digits(), 40)
        with mock.patch.dict(os.environ, {'RA_DIGITS': '12'}):
            with self.assertRaises(ValidationError):
                config.default_digits()
        with mock.patch.dict(os.environ, {'RA_DIGITS': 'many'}):
            with self.assertRaises(ValidationError):
                config.default_digits()

    def test_settings(self):
        """Test the settings dictionary."""
        settings = config.get_all_settings()
        self.assertEqual(settings['table1_rows']['M'], 33)
        self.assertIn('pdf', settings['export_formats'])


def run_tests():
    """Run all tests."""
    test_classes = [
        TestPrecisionModel,
        TestAlgebraModel,
        TestResultModels,
        TestParsers,
        TestValidators
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

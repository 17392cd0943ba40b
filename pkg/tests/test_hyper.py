"""Test suite for the exponentially improved expansions and Stokes scans."""

import unittest
import os
import sys

# Add src directory to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from models.precision import HPComplex, PrecisionContext
from services.hyper_service import HyperService
from services.oracle_service import OracleService
from services.series_service import SeriesService
from utils.validators import SectorError, ValidationError


class TestImprovedSecb(unittest.TestCase):
    """Test cases for the terminant-corrected sec(beta) expansion."""

    def setUp(self):
        self.ctx = PrecisionContext(30)
        self.mp = self.ctx.mp
        self.hyper = HyperService(self.ctx)
        self.series = SeriesService(self.ctx)
        self.beta = self.mp.pi / 3

    def test_reduces_to_plain_sum(self):
        """Test M = 0 gives the plain partial sum."""
        nu = HPComplex.real(10, self.ctx)
        improved = self.hyper.improved_secb(nu, self.beta, 3, 0)
        self.assertEqual(improved.value, self.series.eval_secb(nu, self.beta, 3).value)

    def test_improves_on_plain_sum(self):
        """Test the corrected value beats the optimally truncated sum by a factor of ten."""
        nu = HPComplex.real(10, self.ctx)
        exact = OracleService(self.ctx).quad_anger(nu, 2).value
        plain = self.series.eval_secb(nu, self.beta, 3).value
        improved = self.hyper.improved_secb(nu, self.beta, 3, 2)
        self.assertLess(10 * abs(improved.value - exact), abs(plain - exact))
        self.assertLess(abs(self.mp.im(improved.value)), 1e-20)
        self.assertIsNotNone(improved.envelope)

    def test_validation(self):
        """Test the M and sector checks."""
        nu = HPComplex.real(10, self.ctx)
        with self.assertRaises(ValidationError):
            self.hyper.improved_secb(nu, self.beta, 2, 5)
        with self.assertRaises(SectorError):
            self.hyper.improved_secb(HPComplex.polar(10, 3 * self.mp.pi / 2 + 0.1, self.ctx), self.beta, 3, 2)


class TestImprovedX1(unittest.TestCase):
    """Test cases for the terminant-corrected x = 1 expansion."""

    def setUp(self):
        self.ctx = PrecisionContext(40)
        self.mp = self.ctx.mp
        self.hyper = HyperService(self.ctx)
        self.series = SeriesService(self.ctx)

    def test_regrouping(self):
        """Test N = M = K = n without corrections equals the plain 3n-term sum."""
        nu = HPComplex.polar(10, self.mp.mpf('0.4'), self.ctx)
        grouped = self.hyper.improved_x1(nu, 2, 2, 2).value
        plain = self.series.eval_x1(nu, 6).value
        self.assertLess(abs(grouped - plain), 1e-35 * abs(plain))

    def test_improves_on_plain_sum(self):
        """Test the corrected value beats the optimally truncated sum."""
        nu = HPComplex.real(5, self.ctx)
        n = self.series.optimal_truncation(nu, 'x1').N
        self.assertEqual(n, 16)
        exact = OracleService(self.ctx).quad_anger(nu, 1).value
        plain = self.hyper.improved_x1(nu, n, n, n).value
        improved = self.hyper.improved_x1(nu, n, n, n, 3, 3, 3).value
        self.assertLess(abs(improved - exact), abs(plain - exact))

    def test_tenfold_improvement(self):
        """Test J = L = Q = 3 beats the optimally truncated sum tenfold at nu = 10."""
        ctx = PrecisionContext(50)
        hyper = HyperService(ctx)
        nu = HPComplex.real(10, ctx)
        n = hyper.series.optimal_truncation(nu, 'x1').N
        self.assertEqual(n, 31)
        exact = OracleService(ctx).quad_anger(nu, 1).value
        plain = hyper.improved_x1(nu, n, n, n).value
        improved = hyper.improved_x1(nu, n, n, n, 3, 3, 3).value
        self.assertLessEqual(10 * abs(improved - exact), abs(plain - exact))

    def test_validation(self):
        """Test multiple-of-three and sector checks."""
        nu = HPComplex.real(10, self.ctx)
        with self.assertRaises(ValidationError):
            self.hyper.improved_x1(nu, 2, 2, 2, J=2)
        with self.assertRaises(SectorError):
            self.hyper.improved_x1(HPComplex.polar(10, 3 * self.mp.pi, self.ctx), 2, 2, 2)


class TestStokesScans(unittest.TestCase):
    """Test cases for the Stokes-line sweeps."""

    def setUp(self):
        self.ctx = PrecisionContext(30)
        self.mp = self.ctx.mp
        self.hyper = HyperService(self.ctx)

    def _check_sweep(self, records, tolerance):
        mp = self.mp
        middle = records[len(records) // 2]
        self.assertLess(abs(mp.re(middle.measured_multiplier) - mp.mpf(1) / 2), tolerance)
        self.assertLess(abs(middle.erf_prediction - mp.mpf(1) / 2), 1e-25)
        real_parts = [mp.re(record.measured_multiplier) for record in records]
        self.assertEqual(real_parts, sorted(real_parts))
        self.assertLess(real_parts[0], 0.2)
        self.assertGreater(real_parts[-1], 0.8)
        self.assertLessEqual(max(record.residual for record in records), tolerance)

    def test_secb_upper_line(self):
        """Test the multiplier switches on smoothly across arg nu = pi/2."""
        records = self.hyper.stokes_scan_secb(30, self.mp.pi / 3)
        self.assertEqual(len(records), 17)
        self._check_sweep(records, 0.05)

    def test_secb_lower_line(self):
        """Test the mirrored line at arg nu = -pi/2."""
        records = self.hyper.stokes_scan_secb(30, self.mp.pi / 3, line=-1)
        middle = records[len(records) // 2]
        self.assertLess(abs(self.mp.re(middle.measured_multiplier) - self.mp.mpf(1) / 2), 0.05)

    def test_x1_line(self):
        """Test the averaged multiplier across arg nu = 3pi/2."""
        records = self.hyper.stokes_scan_x1(20)
        middle = records[len(records) // 2]
        self.assertLess(abs(self.mp.re(middle.measured_multiplier) - self.mp.mpf(1) / 2), 0.05)

    def test_scan_validation(self):
        """Test grid, line and |nu| checks."""
        mp = self.mp
        with self.assertRaises(ValidationError):
            self.hyper.stokes_scan_secb(30, mp.pi / 3, theta_grid=[mp.pi / 2 + 1])
        with self.assertRaises(ValidationError):
            self.hyper.stokes_scan_secb(30, mp.pi / 3, line=2)
        with self.assertRaises(ValidationError):
            self.hyper.stokes_scan_secb(2, mp.pi / 3)
        grid = self.hyper.default_grid(mp.pi / 2, points=5, half_width=mp.mpf('0.2'))
        self.assertEqual(len(grid), 5)
        self.assertLess(abs(grid[0] - (mp.pi / 2 - mp.mpf('0.2'))), 1e-25)


def run_tests():
    """Run all tests."""
    test_classes = [
        TestImprovedSecb,
        TestImprovedX1,
        TestStokesScans
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

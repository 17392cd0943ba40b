"""Test suite for the quadrature oracles and resurgence checks."""

import unittest
import os
import sys
from fractions import Fraction

# Add src directory to path
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src'))

from models.precision import HPComplex, PrecisionContext
from services.coefficient_service import CoefficientService
from services.oracle_service import OracleService
from utils.validators import ResolutionError, SectorError, ValidationError


class TestQuadAnger(unittest.TestCase):
    """Test cases for the direct quadrature of A_{-nu}(nu x)."""

    def setUp(self):
        self.ctx = PrecisionContext(30)
        self.mp = self.ctx.mp
        self.oracle = OracleService(self.ctx)

    def test_elementary_bounds(self):
        """Test 0 < A < 1/(nu (x - 1) pi) for real nu and x > 1."""
        result = self.oracle.quad_anger(HPComplex.real(10, self.ctx), 2)
        self.assertEqual(result.route, 'quad_anger')
        self.assertGreater(self.mp.re(result.value), 0)
        self.assertLess(self.mp.re(result.value), 1 / (10 * self.mp.pi))
        self.assertLess(abs(self.mp.im(result.value)), 1e-28)

    def test_sector_and_input_checks(self):
        """Test the sector limit and positive x."""
        nu = HPComplex.polar(10, self.mp.pi / 2, self.ctx)
        with self.assertRaises(SectorError):
            self.oracle.quad_anger(nu, 2)
        with self.assertRaises(ValidationError):
            self.oracle.quad_anger(HPComplex.real(10, self.ctx), 0)


class TestHankelProfile(unittest.TestCase):
    """Test cases for i H_{it}(itx)."""

    def setUp(self):
        self.ctx = PrecisionContext(30)
        self.mp = self.ctx.mp
        self.oracle = OracleService(self.ctx)
        self.coefficients = CoefficientService()

    def test_positive(self):
        """Test the profile is positive for x >= 1."""
        for t in ('0.2', '1', '3', '12'):
            for x in ('1', '1.5', '2'):
                self.assertGreater(self.oracle.hankel_profile(t, x), 0, f"t={t}, x={x}")

    def test_routes_agree(self):
        """Test the cosine integral against besselk."""
        mp = self.mp
        for t, x in (('0.5', '1.5'), ('2', '1')):
            by_quadrature = self.oracle.hankel_profile(t, x, route='quadrature')
            by_bessel = self.oracle.hankel_profile(t, x, route='besselk')
            self.assertLess(abs(by_quadrature / by_bessel - 1), 1e-20, f"t={t}, x={x}")

    def test_debye_expansion(self):
        """Test the large-t expansion stays within its remainder bound."""
        mp = self.mp
        beta = mp.pi / 3
        t = mp.mpf(5)
        s = mp.tan(beta) - beta
        prefactor = mp.exp(-t * s) / mp.sqrt(t * mp.pi * mp.tan(beta) / 2)
        M = 6
        partial = mp.zero
        for m in range(M):
            partial += mp.re(1j ** m * self.coefficients.u_at_icotbeta(m, beta, self.ctx)) / t ** m
        exact = self.oracle.hankel_profile(t, 2)
        remainder = abs(exact / prefactor - partial)
        self.assertLessEqual(remainder, abs(self.coefficients.u_at_icotbeta(M, beta, self.ctx)) / t ** M)

    def test_resolution_limit(self):
        """Test the cosine integral refuses t beyond the precision."""
        with self.assertRaises(ResolutionError):
            self.oracle.hankel_profile(40, 1, route='quadrature')
        with self.assertRaises(ValidationError):
            self.oracle.hankel_profile(1, '0.5')
        with self.assertRaises(ValidationError):
            self.oracle.hankel_profile(1, 2, route='series')


class TestResurgence(unittest.TestCase):
    """Test cases for the resurgence identities."""

    def setUp(self):
        self.ctx = PrecisionContext(20)
        self.mp = self.ctx.mp
        self.oracle = OracleService(self.ctx)

    def test_an_integral(self):
        """Test |a_2(-2)| = 19/12 from its profile integral."""
        value = self.oracle.an_integral(2, self.mp.pi / 3)
        self.assertEqual(abs(CoefficientService().an_recurrence(2).evaluate(Fraction(-2))), Fraction(19, 12))
        self.assertLess(abs(value / (self.mp.mpf(19) / 12) - 1), 1e-8)

    def test_d2n_integral(self):
        """Test d_2 = -3/10 from its profile integral."""
        value = self.oracle.d2n_integral(1)
        self.assertLess(abs(value / (-self.mp.mpf(3) / 10) - 1), 1e-8)

    def test_secb_remainder(self):
        """Test the sec(beta) remainder integral against quadrature."""
        for N in (0, 2):
            residual = self.oracle.resurgence_check_secb(10, self.mp.pi / 3, N)
            self.assertLess(residual, 1e-8, f"N={N}")

    def test_x1_remainder(self):
        """Test the x = 1 remainder integral against quadrature."""
        residual = self.oracle.resurgence_check_x1(20, 0)
        self.assertLess(residual, 1e-8)

    def test_hankel_reference_values(self):
        """Test the Hankel reference values against mpmath."""
        mp = self.mp
        value = self.oracle.hankel_value(30, mp.pi / 3)
        expected = self.oracle.hankel_value(30, mp.pi / 3, route='mpmath')
        self.assertLess(abs(value / expected - 1), 1e-10)
        value = self.oracle.hankel_value_x1(20)
        expected = self.oracle.hankel_value_x1(20, route='mpmath')
        self.assertLess(abs(value / expected - 1), 1e-8)

    def test_real_nu_required(self):
        """Test complex or negative nu is rejected."""
        with self.assertRaises(ValidationError):
            self.oracle.resurgence_check_x1(-5, 0)
        with self.assertRaises(ValidationError):
            self.oracle.hankel_value(-5, self.mp.pi / 3)


def run_tests():
    """Run all tests."""
    test_classes = [
        TestQuadAnger,
        TestHankelProfile,
        TestResurgence
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

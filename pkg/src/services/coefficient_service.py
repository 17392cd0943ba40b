"""Exact generation of the expansion coefficient families."""

import logging
import os
import sys
import threading
from fractions import Fraction
from math import comb, factorial
from typing import Any, Dict, List, Tuple

# Add parent directory for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.algebra import Polynomial, PowerSeries, RationalFunction
from models.precision import PrecisionContext
from models.results import CubeRootRational
from utils.validators import ValidationError


class CoefficientService:
    """Exact a_n(lambda), d_2n, U_n, b_n, generalized Bernoulli and Lauwerier values.

    Results are memoized per (family, n) in class-level caches shared by all
    instances; a single lock serializes writers, readers see finished entries only.
    """

    _lock = threading.RLock()
    _an_cache: List[RationalFunction] = []
    _un_cache: List[Polynomial] = []
    _d2n_cache: Dict[int, CubeRootRational] = {}
    _meijer_cache: Dict[int, RationalFunction] = {}
    _d2n_value_cache: Dict[Tuple[int, int], Any] = {}

    D2N_GUARD_DIGITS = 20

    def __init__(self):
        self.logger = logging.getLogger(__name__)

    @staticmethod
    def _require_n(n: int):
        if not isinstance(n, int) or n < 0:
            raise ValidationError(f"n must be a non-negative integer, got {n!r}")

    # a_n(lambda) -------------------------------------------------------

    def an_recurrence(self, n: int) -> RationalFunction:
        """a_n from the differential-equation recurrence, a_0 = 1/(1+x)."""
        self._require_n(n)
        with self._lock:
            cache = CoefficientService._an_cache
            if not cache:
                cache.append(RationalFunction(Polynomial.constant(1), Polynomial.one_plus_x_power(1)))
            numerator = cache[-1].numerator
            k = cache[-1].one_plus_x_exponent()
            while len(cache) <= n:
                m = len(cache)
                numerator, k = self._an_step(numerator, k, m)
                cache.append(RationalFunction(numerator, Polynomial.one_plus_x_power(k)))
                self.logger.debug(f"a_{m}(x) generated, denominator (1+x)^{k}")
            return cache[n]

    @staticmethod
    def _an_step(P: Polynomial, k: int, n: int) -> Tuple[Polynomial, int]:
        """One step a_{n-1} = P/(1+x)^k  ->  a_n = P_new/(1+x)^{k_new}."""
        x = Polynomial.x()
        one_plus = Polynomial((1, 1))
        dP = P.derivative()
        ddP = dP.derivative()
        # x*a'' + a' over (1+x)^{k+2}
        second = (ddP * one_plus * one_plus - dP * one_plus * (2 * k) + P * (k * (k + 1))) * x
        first = (dP * one_plus - P * k) * one_plus
        numerator = (second + first) * x
        # divide by (1 - x) and by 2n(2n-1); the (1+x) of 1 - x^2 joins the denominator
        numerator = numerator.exact_div(Polynomial((1, -1))) * Fraction(1, 2 * n * (2 * n - 1))
        k_new = k + 3
        while k_new > 0 and not numerator.is_zero():
            quotient, remainder = numerator.divmod(one_plus)
            if not remainder.is_zero():
                break
            numerator, k_new = quotient, k_new - 1
        return numerator, k_new

    def gen_bernoulli(self, m: int, kappa, ell) -> Fraction:
        """B_m^{(kappa)}(ell) from (z/(e^z - 1))^kappa e^{ell z}."""
        self._require_n(m)
        kappa = Fraction(kappa)
        ell = Fraction(ell)
        g = PowerSeries.from_function(lambda k: Fraction(1, factorial(k + 1)), m)
        series = g.power(-kappa) * PowerSeries.exponential(ell, m)
        return series.coefficient(m) * factorial(m)

    def an_meijer(self, n: int) -> RationalFunction:
        """a_n from the explicit double sum over generalized Bernoulli values."""
        self._require_n(n)
        with self._lock:
            cached = CoefficientService._meijer_cache.get(n)
            if cached is not None:
                return cached

        bernoulli = [self.gen_bernoulli(2 * n, -j, Fraction(-j, 2)) for j in range(n + 1)]
        scale = Fraction(2 ** (2 * n), factorial(2 * n))
        x = Polynomial.x()
        one_plus = Polynomial((1, 1))
        numerator = Polynomial(())
        for k in range(n + 1):
            c_nk = scale * sum((-1) ** (k - j) * comb(k, j) * bernoulli[j] for j in range(k + 1))
            weight = (-1) ** k * comb(2 * n + k, k) * c_nk
            if weight == 0:
                continue
            term = Polynomial.constant(weight)
            for _ in range(k):
                term = term * x
            for _ in range(n - k):
                term = term * one_plus
            numerator = numerator + term
        result = RationalFunction(numerator, Polynomial.one_plus_x_power(3 * n + 1))
        with self._lock:
            CoefficientService._meijer_cache[n] = result
        return result

    def lauwerier_polynomials(self, n: int, lam) -> List[Polynomial]:
        """P_0..P_n with P_n = -sum_k lam/(2k+1)! * integral_0^x P_{n-k}."""
        lam = Fraction(lam)
        polys = [Polynomial.constant(1)]
        for m in range(1, n + 1):
            acc = Polynomial(())
            for k in range(1, m + 1):
                acc = acc + polys[m - k].integral() * Fraction(1, factorial(2 * k + 1))
            polys.append(acc * (-lam))
        return polys

    def an_lauwerier(self, n: int, lam) -> Fraction:
        """a_n(lam) by exact Laplace transform of the Lauwerier polynomial."""
        self._require_n(n)
        lam = Fraction(lam)
        if lam == -1:
            raise ValidationError("a_n(lambda) has a pole at lambda = -1")
        P = self.lauwerier_polynomials(n, lam)[n]
        c = 1 + lam
        total = Fraction(0)
        for j, p_j in enumerate(P.coefficients):
            if p_j:
                total += p_j * factorial(2 * n + j) / c ** (2 * n + j + 1)
        return total / factorial(2 * n)

    def an_taylor(self, n: int, lam) -> Fraction:
        """a_n(lam) as the t^{2n} coefficient of (t/(lam sinh t + t))^{2n+1}."""
        self._require_n(n)
        lam = Fraction(lam)
        if lam == -1:
            raise ValidationError("a_n(lambda) has a pole at lambda = -1")
        # series in u = t^2 of (lam sinh t + t)/t
        s = PowerSeries.from_function(
            lambda k: 1 + lam if k == 0 else lam / factorial(2 * k + 1), n)
        return s.power(-(2 * n + 1)).coefficient(n)

    def an_value(self, n: int, lam):
        """a_n at a high-precision point."""
        return self.an_recurrence(n).evaluate(lam)

    # d_2n ------------------------------------------------------------------

    def d2n(self, n: int) -> CubeRootRational:
        """d_2n = 6^{(2n+1)/3} * [u^n] h(u)^{-(2n+1)/3}, h = 6(sinh t - t)/t^3, u = t^2."""
        self._require_n(n)
        with self._lock:
            cached = CoefficientService._d2n_cache.get(n)
            if cached is not None:
                return cached
        h = PowerSeries.from_function(lambda k: Fraction(6, factorial(2 * k + 3)), n)
        rational = h.power(Fraction(-(2 * n + 1), 3)).coefficient(n)
        result = CubeRootRational(rational, 2 * n + 1)
        with self._lock:
            CoefficientService._d2n_cache[n] = result
        return result

    def d2n_value(self, n: int, ctx: PrecisionContext):
        """d_2n rounded to the context, from the same power recurrence in floating point.

        Numerical callers use this route; the x = 1 truncations reach n near 100,
        where the exact rationals of ``d2n`` are impractical.
        """
        self._require_n(n)
        key = (n, ctx.digits)
        with self._lock:
            cached = CoefficientService._d2n_value_cache.get(key)
        mp = ctx.mp
        if cached is not None:
            return mp.mpf(cached)
        # alternating terms cancel by up to about n digits
        with mp.workdps(ctx.digits + self.D2N_GUARD_DIGITS + n):
            h = [6 / mp.factorial(2 * k + 3) for k in range(n + 1)]
            alpha = -mp.mpf(2 * n + 1) / 3
            f = [mp.one]
            for k in range(1, n + 1):
                acc = mp.fsum((alpha * j - (k - j)) * h[j] * f[k - j] for j in range(1, k + 1))
                f.append(acc / k)
            value = f[n] * mp.cbrt(6) ** (2 * n + 1)
        value = +value
        with self._lock:
            CoefficientService._d2n_value_cache[key] = value
        return value

    # U_n and b_n -----------------------------------------------------------

    def un_polynomial(self, n: int) -> Polynomial:
        """U_n = x^2(1-x^2)U'_{n-1}/2 + (1/8) integral_0^x (1-5t^2) U_{n-1}."""
        self._require_n(n)
        with self._lock:
            cache = CoefficientService._un_cache
            if not cache:
                cache.append(Polynomial.constant(1))
            half_weight = Polynomial((0, 0, Fraction(1, 2), 0, Fraction(-1, 2)))
            kernel = Polynomial((Fraction(1, 8), 0, Fraction(-5, 8)))
            while len(cache) <= n:
                prev = cache[-1]
                cache.append(half_weight * prev.derivative() + (kernel * prev).integral())
            return cache[n]

    def u_at_icotbeta(self, m: int, beta, ctx: PrecisionContext):
        """U_m(i cot beta)."""
        mp = ctx.mp
        beta = mp.mpf(beta)
        if not 0 < beta < mp.pi / 2:
            raise ValidationError("beta must lie in (0, pi/2)")
        return self.un_polynomial(m).evaluate(mp.mpc(0, mp.cot(beta)))

    @staticmethod
    def bn_scalar(n: int) -> Fraction:
        """(-1)^n 4^n n!/(2n)!."""
        return Fraction((-1) ** n * 4 ** n * factorial(n), factorial(2 * n))

    def bn_coeff(self, n: int, alpha, ctx: PrecisionContext):
        """b_n(sech alpha) = (-1)^n 4^n n!/((2n)! tanh^{1/2} alpha) U_n(coth alpha)."""
        self._require_n(n)
        mp = ctx.mp
        alpha = mp.mpf(alpha)
        if alpha <= 0:
            raise ValidationError("alpha must be positive")
        scalar = self.bn_scalar(n)
        u_value = self.un_polynomial(n).evaluate(mp.coth(alpha))
        return mp.mpf(scalar.numerator) / scalar.denominator * u_value / mp.sqrt(mp.tanh(alpha))

"""Independent quadrature oracles for the Anger-Weber function and its resurgence data."""

import logging
import os
import sys
from typing import Optional

# Add parent directory for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.precision import HPComplex, PrecisionContext
from models.results import OracleValue
from services.coefficient_service import CoefficientService
from services.hpmath_service import HPMathService
from services.series_service import SeriesService
from utils.config import config
from utils.validators import ResolutionError, SectorError, ValidationError


class OracleService:
    """Reference values by direct quadrature.

    Resurgence checks nest a Hankel-profile evaluation inside an outer
    integral, so they run in a reduced-precision context of
    ``config.RESURGENCE_DIGITS`` digits.
    """

    def __init__(self, ctx: PrecisionContext, coefficient_service: Optional[CoefficientService] = None):
        self.logger = logging.getLogger(__name__)
        self.ctx = ctx
        self.mp = ctx.mp
        self.hpmath = HPMathService(ctx)
        self.coefficients = coefficient_service or CoefficientService()

    def _resurgence_oracle(self) -> 'OracleService':
        digits = min(self.ctx.digits, config.RESURGENCE_DIGITS)
        if digits == self.ctx.digits:
            return self
        return OracleService(PrecisionContext(digits), self.coefficients)

    # A_{-nu}(nu x) -------------------------------------------------------

    def quad_anger(self, nu: HPComplex, x) -> OracleValue:
        """(1/pi) integral_0^inf exp(-nu (x sinh t - t)) dt."""
        mp = self.mp
        x = mp.mpf(x)
        if not x > 0:
            raise ValidationError("x must be positive")
        sector = mp.pi * config.ORACLE_SECTOR.numerator / config.ORACLE_SECTOR.denominator
        if abs(nu.arg) > sector:
            raise SectorError(f"oracle quadrature needs |arg nu| <= {config.ORACLE_SECTOR}*pi")
        v = nu.value
        modulus = nu.modulus

        def integrand(t):
            return mp.exp(-v * (x * mp.sinh(t) - t))

        points = [mp.cbrt(6 / modulus)]
        if x < 1:
            points.append(mp.acosh(1 / x))
        elif x > 1:
            points.append(1 / (modulus * (x - 1)))
        value, error = self.hpmath.quad_semiinfinite(integrand, points=points)
        self.logger.debug(f"quad_anger(nu={mp.nstr(v, 8)}, x={mp.nstr(x, 8)}) error {mp.nstr(error, 3)}")
        return OracleValue(value=value / mp.pi, route='quad_anger', quad_error_estimate=error / mp.pi)

    # Hankel profile iH_{it}(itx) ------------------------------------------

    def hankel_profile(self, t, x, route: str = 'auto'):
        """i H^(1)_{it}(itx) = (2/pi) e^{pi t/2} K_{it}(tx), non-negative for x >= 1."""
        mp = self.mp
        t = mp.mpf(t)
        x = mp.mpf(x)
        if not t > 0:
            raise ValidationError("t must be positive")
        if x < 1:
            raise ValidationError("the Hankel profile is used for x >= 1 only")
        if route == 'auto':
            route = 'quadrature' if t * x < config.PROFILE_SPLIT else 'besselk'

        if route == 'besselk':
            k = mp.re(mp.besselk(mp.mpc(0, t), t * x))
        elif route == 'quadrature':
            if t > self.ctx.digits:
                raise ResolutionError(f"t={mp.nstr(t, 5)} exceeds t_max={self.ctx.digits} at this precision")
            guard = config.QUAD_GUARD_DIGITS + int(mp.ceil(t * mp.pi / (2 * mp.ln(10))))

            def integrand(u):
                return mp.exp(-t * x * mp.cosh(u)) * mp.cos(t * u)

            points = [mp.acosh(1 / (t * x))] if t * x < 1 else []
            k, _ = self.hpmath.quad_semiinfinite(integrand, points=points, guard_digits=guard)
        else:
            raise ValidationError(f"Unknown profile route: {route}")
        return 2 / mp.pi * mp.exp(mp.pi * t / 2) * k

    def _cutoff(self, decay, power):
        """T with e^{-T decay} T^power below 10^-digits."""
        mp = self.mp
        goal = self.ctx.digits * mp.ln(10)
        T = mp.mpf(1)
        for _ in range(50):
            T = (goal + power * mp.ln(max(T, mp.one))) / decay
        return T

    def _outer(self, integrand, decay, power, points=()):
        value, _ = self.hpmath.quad_semiinfinite(integrand, points=points, upper=self._cutoff(decay, power))
        return value

    # sec(beta) resurgence ------------------------------------------------

    def _secb_remainder_integral(self, nu, beta, N: int):
        mp = self.mp
        x = mp.sec(beta)
        s = mp.tan(beta) - beta
        nu = mp.mpf(nu)

        def integrand(t):
            return t ** (2 * N) / (1 + (t / nu) ** 2) * self.hankel_profile(t, x)

        points = [1 / x, max(mp.mpf(2 * N) / s, mp.one)]
        integral = self._outer(integrand, s, 2 * N, points)
        return (-1) ** N * integral / (mp.pi * nu ** (2 * N + 1))

    def resurgence_check_secb(self, nu, beta, N: int):
        """Relative gap between the remainder integral and quad_anger - eval_secb."""
        inner = self._resurgence_oracle()
        mp = inner.mp
        nu = mp.mpf(nu)
        beta = mp.mpf(beta)
        if not nu > 0:
            raise ValidationError("resurgence checks need real positive nu")
        nu_hp = HPComplex.real(nu, inner.ctx)
        series = SeriesService(inner.ctx, inner.coefficients)
        direct = inner.quad_anger(nu_hp, mp.sec(beta)).value - series.eval_secb(nu_hp, beta, N).value
        integral = inner._secb_remainder_integral(nu, beta, N)
        residual = abs(integral - direct) / abs(direct)
        self.logger.info(f"resurgence secb nu={mp.nstr(nu, 6)}, N={N}: residual {mp.nstr(residual, 3)}")
        return residual

    def an_integral(self, n: int, beta):
        """(1/(2n)!) integral_0^inf t^{2n} profile(t, sec beta) dt = |a_n(-sec beta)|."""
        mp = self.mp
        beta = mp.mpf(beta)
        x = mp.sec(beta)
        s = mp.tan(beta) - beta

        def integrand(t):
            return t ** (2 * n) * self.hankel_profile(t, x)

        integral = self._outer(integrand, s, 2 * n, [1 / x, max(mp.mpf(2 * n) / s, mp.one)])
        return integral / mp.factorial(2 * n)

    # x = 1 resurgence ----------------------------------------------------

    def d2n_integral(self, n: int):
        """d_2n from its e^{-2 pi t}-weighted profile integral."""
        mp = self.mp
        p = mp.mpf(2 * n - 2) / 3

        def integrand(t):
            return t ** p * mp.exp(-2 * mp.pi * t) * self.hankel_profile(t, 1)

        integral = self._outer(integrand, 2 * mp.pi, max(p, mp.zero), [mp.one])
        return (-1) ** n * integral / mp.gamma(mp.mpf(2 * n + 1) / 3)

    def _x1_remainder_integral(self, nu, N: int):
        mp = self.mp
        nu = mp.mpf(nu)
        p = mp.mpf(2 * N - 2) / 3

        def integrand(t):
            return t ** p * mp.exp(-2 * mp.pi * t) / (1 + mp.cbrt(t / nu) ** 2) * self.hankel_profile(t, 1)

        integral = self._outer(integrand, 2 * mp.pi, max(p, mp.zero), [mp.one])
        return (-1) ** N * integral / (3 * mp.pi * nu ** (mp.mpf(2 * N + 1) / 3))

    def resurgence_check_x1(self, nu, N: int):
        inner = self._resurgence_oracle()
        mp = inner.mp
        nu = mp.mpf(nu)
        if not nu > 0:
            raise ValidationError("resurgence checks need real positive nu")
        nu_hp = HPComplex.real(nu, inner.ctx)
        series = SeriesService(inner.ctx, inner.coefficients)
        direct = inner.quad_anger(nu_hp, 1).value - series.eval_x1(nu_hp, N).value
        integral = inner._x1_remainder_integral(nu, N)
        residual = abs(integral - direct) / abs(direct)
        self.logger.info(f"resurgence x1 nu={mp.nstr(nu, 6)}, N={N}: residual {mp.nstr(residual, 3)}")
        return residual

    # Hankel reference values ---------------------------------------------

    def hankel_value(self, nu, beta, M: int = 10, route: str = 'resurgence'):
        """H^(1)_nu(nu sec beta) for real nu: M-term sum plus the remainder integral."""
        mp = self.mp
        nu = mp.mpf(nu)
        beta = mp.mpf(beta)
        if not nu > 0:
            raise ValidationError("reference Hankel values need real positive nu")
        if route == 'mpmath':
            return mp.hankel1(nu, nu * mp.sec(beta))
        if route != 'resurgence':
            raise ValidationError(f"Unknown Hankel route: {route}")

        inner = self._resurgence_oracle()
        imp = inner.mp
        x = imp.sec(beta)
        s = imp.tan(beta) - beta
        cot = imp.cot(beta)

        def integrand(t):
            return t ** (M - imp.mpf(1) / 2) * imp.exp(-t * s) / (1 + 1j * t / nu) \
                * (1 + imp.exp(-2 * imp.pi * t)) * inner.hankel_profile(t, x)

        integral = inner._outer(integrand, s, M, [1 / x, max(imp.mpf(M) / s, imp.one)])
        remainder = integral / (2 * imp.sqrt(2 * imp.pi * cot) * (1j * nu) ** M)

        series = SeriesService(self.ctx, self.coefficients)
        nu_hp = HPComplex.real(nu, self.ctx)
        partial = series.eval_hankel_secb(nu_hp, beta, M).value
        return partial + series.hankel_secb_prefactor(nu_hp, beta) * mp.mpc(remainder)

    def hankel_value_x1(self, nu, N: int = 10, route: str = 'resurgence'):
        """H^(1)_nu(nu) for real nu: N-term sum plus the remainder integral."""
        mp = self.mp
        nu = mp.mpf(nu)
        if not nu > 0:
            raise ValidationError("reference Hankel values need real positive nu")
        if route == 'mpmath':
            return mp.hankel1(nu, nu)
        if route != 'resurgence':
            raise ValidationError(f"Unknown Hankel route: {route}")

        inner = self._resurgence_oracle()
        imp = inner.mp
        p = imp.mpf(2 * N - 2) / 3
        rotation = imp.expjpi(imp.mpf(2 * N + 1) / 3)
        turn = imp.expjpi(imp.mpf(2) / 3)

        def integrand(t):
            r = imp.cbrt(t / nu) ** 2
            kernel = rotation / (1 + r * turn) + 1 / (1 + r)
            # H_{it}(it) = -i * profile
            return t ** p * imp.exp(-2 * imp.pi * t) * kernel * (-1j) * inner.hankel_profile(t, 1)

        integral = inner._outer(integrand, 2 * imp.pi, max(p, imp.zero), [imp.one])
        remainder = (-1) ** N * integral / (3 * imp.pi * nu ** (imp.mpf(2 * N + 1) / 3))

        series = SeriesService(self.ctx, self.coefficients)
        partial = series.eval_hankel_x1(HPComplex.real(nu, self.ctx), N).value
        return partial + mp.mpc(remainder)

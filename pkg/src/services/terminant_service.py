"""The scaled Terminant function and its error-function asymptotics."""

import logging
import os
import sys

# Add parent directory for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.precision import HPComplex, PrecisionContext
from models.results import TerminantEval
from services.hpmath_service import HPMathService
from utils.validators import ConvergenceError, SectorError, ValidationError


class TerminantService:
    """T^_p(w) = e^{pi i p} Gamma(p) Gamma(1-p, w) / (2 pi i), continued in arg w.

    The incomplete-gamma reduction is the primary route; the defining
    integral is available for |arg w| < pi as an independent check.
    """

    NEWTON_MAX_ITERATIONS = 100
    PATH_STEP = 0.25

    def __init__(self, ctx: PrecisionContext):
        self.logger = logging.getLogger(__name__)
        self.ctx = ctx
        self.mp = ctx.mp
        self.hpmath = HPMathService(ctx)

    def _require_p(self, p):
        p = self.mp.mpf(p)
        if not p > 0:
            raise ValidationError(f"Terminant order must be positive, got {self.mp.nstr(p, 10)}")
        return p

    # T^_p(w) -----------------------------------------------------------------

    def terminant(self, p, w: HPComplex, route: str = 'incgamma', target=None) -> TerminantEval:
        p = self._require_p(p)
        if w.modulus == 0:
            raise ValidationError("Terminant argument must be non-zero")
        if route == 'incgamma':
            value, sheet = self._incgamma_route(p, w)
        elif route == 'quadrature':
            value, sheet = self._quadrature_route(p, w, target), 0
        else:
            raise ValidationError(f"Unknown terminant route: {route}")
        return TerminantEval(p=p, w=w, value=value, route=route, sheet=sheet)

    def value(self, p, w: HPComplex):
        """Shortcut returning only the incomplete-gamma value."""
        return self._incgamma_route(self._require_p(p), w)[0]

    def _incgamma_route(self, p, w: HPComplex):
        mp = self.mp
        phi = mp.mpf(w.arg)
        k = int(mp.ceil((phi - mp.pi) / (2 * mp.pi)))
        phi0 = phi - 2 * k * mp.pi
        snap = mp.mpf(10) ** (-(self.ctx.digits - 5))
        if abs(phi0 + mp.pi) < snap:
            k -= 1
            phi0 = mp.pi
        if abs(phi0 - mp.pi) < snap:
            w0 = mp.mpc(-w.modulus, 0)
        else:
            w0 = mp.mpc(w.modulus * mp.cos(phi0), w.modulus * mp.sin(phi0))

        g = self.hpmath.gamma(p) * self.hpmath.upper_incomplete_gamma(1 - p, w0)
        if k != 0:
            g = mp.expjpi(-2 * k * p) * g \
                + 2j * mp.pi * mp.expjpi(-k * p) * self.hpmath.chebyshev_ratio(k, p)
        return mp.expjpi(p) * g / (2j * mp.pi), k

    def _quadrature_route(self, p, w: HPComplex, target):
        mp = self.mp
        if not abs(w.arg) < mp.pi:
            raise SectorError("the defining integral needs |arg w| < pi")
        z = w.value
        # integrand normalized to O(1) so the absolute quad estimate is relative
        log_scale = mp.loggamma(p) - mp.log(w.modulus + p)

        def integrand(t):
            if t == 0:
                return mp.zero if p > 1 else mp.exp(-log_scale) / z
            return mp.exp((p - 1) * mp.log(t) - t - log_scale) / (z + t)

        integral, _ = self.hpmath.quad_semiinfinite(integrand, points=(p, w.modulus), target=target)
        return mp.expjpi(p) * w.power(1 - p, self.ctx) * mp.exp(log_scale - z) * integral / (2j * mp.pi)

    # c(phi) ----------------------------------------------------------------

    def _implicit_rhs(self, delta):
        mp = self.mp
        return 1 + 1j * delta - mp.expj(delta)

    def _newton(self, delta, seed):
        mp = self.mp
        g = self._implicit_rhs(delta)
        c = mp.mpc(seed)
        tolerance = mp.mpf(10) ** (-(self.ctx.digits - 2))
        for _ in range(self.NEWTON_MAX_ITERATIONS):
            step = c / 2 - g / c
            c -= step
            if abs(step) <= tolerance * abs(c):
                return c
        raise ConvergenceError(f"Newton iteration for c(phi) stalled at phi - pi = {mp.nstr(delta, 10)}")

    def c_of_phi(self, phi):
        """Solution of c^2/2 = 1 + i(phi - pi) - e^{i(phi - pi)} with c ~ phi - pi near pi."""
        mp = self.mp
        phi = mp.mpf(phi)
        if not -mp.pi < phi < 3 * mp.pi:
            raise SectorError("c(phi) is continued along (-pi, 3pi) only")
        delta = phi - mp.pi
        if delta == 0:
            return mp.mpc(0)

        def quartic(d):
            return d + 1j * d ** 2 / 6 - d ** 3 / 36 - 1j * d ** 4 / 270

        start = min(abs(delta), mp.mpf(self.PATH_STEP))
        direction = 1 if delta > 0 else -1
        d = direction * start
        c = self._newton(d, quartic(d))
        previous_d, previous_c = mp.zero, mp.mpc(0)
        while abs(d) < abs(delta):
            next_d = direction * min(abs(d) + self.PATH_STEP, abs(delta))
            slope = (c - previous_c) / (d - previous_d)
            seed = c + slope * (next_d - d)
            previous_d, previous_c = d, c
            d, c = next_d, self._newton(next_d, seed)

        residual = abs(c * c / 2 - self._implicit_rhs(delta))
        if residual > mp.mpf(10) ** (-(self.ctx.digits - 5)):
            raise ConvergenceError(f"c(phi) residual {mp.nstr(residual, 5)} above tolerance")
        return c

    def terminant_erf_model(self, p, w: HPComplex):
        """Main erf term of the uniform asymptotics; reflected form for arg w < 0."""
        mp = self.mp
        p = self._require_p(p)
        phi = mp.mpf(w.arg)
        if not -3 * mp.pi < phi < 3 * mp.pi:
            raise SectorError("erf model holds for |arg w| < 3pi")
        scale = mp.sqrt(w.modulus / 2)
        if phi >= 0:
            return (1 + mp.erf(self.c_of_phi(phi) * scale)) / 2
        c = mp.conj(self.c_of_phi(-phi))
        return mp.expjpi(2 * p) * (-1 + mp.erf(-c * scale)) / 2

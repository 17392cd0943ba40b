"""Certified remainder bounds for the sec(beta) and x = 1 expansions."""

import logging
import os
import sys
from math import factorial
from typing import Optional

# Add parent directory for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.precision import HPComplex, PrecisionContext
from models.results import ErrorBound, ExcessInterval
from services.coefficient_service import CoefficientService
from utils.validators import ValidationError


class BoundService:
    """Error bounds taking the minimum over every formula valid at (theta, N)."""

    def __init__(self, ctx: PrecisionContext, coefficient_service: Optional[CoefficientService] = None):
        self.logger = logging.getLogger(__name__)
        self.ctx = ctx
        self.mp = ctx.mp
        self.coefficients = coefficient_service or CoefficientService()

    def _on_line(self, theta, line) -> bool:
        return abs(theta - line) <= 10 * self.ctx.eps() * max(1, abs(line))

    def secb_first_omitted(self, nu_value, beta, N: int):
        """-(1/pi)(2N)! a_N(-sec beta) / nu^{2N+1}."""
        mp = self.mp
        a_N = self.coefficients.an_value(N, -mp.sec(beta))
        return -factorial(2 * N) * a_N / (mp.pi * mp.power(nu_value, 2 * N + 1))

    def x1_first_omitted(self, nu: HPComplex, N: int):
        """(1/(3pi)) d_2N Gamma((2N+1)/3) / nu^{(2N+1)/3} on the carried branch."""
        mp = self.mp
        p = mp.mpf(2 * N + 1) / 3
        d = self.coefficients.d2n_value(N, self.ctx)
        return d * mp.gamma(p) * nu.power(-p, self.ctx) / (3 * mp.pi)

    def bound_secb(self, nu: HPComplex, beta, N: int) -> ErrorBound:
        """Bound on |R_N(nu, beta)| for |arg nu| <= pi/2."""
        mp = self.mp
        beta = mp.mpf(beta)
        if not 0 < beta < mp.pi / 2:
            raise ValidationError("beta must lie in (0, pi/2)")
        theta = abs(nu.arg)
        quarter, half = mp.pi / 4, mp.pi / 2

        stokes = mp.sqrt(mp.e * (N + mp.mpf(3) / 2) / 2)
        if theta <= quarter:
            factor, tag = mp.one, 'csc_secb'
        elif theta < half and not self._on_line(theta, half):
            factor, tag = 1 / abs(mp.sin(2 * theta)), 'csc_secb'
            threshold = quarter + mp.atan(1 / mp.sqrt(mp.mpf(5) / 2))
            if (N >= 1 or theta > threshold) and stokes < factor:
                factor, tag = stokes, 'stokes_secb'
        elif self._on_line(theta, half):
            factor, tag = stokes, 'stokes_secb'
        else:
            self.logger.debug(f"No sec(beta) bound for |arg nu| = {mp.nstr(theta, 8)}")
            return ErrorBound(radius=None, formula_tag='stokes_secb', valid=False)

        base = abs(self.coefficients.an_value(N, -mp.sec(beta))) * factorial(2 * N) \
            / (mp.pi * nu.modulus ** (2 * N + 1))
        return ErrorBound(radius=base * factor, formula_tag=tag, valid=True, factor=factor)

    def bound_x1(self, nu: HPComplex, N: int) -> ErrorBound:
        """Bound on |R_N(nu)| for |arg nu| <= 3pi/2."""
        mp = self.mp
        theta = abs(nu.arg)
        line = 3 * mp.pi / 2

        stokes = mp.sqrt(3 * mp.e * (N + 2) / 2)
        if theta <= 3 * mp.pi / 4:
            factor, tag = mp.one, 'csc_x1'
        elif theta < line and not self._on_line(theta, line):
            factor, tag = 1 / abs(mp.sin(2 * theta / 3)), 'csc_x1'
            if stokes < factor:
                factor, tag = stokes, 'stokes_x1'
        elif self._on_line(theta, line):
            factor, tag = stokes, 'stokes_x1'
        else:
            return ErrorBound(radius=None, formula_tag='stokes_x1', valid=False)

        p = mp.mpf(2 * N + 1) / 3
        base = abs(self.coefficients.d2n_value(N, self.ctx)) * mp.gamma(p) \
            / (3 * mp.pi * nu.modulus ** p)
        return ErrorBound(radius=base * factor, formula_tag=tag, valid=True, factor=factor)

    def excess_certificate(self, nu: HPComplex, case: str, N: int, beta=None) -> ExcessInterval:
        """Interval between 0 and the first omitted term; the true remainder lies inside."""
        mp = self.mp
        if nu.arg != 0 or nu.im != 0 or not nu.modulus > 0:
            raise ValidationError("excess certificates need real positive nu")
        if case == 'secb':
            if beta is None:
                raise ValidationError("beta is required for the sec(beta) case")
            term = mp.re(self.secb_first_omitted(nu.value, mp.mpf(beta), N))
        elif case == 'x1':
            term = mp.re(self.x1_first_omitted(nu, N))
        else:
            raise ValidationError(f"Unknown case: {case}")
        return ExcessInterval(lower=min(mp.zero, term), upper=max(mp.zero, term),
                              first_omitted_term=term)

"""Exponentially improved expansions and Stokes-line scans."""

import logging
import os
import sys
from typing import List, Optional, Sequence

# Add parent directory for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.precision import HPComplex, PrecisionContext
from models.results import AsymptoticValue, ScanRecord, TruncationIndices
from services.coefficient_service import CoefficientService
from services.series_service import SeriesService
from services.terminant_service import TerminantService
from utils.config import config
from utils.validators import SectorError, TruncationValidator, ValidationError


class HyperService:
    """Terminant-corrected expansions for x = sec(beta) and x = 1."""

    def __init__(self, ctx: PrecisionContext, coefficient_service: Optional[CoefficientService] = None,
                 series_service: Optional[SeriesService] = None):
        self.logger = logging.getLogger(__name__)
        self.ctx = ctx
        self.mp = ctx.mp
        self.coefficients = coefficient_service or CoefficientService()
        self.series = series_service or SeriesService(ctx, self.coefficients)
        self.terminants = TerminantService(ctx)

    # sec(beta) ---------------------------------------------------------------

    def _secb_singulant_args(self, nu: HPComplex, beta):
        """w+ = i nu s and w- = -i nu s with s = tan(beta) - beta, branches carried."""
        mp = self.mp
        s = mp.tan(beta) - beta
        w_plus = nu.scale(s, self.ctx).rotate(mp.pi / 2, self.ctx)
        w_minus = nu.scale(s, self.ctx).rotate(-mp.pi / 2, self.ctx)
        return s, w_plus, w_minus

    def _secb_prefactors(self, nu: HPComplex, beta, s):
        mp = self.mp
        root = mp.sqrt(mp.pi * mp.tan(beta) / 2) * nu.power(mp.mpf(1) / 2, self.ctx)
        p_plus = mp.exp(1j * nu.value * s - 1j * mp.pi / 4) / root
        p_minus = mp.exp(-1j * nu.value * s + 1j * mp.pi / 4) / root
        return p_plus, p_minus

    def secb_terminant_sums(self, nu: HPComplex, beta, N: int, M: int):
        """(upper, lower) terminant sums added to the sec(beta) partial sum."""
        mp = self.mp
        s, w_plus, w_minus = self._secb_singulant_args(nu, beta)
        p_plus, p_minus = self._secb_prefactors(nu, beta, s)
        upper = mp.mpc(0)
        lower = mp.mpc(0)
        for m in range(M):
            order = 2 * N - m + mp.mpf(1) / 2
            u_m = self.coefficients.u_at_icotbeta(m, beta, self.ctx)
            nu_power = nu.power(-m, self.ctx)
            upper += (-1) ** m * u_m * nu_power * self.terminants.value(order, w_plus)
            lower += u_m * nu_power * self.terminants.value(order, w_minus)
        return 1j * p_plus * upper, -1j * p_minus * lower

    def improved_secb(self, nu: HPComplex, beta, N: int, M: int) -> AsymptoticValue:
        mp = self.mp
        beta = self.series._check_beta(beta)
        TruncationValidator.require_index(N, 'N')
        TruncationValidator.require_index(M, 'M')
        if M > 2 * N:
            raise ValidationError("M must not exceed 2N")
        if abs(nu.arg) > 3 * mp.pi / 2:
            raise SectorError("improved sec(beta) expansion holds for |arg nu| <= 3pi/2")

        value = self.series.secb_partial_sum(nu, beta, N)
        if M > 0:
            upper, lower = self.secb_terminant_sums(nu, beta, N, M)
            value += upper + lower

        s = mp.tan(beta) - beta
        u_M = self.coefficients.u_at_icotbeta(M, beta, self.ctx)
        envelope = mp.exp(-nu.modulus * s) * abs(u_M) / nu.modulus ** M \
            / mp.sqrt(nu.modulus * mp.pi * mp.tan(beta) / 2)
        self.logger.debug(f"improved_secb: N={N}, M={M}, envelope {mp.nstr(envelope, 5)}")
        return AsymptoticValue(value=value, truncation=TruncationIndices(N, M), sector='|arg nu|<=3pi/2',
                               envelope=envelope, terms=N,
                               notes=['envelope is an order estimate, not a certified bound'])

    # x = 1 -----------------------------------------------------------------

    def _x1_term(self, nu: HPComplex, j: int):
        """d_2j sin((2j+1)pi/3) Gamma((2j+1)/3) / nu^{(2j+1)/3}."""
        mp = self.mp
        p = mp.mpf(2 * j + 1) / 3
        return self.coefficients.d2n_value(j, self.ctx) * mp.sinpi(p) * mp.gamma(p) * nu.power(-p, self.ctx)

    def x1_base_sums(self, nu: HPComplex, N: int, M: int, K: int):
        """The d_6n, d_6m+2 and d_6k+4 groups of the x = 1 series."""
        mp = self.mp
        total = mp.mpc(0)
        for count, offset in ((N, 0), (M, 1), (K, 2)):
            for n in range(count):
                total += self.series._x1_term(nu, 3 * n + offset)
        return total / (3 * mp.pi)

    def x1_terminant_sums(self, nu: HPComplex, N: int, M: int, K: int, J: int, L: int, Q: int):
        mp = self.mp
        two_pi_nu = nu.scale(2 * mp.pi, self.ctx)
        w_minus = two_pi_nu.rotate(-mp.pi / 2, self.ctx)
        w_plus = two_pi_nu.rotate(mp.pi / 2, self.ctx)
        e_minus = mp.exp(-2j * mp.pi * nu.value) / 3
        e_plus = mp.exp(2j * mp.pi * nu.value) / 3
        third = mp.mpf(1) / 3

        def rotation(j):
            return mp.expjpi(2 * (2 * j + 1) * third)

        total = mp.mpc(0)
        groups = (
            (J, lambda j: 2 * N - 2 * j * third, 1j, -1j * mp.expjpi(third)),
            (L, lambda j: 2 * M - (2 * j - 2) * third, 1j, 1j),
            (Q, lambda j: 2 * K - (2 * j - 4) * third, 1j, -1j * mp.expjpi(-third)),
        )
        for count, order_of, lower_phase, upper_phase in groups:
            for j in range(count):
                order = order_of(j)
                term = self._x1_term(nu, j)
                total += term * (lower_phase * e_minus * self.terminants.value(order, w_minus)
                                 + upper_phase * e_plus * rotation(j) * self.terminants.value(order, w_plus))
        return 2 * total / (3 * mp.pi)

    def improved_x1(self, nu: HPComplex, N: int, M: int, K: int, J: int = 0, L: int = 0,
                    Q: int = 0) -> AsymptoticValue:
        mp = self.mp
        for name, value in (('N', N), ('M', M), ('K', K)):
            TruncationValidator.require_index(value, name)
        valid, errors = TruncationValidator.validate_multiple_of_three({'J': J, 'L': L, 'Q': Q})
        if not valid:
            raise ValidationError('; '.join(errors))
        if abs(nu.arg) > 5 * mp.pi / 2:
            raise SectorError("improved x = 1 expansion holds for |arg nu| <= 5pi/2")

        value = self.x1_base_sums(nu, N, M, K)
        if J or L or Q:
            value += self.x1_terminant_sums(nu, N, M, K, J, L, Q)

        envelope = mp.zero
        for index in (J, L, Q):
            p = mp.mpf(2 * index + 1) / 3
            envelope += abs(self.coefficients.d2n_value(index, self.ctx)) * mp.gamma(p) / nu.modulus ** p
        envelope *= 2 * mp.exp(-2 * mp.pi * nu.modulus) / (3 * mp.pi)
        return AsymptoticValue(value=value, truncation=TruncationIndices(N, M, K), sector='|arg nu|<=5pi/2',
                               envelope=envelope, terms=N + M + K,
                               notes=[f'J={J}, L={L}, Q={Q}',
                                      'envelope is an order estimate, not a certified bound'])

    # Stokes scans ----------------------------------------------------------

    def default_grid(self, center, points: Optional[int] = None, half_width=None) -> List:
        mp = self.mp
        rules = config.SCAN_RULES
        points = points or rules['points']
        half_width = mp.mpf(rules['half_width'] if half_width is None else half_width)
        if points < 2:
            return [mp.mpf(center)]
        return [center - half_width + 2 * half_width * i / (points - 1) for i in range(points)]

    def _check_grid(self, theta_grid: Sequence, center):
        mp = self.mp
        limit = mp.mpf(config.SCAN_RULES['max_half_width'])
        grid = [mp.mpf(theta) for theta in theta_grid]
        for theta in grid:
            if abs(theta - center) >= limit:
                raise ValidationError(f"scan angle {mp.nstr(theta, 8)} is too far from the Stokes line")
        return grid

    @staticmethod
    def _check_line(line: int):
        if line not in (1, -1):
            raise ValidationError("line must be +1 or -1")

    def stokes_scan_secb(self, absnu, beta, theta_grid: Optional[Sequence] = None,
                         line: int = 1) -> List[ScanRecord]:
        """Emergent-series multiplier across arg nu = +-pi/2 against the erf model."""
        mp = self.mp
        self._check_line(line)
        beta = self.series._check_beta(beta)
        absnu = mp.mpf(absnu)
        center = line * mp.pi / 2
        grid = self._check_grid(theta_grid if theta_grid is not None else self.default_grid(center), center)

        s = mp.tan(beta) - beta
        N = self.series.optimal_truncation(HPComplex.real(absnu, self.ctx), 'secb', beta).N
        if N < 2:
            raise ValidationError("|nu| too small: optimal truncation gives N < 2")
        emergent = config.SCAN_RULES['emergent_terms']
        width = mp.sqrt(absnu * s / 2)
        self.logger.info(f"Scanning sec(beta) Stokes line {line:+d}: |nu|={mp.nstr(absnu, 8)}, N={N}, "
                         f"{len(grid)} points")

        records = []
        for theta in grid:
            nu = HPComplex.polar(absnu, theta, self.ctx)
            upper, lower = self.secb_terminant_sums(nu, beta, N, emergent)
            p_plus, p_minus = self._secb_prefactors(nu, beta, s)
            if line == 1:
                measured = upper / (1j * p_plus)
                model = (1 + mp.erf((theta - mp.pi / 2) * width)) / 2
            else:
                measured = lower / (-1j * p_minus)
                model = (1 - mp.erf((theta + mp.pi / 2) * width)) / 2
            records.append(ScanRecord(theta=theta, measured_multiplier=measured,
                                      erf_prediction=model, residual=abs(mp.re(measured) - model)))
        return records

    def stokes_scan_x1(self, absnu, theta_grid: Optional[Sequence] = None,
                       line: int = 1) -> List[ScanRecord]:
        """Terminant averages across arg nu = +-3pi/2 against the erf model."""
        mp = self.mp
        self._check_line(line)
        absnu = mp.mpf(absnu)
        center = line * 3 * mp.pi / 2
        grid = self._check_grid(theta_grid if theta_grid is not None else self.default_grid(center), center)

        n = self.series.optimal_truncation(HPComplex.real(absnu, self.ctx), 'x1').N
        third = mp.mpf(1) / 3
        orders = (2 * n, 2 * n + 2 * third, 2 * n + 4 * third)
        width = mp.sqrt(mp.pi * absnu)
        self.logger.info(f"Scanning x=1 Stokes line {line:+d}: |nu|={mp.nstr(absnu, 8)}, N=M=K={n}")

        records = []
        for theta in grid:
            two_pi_nu = HPComplex.polar(2 * mp.pi * absnu, theta, self.ctx)
            if line == 1:
                w = two_pi_nu.rotate(-mp.pi / 2, self.ctx)
                values = [self.terminants.value(p, w) for p in orders]
                measured = sum(values) / 3
                model = (1 + mp.erf((theta - 3 * mp.pi / 2) * width)) / 2
            else:
                w = two_pi_nu.rotate(mp.pi / 2, self.ctx)
                values = [self.terminants.value(p, w) for p in orders]
                measured = mp.expjpi(2 * third) * (mp.expjpi(third) * values[0] - values[1]
                                                   + mp.expjpi(-third) * values[2]) / 3
                model = (1 - mp.erf((theta + 3 * mp.pi / 2) * width)) / 2
            records.append(ScanRecord(theta=theta, measured_multiplier=measured,
                                      erf_prediction=model, residual=abs(mp.re(measured) - model)))
        return records

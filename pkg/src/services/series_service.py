"""Truncated asymptotic expansions of A_{-nu}(nu x) and the companion Hankel series."""

import logging
import os
import sys
from math import factorial
from typing import Optional

# Add parent directory for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.precision import HPComplex, PrecisionContext
from models.results import AsymptoticValue, TruncationIndices
from services.bound_service import BoundService
from services.coefficient_service import CoefficientService
from services.hpmath_service import HPMathService
from utils.validators import IntegerOrderError, SectorError, ValidationError


class SeriesService:
    """Evaluators for the sec(beta), x = 1 and 0 < x < 1 expansions."""

    def __init__(self, ctx: PrecisionContext, coefficient_service: Optional[CoefficientService] = None,
                 bound_service: Optional[BoundService] = None):
        self.logger = logging.getLogger(__name__)
        self.ctx = ctx
        self.mp = ctx.mp
        self.coefficients = coefficient_service or CoefficientService()
        self.bounds = bound_service or BoundService(ctx, self.coefficients)
        self.hpmath = HPMathService(ctx)

    def _check_beta(self, beta):
        mp = self.mp
        beta = mp.mpf(beta)
        if not 0 < beta < mp.pi / 2:
            raise ValidationError("beta must lie in (0, pi/2)")
        return beta

    # sec(beta) ---------------------------------------------------------------

    def secb_partial_sum(self, nu: HPComplex, beta, N: int):
        """-(1/pi) sum_{n<N} (2n)! a_n(-sec beta) / nu^{2n+1}, no sector check."""
        mp = self.mp
        lam = -mp.sec(beta)
        total = mp.mpc(0)
        for n in range(N):
            total += factorial(2 * n) * self.coefficients.an_value(n, lam) / mp.power(nu.value, 2 * n + 1)
        return -total / mp.pi

    def eval_secb(self, nu: HPComplex, beta, N: int) -> AsymptoticValue:
        mp = self.mp
        beta = self._check_beta(beta)
        if not abs(nu.arg) < mp.pi / 2:
            raise SectorError("eval_secb needs |arg nu| < pi/2; use continue_sector or improved_secb")
        value = self.secb_partial_sum(nu, beta, N)
        bound = self.bounds.bound_secb(nu, beta, N)
        return AsymptoticValue(value=value, truncation=TruncationIndices(N), sector='|arg nu|<pi/2',
                               bound=bound, terms=N)

    def eval_hankel_secb(self, nu: HPComplex, beta, M: int) -> AsymptoticValue:
        """H^(1)_nu(nu sec beta) from M terms of its large-nu expansion."""
        mp = self.mp
        beta = self._check_beta(beta)
        if not -mp.pi / 2 < nu.arg < 3 * mp.pi / 2:
            raise SectorError("Hankel expansion needs -pi/2 < arg nu < 3pi/2")
        total = mp.mpc(0)
        for m in range(M):
            u_m = self.coefficients.u_at_icotbeta(m, beta, self.ctx)
            total += (-1) ** m * u_m / mp.power(nu.value, m)
        value = self.hankel_secb_prefactor(nu, beta) * total
        return AsymptoticValue(value=value, truncation=TruncationIndices(M), sector='-pi/2<arg nu<3pi/2',
                               terms=M)

    def hankel_secb_prefactor(self, nu: HPComplex, beta):
        """e^{i nu (tan b - b) - pi i/4} / (nu pi tan(b)/2)^{1/2} on the carried branch."""
        mp = self.mp
        s = mp.tan(beta) - beta
        root = mp.sqrt(mp.pi * mp.tan(beta) / 2) * nu.power(mp.mpf(1) / 2, self.ctx)
        return mp.exp(1j * nu.value * s - 1j * mp.pi / 4) / root

    # x = 1 -----------------------------------------------------------------

    def _x1_term(self, nu: HPComplex, n: int):
        mp = self.mp
        p = mp.mpf(2 * n + 1) / 3
        return self.coefficients.d2n_value(n, self.ctx) * mp.gamma(p) * nu.power(-p, self.ctx)

    def eval_x1(self, nu: HPComplex, N: int) -> AsymptoticValue:
        mp = self.mp
        if not abs(nu.arg) < 3 * mp.pi / 2:
            raise SectorError("eval_x1 needs |arg nu| < 3pi/2")
        total = mp.mpc(0)
        for n in range(N):
            total += self._x1_term(nu, n)
        value = total / (3 * mp.pi)
        bound = self.bounds.bound_x1(nu, N)
        return AsymptoticValue(value=value, truncation=TruncationIndices(N), sector='|arg nu|<3pi/2',
                               bound=bound, terms=N)

    def eval_hankel_x1(self, nu: HPComplex, N: int) -> AsymptoticValue:
        """H^(1)_nu(nu) from N terms."""
        mp = self.mp
        if not -mp.pi / 2 < nu.arg < 3 * mp.pi / 2:
            raise SectorError("Hankel expansion needs -pi/2 < arg nu < 3pi/2")
        total = mp.mpc(0)
        for n in range(N):
            k = 2 * n + 1
            if k % 3 == 0:
                continue  # sin(k pi/3) = 0
            phase = mp.expjpi(mp.mpf(2 * k) / 3) * mp.sinpi(mp.mpf(k) / 3)
            total += phase * self._x1_term(nu, n)
        value = -2 * total / (3 * mp.pi)
        return AsymptoticValue(value=value, truncation=TruncationIndices(N), sector='-pi/2<arg nu<3pi/2',
                               terms=N)

    # 0 < x < 1 -------------------------------------------------------------

    def eval_0x1(self, nu: HPComplex, alpha, N: int, endpoint_terms: int = 0) -> AsymptoticValue:
        """Saddle expansion at x = sech(alpha); optional endpoint series (no bound exists)."""
        mp = self.mp
        alpha = mp.mpf(alpha)
        if alpha <= 0:
            raise ValidationError("alpha must be positive")
        if not mp.re(nu.value) > 0:
            raise SectorError("eval_0x1 needs Re nu > 0")
        total = mp.mpc(0)
        pochhammer = mp.one
        for n in range(N):
            total += pochhammer * self.coefficients.bn_coeff(n, alpha, self.ctx) / mp.power(nu.value, n)
            pochhammer *= mp.mpf(2 * n + 1) / 2
        prefactor = mp.sqrt(2 / mp.pi) / nu.power(mp.mpf(1) / 2, self.ctx) \
            * mp.exp(nu.value * (alpha - mp.tanh(alpha)))
        value = prefactor * total if N > 0 else mp.mpc(0)

        notes = ['no rigorous bound available for 0<x<1']
        if endpoint_terms:
            lam = -mp.sech(alpha)
            endpoint = mp.mpc(0)
            for n in range(endpoint_terms):
                endpoint += factorial(2 * n) * self.coefficients.an_value(n, lam) / mp.power(nu.value, 2 * n + 1)
            value -= endpoint / mp.pi
            notes.append(f'endpoint series with {endpoint_terms} terms added')
        return AsymptoticValue(value=value, truncation=TruncationIndices(N), sector='Re nu>0',
                               terms=N, notes=notes)

    # truncation and continuation ---------------------------------------------

    def optimal_truncation(self, nu: HPComplex, case: str, beta=None) -> TruncationIndices:
        """Nearest-integer (ties to even) optimal truncation, floored at 1."""
        mp = self.mp
        if case == 'secb':
            beta = self._check_beta(beta)
            estimate = nu.modulus * (mp.tan(beta) - beta) / 2
            return TruncationIndices(max(1, int(mp.nint(estimate))))
        if case == 'x1':
            n = max(1, int(mp.nint(mp.pi * nu.modulus)))
            return TruncationIndices(n, n, n)
        raise ValidationError(f"Unknown case: {case}")

    def hankel_truncation(self, nu: HPComplex, case: str, beta=None) -> int:
        mp = self.mp
        if case == 'secb':
            return max(1, int(mp.nint(nu.modulus * (mp.tan(beta) - beta))))
        return 3 * max(1, int(mp.nint(mp.pi * nu.modulus)))

    def sheet_of(self, nu: HPComplex):
        """(m, parity) with parity 'even' for ((2m-1/2)pi, (2m+1/2)pi), 'odd' for the next half-turn."""
        mp = self.mp
        t = nu.arg / mp.pi
        even_m = int(mp.nint(t / 2))
        if abs(t - 2 * even_m) < mp.mpf(1) / 2:
            return even_m, 'even'
        odd_m = int(mp.nint((t - 1) / 2))
        if abs(t - 1 - 2 * odd_m) < mp.mpf(1) / 2:
            return odd_m, 'odd'
        raise SectorError("arg nu lies on a Stokes line; use the improved expansion there")

    def _base_and_hankel(self, nu0: HPComplex, case: str, beta, N: Optional[int], M: Optional[int]):
        """A_{-nu0}(nu0 x), H1_{nu0}(nu0 x), H2_{nu0}(nu0 x) for |arg nu0| < pi/2."""
        mp = self.mp
        if case == 'secb':
            N = N if N is not None else self.optimal_truncation(nu0, 'secb', beta).N
            M = M if M is not None else self.hankel_truncation(nu0, 'secb', beta)
            base = self.eval_secb(nu0, beta, N).value
            h1 = self.eval_hankel_secb(nu0, beta, M).value
            h2 = mp.conj(self.eval_hankel_secb(nu0.conjugate(self.ctx), beta, M).value)
        else:
            N = N if N is not None else self.optimal_truncation(nu0, 'x1').total
            M = M if M is not None else self.hankel_truncation(nu0, 'x1')
            base = self.eval_x1(nu0, N).value
            h1 = self.eval_hankel_x1(nu0, M).value
            h2 = mp.conj(self.eval_hankel_x1(nu0.conjugate(self.ctx), M).value)
        return base, h1, h2, N, M

    def continue_sector(self, nu: HPComplex, case: str = 'secb', beta=None, m: Optional[int] = None,
                        N: Optional[int] = None, M: Optional[int] = None,
                        strict: bool = False) -> AsymptoticValue:
        """A_{-nu}(nu x) beyond the base sector via the Bessel continuation identities.

        The sine ratios are Chebyshev polynomials, so integer nu is regular
        unless ``strict`` asks for the rejection.
        """
        mp = self.mp
        if case == 'secb':
            beta = self._check_beta(beta)
        elif case != 'x1':
            raise ValidationError(f"Unknown case: {case}")

        sheet, parity = self.sheet_of(nu)
        if m is not None and m != sheet:
            raise SectorError(f"arg nu lies in sheet {sheet} ({parity}), not {m}")

        shift = 2 * sheet if parity == 'even' else 2 * sheet + 1
        nu0 = nu.rotate(-shift * mp.pi, self.ctx)
        v = nu0.value
        if strict and mp.isint(v):
            raise IntegerOrderError("integer nu rejected by strict continuation")

        base, h1, h2, N_used, M_used = self._base_and_hankel(nu0, case, beta, N, M)
        ratio = self.hpmath.chebyshev_ratio
        if parity == 'even':
            s_m = ratio(sheet, v)
            value = base - 1j * (mp.expjpi(-(sheet - 1) * v) * s_m * h1
                                 + mp.expjpi(-(sheet + 1) * v) * s_m * h2)
        else:
            value = -(base + 1j * mp.expjpi((sheet + 1) * v) * ratio(sheet, v) * h1
                      + 1j * mp.expjpi(sheet * v) * ratio(sheet + 1, v) * h2)

        lo = mp.mpf(2 * sheet - mp.mpf(1) / 2) if parity == 'even' else mp.mpf(2 * sheet + mp.mpf(1) / 2)
        label = f"({mp.nstr(lo, 3)})pi<arg nu<({mp.nstr(lo + 1, 3)})pi"
        self.logger.debug(f"Continued {case} expansion to sheet {sheet} ({parity})")
        return AsymptoticValue(value=value, truncation=TruncationIndices(N_used, M_used), sector=label,
                               terms=N_used, notes=[f'continued from arg nu0 = {mp.nstr(nu0.arg, 8)}'])

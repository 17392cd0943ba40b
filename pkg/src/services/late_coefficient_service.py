"""Late-coefficient asymptotics for a_n(-sec beta) and U_n(coth alpha)."""

import logging
import os
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

# Add parent directory for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.precision import PrecisionContext
from models.results import LateTermResult
from services.coefficient_service import CoefficientService
from utils.config import config
from utils.validators import AngleParser, ConvergenceError, TruncationValidator, ValidationError


class LateCoefficientService:
    """Inverse factorial series for late a_n with its remainder bound."""

    def __init__(self, ctx: PrecisionContext, coefficient_service: Optional[CoefficientService] = None):
        self.logger = logging.getLogger(__name__)
        self.ctx = ctx
        self.mp = ctx.mp
        self.coefficients = coefficient_service or CoefficientService()

    def _gamma_ratio(self, n: int, m: int):
        """Gamma(2n - m + 1/2) / Gamma(2n + 1/2) as a falling product."""
        mp = self.mp
        ratio = mp.one
        for k in range(1, m + 1):
            ratio /= 2 * n - k + mp.mpf(1) / 2
        return ratio

    @staticmethod
    def optimal_M_late(n: int) -> int:
        """round(4n/3) clamped to [0, 2n]."""
        TruncationValidator.require_index(n, 'n')
        if n < 1:
            raise ValidationError("n must be at least 1")
        return max(0, min(2 * n, round(Fraction(4 * n, 3))))

    def late_an(self, n: int, beta, M: int) -> LateTermResult:
        mp = self.mp
        TruncationValidator.require_index(n, 'n')
        if n < 1:
            raise ValidationError("n must be at least 1")
        TruncationValidator.require_index(M, 'M', maximum=2 * n)
        beta = mp.mpf(beta)
        if not 0 < beta < mp.pi / 2:
            raise ValidationError("beta must lie in (0, pi/2)")

        s = mp.tan(beta) - beta
        scale = mp.sqrt(2 * mp.cot(beta) / (mp.pi * s)) * (-1) ** n \
            * mp.gamma(2 * n + mp.mpf(1) / 2) / s ** (2 * n)
        bracket = mp.zero
        tolerance = mp.mpf(10) ** (-(self.ctx.digits - 10))
        for m in range(M):
            term = (1j * s) ** m * self.coefficients.u_at_icotbeta(m, beta, self.ctx) * self._gamma_ratio(n, m)
            if abs(mp.im(term)) > tolerance * max(abs(mp.re(term)), mp.eps):
                raise ConvergenceError(f"late-term bracket entry m={m} is not real")
            bracket += mp.re(term)

        factorial = mp.factorial(2 * n)
        approx = -scale * bracket / factorial
        exact = self.coefficients.an_value(n, -mp.sec(beta))
        u_M = self.coefficients.u_at_icotbeta(M, beta, self.ctx)
        bound = abs(scale) * s ** M * abs(u_M) * self._gamma_ratio(n, M) / factorial
        return LateTermResult(n=n, approx=approx, exact=exact, error=exact - approx, bound=bound,
                              M=M, beta=beta)

    def late_un_dingle(self, n: int, alpha, M: int) -> LateTermResult:
        """Formal late-term series for U_n(coth alpha); no bound is attached."""
        mp = self.mp
        TruncationValidator.require_index(n, 'n')
        if n < 2:
            raise ValidationError("n must be at least 2")
        TruncationValidator.require_index(M, 'M', maximum=n - 1)
        alpha = mp.mpf(alpha)
        if alpha <= 0:
            raise ValidationError("alpha must be positive")

        singulant = 2 * (alpha - mp.tanh(alpha))
        x = mp.coth(alpha)
        total = mp.zero
        ratio = mp.one  # Gamma(n - m) / Gamma(n)
        for m in range(M):
            total += singulant ** m * self.coefficients.un_polynomial(m).evaluate(x) * ratio
            ratio /= n - m - 1
        approx = (-1) ** n * mp.gamma(n) / (2 * mp.pi * singulant ** n) * total
        exact = self.coefficients.un_polynomial(n).evaluate(x)
        return LateTermResult(n=n, approx=approx, exact=exact, error=exact - approx, bound=None,
                              M=M, beta=None, experimental=True)

    def late_sweep(self, n_values: Sequence[int], beta, M: Optional[int] = None) -> List[LateTermResult]:
        """late_an over several n; M defaults to the optimal choice per n."""
        results = []
        for n in n_values:
            m = self.optimal_M_late(n) if M is None else min(M, 2 * n)
            results.append(self.late_an(n, beta, m))
        self.logger.info(f"Late-term sweep over {len(results)} values of n")
        return results

    def table1(self) -> List[Dict]:
        """The four a_25(-sec beta) rows with values rounded to the printed widths."""
        rules = config.TABLE1_ROWS
        rows = []
        for label in rules['betas']:
            beta = AngleParser.parse(label).evaluate(self.ctx)
            result = self.late_an(rules['n'], beta, rules['M'])
            rows.append({
                'beta': label,
                'n': result.n,
                'M': result.M,
                'exact': self.ctx.nstr(result.exact, rules['value_digits']),
                'approximation': self.ctx.nstr(result.approx, rules['value_digits']),
                'error': self.ctx.nstr(result.error, rules['error_digits']),
                'bound': self.ctx.nstr(result.bound, rules['bound_digits']),
            })
            self.logger.debug(f"Table row beta={label}: error {rows[-1]['error']}")
        return rows

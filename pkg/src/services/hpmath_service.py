"""High-precision special-function primitives and the quadrature engine."""

import logging
import os
import sys
from typing import Callable, Optional, Sequence

# Add parent directory for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.precision import PrecisionContext
from utils.config import config
from utils.validators import ConvergenceError, PoleError, SlowConvergenceError


class HPMathService:
    """Gamma, erf, incomplete gamma and semi-infinite quadrature at a fixed precision."""

    def __init__(self, ctx: Optional[PrecisionContext] = None):
        self.logger = logging.getLogger(__name__)
        self.ctx = ctx or PrecisionContext(config.default_digits())
        self.mp = self.ctx.mp

    def gamma(self, z):
        mp = self.mp
        z = mp.mpmathify(z)
        if mp.im(z) == 0 and mp.re(z) <= 0 and mp.isint(mp.re(z)):
            raise PoleError(f"Gamma has a pole at {mp.nstr(z, 10)}")
        return mp.gamma(z)

    def erf(self, z):
        return self.mp.erf(self.mp.mpmathify(z))

    def upper_incomplete_gamma(self, a, w):
        """Principal-branch Gamma(a, w); continuation across sheets is the caller's job."""
        mp = self.mp
        try:
            return mp.gammainc(mp.mpmathify(a), a=mp.mpmathify(w))
        except mp.NoConvergence as e:
            self.logger.error(f"Incomplete gamma failed for a={a}, w={w}: {e}")
            raise ConvergenceError(f"Incomplete gamma did not converge: {e}")

    def quad_semiinfinite(self, f: Callable, points: Sequence = (), upper=None,
                          target=None, guard_digits: Optional[int] = None):
        """Integrate ``f`` over (0, upper) with tanh-sinh on each piece.

        ``points`` are interior breakpoints; ``upper`` defaults to infinity.
        Returns ``(value, error_estimate)`` and raises SlowConvergenceError when
        the estimate exceeds ``target`` relative to the value.
        """
        mp = self.mp
        guard = config.QUAD_GUARD_DIGITS if guard_digits is None else guard_digits
        target = self.ctx.quad_target if target is None else mp.mpf(target)
        nodes = [mp.zero] + sorted(mp.mpf(p) for p in points if p > 0)
        nodes.append(mp.inf if upper is None else mp.mpf(upper))

        with mp.workdps(self.ctx.digits + guard):
            value, error = mp.quad(f, nodes, method='tanh-sinh', error=True)

        scale = abs(value)
        if error > target * (scale if scale > 0 else 1):
            self.logger.warning(f"Quadrature estimate {mp.nstr(error, 5)} above target "
                                f"{mp.nstr(target, 5)} (|value|={mp.nstr(scale, 5)})")
            raise SlowConvergenceError(
                f"quadrature error estimate {mp.nstr(error, 5)} exceeds target {mp.nstr(target, 5)}")
        return +value, error

    def chebyshev_ratio(self, k: int, x):
        """sin(k*pi*x)/sin(pi*x) as U_{k-1}(cos(pi*x)); regular at integer x."""
        mp = self.mp
        if k == 0:
            return mp.zero
        sign = 1 if k > 0 else -1
        return sign * mp.chebyu(abs(k) - 1, mp.cospi(x))

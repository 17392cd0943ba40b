"""Working-precision context and branch-carrying complex numbers."""

from dataclasses import dataclass, field
from typing import Optional

from mpmath.ctx_mp import MPContext


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal working precision plus the relative quadrature target.

    Each context owns a private mpmath context, so evaluations at different
    precisions never touch the global ``mpmath.mp`` state.
    """

    digits: int
    quad_target: Optional[float] = None
    mp: MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        """Validate precision data."""
        if not isinstance(self.digits, int) or self.digits < 16:
            raise ValueError("digits must be an integer >= 16")
        engine = MPContext()
        engine.dps = self.digits
        object.__setattr__(self, 'mp', engine)

        floor = engine.mpf(10) ** (-(self.digits - 5))
        if self.quad_target is None:
            object.__setattr__(self, 'quad_target', floor)
        else:
            target = engine.mpf(self.quad_target)
            if target < floor * (1 - engine.mpf(10) ** -3):
                raise ValueError(f"quad_target must be >= 1e-{self.digits - 5}")
            object.__setattr__(self, 'quad_target', target)

    def __str__(self):
        return f"PrecisionContext(digits: {self.digits})"

    def extended(self, extra_digits: int) -> 'PrecisionContext':
        """A context with ``extra_digits`` guard digits and the same absolute target."""
        return PrecisionContext(self.digits + extra_digits,
                                quad_target=self.quad_target)

    def eps(self):
        return self.mp.mpf(10) ** (-self.digits)

    def nstr(self, x, digits: Optional[int] = None) -> str:
        """Decimal string of ``x`` with ``digits`` significant digits."""
        return self.mp.nstr(x, digits or self.digits, strip_zeros=False,
                            min_fixed=1, max_fixed=0)


@dataclass(frozen=True)
class HPComplex:
    """A complex value with an optional unreduced branch argument.

    The carried ``arg`` may leave (-pi, pi]; it always agrees with the
    principal argument of ``value`` modulo 2*pi.
    """

    value: object
    arg: object
    modulus: object

    @classmethod
    def polar(cls, modulus, arg, ctx: PrecisionContext) -> 'HPComplex':
        mp = ctx.mp
        modulus = mp.mpf(modulus)
        arg = mp.mpf(arg)
        if modulus < 0:
            raise ValueError("modulus must be non-negative")
        return cls(value=mp.mpc(modulus * mp.cos(arg), modulus * mp.sin(arg)),
                   arg=arg, modulus=modulus)

    @classmethod
    def from_value(cls, z, ctx: PrecisionContext) -> 'HPComplex':
        """Wrap a plain value using its principal argument."""
        mp = ctx.mp
        z = mp.mpc(z)
        if not (mp.isfinite(z.real) and mp.isfinite(z.imag)):
            raise ValueError("HPComplex components must be finite")
        return cls(value=z, arg=mp.arg(z), modulus=abs(z))

    @classmethod
    def real(cls, x, ctx: PrecisionContext) -> 'HPComplex':
        mp = ctx.mp
        x = mp.mpf(x)
        return cls(value=mp.mpc(x), arg=mp.pi if x < 0 else mp.zero, modulus=abs(x))

    def __str__(self):
        return f"HPComplex({self.value}, arg={self.arg})"

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag

    def is_positive_real(self, ctx: PrecisionContext) -> bool:
        return self.arg == 0 and self.modulus > 0

    def log(self, ctx: PrecisionContext):
        """Logarithm on the carried branch."""
        mp = ctx.mp
        return mp.mpc(mp.log(self.modulus), self.arg)

    def power(self, p, ctx: PrecisionContext):
        """``self ** p`` as exp(p (ln|z| + i arg)) with the carried argument."""
        mp = ctx.mp
        if self.modulus == 0:
            if mp.re(p) > 0:
                return mp.mpc(0)
            raise ValueError("zero raised to a non-positive power")
        return mp.exp(p * self.log(ctx))

    def rotate(self, phi, ctx: PrecisionContext) -> 'HPComplex':
        """Multiply by e^{i phi}, advancing the carried argument."""
        return HPComplex.polar(self.modulus, self.arg + phi, ctx)

    def scale(self, factor, ctx: PrecisionContext) -> 'HPComplex':
        """Multiply by a positive real factor."""
        mp = ctx.mp
        factor = mp.mpf(factor)
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return HPComplex(value=self.value * factor, arg=self.arg, modulus=self.modulus * factor)

    def conjugate(self, ctx: PrecisionContext) -> 'HPComplex':
        return HPComplex(value=ctx.mp.conj(self.value), arg=-self.arg, modulus=self.modulus)

    def to_dict(self, ctx: PrecisionContext, digits: Optional[int] = None):
        """JSON-ready representation with decimal strings."""
        return {
            're': ctx.nstr(self.value.real, digits),
            'im': ctx.nstr(self.value.imag, digits),
            'arg': ctx.nstr(self.arg, digits),
            'digits': digits or ctx.digits,
        }

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from models.precision import HPComplex, PrecisionContext


def _real_field(x, ctx: PrecisionContext, tag: str, digits: Optional[int] = None) -> Dict[str, Any]:
    return {'value': ctx.nstr(x, digits), 'digits': digits or ctx.digits, 'tag': tag}


def _complex_field(z, ctx: PrecisionContext, tag: str, digits: Optional[int] = None) -> Dict[str, Any]:
    mp = ctx.mp
    z = mp.mpc(z)
    return {'re': ctx.nstr(z.real, digits), 'im': ctx.nstr(z.imag, digits),
            'digits': digits or ctx.digits, 'tag': tag}


@dataclass(frozen=True)
class TruncationIndices:
    """Truncation indices: N for sec(beta); N, M, K for x = 1."""

    N: int
    M: Optional[int] = None
    K: Optional[int] = None

    def __post_init__(self):
        """Validate truncation indices."""
        for name in ('N', 'M', 'K'):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def total(self) -> int:
        """Total term count of the plain x = 1 expansion (R_{N,N,N} = R_{3N})."""
        return self.N + (self.M or 0) + (self.K or 0)

    def to_dict(self):
        data = {'N': self.N}
        if self.M is not None:
            data['M'] = self.M
        if self.K is not None:
            data['K'] = self.K
        return data


@dataclass(frozen=True)
class ErrorBound:
    """Certified remainder radius, or ``valid=False`` outside the formula's sector."""

    radius: Any
    formula_tag: str
    valid: bool
    factor: Any = None

    TAGS = ('csc_secb', 'stokes_secb', 'csc_x1', 'stokes_x1')

    def __post_init__(self):
        """Validate bound data."""
        if self.formula_tag not in self.TAGS:
            raise ValueError(f"Unknown formula tag: {self.formula_tag}")
        if self.valid and (self.radius is None or self.radius < 0):
            raise ValueError("A valid bound needs a non-negative radius")

    def __str__(self):
        return f"ErrorBound({self.formula_tag}, valid={self.valid}, radius={self.radius})"

    def to_dict(self, ctx: PrecisionContext):
        data = {'formula': self.formula_tag, 'valid': self.valid}
        if self.valid:
            data['radius'] = _real_field(self.radius, ctx, 'certified_bound')
            data['factor'] = _real_field(self.factor, ctx, 'certified_bound')
        return data


@dataclass(frozen=True)
class ExcessInterval:
    """Open interval between 0 and the first omitted term."""

    lower: Any
    upper: Any
    first_omitted_term: Any

    def __post_init__(self):
        """Validate interval data."""
        if self.lower > self.upper:
            raise ValueError("lower end exceeds upper end")

    def contains(self, x) -> bool:
        return self.lower < x < self.upper

    def to_dict(self, ctx: PrecisionContext):
        return {'lower': _real_field(self.lower, ctx, 'certified_bound'),
                'upper': _real_field(self.upper, ctx, 'certified_bound')}


@dataclass
class AsymptoticValue:
    """A truncated expansion value with its truncation metadata."""

    value: Any
    truncation: TruncationIndices
    sector: str
    bound: Optional[ErrorBound] = None
    envelope: Any = None
    terms: int = 0
    notes: List[str] = field(default_factory=list)

    def __post_init__(self):
        """Validate asymptotic value data."""
        if self.bound is not None and self.bound.valid and not self.bound.radius >= 0:
            raise ValueError("bound radius must be non-negative")
        if not self.sector:
            raise ValueError("sector label cannot be empty")

    def __str__(self):
        return f"AsymptoticValue({self.value}, {self.truncation.to_dict()}, sector={self.sector})"

    @property
    def certified(self) -> bool:
        return self.bound is not None and self.bound.valid

    def to_dict(self, ctx: PrecisionContext):
        """Convert to a JSON-ready dictionary; uncertified values are tagged heuristic."""
        data = {
            'value': _complex_field(self.value, ctx, 'certified_bound' if self.certified else 'heuristic'),
            'truncation': self.truncation.to_dict(),
            'sector': self.sector,
            'bound': self.bound.to_dict(ctx) if self.bound is not None else None,
        }
        if self.envelope is not None:
            data['envelope'] = _real_field(self.envelope, ctx, 'heuristic')
        if self.notes:
            data['notes'] = list(self.notes)
        return data


@dataclass(frozen=True)
class TerminantEval:
    """Value of the scaled Terminant function with its branch bookkeeping."""

    p: Any
    w: HPComplex
    value: Any
    route: str
    sheet: int = 0

    ROUTES = ('quadrature', 'incgamma', 'erf_asymptotic')

    def __post_init__(self):
        """Validate terminant data."""
        if not self.p > 0:
            raise ValueError("p must be positive")
        if self.route not in self.ROUTES:
            raise ValueError(f"Unknown route: {self.route}")

    def to_dict(self, ctx: PrecisionContext):
        return {'p': ctx.nstr(self.p), 'w': self.w.to_dict(ctx),
                'value': _complex_field(self.value, ctx, 'heuristic'),
                'route': self.route, 'sheet': self.sheet}


@dataclass(frozen=True)
class ScanRecord:
    """One row of a Stokes sweep."""

    theta: Any
    measured_multiplier: Any
    erf_prediction: Any
    residual: Any

    def __post_init__(self):
        """Validate scan data."""
        if self.residual < 0:
            raise ValueError("residual must be non-negative")

    def to_row(self, ctx: PrecisionContext, digits: int = 20) -> Dict[str, str]:
        z = self.measured_multiplier
        return {
            'theta': ctx.nstr(self.theta, digits),
            'multiplier_re': ctx.nstr(z.real, digits),
            'multiplier_im': ctx.nstr(z.imag, digits),
            'erf_prediction': ctx.nstr(self.erf_prediction, digits),
            'residual': ctx.nstr(self.residual, digits),
        }


@dataclass
class LateTermResult:
    """Late-coefficient approximation against the exact value (error = exact - approx)."""

    n: int
    approx: Any
    exact: Any
    error: Any
    bound: Any
    M: int
    beta: Any = None
    experimental: bool = False

    def __post_init__(self):
        """Validate late-term data."""
        if self.n < 0:
            raise ValueError("n must be non-negative")
        if self.M < 0:
            raise ValueError("M must be non-negative")
        if self.bound is not None and self.bound < 0:
            raise ValueError("bound must be non-negative")

    @property
    def within_bound(self) -> Optional[bool]:
        if self.bound is None:
            return None
        return abs(self.error) <= self.bound

    def to_dict(self, ctx: PrecisionContext):
        tag = 'heuristic' if self.experimental else 'certified_bound'
        return {
            'n': self.n,
            'M': self.M,
            'approx': _real_field(self.approx, ctx, 'heuristic'),
            'exact': _real_field(self.exact, ctx, 'exact_rational_rounded'),
            'error': _real_field(self.error, ctx, 'heuristic'),
            'bound': _real_field(self.bound, ctx, tag) if self.bound is not None else None,
            'experimental': self.experimental,
        }


@dataclass(frozen=True)
class OracleValue:
    """Quadrature reference value with the route that produced it."""

    value: Any
    route: str
    quad_error_estimate: Any

    def __post_init__(self):
        """Validate oracle data."""
        if not self.route:
            raise ValueError("route cannot be empty")
        if self.quad_error_estimate < 0:
            raise ValueError("error estimate must be non-negative")

    def to_dict(self, ctx: PrecisionContext):
        return {'value': _complex_field(self.value, ctx, 'heuristic'), 'route': self.route,
                'quad_error_estimate': ctx.nstr(self.quad_error_estimate, 5)}


@dataclass(frozen=True)
class CubeRootRational:
    """Exact number ``rational * 6^(k/3)``."""

    rational: Fraction
    k: int

    def evaluate(self, ctx: PrecisionContext):
        mp = ctx.mp
        return (mp.mpf(self.rational.numerator) / self.rational.denominator
                * mp.cbrt(6) ** self.k)

    def __str__(self):
        return f"{self.rational} * 6^({self.k}/3)"

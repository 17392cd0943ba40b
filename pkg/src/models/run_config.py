from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, Optional


@dataclass(frozen=True)
class AngleSpec:
    """An angle given either as an exact multiple of pi or as decimal radians."""

    pi_multiple: Optional[Fraction] = None
    radians: Optional[str] = None

    def __post_init__(self):
        """Validate angle data."""
        if (self.pi_multiple is None) == (self.radians is None):
            raise ValueError("Exactly one of pi_multiple and radians must be given")

    def __str__(self):
        if self.pi_multiple is not None:
            return f"{self.pi_multiple}*pi"
        return self.radians

    def evaluate(self, ctx):
        """Round to the working precision of ``ctx`` (fraction applied first)."""
        mp = ctx.mp
        if self.pi_multiple is not None:
            return mp.pi * self.pi_multiple.numerator / self.pi_multiple.denominator
        return mp.mpf(self.radians)

    def to_dict(self):
        return {'angle': str(self)}


@dataclass(frozen=True)
class NuSpec:
    """The large parameter as "re,im" components or as modulus with carried argument."""

    real: Optional[str] = None
    imag: Optional[str] = None
    modulus: Optional[str] = None
    arg: Optional[AngleSpec] = None

    def __post_init__(self):
        """Validate nu data."""
        polar = self.modulus is not None
        cartesian = self.real is not None
        if polar == cartesian:
            raise ValueError("nu must be given either in polar or in cartesian form")
        if polar and self.arg is None:
            raise ValueError("Polar nu needs an argument")

    def __str__(self):
        if self.modulus is not None:
            return f"{self.modulus}@{self.arg}"
        return f"{self.real},{self.imag}"

    def evaluate(self, ctx):
        """Build the HPComplex value, keeping the argument unreduced for polar input."""
        from models.precision import HPComplex
        mp = ctx.mp
        if self.modulus is not None:
            return HPComplex.polar(mp.mpf(self.modulus), self.arg.evaluate(ctx), ctx)
        return HPComplex.from_value(mp.mpc(mp.mpf(self.real), mp.mpf(self.imag)), ctx)


@dataclass
class RunConfig:
    """Parsed command line for a single run."""

    command: str
    digits: int
    output_format: str = 'json'
    parameters: Dict[str, Any] = field(default_factory=dict)
    save_format: Optional[str] = None

    COMMANDS = ('eval', 'coeffs', 'bounds', 'table1', 'late', 'check', 'stokes')

    def __post_init__(self):
        """Validate run configuration."""
        if self.command not in self.COMMANDS:
            raise ValueError(f"Unknown command: {self.command}")
        if self.digits < 16:
            raise ValueError("digits must be at least 16")
        if self.output_format not in ('json', 'csv'):
            raise ValueError(f"Unsupported output format: {self.output_format}")

    def __str__(self):
        return f"RunConfig(command: {self.command}, digits: {self.digits}, format: {self.output_format})"

    def to_dict(self):
        """Convert run configuration to a JSON-ready dictionary."""
        return {
            'command': self.command,
            'digits': self.digits,
            'output_format': self.output_format,
            'parameters': {key: (str(value) if value is not None else None)
                           for key, value in sorted(self.parameters.items())},
        }

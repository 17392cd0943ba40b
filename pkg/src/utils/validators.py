"""Errors, argument parsers and validators for the resurgent Anger-Weber toolkit."""

import re
import os
import sys
from fractions import Fraction
from typing import List, Tuple, Optional

# Add parent directory for imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from models.run_config import AngleSpec, NuSpec
from utils.config import config


class ResurgenceError(Exception):
    """Base class for every domain error raised by the toolkit."""
    code = 'error'
    exit_code = 1


class ValidationError(ResurgenceError):
    """Custom exception for validation errors."""
    code = 'precondition'
    exit_code = 3


class SectorError(ValidationError):
    """Argument outside the sector where a formula holds."""
    code = 'sector'


class PoleError(ValidationError):
    """Gamma function evaluated at a pole."""
    code = 'pole'


class IntegerOrderError(ValidationError):
    """Integer order rejected by a strict continuation."""
    code = 'integer_order'


class ResolutionError(ValidationError):
    """Oscillation too fast to resolve at the requested precision."""
    code = 'resolution'


class ConvergenceError(ResurgenceError):
    """An iteration or special-function scheme did not converge."""
    code = 'non_convergence'
    exit_code = 4


class SlowConvergenceError(ConvergenceError):
    """Quadrature error estimate above the requested target."""
    code = 'slow_convergence'


class UsageError(ResurgenceError):
    """Malformed command-line input."""
    code = 'usage'
    exit_code = 2


_PI_FRACTION = re.compile(
    r'^(?P<sign>[-+]?)\s*(?P<num>\d+)?\s*\*?\s*pi\s*(?:/\s*(?P<den>\d+))?$'
)
_DECIMAL = re.compile(r'^[-+]?(\d+(\.\d*)?|\.\d+)([eE][-+]?\d+)?$')


class AngleParser:
    """Parser for angles written as pi-fractions or decimal radians."""

    @staticmethod
    def parse(text: str) -> AngleSpec:
        """Parse "pi/6", "6pi/13", "7*pi/15", "-pi" or "1.25"."""
        if text is None:
            raise UsageError("Angle cannot be empty")
        cleaned = text.strip().lower().replace('π', 'pi')
        if not cleaned:
            raise UsageError("Angle cannot be empty")

        match = _PI_FRACTION.match(cleaned)
        if match:
            num = int(match.group('num')) if match.group('num') else 1
            den = int(match.group('den')) if match.group('den') else 1
            if den == 0:
                raise UsageError(f"Zero denominator in angle {text!r}")
            multiple = Fraction(num, den)
            if match.group('sign') == '-':
                multiple = -multiple
            return AngleSpec(pi_multiple=multiple)

        if _DECIMAL.match(cleaned):
            return AngleSpec(radians=cleaned)

        raise UsageError(f"Cannot parse angle {text!r}; use e.g. pi/6, 6pi/13 or 0.5")


class NuParser:
    """Parser for the large parameter nu."""

    @staticmethod
    def parse(text: str) -> NuSpec:
        """Parse "10", "re,im" or "abs@arg" (arg kept unreduced)."""
        if text is None or not text.strip():
            raise UsageError("nu cannot be empty")
        cleaned = text.strip()

        if '@' in cleaned:
            modulus, arg = cleaned.split('@', 1)
            modulus = modulus.strip()
            if not _DECIMAL.match(modulus):
                raise UsageError(f"Invalid modulus in nu {text!r}")
            return NuSpec(modulus=modulus, arg=AngleParser.parse(arg))

        if ',' in cleaned:
            re_part, im_part = (part.strip() for part in cleaned.split(',', 1))
            if not (_DECIMAL.match(re_part) and _DECIMAL.match(im_part)):
                raise UsageError(f"Invalid components in nu {text!r}")
            return NuSpec(real=re_part, imag=im_part)

        if not _DECIMAL.match(cleaned):
            raise UsageError(f"Cannot parse nu {text!r}; use 10, re,im or abs@arg")
        return NuSpec(real=cleaned, imag='0')


class PrecisionValidator:
    """Validator for working precision."""

    @staticmethod
    def validate_digits(digits: int) -> Tuple[bool, List[str]]:
        """Validate a decimal working precision."""
        errors = []
        if not isinstance(digits, int) or isinstance(digits, bool):
            errors.append("digits must be an integer")
        elif digits < config.MIN_DIGITS:
            errors.append(f"digits must be at least {config.MIN_DIGITS}, got {digits}")
        return len(errors) == 0, errors

    @staticmethod
    def require_digits(digits: int) -> int:
        is_valid, errors = PrecisionValidator.validate_digits(digits)
        if not is_valid:
            raise ValidationError('; '.join(errors))
        return digits


class TruncationValidator:
    """Validator for truncation indices."""

    @staticmethod
    def validate_index(value: int, name: str = 'N', maximum: Optional[int] = None) -> Tuple[bool, List[str]]:
        """Validate a non-negative truncation index."""
        errors = []
        if not isinstance(value, int) or isinstance(value, bool):
            errors.append(f"{name} must be an integer")
            return False, errors
        if value < 0:
            errors.append(f"{name} must be non-negative, got {value}")
        if maximum is not None and value > maximum:
            errors.append(f"{name} must not exceed {maximum}, got {value}")
        return len(errors) == 0, errors

    @staticmethod
    def validate_multiple_of_three(values: dict) -> Tuple[bool, List[str]]:
        """Validate the J, L, Q counts of the x = 1 improved expansion."""
        errors = []
        for name, value in values.items():
            ok, index_errors = TruncationValidator.validate_index(value, name)
            errors.extend(index_errors)
            if ok and value % 3 != 0:
                errors.append(f"{name} must be a multiple of 3, got {value}")
        return len(errors) == 0, errors

    @staticmethod
    def require_index(value: int, name: str = 'N', maximum: Optional[int] = None) -> int:
        is_valid, errors = TruncationValidator.validate_index(value, name, maximum)
        if not is_valid:
            raise ValidationError('; '.join(errors))
        return value

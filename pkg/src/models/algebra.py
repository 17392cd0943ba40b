"""Exact rational algebra: polynomials, truncated power series, rational functions."""

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import List, Sequence, Tuple, Union

Number = Union[int, Fraction]


def _trim(coefficients: Sequence[Number]) -> Tuple[Fraction, ...]:
    coeffs = [Fraction(c) for c in coefficients]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial in one variable with exact rational coefficients (lowest degree first)."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        """Normalize coefficient storage."""
        object.__setattr__(self, 'coefficients', _trim(self.coefficients))

    @classmethod
    def constant(cls, c: Number) -> 'Polynomial':
        return cls((c,))

    @classmethod
    def x(cls) -> 'Polynomial':
        return cls((0, 1))

    @classmethod
    def one_plus_x_power(cls, k: int) -> 'Polynomial':
        """(1 + x)^k."""
        return cls(tuple(comb(k, j) for j in range(k + 1)))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def lowest_degree(self) -> int:
        for k, c in enumerate(self.coefficients):
            if c != 0:
                return k
        return -1

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, k: int) -> Fraction:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    def __add__(self, other: 'Polynomial') -> 'Polynomial':
        size = max(len(self.coefficients), len(other.coefficients))
        return Polynomial(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    def __neg__(self) -> 'Polynomial':
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: 'Polynomial') -> 'Polynomial':
        return self + (-other)

    def __mul__(self, other) -> 'Polynomial':
        if not isinstance(other, Polynomial):
            return Polynomial(tuple(c * other for c in self.coefficients))
        if self.is_zero() or other.is_zero():
            return Polynomial(())
        product = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                product[i + j] += a * b
        return Polynomial(tuple(product))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def derivative(self) -> 'Polynomial':
        return Polynomial(tuple(k * c for k, c in enumerate(self.coefficients) if k > 0))

    def integral(self) -> 'Polynomial':
        """Antiderivative vanishing at 0."""
        return Polynomial((Fraction(0),) + tuple(c / (k + 1) for k, c in enumerate(self.coefficients)))

    def shift_up(self, k: int) -> 'Polynomial':
        """Multiply by x^k."""
        return Polynomial((Fraction(0),) * k + self.coefficients)

    def divmod(self, divisor: 'Polynomial') -> Tuple['Polynomial', 'Polynomial']:
        """Euclidean division over the rationals."""
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        remainder = list(self.coefficients)
        lead = divisor.coefficients[-1]
        dd = divisor.degree
        if len(remainder) - 1 < dd:
            return Polynomial(()), self
        quotient = [Fraction(0)] * (len(remainder) - dd)
        for k in range(len(remainder) - 1 - dd, -1, -1):
            factor = remainder[k + dd] / lead
            quotient[k] = factor
            if factor:
                for j, c in enumerate(divisor.coefficients):
                    remainder[k + j] -= factor * c
        return Polynomial(tuple(quotient)), Polynomial(tuple(remainder[:dd]))

    def exact_div(self, divisor: 'Polynomial') -> 'Polynomial':
        quotient, remainder = self.divmod(divisor)
        if not remainder.is_zero():
            raise ArithmeticError("polynomial division left a remainder")
        return quotient

    def monic(self) -> 'Polynomial':
        if self.is_zero():
            return self
        return self * (1 / self.coefficients[-1])

    @staticmethod
    def gcd(a: 'Polynomial', b: 'Polynomial') -> 'Polynomial':
        """Monic greatest common divisor."""
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else Polynomial.constant(1)

    def evaluate(self, x):
        """Horner evaluation; exact for Fractions, rounded for mpmath numbers."""
        result = 0
        for c in reversed(self.coefficients):
            result = result * x + _lift(c, x)
        return result

    def integer_form(self) -> Tuple['Polynomial', int]:
        """(P', d) with P = P'/d, P' integer and primitive up to sign of d."""
        if self.is_zero():
            return self, 1
        den = 1
        for c in self.coefficients:
            den = _lcm(den, c.denominator)
        ints = [int(c * den) for c in self.coefficients]
        content = 0
        for value in ints:
            content = gcd(content, value)
        content = content or 1
        return Polynomial(tuple(v // content for v in ints)), Fraction(den, content)

    def to_string(self, var: str = 'x') -> str:
        """Terms from highest degree down, e.g. ``225*x^3 - 54*x^2 + x``."""
        if self.is_zero():
            return '0'
        parts: List[str] = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = '-' if c < 0 else '+'
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                power = var if k == 1 else f"{var}^{k}"
                body = power if magnitude == 1 else f"{magnitude}*{power}"
            if not parts:
                parts.append(body if sign == '+' else f"-{body}")
            else:
                parts.append(f"{sign} {body}")
        return ' '.join(parts)

    def __str__(self):
        integral, scale = self.integer_form()
        integral = integral * scale.denominator
        body = integral.to_string()
        if scale.numerator == 1:
            return body
        if len([c for c in integral.coefficients if c]) > 1:
            body = f"({body})"
        return f"{body}/{scale.numerator}"


def _lift(c: Fraction, x):
    """Convert a Fraction coefficient into the number system of ``x``."""
    if isinstance(x, (int, Fraction)):
        return c
    ctx = getattr(x, 'context', None)
    if ctx is not None:
        return ctx.mpf(c.numerator) / c.denominator
    return c.numerator / c.denominator


@dataclass(frozen=True)
class PowerSeries:
    """Truncated power series with exact rational coefficients.

    ``coefficients`` always has ``order + 1`` entries.
    """

    coefficients: Tuple[Fraction, ...]
    order: int

    def __post_init__(self):
        """Validate series data."""
        coeffs = [Fraction(c) for c in self.coefficients][: self.order + 1]
        coeffs.extend([Fraction(0)] * (self.order + 1 - len(coeffs)))
        object.__setattr__(self, 'coefficients', tuple(coeffs))
        if self.order < 0:
            raise ValueError("order must be non-negative")

    @classmethod
    def from_function(cls, term, order: int) -> 'PowerSeries':
        return cls(tuple(term(k) for k in range(order + 1)), order)

    @classmethod
    def exponential(cls, scale: Number, order: int) -> 'PowerSeries':
        """exp(scale * z)."""
        scale = Fraction(scale)
        coeffs = [Fraction(1)]
        for k in range(1, order + 1):
            coeffs.append(coeffs[-1] * scale / k)
        return cls(tuple(coeffs), order)

    def coefficient(self, k: int) -> Fraction:
        return self.coefficients[k] if 0 <= k <= self.order else Fraction(0)

    def __add__(self, other: 'PowerSeries') -> 'PowerSeries':
        order = min(self.order, other.order)
        return PowerSeries(tuple(self.coefficients[k] + other.coefficients[k] for k in range(order + 1)), order)

    def __mul__(self, other) -> 'PowerSeries':
        if not isinstance(other, PowerSeries):
            return PowerSeries(tuple(c * other for c in self.coefficients), self.order)
        order = min(self.order, other.order)
        product = [Fraction(0)] * (order + 1)
        for i in range(order + 1):
            a = self.coefficients[i]
            if a == 0:
                continue
            for j in range(order + 1 - i):
                product[i + j] += a * other.coefficients[j]
        return PowerSeries(tuple(product), order)

    __rmul__ = __mul__

    def power(self, alpha: Number) -> 'PowerSeries':
        """Raise to a rational power via the J.C.P. Miller recurrence.

        A non-integer power needs constant term 1; the unit branch is taken.
        """
        alpha = Fraction(alpha)
        s0 = self.coefficients[0]
        if s0 == 0:
            raise ZeroDivisionError("power of a series with zero constant term")
        if alpha.denominator != 1 and s0 != 1:
            raise ValueError("rational powers need constant term 1")
        f = [s0 ** alpha.numerator if alpha.denominator == 1 else Fraction(1)]
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                sj = self.coefficients[j]
                if sj:
                    acc += (alpha * j - (k - j)) * sj * f[k - j]
            f.append(acc / (k * s0))
        return PowerSeries(tuple(f), self.order)


@dataclass(frozen=True)
class RationalFunction:
    """Quotient of exact polynomials, kept gcd-reduced with monic denominator."""

    numerator: Polynomial
    denominator: Polynomial

    def __post_init__(self):
        """Reduce by the polynomial gcd."""
        if self.denominator.is_zero():
            raise ValueError("denominator cannot be zero")
        g = Polynomial.gcd(self.numerator, self.denominator)
        num = self.numerator.exact_div(g) if g.degree > 0 else self.numerator
        den = self.denominator.exact_div(g) if g.degree > 0 else self.denominator
        lead = den.coefficients[-1]
        object.__setattr__(self, 'numerator', num * (1 / lead))
        object.__setattr__(self, 'denominator', den * (1 / lead))

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self):
        return hash((self.numerator, self.denominator))

    def evaluate(self, x):
        return self.numerator.evaluate(x) / self.denominator.evaluate(x)

    def one_plus_x_exponent(self) -> int:
        """k when the denominator is (1 + x)^k, otherwise -1."""
        k = self.denominator.degree
        return k if self.denominator == Polynomial.one_plus_x_power(k) else -1

    def __str__(self):
        """Canonical string such as ``-x/(2*(1+x)^4)``."""
        k = self.one_plus_x_exponent()
        integral, scale = self.numerator.integer_form()
        if k < 0:
            den_integral, den_scale = self.denominator.integer_form()
            ratio = Fraction(den_scale) / scale
            num_text = integral.to_string()
            if ratio.numerator != 1:
                num_text = f"{ratio.numerator}*({num_text})"
            den_text = den_integral.to_string()
            if ratio.denominator != 1:
                den_text = f"{ratio.denominator}*({den_text})"
            return f"({num_text})/({den_text})"

        if scale.denominator != 1:
            integral = integral * scale.denominator
        c = scale.numerator
        if k == 0:
            den_text = '' if c == 1 else str(c)
        else:
            base = '(1+x)' if k == 1 else f"(1+x)^{k}"
            den_text = base if c == 1 else f"({c}*{base})"
        num_text = integral.to_string()
        if not den_text:
            return num_text
        nonzero = [v for v in integral.coefficients if v]
        if len(nonzero) > 1:
            num_text = f"({num_text})"
        return f"{num_text}/{den_text}"

"""
Aperiodic correlation and exact demerit factors.

All demerit factors are Fractions. The Pursley-Sarwate Criterion
sqrt(ADF(f)*ADF(g)) + CDF(f, g) is irrational in general, so ExactPsc keeps
its rational parts and orders values with exact surd comparison.
"""

import math
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from app.exceptions import LengthMismatch, NotAPolynomial, ZeroDemeritFactor, ZeroSequence
from app.polyring import Coeff, IntLaurentPoly, abs_sq, laurent_conj, mul, norm2_sq

logger = logging.getLogger(__name__)

# Constants
DECIMAL_DIGITS = 10
PSC_FLOAT_GUARD = 1e-9

Rational = Union[int, Fraction]


def _length(f: IntLaurentPoly) -> int:
    if f.is_zero:
        raise ZeroSequence("correlation of the zero sequence")
    if f.offset < 0:
        raise NotAPolynomial(f"offset {f.offset} has negative exponents")
    return f.degree + 1


@dataclass(frozen=True)
class CorrelationProfile:
    """C_{f,g}(s) for s = min_shift, min_shift + 1, ..."""

    min_shift: int
    values: Tuple[Coeff, ...]

    @property
    def max_shift(self) -> int:
        return self.min_shift + len(self.values) - 1

    @property
    def shifts(self) -> range:
        return range(self.min_shift, self.max_shift + 1)

    def __len__(self) -> int:
        return len(self.values)

    def value(self, s: int) -> Coeff:
        index = s - self.min_shift
        if 0 <= index < len(self.values):
            return self.values[index]
        return 0

    def energy(self) -> int:
        """Sum of squared magnitudes over all shifts."""
        return sum(abs_sq(c) for c in self.values)


def crosscorrelation(f: IntLaurentPoly, g: IntLaurentPoly) -> CorrelationProfile:
    """Coefficients of f * conj(g), padded to shifts -(len g - 1) .. len f - 1."""
    len_f, len_g = _length(f), _length(g)
    product = mul(f, laurent_conj(g))
    lo = -(len_g - 1)
    return CorrelationProfile(lo, tuple(product.coefficient(s) for s in range(lo, len_f)))


def cdf(f: IntLaurentPoly, g: IntLaurentPoly) -> Fraction:
    """Crosscorrelation demerit factor from the correlation profile."""
    if _length(f) != _length(g):
        raise LengthMismatch(f"lengths {_length(f)} and {_length(g)} differ")
    return Fraction(crosscorrelation(f, g).energy(), norm2_sq(f) * norm2_sq(g))


def cdf_from_norms(f: IntLaurentPoly, g: IntLaurentPoly) -> Fraction:
    """Same quantity as cdf, as ||f g||_2^2 / (||f||_2^2 ||g||_2^2)."""
    if _length(f) != _length(g):
        raise LengthMismatch(f"lengths {_length(f)} and {_length(g)} differ")
    return Fraction(norm2_sq(mul(f, g)), norm2_sq(f) * norm2_sq(g))


def adf(f: IntLaurentPoly) -> Fraction:
    """Autocorrelation demerit factor: off-peak autocorrelation energy over ||f||^4."""
    return cdf(f, f) - 1


def amf(f: IntLaurentPoly) -> Fraction:
    """Merit factor 1 / ADF."""
    value = adf(f)
    if value == 0:
        raise ZeroDemeritFactor("autocorrelation demerit factor is 0")
    return 1 / value


def cmf(f: IntLaurentPoly, g: IntLaurentPoly) -> Fraction:
    """Crosscorrelation merit factor 1 / CDF."""
    value = cdf(f, g)
    if value == 0:
        raise ZeroDemeritFactor("crosscorrelation demerit factor is 0")
    return 1 / value


def compare_surds(a1: Rational, p1: Rational, a2: Rational, p2: Rational) -> int:
    """
    Sign of (a1 + sqrt(p1)) - (a2 + sqrt(p2)) for rationals, computed exactly.

    Args:
        a1, a2: rational parts
        p1, p2: nonnegative radicands

    Returns:
        -1, 0 or 1
    """
    if p1 < 0 or p2 < 0:
        raise ValueError(f"negative radicand in {p1}, {p2}")
    e = Fraction(a1) - Fraction(a2)
    root_sign = (p1 > p2) - (p1 < p2)
    e_sign = (e > 0) - (e < 0)
    if root_sign == 0 or root_sign == e_sign:
        return e_sign
    if e_sign == 0:
        return root_sign
    # Opposite signs: compare e^2 with (sqrt p1 - sqrt p2)^2 = p1 + p2 - 2 sqrt(p1 p2).
    t = Fraction(p1) + Fraction(p2) - e * e
    if t < 0:
        return e_sign
    four_q, t_sq = 4 * Fraction(p1) * Fraction(p2), t * t
    if four_q > t_sq:
        return e_sign
    if four_q < t_sq:
        return root_sign
    return 0


@dataclass(frozen=True)
class ExactPsc:
    """
    Pursley-Sarwate Criterion with exact parts.

    psc_exact is set when adf_f == adf_g, in which case the square root is rational.
    """

    cdf: Fraction
    adf_f: Fraction
    adf_g: Fraction
    psc_float: float
    psc_exact: Optional[Fraction] = None

    @classmethod
    def from_parts(cls, cdf: Fraction, adf_f: Fraction, adf_g: Fraction) -> "ExactPsc":
        cdf, adf_f, adf_g = Fraction(cdf), Fraction(adf_f), Fraction(adf_g)
        exact = adf_f + cdf if adf_f == adf_g else None
        return cls(cdf, adf_f, adf_g, float(cdf) + math.sqrt(float(adf_f * adf_g)), exact)

    @property
    def radicand(self) -> Fraction:
        return self.adf_f * self.adf_g

    def meets_bound(self) -> bool:
        """Float form of PSC >= 1, with PSC_FLOAT_GUARD slack."""
        return self.psc_float >= 1 - PSC_FLOAT_GUARD


def compare_psc(x: ExactPsc, y: ExactPsc) -> int:
    """-1, 0 or 1 as x is below, equal to or above y."""
    return compare_surds(x.cdf, x.radicand, y.cdf, y.radicand)


def psc(f: IntLaurentPoly, g: IntLaurentPoly) -> ExactPsc:
    """Finite Pursley-Sarwate value CDF(f, g) + sqrt(ADF(f) ADF(g))."""
    return ExactPsc.from_parts(cdf(f, g), adf(f), adf(g))


def satisfies_pursley_sarwate(f: IntLaurentPoly, g: IntLaurentPoly) -> bool:
    """|CDF(f,g) - 1| <= sqrt(ADF(f) ADF(g)), decided by squaring both sides."""
    value = psc(f, g)
    return (value.cdf - 1) ** 2 <= value.radicand


def format_fraction(value: Rational) -> str:
    """Always 'p/q', including integers ('1/1')."""
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def format_decimal(value: Union[Rational, float], digits: int = DECIMAL_DIGITS) -> str:
    """Decimal rendering with DECIMAL_DIGITS significant digits."""
    return f"{float(value):.{digits}g}"


def format_surd(rational: Rational, radicand: Rational) -> str:
    """Render rational + sqrt(radicand), collapsing to 'p/q' when the root is rational."""
    rational, radicand = Fraction(rational), Fraction(radicand)
    num_root, den_root = math.isqrt(radicand.numerator), math.isqrt(radicand.denominator)
    if num_root * num_root == radicand.numerator and den_root * den_root == radicand.denominator:
        return format_fraction(rational + Fraction(num_root, den_root))
    return f"{format_fraction(rational)} + sqrt({format_fraction(radicand)})"

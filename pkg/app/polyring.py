"""
Exact Laurent-polynomial algebra over the integers and the Gaussian integers.

Polynomials are immutable and canonically trimmed, so two polynomials are
equal exactly when their stored coefficients and offsets are equal. Products
come in two flavours: `mul` (pure-Python exact convolution) and `mul_fast`
(numpy FFT followed by rounding, guarded). `convolve` tries the fast path and
falls back to the exact one.

Usage:
    f = IntLaurentPoly.from_coeffs([1, 1, -1])
    g = conj_reciprocal(f)          # (-1, 1, 1)
    norm4_4(f)                      # sum of squared autocorrelations
"""

import os
import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from dotenv import load_dotenv

from app.exceptions import NotAPolynomial, NotLittlewood, RoundingUnsafe, ZeroSequence

load_dotenv()
logger = logging.getLogger(__name__)

# Constants
FFT_GUARD = float(os.getenv("RSL_FFT_GUARD", "1e-6"))
FLOAT_EXACT_LIMIT = 2 ** 52  # products at or above this cannot round exactly in float64


@dataclass(frozen=True, eq=False)
class GaussInt:
    """Gaussian integer re + im*i with exact int parts."""

    re: int
    im: int = 0

    @staticmethod
    def _lift(value) -> Optional["GaussInt"]:
        if isinstance(value, GaussInt):
            return value
        if isinstance(value, int):
            return GaussInt(int(value), 0)
        return None

    @property
    def real(self) -> int:
        return self.re

    @property
    def imag(self) -> int:
        return self.im

    def conjugate(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __add__(self, other):
        o = GaussInt._lift(other)
        if o is None:
            return NotImplemented
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussInt._lift(other)
        if o is None:
            return NotImplemented
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussInt._lift(other)
        if o is None:
            return NotImplemented
        return GaussInt(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = GaussInt._lift(other)
        if o is None:
            return NotImplemented
        return GaussInt(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        o = GaussInt._lift(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __repr__(self) -> str:
        sign = "+" if self.im >= 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


Coeff = Union[int, GaussInt]


def _normalize(value) -> Coeff:
    """Store real Gaussian integers as plain ints so real polynomials compare equal."""
    if isinstance(value, GaussInt):
        return value.re if value.im == 0 else value
    if isinstance(value, (int, np.integer)):
        return int(value)
    raise TypeError(f"coefficient {value!r} is not an integer or Gaussian integer")


def abs_sq(value: Coeff) -> int:
    """|value|**2 for an int or Gaussian integer."""
    if isinstance(value, GaussInt):
        return value.norm()
    return value * value


def _bound(value: Coeff) -> int:
    if isinstance(value, GaussInt):
        return abs(value.re) + abs(value.im)
    return abs(value)


@dataclass(frozen=True)
class IntLaurentPoly:
    """
    Laurent polynomial sum(coeffs[j] * z**(offset + j)).

    The stored coefficient list never starts or ends with zero; the zero
    polynomial stores no coefficients and offset 0.
    """

    coeffs: Tuple[Coeff, ...] = ()
    offset: int = 0

    def __post_init__(self):
        values = [_normalize(c) for c in self.coeffs]
        lo, hi = 0, len(values)
        while lo < hi and values[lo] == 0:
            lo += 1
        while hi > lo and values[hi - 1] == 0:
            hi -= 1
        object.__setattr__(self, "coeffs", tuple(values[lo:hi]))
        object.__setattr__(self, "offset", int(self.offset) + lo if hi > lo else 0)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable, offset: int = 0) -> "IntLaurentPoly":
        return cls(tuple(coeffs), offset)

    @classmethod
    def monomial(cls, exponent: int, coeff: Coeff = 1) -> "IntLaurentPoly":
        return cls((coeff,), exponent)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_real(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    @property
    def degree(self) -> int:
        """Highest exponent present (offset + number of coefficients - 1)."""
        if self.is_zero:
            raise ZeroSequence("the zero polynomial has no degree")
        return self.offset + len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def coefficient(self, exponent: int) -> Coeff:
        index = exponent - self.offset
        if 0 <= index < len(self.coeffs):
            return self.coeffs[index]
        return 0

    def shift(self, k: int) -> "IntLaurentPoly":
        """Multiply by z**k."""
        return IntLaurentPoly(self.coeffs, self.offset + k)

    def scale(self, c: Coeff) -> "IntLaurentPoly":
        return IntLaurentPoly(tuple(c * x for x in self.coeffs), self.offset)

    def __neg__(self) -> "IntLaurentPoly":
        return self.scale(-1)

    def __add__(self, other: "IntLaurentPoly") -> "IntLaurentPoly":
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo = min(self.offset, other.offset)
        hi = max(self.degree, other.degree)
        return IntLaurentPoly(
            tuple(self.coefficient(e) + other.coefficient(e) for e in range(lo, hi + 1)), lo
        )

    def __sub__(self, other: "IntLaurentPoly") -> "IntLaurentPoly":
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: "IntLaurentPoly") -> "IntLaurentPoly":
        if not isinstance(other, IntLaurentPoly):
            return NotImplemented
        return mul(self, other)


ZERO = IntLaurentPoly()


def mul(a: IntLaurentPoly, b: IntLaurentPoly) -> IntLaurentPoly:
    """Exact coefficient convolution."""
    if a.is_zero or b.is_zero:
        return ZERO
    out: List[Coeff] = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            out[i + j] += x * y
    return IntLaurentPoly(tuple(out), a.offset + b.offset)


def fft_product(a: IntLaurentPoly, b: IntLaurentPoly) -> Tuple[IntLaurentPoly, float]:
    """
    FFT convolution rounded to integers.

    Returns:
        The product and the largest pre-rounding deviation observed.

    Raises:
        RoundingUnsafe: when the output magnitude bound reaches 2**52 or a
            deviation reaches FFT_GUARD.
    """
    if a.is_zero or b.is_zero:
        return ZERO, 0.0

    bound = max(_bound(c) for c in a.coeffs) * max(_bound(c) for c in b.coeffs) * min(len(a), len(b))
    if bound >= FLOAT_EXACT_LIMIT:
        raise RoundingUnsafe(f"coefficient bound {bound} is beyond float64 integer precision")

    n = len(a) + len(b) - 1
    size = 1 << (n - 1).bit_length()

    if a.is_real and b.is_real:
        fa = np.fft.rfft(np.asarray(a.coeffs, dtype=np.float64), size)
        fb = np.fft.rfft(np.asarray(b.coeffs, dtype=np.float64), size)
        raw = np.fft.irfft(fa * fb, size)[:n]
        rounded = np.rint(raw)
        deviation = float(np.max(np.abs(raw - rounded)))
        coeffs: Sequence[Coeff] = [int(x) for x in rounded]
    else:
        ca = np.asarray([complex(GaussInt._lift(c).re, GaussInt._lift(c).im) for c in a.coeffs])
        cb = np.asarray([complex(GaussInt._lift(c).re, GaussInt._lift(c).im) for c in b.coeffs])
        raw = np.fft.ifft(np.fft.fft(ca, size) * np.fft.fft(cb, size))[:n]
        re, im = np.rint(raw.real), np.rint(raw.imag)
        deviation = float(max(np.max(np.abs(raw.real - re)), np.max(np.abs(raw.imag - im))))
        coeffs = [GaussInt(int(x), int(y)) for x, y in zip(re, im)]

    if deviation >= FFT_GUARD:
        raise RoundingUnsafe(f"pre-rounding deviation {deviation:.3e} reached guard {FFT_GUARD:.0e}")
    return IntLaurentPoly(tuple(coeffs), a.offset + b.offset), deviation


def mul_fast(a: IntLaurentPoly, b: IntLaurentPoly) -> IntLaurentPoly:
    """Same result as mul, computed with a guarded floating FFT."""
    product, _ = fft_product(a, b)
    return product


def convolve(a: IntLaurentPoly, b: IntLaurentPoly) -> IntLaurentPoly:
    """Product for pipelines: FFT when it rounds safely, exact convolution otherwise."""
    try:
        return mul_fast(a, b)
    except RoundingUnsafe as e:
        logger.warning(f"FFT product unsafe, using exact convolution: {e}")
        return mul(a, b)


def conj_reciprocal(a: IntLaurentPoly) -> IntLaurentPoly:
    """
    f -> z**deg(f) * conj(f(1/conj(z))): conjugate and reverse the coefficients 0..deg.

    Needs offset 0 (a nonzero constant coefficient), which makes it an
    involution that keeps the degree.
    """
    if a.is_zero:
        raise ZeroSequence("conjugate reciprocal of the zero polynomial")
    if a.offset != 0:
        raise NotAPolynomial(f"conjugate reciprocal needs offset 0, got {a.offset}")
    return IntLaurentPoly(tuple(c.conjugate() for c in reversed(a.coeffs)), 0)


def alternate(a: IntLaurentPoly) -> IntLaurentPoly:
    """a(z) -> a(-z)."""
    return IntLaurentPoly(
        tuple(-c if (a.offset + j) % 2 else c for j, c in enumerate(a.coeffs)), a.offset
    )


def laurent_conj(a: IntLaurentPoly) -> IntLaurentPoly:
    """Conjugate coefficients and negate exponents."""
    if a.is_zero:
        return ZERO
    return IntLaurentPoly(tuple(c.conjugate() for c in reversed(a.coeffs)), -a.degree)


def integral(a: IntLaurentPoly) -> Coeff:
    """Constant coefficient (the mean over the unit circle)."""
    return a.coefficient(0)


def norm2_sq(a: IntLaurentPoly) -> int:
    """Squared L2 norm: sum of squared coefficient magnitudes."""
    return sum(abs_sq(c) for c in a.coeffs)


def norm4_4(a: IntLaurentPoly) -> int:
    """Fourth power of the L4 norm: sum of squared autocorrelation magnitudes."""
    return norm2_sq(convolve(a, laurent_conj(a)))


def is_littlewood(a: IntLaurentPoly) -> bool:
    """Offset 0 with every coefficient +1 or -1."""
    return a.offset == 0 and bool(a.coeffs) and all(isinstance(c, int) and c in (1, -1) for c in a.coeffs)


@dataclass(frozen=True)
class LittlewoodSeq:
    """
    Bit-packed +-1 sequence of length `length`.

    Coefficient j lives at bit position length-1-j, so the most significant
    bit is the constant coefficient; a set bit means -1.
    """

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 1:
            raise NotLittlewood(f"length must be positive, got {self.length}")
        if not 0 <= self.bits < (1 << self.length):
            raise NotLittlewood(f"bits {self.bits:#x} do not fit in length {self.length}")

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[int]) -> "LittlewoodSeq":
        if not coeffs:
            raise NotLittlewood("empty sequence")
        bits = 0
        for c in coeffs:
            if c not in (1, -1) or isinstance(c, GaussInt):
                raise NotLittlewood(f"coefficient {c!r} is not +1 or -1")
            bits = (bits << 1) | (c == -1)
        return cls(len(coeffs), bits)

    @classmethod
    def from_poly(cls, poly: IntLaurentPoly) -> "LittlewoodSeq":
        if not is_littlewood(poly):
            raise NotLittlewood("polynomial is not a Littlewood polynomial with offset 0")
        return cls.from_coefficients(poly.coeffs)

    def coefficients(self) -> Tuple[int, ...]:
        return tuple(-1 if (self.bits >> (self.length - 1 - j)) & 1 else 1 for j in range(self.length))

    def to_poly(self) -> IntLaurentPoly:
        return IntLaurentPoly(self.coefficients(), 0)

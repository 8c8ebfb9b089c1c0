"""
Closed forms for demerit factors along a pair of stems.

The pair state (u, v, w) = (||f g||^2, ||f g~||^2, Re int f f~ conj(g g~))
evolves linearly under one recursion step. With both stems driven by one
sign sequence the transition has eigenvalues 4, 4, -2, which gives the
finite-n crosscorrelation demerit factor in closed form and its limit:

    CDF(f_n, g_n) = [(2u+v+w) + (-1/2)**n (u-v-w)] / (3 ||f_0||^2 ||g_0||^2)

Everything here is exact integer or Fraction arithmetic.

Usage:
    f0, g0 = elaine_pair(3)
    limiting_cdf(f0, g0)        # Fraction(1, 9)
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from app.correlation import ExactPsc
from app.exceptions import BadSign, DepthExceedsSigns, LengthMismatch, NotLittlewood
from app.polyring import (
    IntLaurentPoly,
    alternate,
    convolve,
    integral,
    is_littlewood,
    laurent_conj,
    norm2_sq,
    norm4_4,
)
from app.recursion import check_seed

logger = logging.getLogger(__name__)

# Constants
LOWER_ADF_BOUND = Fraction(1, 3)

Matrix = Tuple[Tuple[int, int, int], ...]


def _check_pair(f: IntLaurentPoly, g: IntLaurentPoly) -> None:
    check_seed(f)
    check_seed(g)
    if len(f) != len(g):
        raise LengthMismatch(f"seed lengths {len(f)} and {len(g)} differ")


@dataclass(frozen=True)
class UvwState:
    u: int
    v: int
    w: int

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.u, self.v, self.w)


@dataclass(frozen=True)
class LimitReport:
    """Limiting values for the stems grown from a seed pair."""

    adf_f: Fraction
    adf_g: Fraction
    cdf: Fraction
    psc: ExactPsc


def _self_alternating_product(f: IntLaurentPoly) -> IntLaurentPoly:
    return convolve(f, alternate(f))


def uvw_of(f: IntLaurentPoly, g: IntLaurentPoly) -> UvwState:
    """Exact (u, v, w) for a seed pair of equal length."""
    _check_pair(f, g)
    u = norm2_sq(convolve(f, g))
    v = norm2_sq(convolve(f, alternate(g)))
    w_full = integral(convolve(_self_alternating_product(f), laurent_conj(_self_alternating_product(g))))
    return UvwState(u, v, w_full.real)


def transition_matrix(sign_product: int = 1) -> Matrix:
    """Matrix taking (u, v, w) one step forward for sign product eps."""
    if sign_product not in (1, -1):
        raise BadSign(f"sign product {sign_product!r} is not +1 or -1")
    eps = sign_product
    return (
        (2, 2, 2 * eps),
        (2, 2, -2 * eps),
        (2 * eps, -2 * eps, 2),
    )


def uvw_step(state: UvwState, sign_product: int) -> UvwState:
    """One recursion step for both stems; sign_product = sigma_n * tau_n."""
    vector = state.as_tuple()
    u, v, w = (sum(m * x for m, x in zip(row, vector)) for row in transition_matrix(sign_product))
    return UvwState(u, v, w)


def finite_cdf_closed_form(
    f0: IntLaurentPoly,
    g0: IntLaurentPoly,
    n: int,
    sign_products: Optional[Sequence[int]] = None,
) -> Fraction:
    """
    Exact CDF(f_n, g_n).

    Uses the eigen-decomposed closed form when every sign product is +1 (both
    stems share one sign sequence); otherwise iterates uvw_step n times.

    Args:
        f0, g0: seeds of equal length
        n: depth
        sign_products: eps_0 .. eps_{n-1}; None means all +1
    """
    _check_pair(f0, g0)
    if n < 0:
        raise ValueError(f"depth must be nonnegative, got {n}")
    if sign_products is None:
        sign_products = (1,) * n
    if len(sign_products) < n:
        raise DepthExceedsSigns(f"depth {n} needs {n} sign products, got {len(sign_products)}")

    state = uvw_of(f0, g0)
    denominator = norm2_sq(f0) * norm2_sq(g0)
    if all(eps == 1 for eps in sign_products[:n]):
        u, v, w = state.as_tuple()
        return ((2 * u + v + w) + Fraction(-1, 2) ** n * (u - v - w)) / (3 * denominator)

    for eps in sign_products[:n]:
        state = uvw_step(state, eps)
    return Fraction(state.u, 4 ** n * denominator)


def limiting_adf(f0: IntLaurentPoly) -> Fraction:
    """-1 + (2/3) (||f0||_4^4 + ||f0 f0~||_2^2) / ||f0||_2^4; never below 1/3."""
    check_seed(f0)
    n2 = norm2_sq(f0)
    return -1 + Fraction(2 * (norm4_4(f0) + norm2_sq(_self_alternating_product(f0))), 3 * n2 * n2)


def limiting_cdf(f0: IntLaurentPoly, g0: IntLaurentPoly) -> Fraction:
    """Limit of CDF(f_n, g_n) for stems sharing one sign sequence."""
    state = uvw_of(f0, g0)
    return Fraction(2 * state.u + state.v + state.w, 3 * norm2_sq(f0) * norm2_sq(g0))


def limiting_psc(f0: IntLaurentPoly, g0: IntLaurentPoly) -> ExactPsc:
    """Exact limiting Pursley-Sarwate value of the two stems."""
    return ExactPsc.from_parts(limiting_cdf(f0, g0), limiting_adf(f0), limiting_adf(g0))


def limit_report(f0: IntLaurentPoly, g0: Optional[IntLaurentPoly] = None) -> LimitReport:
    """Limits for (f0, g0); a single seed is paired with itself."""
    g0 = f0 if g0 is None else g0
    value = limiting_psc(f0, g0)
    return LimitReport(adf_f=value.adf_f, adf_g=value.adf_g, cdf=value.cdf, psc=value)


def bm_ratio(f0: IntLaurentPoly, n: int) -> Fraction:
    """
    ||f_n||_4^4 / ||f_n||_2^4 for the all-(+1) stem of a Littlewood seed.

    Closed form:
        [2 N4 + 2 M + (-1/2)**n (N4 - 2 M)] / (3 l**2)
    with N4 = ||f0||_4^4 and M = ||f0 f0~||_2^2.
    """
    if not is_littlewood(f0):
        raise NotLittlewood("seed must have all coefficients in {-1, +1}")
    if n < 0:
        raise ValueError(f"depth must be nonnegative, got {n}")
    n4 = norm4_4(f0)
    m = norm2_sq(_self_alternating_product(f0))
    length = len(f0)
    return (2 * n4 + 2 * m + Fraction(-1, 2) ** n * (n4 - 2 * m)) / (3 * length * length)


def elaine_pair(k: int) -> Tuple[IntLaurentPoly, IntLaurentPoly]:
    """All-ones of length 4k, and k copies of (1, -1, -1, 1); their limiting CDF is 1/(3k)."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    f0 = IntLaurentPoly.from_coeffs([1] * (4 * k))
    g0 = IntLaurentPoly.from_coeffs([1, -1, -1, 1] * k)
    return f0, g0


def elaine_closed_form(k: int) -> Dict[str, Fraction]:
    """Closed-form norms and limits of elaine_pair(k)."""
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    return {
        "norm4_4_f": Fraction(4 * k * (32 * k * k + 1), 3),
        "norm4_4_g": Fraction(4 * k * (16 * k * k + 5), 3),
        "alt_norm_f": Fraction(4 * k),
        "alt_norm_g": Fraction(4 * k * (16 * k * k - 1), 3),
        "limiting_adf": Fraction(16 * k * k - 9 * k + 2, 9 * k),
        "limiting_cdf": Fraction(1, 3 * k),
    }

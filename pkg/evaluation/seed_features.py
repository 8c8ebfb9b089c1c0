"""
Vectorised correlation kernels over blocks of bit-packed seeds.

Seeds are uint64 arrays with coefficient j at bit length-1-j (set bit = -1).
For shift s >= 0 the aperiodic crosscorrelation of bit patterns x, y is

    C_{x,y}(s) = (length - s) - 2 * popcount((x ^ (y >> s)) & ((1 << (length - s)) - 1))

Everything limiting-value related reduces to integer features of one seed:
its autocorrelations A(0..length-1) and the even coefficients P(0), P(2), ...
of f(z) f(-z). For a pair,

    3 l^2 CDF_limit = 2u + v + w = sum_s (2 + (-1)^s) A_f(s) A_g(s) + sum_k P_f(k) P_g(k)

which is a weighted dot product of the two feature vectors.
"""

import logging
from typing import Tuple

import numpy as np

from app.symmetry import alt_mask, reverse_bits_array

logger = logging.getLogger(__name__)

# Constants
_S55 = np.uint64(0x5555555555555555)
_S33 = np.uint64(0x3333333333333333)
_S0F = np.uint64(0x0F0F0F0F0F0F0F0F)
_S01 = np.uint64(0x0101010101010101)


def _bit_count64(arr: np.ndarray) -> np.ndarray:
    arr = arr - ((arr >> np.uint64(1)) & _S55)
    arr = (arr & _S33) + ((arr >> np.uint64(2)) & _S33)
    arr += arr >> np.uint64(4)
    arr &= _S0F
    arr *= _S01
    arr >>= np.uint64(56)
    return arr


def popcount(x: np.ndarray) -> np.ndarray:
    """Set bits per element as int64; uses np.bitwise_count when numpy has it."""
    x = x.astype(np.uint64, copy=False)
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(x).astype(np.int64)
    return _bit_count64(x.copy()).astype(np.int64)


def shifted_correlation(x: np.ndarray, y: np.ndarray, shift: int, length: int) -> np.ndarray:
    """C_{x,y}(shift) elementwise; negative shifts use C_{x,y}(s) = C_{y,x}(-s)."""
    if shift < 0:
        x, y, shift = y, x, -shift
    if shift >= length:
        return np.zeros(np.broadcast(x, y).shape, dtype=np.int64)
    mask = np.uint64((1 << (length - shift)) - 1)
    diff = (x ^ (y >> np.uint64(shift))) & mask
    return (length - shift) - 2 * popcount(diff)


def autocorrelations(x: np.ndarray, length: int) -> np.ndarray:
    """A(s) for s = 0 .. length-1, shape (N, length)."""
    x = x.astype(np.uint64, copy=False)
    return np.stack([shifted_correlation(x, x, s, length) for s in range(length)], axis=1)


def alternating_products(x: np.ndarray, length: int) -> np.ndarray:
    """
    Even coefficients P(0), P(2), .., P(2 length - 2) of f(z) f(-z), shape (N, length).

    The product is a convolution, so it is read as a crosscorrelation against
    the reversed alternate of each seed.
    """
    x = x.astype(np.uint64, copy=False)
    reversed_alt = reverse_bits_array(x ^ np.uint64(alt_mask(length)), length)
    # (f * f~)_k = C_{rev(f~), f}(length - 1 - k)
    return np.stack(
        [shifted_correlation(reversed_alt, x, length - 1 - 2 * m, length) for m in range(length)],
        axis=1,
    )


def adf_numerators(autocorr: np.ndarray, length: int) -> np.ndarray:
    """
    a = 4E - 3 l^2 with E = sum over even shifts of A(s)^2, so that the
    limiting ADF is a / (3 l^2). Always >= l^2.
    """
    even = autocorr[:, 2::2].astype(np.int64)
    energy = autocorr[:, 0].astype(np.int64) ** 2 + 2 * np.sum(even * even, axis=1)
    return 4 * energy - 3 * length * length


def pair_features(x: np.ndarray, length: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Feature matrix [A | P] as float64 and the ADF numerators a.

    Entries are integers bounded by length, so float64 dot products of these
    rows stay exact.
    """
    autocorr = autocorrelations(x, length)
    features = np.concatenate([autocorr, alternating_products(x, length)], axis=1).astype(np.float64)
    return features, adf_numerators(autocorr, length)


def pair_weights(length: int) -> np.ndarray:
    """Weights turning a feature dot product into 2u + v + w."""
    shifts = np.arange(length)
    corr = np.where(shifts == 0, 3.0, np.where(shifts % 2 == 0, 6.0, 2.0))
    return np.concatenate([corr, np.ones(length)])


def pair_numerators(features_f: np.ndarray, features_g: np.ndarray, length: int) -> np.ndarray:
    """c = 2u + v + w for every (f, g) combination, shape (Nf, Ng), int64."""
    product = (features_f * pair_weights(length)) @ features_g.T
    return np.rint(product).astype(np.int64)

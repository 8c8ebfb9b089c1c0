"""Tests for the bit-packed correlation kernels used by the scanner."""

from fractions import Fraction

import numpy as np

from app.asymptotics import limiting_adf, limiting_cdf
from app.correlation import crosscorrelation
from app.polyring import LittlewoodSeq, alternate, mul
from evaluation.seed_features import (
    _bit_count64,
    adf_numerators,
    alternating_products,
    autocorrelations,
    pair_features,
    pair_numerators,
    popcount,
    shifted_correlation,
)


def test_popcount_matches_bin_count(rng):
    values = [rng.getrandbits(64) for _ in range(200)] + [0, (1 << 64) - 1]
    x = np.array(values, dtype=np.uint64)
    expected = [bin(v).count("1") for v in values]
    assert list(popcount(x)) == expected
    assert list(_bit_count64(x.copy()).astype(np.int64)) == expected


def test_shifted_correlation_matches_profile(rng):
    for _ in range(30):
        length = rng.randint(1, 20)
        x, y = rng.getrandbits(length), rng.getrandbits(length)
        profile = crosscorrelation(LittlewoodSeq(length, x).to_poly(), LittlewoodSeq(length, y).to_poly())
        xa, ya = np.array([x], dtype=np.uint64), np.array([y], dtype=np.uint64)
        for s in range(-length, length + 1):
            assert int(shifted_correlation(xa, ya, s, length)[0]) == profile.value(s)


def test_autocorrelations_block():
    length = 9
    x = np.arange(1 << length, dtype=np.uint64)
    table = autocorrelations(x, length)
    assert table.shape == (1 << length, length)
    assert np.all(table[:, 0] == length)
    for bits in (0, 5, 300, 511):
        profile = crosscorrelation(*(LittlewoodSeq(length, bits).to_poly(),) * 2)
        assert list(table[bits]) == [profile.value(s) for s in range(length)]


def test_alternating_products_are_even_coefficients(rng):
    for _ in range(30):
        length = rng.randint(1, 16)
        bits = rng.getrandbits(length)
        f = LittlewoodSeq(length, bits).to_poly()
        product = mul(f, alternate(f))
        row = alternating_products(np.array([bits], dtype=np.uint64), length)[0]
        assert list(row) == [product.coefficient(2 * m) for m in range(length)]
        assert all(product.coefficient(2 * m + 1) == 0 for m in range(length))


def test_adf_numerators_give_limiting_adf():
    length = 8
    x = np.arange(1 << length, dtype=np.uint64)
    a = adf_numerators(autocorrelations(x, length), length)
    for bits in range(1 << length):
        assert Fraction(int(a[bits]), 3 * length * length) == limiting_adf(LittlewoodSeq(length, bits).to_poly())
    assert int(a.min()) >= length * length


def test_pair_numerators_give_limiting_cdf(rng):
    length = 7
    f_bits = np.array([rng.getrandbits(length) for _ in range(12)], dtype=np.uint64)
    g_bits = np.array([rng.getrandbits(length) for _ in range(9)], dtype=np.uint64)
    features_f, a_f = pair_features(f_bits, length)
    features_g, _ = pair_features(g_bits, length)
    c = pair_numerators(features_f, features_g, length)
    assert c.shape == (12, 9)
    for i, x in enumerate(f_bits):
        f = LittlewoodSeq(length, int(x)).to_poly()
        assert Fraction(int(a_f[i]), 3 * length * length) == limiting_adf(f)
        for j, y in enumerate(g_bits):
            g = LittlewoodSeq(length, int(y)).to_poly()
            assert Fraction(int(c[i, j]), 3 * length * length) == limiting_cdf(f, g)

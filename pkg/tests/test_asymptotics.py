"""Tests for the (u, v, w) transition, closed forms and limiting values."""

import logging
from fractions import Fraction

import pytest

from app.asymptotics import (
    LOWER_ADF_BOUND,
    UvwState,
    bm_ratio,
    elaine_closed_form,
    elaine_pair,
    finite_cdf_closed_form,
    limit_report,
    limiting_adf,
    limiting_cdf,
    limiting_psc,
    transition_matrix,
    uvw_of,
    uvw_step,
)
from app.correlation import adf, cdf
from app.exceptions import BadSeed, LengthMismatch, NotLittlewood
from app.polyring import IntLaurentPoly, alternate, integral, laurent_conj, mul, norm2_sq, norm4_4
from app.recursion import StemSpec, sign_products, stem, step
from conftest import random_littlewood, random_signs
from parsing.hex_codec import parse_seed


def poly(*coeffs, offset=0):
    return IntLaurentPoly.from_coeffs(coeffs, offset)


def test_uvw_of_small_pair():
    assert uvw_of(poly(1, 1), poly(1, -1)) == UvwState(2, 6, 2)


def test_uvw_step_small_pair():
    assert uvw_step(UvwState(2, 6, 2), 1) == UvwState(20, 12, -4)
    assert limiting_cdf(poly(1, 1), poly(1, -1)) == 1


def test_transition_matrix():
    assert transition_matrix(1) == ((2, 2, 2), (2, 2, -2), (2, -2, 2))
    assert transition_matrix(-1) == ((2, 2, -2), (2, 2, 2), (-2, 2, 2))


@pytest.mark.parametrize("eps, vector, image", [
    (1, (1, 1, 0), (4, 4, 0)),
    (1, (1, 0, 1), (4, 0, 4)),
    (1, (-1, 1, 1), (2, -2, -2)),
    (-1, (1, 1, 0), (4, 4, 0)),
    (-1, (1, 0, -1), (4, 0, -4)),
    (-1, (1, -1, 1), (-2, 2, -2)),
])
def test_transition_eigenvectors(eps, vector, image):
    assert uvw_step(UvwState(*vector), eps) == UvwState(*image)


def test_uvw_step_matches_stepped_pairs(rng):
    for _ in range(200):
        length = rng.randint(1, 12)
        f, g = random_littlewood(rng, length), random_littlewood(rng, length)
        sigma, tau = rng.choice((1, -1)), rng.choice((1, -1))
        assert uvw_of(step(f, sigma), step(g, tau)) == uvw_step(uvw_of(f, g), sigma * tau)


@pytest.mark.slow
def test_uvw_step_matches_stepped_pairs_thousand(rng):
    for _ in range(1000):
        length = rng.randint(1, 16)
        f, g = random_littlewood(rng, length), random_littlewood(rng, length)
        for eps in (1, -1):
            assert uvw_of(step(f, 1), step(g, eps)) == uvw_step(uvw_of(f, g), eps)


def test_finite_cdf_closed_form_matches_brute_force(rng):
    for _ in range(60):
        length = rng.randint(1, 10)
        n = rng.randint(0, 4)
        f0, g0 = random_littlewood(rng, length), random_littlewood(rng, length)
        # one shared sign sequence gives products of +1
        signs = random_signs(rng, n)
        f_n = stem(StemSpec(f0, signs), n)[-1]
        g_n = stem(StemSpec(g0, signs), n)[-1]
        assert finite_cdf_closed_form(f0, g0, n) == cdf(f_n, g_n)


def test_finite_cdf_with_independent_signs(rng):
    for _ in range(60):
        length = rng.randint(1, 10)
        n = rng.randint(0, 4)
        f0, g0 = random_littlewood(rng, length), random_littlewood(rng, length)
        signs_f, signs_g = random_signs(rng, n), random_signs(rng, n)
        f_n = stem(StemSpec(f0, signs_f), n)[-1]
        g_n = stem(StemSpec(g0, signs_g), n)[-1]
        assert finite_cdf_closed_form(f0, g0, n, sign_products(signs_f, signs_g)) == cdf(f_n, g_n)


@pytest.mark.slow
def test_finite_cdf_closed_form_two_hundred_pairs(rng):
    for _ in range(200):
        length = rng.randint(1, 16)
        n = rng.randint(0, 4)
        f0, g0 = random_littlewood(rng, length), random_littlewood(rng, length)
        signs = random_signs(rng, n)
        f_n = stem(StemSpec(f0, signs), n)[-1]
        g_n = stem(StemSpec(g0, signs), n)[-1]
        assert finite_cdf_closed_form(f0, g0, n) == cdf(f_n, g_n)


def test_limiting_adf_of_unit_seed():
    assert limiting_adf(poly(1)) == Fraction(1, 3)
    assert limiting_adf(poly(1, 1)) == Fraction(1, 3)


def test_limiting_adf_lower_bound(rng):
    for _ in range(300):
        assert limiting_adf(random_littlewood(rng, rng.randint(1, 30))) >= LOWER_ADF_BOUND


def test_limiting_adf_matches_published_rows():
    assert limiting_adf(parse_seed("01C", 11).to_poly()) == Fraction(161, 363)
    assert limiting_adf(parse_seed("00035AC726", 37).to_poly()) == Fraction(1513, 4107)


def test_limiting_adf_is_the_limit_of_finite_adfs(rng):
    f0 = random_littlewood(rng, 9)
    limit = limiting_adf(f0)
    members = stem(StemSpec(f0, (1,) * 6), 6)
    gaps = [abs(adf(f) - limit) for f in members]
    for n, gap in enumerate(gaps):
        assert gap == gaps[0] / 2 ** n


def test_limit_report_for_a_single_seed(rng):
    f0 = random_littlewood(rng, 8)
    report = limit_report(f0)
    assert report.adf_f == report.adf_g == limiting_adf(f0)
    assert report.cdf == report.adf_f + 1
    assert report.psc.psc_exact == 2 * report.adf_f + 1


def test_limiting_psc_pair():
    value = limiting_psc(poly(1, 1), poly(1, -1))
    assert value.cdf == 1
    assert value.adf_f == value.adf_g == Fraction(1, 3)
    assert value.psc_exact == Fraction(4, 3)


def test_limit_errors():
    with pytest.raises(LengthMismatch):
        limiting_cdf(poly(1, 1), poly(1, 1, 1))
    with pytest.raises(BadSeed):
        limiting_adf(poly(1, offset=2))


def test_uvw_of_large_coefficients_uses_exact_products(caplog):
    big = 2 ** 40
    f, g = poly(big, 1), poly(1, big)
    with caplog.at_level(logging.WARNING, logger="app.polyring"):
        state = uvw_of(f, g)
    ff, gg = mul(f, alternate(f)), mul(g, alternate(g))
    assert state.u == norm2_sq(mul(f, g))
    assert state.v == norm2_sq(mul(f, alternate(g)))
    assert state.w == integral(mul(ff, laurent_conj(gg)))
    assert "FFT product unsafe" in caplog.text


def test_bm_ratio():
    assert bm_ratio(poly(1), 2) == Fraction(5, 4)
    assert bm_ratio(poly(1), 0) == 1


def test_bm_ratio_matches_stem_norms(rng):
    for _ in range(20):
        f0 = random_littlewood(rng, rng.randint(1, 8))
        members = stem(StemSpec(f0, (1,) * 5), 5)
        for n, f in enumerate(members):
            assert bm_ratio(f0, n) == Fraction(norm4_4(f), norm2_sq(f) ** 2)


def test_bm_ratio_needs_littlewood_seed():
    with pytest.raises(NotLittlewood):
        bm_ratio(poly(1, 2), 1)


def test_elaine_pair_first_member():
    f0, g0 = elaine_pair(1)
    assert f0 == poly(1, 1, 1, 1)
    assert g0 == poly(1, -1, -1, 1)
    state = uvw_of(f0, g0)
    assert state.as_tuple() == (4, 12, -4)
    assert norm2_sq(mul(g0, alternate(g0))) == 20
    assert norm4_4(g0) == 28


def test_elaine_family_closed_forms():
    for k in range(1, 51):
        f0, g0 = elaine_pair(k)
        assert limiting_cdf(f0, g0) == Fraction(1, 3 * k)
        expected_adf = Fraction(16 * k * k - 9 * k + 2, 9 * k)
        assert limiting_adf(f0) == expected_adf
        assert limiting_adf(g0) == expected_adf


def test_elaine_closed_form_matches_computed_norms():
    for k in range(1, 8):
        f0, g0 = elaine_pair(k)
        closed = elaine_closed_form(k)
        assert closed["norm4_4_f"] == norm4_4(f0)
        assert closed["norm4_4_g"] == norm4_4(g0)
        assert closed["alt_norm_f"] == norm2_sq(mul(f0, alternate(f0)))
        assert closed["alt_norm_g"] == norm2_sq(mul(g0, alternate(g0)))
        assert closed["limiting_cdf"] == limiting_cdf(f0, g0)


def test_elaine_pair_rejects_nonpositive_k():
    with pytest.raises(ValueError):
        elaine_pair(0)

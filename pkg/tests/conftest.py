"""Shared fixtures: seeded random Littlewood seeds and small named polynomials."""

import random
from typing import List

import pytest

from app.polyring import GaussInt, IntLaurentPoly, LittlewoodSeq

#: fixed seed so randomized properties are reproducible
RANDOM_SEED = 20240607

BARKER_13 = (1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1)


def random_littlewood(rng: random.Random, length: int) -> IntLaurentPoly:
    return IntLaurentPoly.from_coeffs([rng.choice((1, -1)) for _ in range(length)])


def random_seq(rng: random.Random, length: int) -> LittlewoodSeq:
    return LittlewoodSeq(length, rng.getrandbits(length))


def random_int_poly(rng: random.Random, length: int, offset: int = 0, spread: int = 5) -> IntLaurentPoly:
    """Integer coefficients in [-spread, spread]; the lowest one is nonzero."""
    coeffs = [rng.randint(-spread, spread) for _ in range(length)]
    coeffs[0] = rng.choice((-1, 1)) * rng.randint(1, spread)
    return IntLaurentPoly.from_coeffs(coeffs, offset)


def random_gaussian_poly(rng: random.Random, length: int, offset: int = 0, spread: int = 3) -> IntLaurentPoly:
    """Gaussian-integer coefficients with parts in [-spread, spread]; the lowest one is nonzero."""
    coeffs = [GaussInt(rng.randint(-spread, spread), rng.randint(-spread, spread)) for _ in range(length)]
    coeffs[0] = GaussInt(rng.randint(1, spread), rng.randint(-spread, spread))
    return IntLaurentPoly.from_coeffs(coeffs, offset)


def random_signs(rng: random.Random, depth: int) -> List[int]:
    return [rng.choice((1, -1)) for _ in range(depth)]


@pytest.fixture
def rng() -> random.Random:
    return random.Random(RANDOM_SEED)


@pytest.fixture
def barker13() -> IntLaurentPoly:
    return IntLaurentPoly.from_coeffs(BARKER_13)

"""
Rudin-Shapiro-like stems.

    f_{n+1}(z) = f_n(z) + sigma_n * z**len(f_n) * f_n^dagger(-z)

Each step doubles the length and keeps the constant coefficient nonzero, so
a Littlewood seed yields Littlewood stem members of length 2**n * len(f_0).
"""

import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple

from app.exceptions import BadSeed, BadSign, DepthExceedsSigns, StemDepthExceeded
from app.polyring import IntLaurentPoly, alternate, conj_reciprocal

logger = logging.getLogger(__name__)

# Constants
MAX_STEM_DEPTH = 20


def check_seed(f: IntLaurentPoly) -> None:
    """Raise BadSeed unless f has offset 0 and is nonzero."""
    if f.is_zero or f.offset != 0:
        raise BadSeed("seed needs offset 0 and a nonzero constant coefficient")


def _check_sign(sign: int) -> None:
    if sign not in (1, -1):
        raise BadSign(f"sign {sign!r} is not +1 or -1")


@dataclass(frozen=True)
class StemSpec:
    """Seed polynomial plus the per-step signs sigma_0, sigma_1, ..."""

    seed: IntLaurentPoly
    signs: Tuple[int, ...] = ()

    def __post_init__(self):
        check_seed(self.seed)
        object.__setattr__(self, "signs", tuple(self.signs))
        for sign in self.signs:
            _check_sign(sign)


def step(f: IntLaurentPoly, sign: int) -> IntLaurentPoly:
    """One recursion step; the result has twice the length of f."""
    check_seed(f)
    _check_sign(sign)
    tail = alternate(conj_reciprocal(f)).scale(sign).shift(len(f))
    return f + tail


def stem(spec: StemSpec, depth: int) -> List[IntLaurentPoly]:
    """
    Generate f_0 .. f_depth.

    Raises:
        StemDepthExceeded: depth above MAX_STEM_DEPTH
        DepthExceedsSigns: fewer than depth signs in the StemSpec
    """
    if depth < 0:
        raise ValueError(f"depth must be nonnegative, got {depth}")
    if depth > MAX_STEM_DEPTH:
        raise StemDepthExceeded(f"depth {depth} is above the cap of {MAX_STEM_DEPTH}")
    if depth > len(spec.signs):
        raise DepthExceedsSigns(f"depth {depth} needs {depth} signs, spec has {len(spec.signs)}")

    members = [spec.seed]
    for n in range(depth):
        members.append(step(members[-1], spec.signs[n]))
    logger.debug(f"stem of depth {depth} reached length {len(members[-1])}")
    return members


def shapiro_signs(depth: int) -> Tuple[int, ...]:
    """sigma_0 = 1 and sigma_n = (-1)**(n+1) afterwards; from seed (1) this gives Shapiro's polynomials."""
    return tuple(1 if n == 0 else (-1) ** (n + 1) for n in range(depth))


def parse_signs(text: str) -> Tuple[int, ...]:
    """'+--+' -> (1, -1, -1, 1)."""
    signs = []
    for ch in text:
        if ch == "+":
            signs.append(1)
        elif ch == "-":
            signs.append(-1)
        else:
            raise BadSign(f"sign character {ch!r} is not '+' or '-'")
    return tuple(signs)


def sign_products(signs_f: Sequence[int], signs_g: Sequence[int]) -> Tuple[int, ...]:
    """Per-step products sigma_n * tau_n driving the pair transition."""
    if len(signs_f) != len(signs_g):
        raise DepthExceedsSigns(f"sign sequences have lengths {len(signs_f)} and {len(signs_g)}")
    return tuple(s * t for s, t in zip(signs_f, signs_g))

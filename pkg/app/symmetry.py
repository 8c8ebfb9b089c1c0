"""
Symmetries of seeds and seed pairs.

Generators on a single seed f of length l:
    n(f) = -f,  h(f) = f(-z),  r(f) = f^dagger
and on a pair (f, g):
    n(f, g) = (-f, g),  s(f, g) = (g, f),  h and r act on both.

Limiting demerit factors are constant on orbits, so searches only evaluate
the canonical member of each orbit (smallest hex encoding) and recover counts
from orbit sizes.

Words are read right to left: act(SymmetryWord("hr"), f) == h(r(f)).
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, List, Optional, Tuple, TypeVar, Union

import numpy as np

from app.exceptions import InvalidWord, RelationViolation
from app.polyring import IntLaurentPoly, LittlewoodSeq, alternate, conj_reciprocal
from parsing.hex_codec import encode_bits

logger = logging.getLogger(__name__)

# Constants
SINGLE_GENERATORS = "nhr"
PAIR_GENERATORS = "nhrs"
MAX_EXHAUSTIVE_SINGLE_LENGTH = 16
MAX_EXHAUSTIVE_PAIR_SPACE = 1 << 16
PAIR_SAMPLE_SIZE = 4096
MAX_WORD_LENGTH = 64

Pair = Tuple[LittlewoodSeq, LittlewoodSeq]
T = TypeVar("T", bound=Hashable)


@dataclass(frozen=True)
class SymmetryWord:
    """Generator letters from 'nhrs', applied right to left."""

    letters: str = ""

    def __post_init__(self):
        bad = [ch for ch in self.letters if ch not in PAIR_GENERATORS]
        if bad:
            raise InvalidWord(f"unknown generators {''.join(bad)!r} in word {self.letters!r}")

    @property
    def uses_swap(self) -> bool:
        return "s" in self.letters

    def __str__(self) -> str:
        return self.letters or "id"


@dataclass(frozen=True)
class OrbitRecord:
    canonical: Union[LittlewoodSeq, Pair]
    members: Tuple = field(default_factory=tuple)

    @property
    def size(self) -> int:
        return len(self.members)


# --- bit-level generators -------------------------------------------------

def full_mask(length: int) -> int:
    """All length bits set."""
    return (1 << length) - 1


def alt_mask(length: int) -> int:
    """Bits of the odd-exponent coefficients."""
    mask = 0
    for j in range(1, length, 2):
        mask |= 1 << (length - 1 - j)
    return mask


def reverse_bits(bits: int, length: int) -> int:
    """Reverse the low length bits."""
    return int(format(bits, f"0{length}b")[::-1], 2)


def _single_letter(letter: str, bits: int, length: int) -> int:
    if letter == "n":
        return bits ^ full_mask(length)
    if letter == "h":
        return bits ^ alt_mask(length)
    if letter == "r":
        return reverse_bits(bits, length)
    raise InvalidWord(f"generator {letter!r} does not act on a single seed")


def _pair_letter(letter: str, x: int, y: int, length: int) -> Tuple[int, int]:
    if letter == "n":
        return x ^ full_mask(length), y
    if letter == "s":
        return y, x
    return _single_letter(letter, x, length), _single_letter(letter, y, length)


def act(word: SymmetryWord, f: LittlewoodSeq) -> LittlewoodSeq:
    """Apply a single-seed word, rightmost letter first."""
    bits = f.bits
    for letter in reversed(word.letters):
        bits = _single_letter(letter, bits, f.length)
    return LittlewoodSeq(f.length, bits)


def act_pair(word: SymmetryWord, pair: Pair) -> Pair:
    """Apply a pair word, rightmost letter first."""
    f, g = pair
    if f.length != g.length:
        raise InvalidWord(f"pair lengths {f.length} and {g.length} differ")
    x, y = f.bits, g.bits
    for letter in reversed(word.letters):
        x, y = _pair_letter(letter, x, y, f.length)
    return LittlewoodSeq(f.length, x), LittlewoodSeq(f.length, y)


# --- orbits ---------------------------------------------------------------

def _closure(start: T, moves: Iterable[Callable[[T], T]]) -> List[T]:
    moves = list(moves)
    seen = {start}
    queue = deque([start])
    while queue:
        item = queue.popleft()
        for move in moves:
            image = move(item)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return list(seen)


def orbit(f: LittlewoodSeq) -> OrbitRecord:
    """Orbit of a seed under n, h and r."""
    moves = [lambda x, c=c: act(SymmetryWord(c), x) for c in SINGLE_GENERATORS]
    members = sorted(_closure(f, moves), key=lambda x: x.bits)
    return OrbitRecord(canonical=members[0], members=tuple(members))


def orbit_pair(pair: Pair) -> OrbitRecord:
    """Orbit of a seed pair under n, h, r and s."""
    moves = [lambda p, c=c: act_pair(SymmetryWord(c), p) for c in PAIR_GENERATORS]
    members = sorted(_closure(tuple(pair), moves), key=lambda p: (p[0].bits, p[1].bits))
    return OrbitRecord(canonical=members[0], members=tuple(members))


def canonical(f: LittlewoodSeq) -> LittlewoodSeq:
    """Orbit member with the smallest bit pattern."""
    return orbit(f).canonical


def canonical_pair(pair: Pair) -> Pair:
    """Pair orbit member with the smallest (f, g) bit patterns."""
    return orbit_pair(pair).canonical


def is_canonical(f: LittlewoodSeq) -> bool:
    """True when f is the canonical member of its orbit."""
    return canonical(f) == f


# --- polynomial path (Gaussian-integer witnesses) ------------------------

def _poly_letter(letter: str, f: IntLaurentPoly) -> IntLaurentPoly:
    if letter == "n":
        return -f
    if letter == "h":
        return alternate(f)
    if letter == "r":
        return conj_reciprocal(f)
    raise InvalidWord(f"generator {letter!r} does not act on a single polynomial")


def act_poly(word: SymmetryWord, f: IntLaurentPoly) -> IntLaurentPoly:
    """Apply a single-seed word to a Gaussian-integer polynomial."""
    for letter in reversed(word.letters):
        f = _poly_letter(letter, f)
    return f


def act_poly_pair(word: SymmetryWord, pair: Tuple[IntLaurentPoly, IntLaurentPoly]):
    f, g = pair
    for letter in reversed(word.letters):
        if letter == "n":
            f = -f
        elif letter == "s":
            f, g = g, f
        else:
            f, g = _poly_letter(letter, f), _poly_letter(letter, g)
    return f, g


def orbit_poly(f: IntLaurentPoly, generators: str = SINGLE_GENERATORS) -> List[IntLaurentPoly]:
    """Distinct images of a polynomial seed under the group generated by `generators`."""
    return _closure(f, [lambda p, c=c: _poly_letter(c, p) for c in generators])


def orbit_poly_pair(
    pair: Tuple[IntLaurentPoly, IntLaurentPoly], generators: str = PAIR_GENERATORS
) -> List[Tuple[IntLaurentPoly, IntLaurentPoly]]:
    return _closure(tuple(pair), [lambda p, c=c: act_poly_pair(SymmetryWord(c), p) for c in generators])


# --- vectorised helpers for scans ----------------------------------------

def reverse_bits_array(x: np.ndarray, length: int) -> np.ndarray:
    """Elementwise reverse_bits over a uint64 array."""
    x = x.astype(np.uint64, copy=False)
    out = np.zeros_like(x)
    one = np.uint64(1)
    for i in range(length):
        out |= ((x >> np.uint64(i)) & one) << np.uint64(length - 1 - i)
    return out


def orbit_images_array(x: np.ndarray, length: int) -> np.ndarray:
    """All eight images n^a h^b r^c of each seed, shape (N, 8)."""
    x = x.astype(np.uint64, copy=False)
    m, a = np.uint64(full_mask(length)), np.uint64(alt_mask(length))
    rev = reverse_bits_array(x, length)
    return np.stack([x, x ^ m, x ^ a, x ^ m ^ a, rev, rev ^ m, rev ^ a, rev ^ m ^ a], axis=1)


def canonical_mask_and_sizes(x: np.ndarray, length: int) -> Tuple[np.ndarray, np.ndarray]:
    """Which seeds are orbit-canonical, and the orbit size of every seed."""
    images = np.sort(orbit_images_array(x, length), axis=1)
    mask = images[:, 0] == x.astype(np.uint64, copy=False)
    sizes = 1 + np.count_nonzero(np.diff(images, axis=1), axis=1)
    return mask, sizes


# --- relations ------------------------------------------------------------

@dataclass(frozen=True)
class RelationReport:
    length: int
    relations: Tuple[str, ...]
    seeds_checked: int
    pairs_checked: int
    pairs_exhaustive: bool


def single_relations(length: int) -> List[Tuple[str, str]]:
    relations = [("nn", ""), ("hh", ""), ("rr", ""), ("nh", "hn"), ("nr", "rn")]
    relations.append(("hr", "nrh") if length % 2 == 0 else ("hr", "rh"))
    return relations


def pair_relations(length: int) -> List[Tuple[str, str]]:
    relations = [
        ("nn", ""), ("hh", ""), ("rr", ""), ("ss", ""),
        ("nsnsnsns", ""), ("snss", "nsnsns"),
        ("nh", "hn"), ("nr", "rn"), ("sh", "hs"), ("sr", "rs"),
    ]
    relations.append(("hr", "nsnsrh") if length % 2 == 0 else ("hr", "rh"))
    return relations


def _apply_arrays(word: str, x: np.ndarray, y: Optional[np.ndarray], length: int):
    m, a = np.uint64(full_mask(length)), np.uint64(alt_mask(length))
    for letter in reversed(word):
        if letter == "n":
            x = x ^ m
        elif letter == "s":
            x, y = y, x
        elif letter == "h":
            x = x ^ a
            y = None if y is None else y ^ a
        elif letter == "r":
            x = reverse_bits_array(x, length)
            y = None if y is None else reverse_bits_array(y, length)
    return x, y


def _first_failure(lhs, rhs) -> Optional[int]:
    bad = lhs[0] != rhs[0]
    if lhs[1] is not None:
        bad |= lhs[1] != rhs[1]
    indices = np.flatnonzero(bad)
    return int(indices[0]) if indices.size else None


def group_relations_check(length: int, pairs: bool = True, seed: int = 0) -> RelationReport:
    """
    Verify the defining relations of the seed and pair symmetry groups as
    permutations of Littlewood sequences of the given length.

    Single-seed relations are checked on every seed up to length 16 (a seeded
    sample above). Pair relations are exhaustive while 4**length <= 2**16 and
    use a seeded sample of PAIR_SAMPLE_SIZE pairs otherwise.

    Raises:
        ValueError: length outside 1 .. MAX_WORD_LENGTH (one uint64 per sequence)
        RelationViolation: naming the failing relation and a witness in hex
    """
    if not 1 <= length <= MAX_WORD_LENGTH:
        raise ValueError(f"length must be between 1 and {MAX_WORD_LENGTH}, got {length}")
    rng = np.random.default_rng(seed)
    top = np.uint64(full_mask(length))

    if length <= MAX_EXHAUSTIVE_SINGLE_LENGTH:
        seeds = np.arange(1 << length, dtype=np.uint64)
    else:
        seeds = rng.integers(0, int(top), size=PAIR_SAMPLE_SIZE, dtype=np.uint64, endpoint=True)

    checked = []
    for lhs, rhs in single_relations(length):
        failure = _first_failure(_apply_arrays(lhs, seeds, None, length), _apply_arrays(rhs, seeds, None, length))
        if failure is not None:
            raise RelationViolation(f"{lhs or 'id'}={rhs or 'id'}", encode_bits(int(seeds[failure]), length))
        checked.append(f"{lhs or 'id'}={rhs or 'id'}")

    pair_count, exhaustive = 0, False
    if pairs:
        exhaustive = (1 << (2 * length)) <= MAX_EXHAUSTIVE_PAIR_SPACE
        if exhaustive:
            grid = np.arange(1 << (2 * length), dtype=np.uint64)
            xs, ys = grid >> np.uint64(length), grid & top
        else:
            xs = rng.integers(0, int(top), size=PAIR_SAMPLE_SIZE, dtype=np.uint64, endpoint=True)
            ys = rng.integers(0, int(top), size=PAIR_SAMPLE_SIZE, dtype=np.uint64, endpoint=True)
        pair_count = len(xs)
        for lhs, rhs in pair_relations(length):
            failure = _first_failure(_apply_arrays(lhs, xs, ys, length), _apply_arrays(rhs, xs, ys, length))
            if failure is not None:
                witness = f"({encode_bits(int(xs[failure]), length)},{encode_bits(int(ys[failure]), length)})"
                raise RelationViolation(f"{lhs or 'id'}={rhs or 'id'} on pairs", witness)
            checked.append(f"{lhs or 'id'}={rhs or 'id'} on pairs")

    logger.info(f"group relations hold for length {length}: {len(checked)} relations")
    return RelationReport(
        length=length,
        relations=tuple(checked),
        seeds_checked=len(seeds),
        pairs_checked=pair_count,
        pairs_exhaustive=exhaustive,
    )

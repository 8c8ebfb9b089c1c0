"""
Hexadecimal seed codec.

A sequence of length l is written as its l bits (0 for +1, 1 for -1,
constant coefficient first), left-padded with zeros to a whole number of hex
digits. Decoding accepts any number of leading zero digits as long as every
bit before the last l is zero.

Usage:
    seq = decode_hex(HexSeed("149B", 14))
    encode_hex(seq).text    # '149B'
"""

import logging
from dataclasses import dataclass

from app.exceptions import BadHex
from app.polyring import LittlewoodSeq

logger = logging.getLogger(__name__)

# Constants
HEX_DIGITS = frozenset("0123456789abcdefABCDEF")


@dataclass(frozen=True)
class HexSeed:
    text: str
    length: int


def hex_width(length: int) -> int:
    """Minimal number of hex digits for `length` bits."""
    return (length + 3) // 4


def encode_bits(bits: int, length: int) -> str:
    """Hex text of a bit pattern, padded to hex_width(length) digits."""
    return format(bits, f"0{hex_width(length)}X")


def decode_hex(seed: HexSeed) -> LittlewoodSeq:
    """
    Raises:
        BadHex: non-hex characters, fewer than `length` bits, or a nonzero
            bit in the discarded prefix.
    """
    text = seed.text.strip()
    if seed.length < 1:
        raise BadHex(f"length must be positive, got {seed.length}")
    if not text or any(ch not in HEX_DIGITS for ch in text):
        raise BadHex(f"'{seed.text}' is not a hexadecimal string")
    if 4 * len(text) < seed.length:
        raise BadHex(f"'{text}' has {4 * len(text)} bits, length {seed.length} needs more")
    value = int(text, 16)
    if value >> seed.length:
        raise BadHex(f"'{text}' has nonzero bits beyond length {seed.length}")
    return LittlewoodSeq(seed.length, value)


def encode_hex(seq: LittlewoodSeq) -> HexSeed:
    """HexSeed of a Littlewood sequence."""
    return HexSeed(encode_bits(seq.bits, seq.length), seq.length)


def parse_seed(text: str, length: int) -> LittlewoodSeq:
    """Decode hex text of the given length into a LittlewoodSeq."""
    return decode_hex(HexSeed(text, length))

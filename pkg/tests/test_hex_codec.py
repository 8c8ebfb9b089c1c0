"""Tests for the hexadecimal seed codec."""

import pytest

from app.exceptions import BadHex
from app.polyring import LittlewoodSeq
from parsing.hex_codec import HexSeed, decode_hex, encode_bits, encode_hex, hex_width, parse_seed


def test_decode_published_example():
    seq = decode_hex(HexSeed("149B", 14))
    assert seq.coefficients() == (1, -1, 1, -1, 1, 1, -1, 1, 1, -1, -1, 1, -1, -1)


def test_decode_trivial_codes():
    assert parse_seed("0", 2).coefficients() == (1, 1)
    assert parse_seed("3", 2).coefficients() == (-1, -1)
    assert parse_seed("0", 1).coefficients() == (1,)


def test_decode_accepts_lowercase_and_extra_leading_zeros():
    assert parse_seed("00149b", 14) == parse_seed("149B", 14)


def test_encode_pads_to_whole_hex_digits():
    assert encode_hex(LittlewoodSeq.from_coefficients([1, 1, 1, -1])).text == "1"
    assert encode_bits(0x71, 14) == "0071"
    assert hex_width(1) == 1 and hex_width(4) == 1 and hex_width(5) == 2


def test_published_pair_round_trips():
    seq = parse_seed("0071", 14)
    assert seq.coefficients()[:8] == (1, 1, 1, 1, 1, 1, 1, -1)
    assert encode_hex(seq).text == "0071"


def test_round_trip_sampled_codes():
    for length in range(1, 17):
        for bits in range(0, 1 << length, max(1, (1 << length) // 512)):
            seq = LittlewoodSeq(length, bits)
            assert decode_hex(encode_hex(seq)) == seq


@pytest.mark.slow
def test_round_trip_every_code_up_to_sixteen():
    for length in range(1, 17):
        for bits in range(1 << length):
            seq = LittlewoodSeq(length, bits)
            assert decode_hex(encode_hex(seq)) == seq


@pytest.mark.parametrize("text, length", [
    ("2", 1),        # nonzero discarded prefix bit
    ("G", 4),        # not hex
    ("", 3),
    ("F", 5),        # fewer bits than the length
    ("8000", 15),
    ("0", 0),
])
def test_decode_rejects_bad_codes(text, length):
    with pytest.raises(BadHex):
        decode_hex(HexSeed(text, length))

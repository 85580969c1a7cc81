import random

import pytest

from uidlab.codec import (
    CROCKFORD_ALPHABET,
    InvalidCharacter,
    InvalidLength,
    MisplacedHyphen,
    Overflow,
    ulid_decode,
    ulid_encode,
    uuid_format,
    uuid_parse,
)

UID_MAX = (1 << 128) - 1


def reference_base32(value, length=26):
    """Independent rendering by repeated divmod, no shifts shared with the codec."""
    digits = []
    for _ in range(length):
        value, rem = divmod(value, 32)
        digits.append(CROCKFORD_ALPHABET[rem])
    return "".join(reversed(digits))


def test_ulid_encode_zero():
    assert ulid_encode(0) == "00000000000000000000000000"


def test_ulid_encode_one():
    assert ulid_encode(1) == "00000000000000000000000001"


def test_ulid_encode_max():
    assert ulid_encode(UID_MAX) == "7ZZZZZZZZZZZZZZZZZZZZZZZZZ"


def test_ulid_encode_matches_divmod_oracle():
    rng = random.Random(2024)
    for _ in range(2000):
        value = rng.getrandbits(128)
        assert ulid_encode(value) == reference_base32(value)


def test_ulid_encode_rejects_out_of_range():
    with pytest.raises(ValueError):
        ulid_encode(-1)
    with pytest.raises(ValueError):
        ulid_encode(1 << 128)


def test_ulid_decode_zero():
    assert ulid_decode("00000000000000000000000000") == 0


def test_ulid_decode_overflow_above_7():
    with pytest.raises(Overflow):
        ulid_decode("8ZZZZZZZZZZZZZZZZZZZZZZZZZ")


def test_ulid_decode_length():
    with pytest.raises(InvalidLength):
        ulid_decode("0000")
    with pytest.raises(InvalidLength):
        ulid_decode("0" * 27)


def test_ulid_decode_rejects_u():
    with pytest.raises(InvalidCharacter):
        ulid_decode("0000000000000000000000000U")


def test_ulid_decode_lowercase_and_aliases():
    canonical = ulid_encode(12345678901234567890)
    assert ulid_decode(canonical.lower()) == 12345678901234567890
    assert ulid_decode("0000000000000000000000000o") == 0
    assert ulid_decode("0000000000000000000000000I") == 1
    assert ulid_decode("0000000000000000000000000l") == 1


def test_ulid_round_trip_seeded():
    rng = random.Random(7)
    for _ in range(10_000):
        value = rng.getrandbits(128)
        assert ulid_decode(ulid_encode(value)) == value


def test_ulid_order_preservation():
    rng = random.Random(11)
    for _ in range(10_000):
        a = rng.getrandbits(128)
        b = rng.getrandbits(128)
        assert (a < b) == (ulid_encode(a) < ulid_encode(b))


def test_ulid_alphabet_is_strictly_increasing():
    codes = [ord(c) for c in CROCKFORD_ALPHABET]
    assert codes == sorted(codes)
    assert len(set(codes)) == 32


def test_uuid_format_zero():
    assert uuid_format(0) == "00000000-0000-0000-0000-000000000000"


def test_uuid_format_max():
    assert uuid_format(UID_MAX) == "ffffffff-ffff-ffff-ffff-ffffffffffff"


def test_uuid_parse_version_nibble():
    value = uuid_parse("00000000-0000-4000-8000-000000000000")
    assert (value >> 76) & 0xF == 4


def test_uuid_parse_length():
    with pytest.raises(InvalidLength):
        uuid_parse("xyz")


def test_uuid_parse_misplaced_hyphen():
    with pytest.raises(MisplacedHyphen):
        uuid_parse("00000000000000000000000000000000-000")
    with pytest.raises(MisplacedHyphen):
        uuid_parse("000000000-000-4000-8000-00000000000-")


def test_uuid_parse_bad_character():
    with pytest.raises(InvalidCharacter):
        uuid_parse("0000000g-0000-4000-8000-000000000000")
    with pytest.raises(InvalidCharacter):
        uuid_parse("0000000 -0000-4000-8000-000000000000")


def test_uuid_parse_accepts_uppercase():
    assert uuid_parse("FFFFFFFF-FFFF-FFFF-FFFF-FFFFFFFFFFFF") == UID_MAX


def test_uuid_round_trip_seeded():
    rng = random.Random(13)
    for _ in range(10_000):
        value = rng.getrandbits(128)
        assert uuid_parse(uuid_format(value)) == value


def test_serialized_lengths_are_fixed():
    rng = random.Random(17)
    for _ in range(200):
        value = rng.getrandbits(128)
        assert len(ulid_encode(value)) == 26
        assert len(uuid_format(value)) == 36

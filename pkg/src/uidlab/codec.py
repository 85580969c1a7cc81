"""Canonical text forms: Crockford base32 for ULID, hyphenated hex for UUID.

A ULID string is 26 characters over the alphabet 0-9 A-Z minus I, L, O, U.
26 base-32 digits hold 130 bits; the two extra bits are leading zero padding,
which caps the first character at '7'. Because the alphabet is strictly
increasing in character code and the length is fixed, plain byte-wise string
comparison of two ULID strings equals integer comparison of their values.

A UUID string is the usual 8-4-4-4-12 lowercase hexadecimal form, 36
characters including the four hyphens.
"""

from __future__ import annotations

from .core import UID128_MAX, Uid128

__all__ = [
    "CROCKFORD_ALPHABET",
    "ULID_TEXT_LENGTH",
    "UUID_TEXT_LENGTH",
    "CodecError",
    "InvalidLength",
    "InvalidCharacter",
    "Overflow",
    "MisplacedHyphen",
    "ulid_encode",
    "ulid_decode",
    "uuid_format",
    "uuid_parse",
]

CROCKFORD_ALPHABET = "0123456789ABCDEFGHJKMNPQRSTVWXYZ"
ULID_TEXT_LENGTH = 26
UUID_TEXT_LENGTH = 36


class CodecError(ValueError):
    """Base class for text codec failures."""


class InvalidLength(CodecError):
    pass


class InvalidCharacter(CodecError):
    pass


class Overflow(CodecError):
    """The string denotes a value above 2^128 - 1 (ULID leading char > '7')."""


class MisplacedHyphen(CodecError):
    pass


# Decoding accepts lowercase plus the Crockford aliases; 'U' stays invalid.
_ULID_DIGIT = {c: i for i, c in enumerate(CROCKFORD_ALPHABET)}
_ULID_DIGIT.update({c.lower(): i for i, c in enumerate(CROCKFORD_ALPHABET)})
for _alias, _canonical in (("O", "0"), ("o", "0"), ("I", "1"), ("i", "1"), ("L", "1"), ("l", "1")):
    _ULID_DIGIT[_alias] = _ULID_DIGIT[_canonical]

_ULID_SHIFTS = tuple(range(125, -1, -5))

_HYPHEN_POSITIONS = (8, 13, 18, 23)
_HEX_DIGITS = set("0123456789abcdefABCDEF")


def ulid_encode(value: Uid128) -> str:
    """Render a 128-bit value as its 26-character canonical ULID string."""
    if not 0 <= value <= UID128_MAX:
        raise ValueError(f"value outside [0, 2^128 - 1]: {value}")
    return "".join(CROCKFORD_ALPHABET[(value >> shift) & 31] for shift in _ULID_SHIFTS)


def ulid_decode(text: str) -> Uid128:
    """Parse a ULID string back to its 128-bit value.

    Case-insensitive; the aliases I and L read as 1 and O reads as 0.
    """
    if len(text) != ULID_TEXT_LENGTH:
        raise InvalidLength(f"ULID must be {ULID_TEXT_LENGTH} characters, got {len(text)}")
    value = 0
    for ch in text:
        digit = _ULID_DIGIT.get(ch)
        if digit is None:
            raise InvalidCharacter(f"character {ch!r} is not in the ULID alphabet")
        value = (value << 5) | digit
    if value > UID128_MAX:
        raise Overflow("leading character above '7' does not fit in 128 bits")
    return value


def uuid_format(value: Uid128) -> str:
    """Render a 128-bit value as the lowercase 8-4-4-4-12 UUID string."""
    if not 0 <= value <= UID128_MAX:
        raise ValueError(f"value outside [0, 2^128 - 1]: {value}")
    s = f"{value:032x}"
    return f"{s[0:8]}-{s[8:12]}-{s[12:16]}-{s[16:20]}-{s[20:32]}"


def uuid_parse(text: str) -> Uid128:
    """Parse a hyphenated UUID string (either case) back to its 128-bit value."""
    if len(text) != UUID_TEXT_LENGTH:
        raise InvalidLength(f"UUID must be {UUID_TEXT_LENGTH} characters, got {len(text)}")
    if text.count("-") != 4 or any(text[i] != "-" for i in _HYPHEN_POSITIONS):
        raise MisplacedHyphen("hyphens must sit at positions 8, 13, 18 and 23")
    digits = text.replace("-", "")
    for ch in digits:
        if ch not in _HEX_DIGITS:
            raise InvalidCharacter(f"character {ch!r} is not a hexadecimal digit")
    return int(digits, 16)

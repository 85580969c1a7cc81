"""
Canonical string forms and why ULIDs sort
=========================================

ULID text is Crockford base32: 26 characters for 128 bits, alphabet in
strictly increasing character order. That makes the string order of two
ULIDs identical to the numeric (and therefore chronological) order of the
values, something a hyphenated hex UUID also happens to satisfy but a
random UUIDv4 cannot benefit from.
"""

import random

from uidlab import ulid_decode, ulid_encode, uuid_format, uuid_parse

print("zero     ->", ulid_encode(0))
print("one      ->", ulid_encode(1))
print("max      ->", ulid_encode((1 << 128) - 1))
print()

# Round trips are exact, and decoding is forgiving about case and the
# Crockford look-alike characters (I and L read as 1, O as 0).
value = random.Random(7).getrandbits(128)
text = ulid_encode(value)
assert ulid_decode(text) == value
assert ulid_decode(text.lower()) == value
print(text, "round-trips, also as", text.lower())
print("O/I/L aliases:", ulid_decode("0000000000000000000000000O"),
      ulid_decode("0000000000000000000000000I"),
      ulid_decode("0000000000000000000000000L"))
print()

# Sorting the strings is sorting the values.
rng = random.Random(99)
values = [rng.getrandbits(128) for _ in range(6)]
by_value = sorted(values)
by_text = sorted(ulid_encode(v) for v in values)
assert by_text == [ulid_encode(v) for v in by_value]
print("string sort == numeric sort over", len(values), "random values")
print()

# The UUID codec is plain hex with fixed hyphen positions.
u = uuid_format(value)
print("as uuid  ->", u)
assert uuid_parse(u.upper()) == value
print("uppercase parses to the same value")

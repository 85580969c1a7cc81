"""
Generating identifiers at the bit level
=======================================

All three schemes produce a 128-bit integer. Injecting a fixed clock and a
seeded randomness source makes every run of this script print the same
identifiers, which is the same mechanism the test suite uses.
"""

from uidlab import (
    FixedClock,
    IdScheme,
    MonotonicState,
    SeededEntropy,
    extract_timestamp,
    generate_ulid,
    generate_uuidv4,
    generate_uuidv7,
    next_monotonic_ulid,
    ulid_encode,
    uuid_format,
    variant_bits_of,
    version_of,
)

rng = SeededEntropy(2024)
clock = FixedClock(1_700_000_000_000)  # a fixed millisecond timestamp

# UUIDv4: nothing but randomness plus six fixed bits.
v4 = generate_uuidv4(rng)
print("uuidv4 ", uuid_format(v4))
print("        version", version_of(v4), "variant bits", bin(variant_bits_of(v4)))

# UUIDv7: the clock's milliseconds land in the top 48 bits.
v7 = generate_uuidv7(clock, rng)
print("uuidv7 ", uuid_format(v7))
print("        timestamp ms:", extract_timestamp(v7, IdScheme.UUID_V7))

# ULID: same 48-bit timestamp prefix, 80 random bits, no version field.
ulid = generate_ulid(clock, rng)
print("ulid   ", ulid_encode(ulid))
print("        timestamp ms:", extract_timestamp(ulid, IdScheme.ULID))

# Monotonic ULIDs: with the clock frozen, the random component increments,
# so a burst within one millisecond still sorts in generation order.
print("\nmonotonic burst in one millisecond:")
state = MonotonicState()
for _ in range(5):
    print("   ", ulid_encode(next_monotonic_ulid(state, clock, rng)))

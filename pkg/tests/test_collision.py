import math
from decimal import Decimal
from fractions import Fraction

import pytest

from uidlab.collision import (
    CollisionQuery,
    CountExceedsSpace,
    DomainTooLarge,
    FIFTY_PERCENT_THRESHOLD_NOTES,
    Probability,
    UUIDV4_TABLE_NOTE,
    approx_no_collision_prob,
    collision_prob,
    count_for_probability,
    exact_no_collision_prob,
    relative_risk,
    risk_table,
)
from uidlab.core import IdScheme


def rel_err(actual, expected):
    return abs(actual - expected) / abs(expected)


# --- approximation -----------------------------------------------------------

def test_approx_empty_and_single_draw_are_certain():
    assert float(approx_no_collision_prob(CollisionQuery(74, 0))) == 1.0
    assert float(approx_no_collision_prob(CollisionQuery(74, 1))) == 1.0


def test_approx_small_case_scalar():
    p = approx_no_collision_prob(CollisionQuery(4, 4))
    assert rel_err(float(p), 0.6872892787909722) < 1e-12


def test_collision_prob_is_complement():
    q = CollisionQuery(16, 300)
    total = float(approx_no_collision_prob(q)) + float(collision_prob(q))
    assert abs(total - 1.0) < 1e-12


def test_collision_prob_reference_rates():
    # Frozen from direct evaluation of 1 - exp(-n(n-1)/2^(bits+1)).
    cases = [
        (74, 1000, 2.644330982e-17),
        (74, 10**6, 2.646975313e-11),
        (74, 10**9, 2.646942925e-05),
        (80, 1000, 4.131767160e-19),
        (80, 10**6, 4.135898927e-13),
        (80, 10**9, 4.135902203e-07),
        (122, 1000, 9.394550852e-32),
        (122, 10**6, 9.403945403e-26),
        (122, 10**9, 9.403954797e-20),
    ]
    for bits, n, expected in cases:
        assert rel_err(float(collision_prob(CollisionQuery(bits, n))), expected) < 1e-6


def test_tiny_probability_keeps_significant_digits():
    # Independent series 1 - exp(-x) = x - x^2/2 + x^3/6 with exact rationals.
    x = Fraction(1000 * 999, 2**81)
    reference = x - x * x / 2 + x * x * x / 6
    actual = Decimal(float(collision_prob(CollisionQuery(80, 1000))))
    assert rel_err(float(actual), float(reference)) < 1e-9


def test_tiny_probability_ratio_method_witness():
    # p scales as 1/d while x is small: p(80 bits) ~ p(24 bits) / 2^56.
    p_small = float(exact_no_collision_prob(CollisionQuery(24, 1000)).complement())
    p_large = float(collision_prob(CollisionQuery(80, 1000)))
    assert rel_err(p_large, p_small / 2**56) < 0.02


def test_collision_prob_monotone_in_count():
    for bits in (8, 32, 74, 122):
        previous = -1.0
        for n in (0, 1, 2, 10, 100, 10**4, 10**8):
            p = float(collision_prob(CollisionQuery(bits, n)))
            assert p >= previous
            previous = p


def test_collision_prob_antitone_in_bits():
    for n in (2, 1000, 10**6):
        previous = 2.0
        for bits in (8, 16, 32, 64, 74, 80, 122, 160):
            p = float(collision_prob(CollisionQuery(bits, n)))
            assert p <= previous
            previous = p


# --- exact product -----------------------------------------------------------

def test_exact_one_prior_occupant():
    assert float(exact_no_collision_prob(CollisionQuery(4, 2))) == 15 / 16


def test_exact_pigeonhole():
    assert float(exact_no_collision_prob(CollisionQuery(4, 17))) == 0.0
    assert float(exact_no_collision_prob(CollisionQuery(4, 17)).complement()) == 1.0


def test_exact_against_float_log_oracle():
    # fsum over log1p is a fully independent code path.
    expected = math.exp(math.fsum(math.log1p(-k / 65536) for k in range(300)))
    actual = float(exact_no_collision_prob(CollisionQuery(16, 300)))
    assert rel_err(actual, expected) < 1e-12


def test_exact_domain_limits():
    with pytest.raises(DomainTooLarge):
        exact_no_collision_prob(CollisionQuery(25, 10))
    with pytest.raises(CountExceedsSpace):
        exact_no_collision_prob(CollisionQuery(25, 2**25 + 1))
    # CountExceedsSpace is a DomainTooLarge, never raised on its own.
    assert issubclass(CountExceedsSpace, DomainTooLarge)


def test_query_validation():
    with pytest.raises(ValueError):
        CollisionQuery(0, 10)
    with pytest.raises(ValueError):
        CollisionQuery(161, 10)
    with pytest.raises(ValueError):
        CollisionQuery(74, -1)


# --- inversion ---------------------------------------------------------------

def test_fifty_percent_thresholds():
    for bits in (122, 74, 80):
        expected = math.sqrt(2 * 2**bits * math.log(2))
        assert rel_err(count_for_probability(bits, 0.5), expected) < 1e-12


def test_inversion_consistency():
    for p in (0.1, 0.5, 0.9):
        for bits in (32, 64, 74, 80, 122):
            n = round(count_for_probability(bits, p))
            back = float(collision_prob(CollisionQuery(bits, n)))
            assert p * (1 - 1e-3) <= back <= p * (1 + 1e-3)


def test_count_for_probability_validation():
    with pytest.raises(ValueError):
        count_for_probability(74, 0.0)
    with pytest.raises(ValueError):
        count_for_probability(74, 1.0)
    with pytest.raises(ValueError):
        count_for_probability(0, 0.5)


# --- relative risk -----------------------------------------------------------

def test_relative_risk_ulid_vs_uuidv7():
    value = relative_risk(IdScheme.ULID, IdScheme.UUID_V7, 1000)
    assert abs(value - (1 - 2**-6)) < 1e-12


def test_relative_risk_same_scheme_is_zero():
    assert relative_risk(IdScheme.ULID, IdScheme.ULID, 1000) == 0.0


def test_relative_risk_inverse_direction():
    value = relative_risk(IdScheme.UUID_V7, IdScheme.ULID, 1000)
    assert abs(value - (1 - 64)) < 1e-9


def test_relative_risk_needs_two():
    with pytest.raises(ValueError):
        relative_risk(IdScheme.ULID, IdScheme.UUID_V7, 1)


# --- probability type --------------------------------------------------------

def test_probability_rejects_positive_log():
    with pytest.raises(ValueError):
        Probability(Decimal("0.1"))


def test_probability_certain_and_impossible():
    assert float(Probability.certain()) == 1.0
    assert float(Probability.impossible()) == 0.0
    assert float(Probability.certain().complement()) == 0.0
    assert float(Probability.impossible().complement()) == 1.0


def test_probability_ordering():
    small = collision_prob(CollisionQuery(122, 1000))
    large = collision_prob(CollisionQuery(74, 1000))
    assert small < large
    assert large > small
    assert small == collision_prob(CollisionQuery(122, 1000))


def test_probability_sci_formatting():
    p = collision_prob(CollisionQuery(122, 1000))
    assert p.sci(2) == "9.4e-32"
    assert p.sci(4) == "9.395e-32"


def test_log_representation_handles_huge_counts():
    p = approx_no_collision_prob(CollisionQuery(1, 2**64))
    assert p.ln_value.is_finite()
    assert float(p) == 0.0
    assert float(p.complement()) == 1.0


# --- risk table --------------------------------------------------------------

def test_risk_table_default_grid():
    table = risk_table()
    assert table.rates == (1000, 10**6, 10**9)
    assert table.cell(1000, IdScheme.UUID_V7).sci(2) == "2.6e-17"
    assert table.cell(10**9, IdScheme.ULID).sci(2) == "4.1e-7"
    assert table.cell(1000, IdScheme.UUID_V4).sci(2) == "9.4e-32"


def test_risk_table_csv_schema():
    lines = risk_table().render_csv().splitlines()
    assert lines[0] == "rate,uuidv4,uuidv7,ulid"
    assert lines[1].startswith("1000,")
    assert len(lines) == 4


def test_risk_table_text_carries_uuidv4_note():
    text = risk_table().render_text()
    assert UUIDV4_TABLE_NOTE in text
    assert "2.3e-29" in text and "9.4e-32" in text


def test_risk_table_without_uuidv4_has_no_note():
    table = risk_table(schemes=[IdScheme.ULID, IdScheme.UUID_V7])
    assert table.notes == ()


def test_risk_table_custom_rates():
    table = risk_table(rates=[10, 20], schemes=[IdScheme.ULID])
    assert float(table.cell(10, IdScheme.ULID)) == float(
        collision_prob(CollisionQuery(80, 10))
    )
    with pytest.raises(ValueError):
        risk_table(rates=[])


def test_threshold_notes_mention_both_figures():
    assert "1.9e18" in FIFTY_PERCENT_THRESHOLD_NOTES[122]
    assert "2.71e18" in FIFTY_PERCENT_THRESHOLD_NOTES[122]
    assert "1.1e12" in FIFTY_PERCENT_THRESHOLD_NOTES[80]
    assert "1.29e12" in FIFTY_PERCENT_THRESHOLD_NOTES[80]

from __future__ import annotations

import pytest

from sipkit.core.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Comparison,
    Kind,
    Ordinal,
    OrdinalError,
    OrdinalParseError,
    add,
    classify,
    cmp,
    divmod_omega,
    format_ordinal,
    leading_term,
    left_sub,
    mul,
    omega_pow,
    parse_ordinal,
)
from sipkit.core.sampling import random_ordinal

w = parse_ordinal


def test_add_absorbs_lower_terms():
    assert format_ordinal(add(w("w^2+w"), w("w*2+3"))) == "w^2 + w*3 + 3"
    assert add(ONE, OMEGA) == OMEGA
    assert add(OMEGA, ONE) != OMEGA
    assert add(w("w+5"), w("w^2")) == w("w^2")


def test_mul_is_not_commutative():
    two = Ordinal.from_int(2)
    assert mul(two, OMEGA) == OMEGA
    assert mul(OMEGA, two) == w("w*2")
    assert mul(w("w+1"), two) == w("w*2+1")
    assert mul(w("w^2+3"), OMEGA) == w("w^3")
    assert mul(ZERO, OMEGA) == ZERO


def test_left_sub():
    assert left_sub(OMEGA, w("w^2")) == w("w^2")
    assert left_sub(w("w+3"), w("w*2")) == OMEGA
    assert left_sub(w("w^2+w"), w("w^2+w")) == ZERO
    with pytest.raises(OrdinalError):
        left_sub(w("w*2"), w("w+3"))


def test_cmp_and_classify():
    assert cmp(w("w^2"), w("w*100+7")) is Comparison.GREATER
    assert cmp(w("w+1"), w("w+1")) is Comparison.EQUAL
    assert cmp(ZERO, ONE) is Comparison.LESS
    assert classify(ZERO) is Kind.ZERO
    assert classify(w("w^3+2")) is Kind.SUCCESSOR
    assert classify(w("w^3+w")) is Kind.LIMIT


def test_leading_term_and_divmod():
    assert leading_term(w("w^3*2+w+1")) == (3, 2)
    with pytest.raises(OrdinalError):
        leading_term(ZERO)
    assert divmod_omega(w("w^2+w*3+4")) == (w("w+3"), 4)
    assert divmod_omega(w("7")) == (ZERO, 7)


def test_helpers():
    assert Ordinal.from_int(0) == ZERO
    assert w("w").succ() == w("w+1")
    assert w("w^2").is_limit and not w("w^2+1").is_limit
    assert w("w^3+w^2*4").divisible_by_omega_pow(2)
    assert not w("w^3+w").divisible_by_omega_pow(2)
    assert omega_pow(2, 0) == ZERO
    assert w("w*2+1").is_finite is False
    assert w("9").finite_value() == 9


def test_parse_and_format():
    assert parse_ordinal("0") == ZERO
    assert parse_ordinal(" w ^ 2 * 3 + 4 ") == Ordinal(((2, 3), (0, 4)))
    assert format_ordinal(ZERO) == "0"
    assert format_ordinal(w("w^1*1")) == "w"
    assert str(w("w^2*3+w+4")) == "w^2*3 + w + 4"


@pytest.mark.parametrize(
    "text, position",
    [
        ("", 0),
        ("w^", 2),
        ("w + w^2", 4),
        ("2 + x", 4),
        ("w*0", 2),
        ("w w", 2),
        ("\u0663", 0),
        ("w*\u0663", 2),
    ],
)
def test_parse_errors_report_position(text, position):
    with pytest.raises(OrdinalParseError) as info:
        parse_ordinal(text)
    assert info.value.position == position


def test_invalid_terms_rejected():
    with pytest.raises(OrdinalError):
        Ordinal(((1, 1), (2, 1)))
    with pytest.raises(OrdinalError):
        Ordinal(((1, 0),))


def test_seeded_laws(rng):
    for _ in range(300):
        a, b, c = (random_ordinal(rng) for _ in range(3))
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        low, high = sorted((a, b))
        assert add(low, left_sub(low, high)) == high
        assert parse_ordinal(format_ordinal(a)) == a

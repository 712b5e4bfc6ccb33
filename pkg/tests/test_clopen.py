from __future__ import annotations

import math

import pytest

from sipkit.core.clopen import (
    EMPTY,
    ClopenError,
    ClopenParseError,
    ClopenSet,
    HomeoClass,
    Space,
    algebra_rank_degree,
    cardinal_sequence,
    cb_derivative,
    complement,
    degree_blocks,
    format_clopen,
    from_intervals,
    homeo_class,
    homeo_class_by_derivatives,
    in_ideal,
    interval_type,
    iterate_derivative,
    least_representative,
    num_atoms,
    order_type,
    parse_clopen,
    quotient_project,
    realize,
)
from sipkit.core.ordinal import ONE, ZERO, omega_pow, parse_ordinal
from sipkit.core.sampling import random_clopen

w = parse_ordinal
W2 = Space(omega_pow(2))
W3 = Space(omega_pow(3))


def test_class_of_leading_term():
    assert homeo_class(parse_clopen("{(0,w^2*3+4]}", W3)) == HomeoClass(2, 3)
    assert str(homeo_class(parse_clopen("{(0,w^2*3+4]}", W3))) == "(2,3)"
    assert homeo_class(parse_clopen("{(0,5]}", W3)) == HomeoClass(0, 5)
    assert homeo_class(parse_clopen("{(0,w], (w+3,w*2]}", W3)) == HomeoClass(1, 2)
    assert homeo_class(W3.empty()) == EMPTY
    assert str(EMPTY) == "E"


def test_classifiers_agree(rng, space4):
    for _ in range(200):
        p = random_clopen(rng, space4, 8)
        assert homeo_class(p) == homeo_class_by_derivatives(p)


def test_boolean_operations():
    a = parse_clopen("{(0,w]}", W2)
    b = parse_clopen("{(w,w+5]}", W2)
    assert format_clopen(a | b) == "{(0,w + 5]}"
    assert not (a & b)
    assert format_clopen(complement(a)) == "{(w,w^2]}"
    assert (a | b) - b == a
    assert a.subset_of(a | b)
    assert not (a | b).subset_of(a)
    assert w("w") in a and w("w+1") not in a


def test_construction_checks():
    with pytest.raises(ClopenError):
        ClopenSet(W2, ((w("w"), w("w*2")), (ZERO, w("w"))))
    with pytest.raises(ClopenError):
        from_intervals(W2, [(3, 3)])
    with pytest.raises(ClopenError):
        from_intervals(W2, [(0, omega_pow(3))])
    with pytest.raises(ClopenError):
        parse_clopen("{(0,w]}", W2) | parse_clopen("{(0,w]}", W3)


def test_bounded_and_max_point():
    p = from_intervals(W2, [(0, 4), (w("w"), w("w*3"))])
    assert p.bounded
    assert p.max_point() == w("w*3")
    assert not W2.full().bounded
    with pytest.raises(ClopenError):
        W2.empty().max_point()


def test_types():
    assert interval_type(ZERO, omega_pow(1)) == w("w+1")
    assert interval_type(w("w"), w("w*2")) == w("w+1")
    assert interval_type(ZERO, ONE) == ONE
    assert order_type(parse_clopen("{(0,w], (w+3,w*2]}", W3)) == w("w*2+1")


def test_derivative_and_quotient():
    p = parse_clopen("{(0,w^2*3+4]}", W3)
    assert format_clopen(cb_derivative(p)) == "{(0,w*3]}"
    assert cb_derivative(p).space == Space(omega_pow(2))
    assert format_clopen(iterate_derivative(p, 2)) == "{(0,3]}"
    assert not iterate_derivative(p, 3)
    assert quotient_project(p, 2) == iterate_derivative(p, 2)
    with pytest.raises(ClopenError):
        quotient_project(p, 4)


def test_ideal_membership():
    p = parse_clopen("{(0,w*2]}", W3)
    assert not in_ideal(p, 1)
    assert in_ideal(p, 2)
    assert in_ideal(W3.empty(), 0)
    assert not in_ideal(p, 0)


def test_algebra_rank_degree_and_blocks():
    assert algebra_rank_degree(Space(omega_pow(3, 2))) == (3, 2)
    with pytest.raises(ClopenError):
        algebra_rank_degree(Space(w("w^2+1")))
    parts = degree_blocks(Space(omega_pow(2, 3)))
    assert [format_clopen(part) for part in parts] == ["{(0,w^2]}", "{(w^2,w^2*2]}", "{(w^2*2,w^2*3]}"]
    assert all(homeo_class(part) == HomeoClass(2, 1) for part in parts)


def test_atoms():
    assert num_atoms(from_intervals(W2, [(0, 5), (w("w"), w("w+2"))])) == 7
    assert num_atoms(parse_clopen("{(0,w]}", W2)) == math.inf


def test_realize_and_representatives():
    target = HomeoClass(2, 3)
    made = realize(W3, target, ZERO)
    assert format_clopen(made) == "{(0,w^2*3]}"
    assert homeo_class(made) == target
    assert order_type(made) == w("w^2*3+1")
    assert realize(W3, EMPTY, ZERO) == W3.empty()
    with pytest.raises(ClopenError):
        realize(W3, target, ZERO, capacity=omega_pow(2))
    with pytest.raises(ClopenError):
        realize(W3, HomeoClass(3, 2), ZERO)
    assert least_representative(HomeoClass(0, 3)) == w("3")
    assert least_representative(HomeoClass(2, 1)) == w("w^2+1")
    assert least_representative(EMPTY) == ZERO


def test_cardinal_sequence():
    assert cardinal_sequence(parse_clopen("{(0,w^2*3+4]}", W3)) == (math.inf, math.inf, 3)
    assert cardinal_sequence(W3.empty()) == ()


def test_homeo_class_rejects_rank_on_empty():
    with pytest.raises(ClopenError):
        HomeoClass(2, 0)


@pytest.mark.parametrize(
    "text, position",
    [
        ("(0,w]}", 0),
        ("{(0,w]", 5),
        ("{(0,w] (w+1,w*2]}", 7),
        ("{(0,w^]}", 6),
    ],
)
def test_parse_errors(text, position):
    with pytest.raises(ClopenParseError) as info:
        parse_clopen(text, W2)
    assert info.value.position == position


def test_parse_rejects_reversed_interval():
    with pytest.raises(ClopenParseError):
        parse_clopen("{(w,3]}", W2)
    assert parse_clopen(" {} ", W2) == W2.empty()

from fractions import Fraction
from math import floor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ooc.bounds import (
    applicable_bounds,
    bound_am_oppw,
    bound_oppw,
    johnson_1d_cw,
    johnson_2d,
    nested_floor,
    nonbinary_johnson,
    optimality_report,
    tightest_bound,
)
from ooc.code_model import CodeFamily, CodeParams, StructureClass
from ooc.errors import InvalidParams
from ooc.finite_field import field_of_order
from ooc.poly_constructions import construct_p1, construct_p3


def nested_fraction(terms):
    # oracle with exact rationals, built outside-in recursively
    if not terms:
        return 1
    n, d = terms[0]
    return floor(Fraction(n, d) * nested_fraction(terms[1:]))


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(0, 60), st.integers(1, 12)), max_size=5))
def test_nested_floor_matches_fraction_oracle(terms):
    assert nested_floor(terms) == nested_fraction(terms)


def test_known_johnson_values():
    # A(7, 3, intersection <= 1) = 7 (Fano plane)
    assert johnson_1d_cw(7, 3, 1) == 7
    # A(9, 3, 1) = 12 (affine plane of order 3)
    assert johnson_1d_cw(9, 3, 1) == 12
    # the (7,3,1) 1-D code has a single codeword {0,1,3}
    assert johnson_2d(CodeParams(1, 7, 3, 1)) == 1
    assert johnson_2d(CodeParams(1, 13, 3, 1)) == nested_fraction([(1, 3), (12, 2)])


def test_am_oppw_example():
    assert bound_am_oppw(CodeParams(7, 5, 3, 1)) == 35
    assert nonbinary_johnson(5, 7, 3, 1) == floor(Fraction(35, 3) * floor(Fraction(30, 2)))


def test_oppw_bound():
    assert bound_oppw(CodeParams(4, 5, 4, 2)) == 25
    with pytest.raises(InvalidParams):
        bound_oppw(CodeParams(4, 5, 3, 1))


@settings(max_examples=100)
@given(st.integers(2, 20), st.data())
def test_nonbinary_reduces_to_binary_at_T1(lam, data):
    w = data.draw(st.integers(1, lam))
    k = data.draw(st.integers(0, w - 1))
    assert nonbinary_johnson(1, lam, w, k) == johnson_1d_cw(lam, w, k)


@settings(max_examples=100)
@given(st.integers(1, 16), st.integers(1, 12), st.integers(0, 4))
def test_nonbinary_full_weight(T, lam, k):
    if k >= lam:
        return
    assert nonbinary_johnson(T, lam, lam, k) == T ** (k + 1)


@settings(max_examples=100)
@given(st.integers(2, 12), st.integers(2, 12), st.data())
def test_am_oppw_not_looser_than_johnson_2d(lam, T, data):
    w = data.draw(st.integers(1, lam))
    k = data.draw(st.integers(0, w - 1))
    p = CodeParams(lam, T, w, k)
    assert bound_am_oppw(p) <= johnson_2d(p)
    # am_oppw is the nonbinary bound divided by T (outer floor aside)
    assert bound_am_oppw(p) <= nonbinary_johnson(T, lam, w, k) // T + 1


def test_applicable_and_tightest():
    p = CodeParams(3, 5, 3, 1)
    assert set(applicable_bounds(p)) == {"johnson_2d", "am_oppw", "nonbinary_johnson", "oppw"}
    assert tightest_bound(p, StructureClass.OPPW) == ("oppw", 5)
    assert tightest_bound(p, StructureClass.AM_OPPW)[0] == "am_oppw"
    assert tightest_bound(CodeParams(2, 5, 4, 1), StructureClass.UNRESTRICTED)[0] == "johnson_2d"
    assert set(applicable_bounds(CodeParams(2, 5, 4, 1))) == {"johnson_2d"}


def test_optimality_labels():
    rep = optimality_report(construct_p1(5, 3, 1))
    assert rep.label == "OPTIMAL" and rep.summary() == "size=5 bound=5 OPTIMAL"
    rep = optimality_report(construct_p3(field_of_order(8), 8, 2))
    assert rep.label == "ASYMPTOTIC" and rep.ratio < 1
    fam = construct_p1(5, 3, 1)
    fewer = CodeFamily(fam.params, fam.matrices[:3])
    assert optimality_report(fewer).label == "BELOW_BOUND"

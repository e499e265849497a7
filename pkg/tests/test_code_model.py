import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ooc.code_model import (
    CodeFamily,
    CodeMatrix,
    CodeParams,
    StructureClass,
    certify_mcp,
    certify_mcp_naive,
    classify,
    correlation,
    correlation_profile,
    dilate_time,
    shift_time,
    verify_family,
)
from ooc.errors import DuplicateMatrix, EmptyFamily, InvalidParams, ShapeMismatch
from ooc.poly_constructions import construct_p1


def M(lam, T, *pulses):
    return CodeMatrix(lam, T, frozenset(pulses))


@st.composite
def matrices(draw, lam=3, T=5, max_w=5):
    cells = [(a, t) for a in range(lam) for t in range(T)]
    chosen = draw(st.sets(st.sampled_from(cells), min_size=1, max_size=max_w))
    return CodeMatrix(lam, T, frozenset(chosen))


def test_params_validation():
    CodeParams(3, 5, 3, 1)
    for bad in [(0, 5, 1, 0), (2, 2, 5, 1), (3, 5, 2, 2), (3, 5, 3, -1)]:
        with pytest.raises(InvalidParams):
            CodeParams(*bad)


def test_pulse_outside_array():
    with pytest.raises(ShapeMismatch):
        M(2, 3, (2, 0))


def test_correlation_small_example():
    A = M(2, 4, (0, 0), (1, 1))
    B = M(2, 4, (0, 1), (1, 2))
    assert correlation(A, B, 1) == 2
    assert correlation(A, B, 0) == 0
    assert correlation_profile(A, B) == [0, 2, 0, 0]
    with pytest.raises(ShapeMismatch):
        correlation(A, M(2, 5, (0, 0)), 0)


def array_correlation(A, B, tau):
    # oracle: elementwise product of A with B rolled back by tau
    return int((A.to_array() * np.roll(B.to_array(), -tau, axis=1)).sum())


@settings(max_examples=80, deadline=None)
@given(matrices(), matrices(), st.integers(-20, 20))
def test_correlation_matches_array_oracle(A, B, tau):
    assert correlation(A, B, tau) == array_correlation(A, B, tau % 5)


@settings(max_examples=60, deadline=None)
@given(matrices(), matrices(), st.integers(0, 4), st.integers(0, 4))
def test_correlation_shift_invariance(A, B, s, tau):
    assert correlation(shift_time(A, s), shift_time(B, s), tau) == correlation(A, B, tau)
    # shifting B later by s is the same as asking for tau + s
    assert correlation(A, shift_time(B, s), tau) == correlation(A, B, (tau - s) % 5)


@settings(max_examples=60, deadline=None)
@given(matrices(), matrices())
def test_profile_sums_to_row_products(A, B):
    rows_a = A.to_array().sum(axis=1)
    rows_b = B.to_array().sum(axis=1)
    assert sum(correlation_profile(A, B)) == int(rows_a @ rows_b)


@settings(max_examples=40, deadline=None)
@given(st.lists(matrices(max_w=4), min_size=1, max_size=6, unique=True))
def test_fast_certifier_matches_naive(mats):
    assert certify_mcp(mats) == certify_mcp_naive(mats)
    assert certify_mcp(mats, block=2) == certify_mcp_naive(mats)


def test_array_round_trip():
    A = M(3, 4, (0, 1), (2, 3))
    assert CodeMatrix.from_array(A.to_array()) == A


def test_dilate_time():
    A = M(2, 3, (0, 1), (1, 2))
    D = dilate_time(A, 2)
    assert (D.lam, D.T) == (2, 6) and D.pulses == {(0, 2), (1, 4)}


def test_classify():
    assert classify(M(3, 3, (0, 0), (1, 1), (2, 2))) == (StructureClass.OPPW, StructureClass.OPPTS)
    assert classify(M(3, 4, (0, 0), (2, 1))) == (StructureClass.AM_OPPW, StructureClass.AM_OPPTS)
    assert classify(M(2, 3, (0, 0), (0, 1))) == (StructureClass.UNRESTRICTED, StructureClass.AM_OPPTS)
    assert classify(M(2, 3, (0, 0), (1, 0)))[1] == StructureClass.UNRESTRICTED


def test_family_rejects_bad_members():
    p = CodeParams(2, 3, 2, 1)
    A = M(2, 3, (0, 0), (1, 1))
    with pytest.raises(DuplicateMatrix):
        CodeFamily(p, [A, A])
    with pytest.raises(InvalidParams):
        CodeFamily(p, [M(2, 3, (0, 0))])
    with pytest.raises(ShapeMismatch):
        CodeFamily(p, [M(2, 4, (0, 0), (1, 1))])
    with pytest.raises(EmptyFamily):
        certify_mcp([])


def test_verify_detects_violations():
    fam = construct_p1(5, 3, 1)
    rep = verify_family(fam)
    assert rep.passed and rep.certified_mcp == 1

    # claim kappa=0 on the same matrices: the mcp check must fail
    strict = CodeFamily(CodeParams(3, 5, 3, 0), fam.matrices, validate=False)
    assert [c.name for c in verify_family(strict).failures()] == ["mcp"]

    mixed = CodeFamily(CodeParams(3, 5, 3, 1), [fam[0], fam[0], M(3, 5, (0, 0))], validate=False)
    names = {c.name for c in verify_family(mixed).failures()}
    assert {"constant-weight", "distinct"} <= names

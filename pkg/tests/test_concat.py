import pytest

from ooc.bounds import bound_am_oppw, optimality_report
from ooc.code_model import StructureClass, certify_mcp, classify
from ooc.concat import build_cw_greedy, compose, construct_cp1, construct_cr1, load_cw
from ooc.errors import InvalidParams, ValidationFailed
from ooc.finite_field import field_of_order
from ooc.poly_constructions import construct_p1

FANO = [(0, 1, 3), (1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 0), (5, 6, 1), (6, 0, 2)]


def test_fano_outer_code():
    cw = load_cw(FANO, 1)
    assert (cw.lam, cw.omega, len(cw)) == (7, 3, 7)
    assert cw.max_intersection() == 1 and cw.meets_bound


def test_greedy_is_valid_and_lexicographic():
    cw = build_cw_greedy(7, 3, 1)
    assert cw.words[0] == (0, 1, 2)
    assert cw.max_intersection() <= 1
    # the greedy code is always a valid input to load_cw
    assert load_cw(cw.words, 1, lam=7) == cw


def test_load_cw_rejections():
    with pytest.raises(ValidationFailed) as e:
        load_cw([(0, 1, 2), (0, 1, 3)], 1)
    assert e.value.pair == (0, 1)
    with pytest.raises(ValidationFailed):
        load_cw([(0, 1, 2), (3, 4)], 1)
    with pytest.raises(ValidationFailed):
        load_cw([(0, 1, 7)], 1, lam=7)
    with pytest.raises(ValidationFailed):
        load_cw([(0, 0, 1)], 1)
    assert len(load_cw([], 1, lam=5)) == 0


def test_cp1_singer_times_p1():
    fam = construct_cp1(load_cw(FANO, 1), 5, 1)
    assert len(fam) == 35 == bound_am_oppw(fam.params)
    assert certify_mcp(fam) == 1
    assert {classify(M)[0] for M in fam} == {StructureClass.AM_OPPW}
    assert optimality_report(fam).label == "OPTIMAL"


def test_compose_row_placement():
    inner = construct_p1(5, 3, 1)
    mats = compose(load_cw([(1, 4, 6)], 1, lam=7), inner)
    rows = {a for M in mats for a, _ in M.pulses}
    assert rows == {1, 4, 6}
    with pytest.raises(InvalidParams):
        compose(load_cw([(0, 1)], 1), inner)


def test_cr1():
    cw = build_cw_greedy(6, 3, 2)
    fam = construct_cr1(cw, field_of_order(3), 2)
    assert len(fam) == len(cw) * 7
    assert certify_mcp(fam) <= 2


def test_outer_code_too_weak():
    cw = build_cw_greedy(6, 4, 2)
    with pytest.raises(InvalidParams):
        construct_cp1(cw, 5, 1)

import pytest

from fpss.comodule import RingId
from fpss.thh.v1 import (h_thh_series, poincare_identity_check,
                         v1_thh_presentation)

P = 5


def test_presentation_degrees():
    ellmodp = v1_thh_presentation(P, RingId.ELL_MOD_P).series(10)
    assert ellmodp.get(2 * P - 1) == 1          # the eps1b slot
    ell = v1_thh_presentation(P, RingId.ELL).series(10)
    assert ell.get(2 * P - 1) == 1              # the lambda1 slot
    zp = v1_thh_presentation(P, RingId.HZP_MOD).series(10)
    assert zp.get(0) == 1
    assert zp.get(2 * P) == 2                   # mu0^p and eps0 eps1


@pytest.mark.parametrize("ring", list(RingId))
def test_identity_up_to_30(ring):
    ok, problems = poincare_identity_check(P, ring, 30)
    assert ok, problems[:4]


def test_identity_trivial_window():
    ok, _ = poincare_identity_check(P, RingId.ELL_MOD_P, 0)
    assert ok


def test_identity_detects_corruption():
    # dropping the module factor from the smash side must fail
    lhs = h_thh_series(P, RingId.ELL_MOD_P, 20)
    rhs = h_thh_series(P, RingId.ELL, 20)
    assert lhs != rhs

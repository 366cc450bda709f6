import math

import pytest

from fpss.numerics import binom_mod_p, is_prime, rho, vp


def test_rho_base_values():
    assert rho(5, -1) == 1
    assert rho(5, 0) == 0


def test_rho_closed_forms():
    assert rho(5, 1) == 21
    assert rho(5, 2) == 25
    assert rho(5, 3) == 521
    assert rho(5, 4) == 650


def test_rho_rejects_small_k():
    with pytest.raises(ValueError):
        rho(5, -2)


@pytest.mark.parametrize("p", [5, 7])
def test_rho_odd_alternating_sum(p):
    for k in range(1, 9):
        expect = sum((-1) ** i * p ** i for i in range(2 * k + 1))
        assert rho(p, 2 * k - 1) == expect


@pytest.mark.parametrize("p", [5, 7])
def test_rho_even_recursion(p):
    for k in range(1, 9):
        assert rho(p, 2 * k) == p * p * rho(p, 2 * k - 2) + p * p
        assert rho(p, 2 * k) % (p * p) == 0


def test_vp_basic():
    assert vp(5, 50) == 2
    assert vp(5, 7) == 0
    assert vp(5, -125) == 3
    with pytest.raises(ValueError):
        vp(5, 0)


def test_binom_examples():
    assert binom_mod_p(5, 1, 1) == 2
    assert binom_mod_p(5, 2, 3) == 0
    assert binom_mod_p(5, 5, 5) == 2


@pytest.mark.parametrize("p", [3, 5, 7])
def test_binom_against_exact(p):
    for n in range(0, 2001, 29):
        for i in (0, 1, n // 3, n // 2, n - 1, n):
            if i < 0 or i > n:
                continue
            assert binom_mod_p(p, i, n - i) == math.comb(n, i) % p


def test_is_prime_small():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]

"""Integer combinatorics: the rho degree function, p-adic valuation, Lucas binomials.

All arithmetic is arbitrary precision; the towers indexed by rho grow like
p^(2k) and silent overflow would corrupt every differential built on them.
"""
from __future__ import annotations


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def rho(p: int, k: int) -> int:
    """Exact value of the degree bookkeeping function.

    rho(2m-1) = (p^(2m+1)+1)/(p+1), rho(2m) = (p^(2m+2)-p^2)/(p^2-1),
    hence rho(-1) = 1 and rho(0) = 0.
    """
    if k < -1:
        raise ValueError(f"rho undefined for k={k}")
    if k % 2:
        num, den = p ** (k + 2) + 1, p + 1
    else:
        num, den = p ** (k + 2) - p * p, p * p - 1
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"rho({p},{k}) is not integral")
    return q


def vp(p: int, i: int) -> int:
    """p-adic valuation of a nonzero integer (sign-independent)."""
    if i == 0:
        raise ValueError("p-adic valuation of 0 is undefined")
    i = abs(i)
    e = 0
    while i % p == 0:
        i //= p
        e += 1
    return e


def _small_binom(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out = out * (n - t) // (t + 1)
    return out


def binom_mod_p(p: int, i: int, j: int) -> int:
    """C(i+j, i) mod p via the base-p digit product."""
    if i < 0 or j < 0:
        return 0
    n, k, out = i + j, i, 1
    while (n or k) and out:
        n, nd = divmod(n, p)
        k, kd = divmod(k, p)
        if kd > nd:
            return 0
        out = out * _small_binom(nd, kd) % p
    return out

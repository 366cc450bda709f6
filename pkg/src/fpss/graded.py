"""Monomial bases and products for bigraded commutative algebras over F_p.

An algebra is an ordered tensor product of one-generator pieces: exterior,
polynomial, Laurent, truncated polynomial, or divided power.  Monomials are
dense exponent tuples aligned with the generator list; elements are maps
from monomials to nonzero scalars.  The canonical monomial order (total
degree, then exponent tuple) is fixed once so that every quotient basis
chosen downstream is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .numerics import binom_mod_p, is_prime


class Kind(Enum):
    EXTERIOR = "exterior"
    POLYNOMIAL = "polynomial"
    LAURENT = "laurent"
    TRUNCATED = "truncated"
    DIVIDED = "divided"


@dataclass(frozen=True)
class Generator:
    """A named generator with column degree s and internal degree t.

    For a divided-power generator the exponent j stands for the basis
    element gamma_j, which sits in bidegree (j*s, j*t).
    """

    name: str
    s: int
    t: int
    kind: Kind
    height: int = 0

    def __post_init__(self) -> None:
        if self.kind is Kind.TRUNCATED and self.height < 2:
            raise ValueError(f"truncated generator {self.name} needs height >= 2")

    @property
    def total(self) -> int:
        return self.s + self.t

    @property
    def odd(self) -> bool:
        return (self.s + self.t) % 2 == 1


Monomial = tuple[int, ...]
Element = dict[Monomial, int]


def _normalize_gen(g: Generator) -> Generator:
    # an "exterior" generator of even total degree squares to zero all the
    # same; model it as height-2 truncated so no Koszul sign is attached
    if g.kind is Kind.EXTERIOR and not g.odd:
        return Generator(g.name, g.s, g.t, Kind.TRUNCATED, 2)
    return g


@dataclass(frozen=True)
class Algebra:
    """Tensor product of one-generator pieces over F_p, in a fixed order."""

    p: int
    gens: tuple[Generator, ...]

    def __post_init__(self) -> None:
        if not is_prime(self.p) or self.p < 3:
            raise ValueError(f"ground field needs an odd prime, got {self.p}")
        names = [g.name for g in self.gens]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be unique")
        object.__setattr__(self, "gens", tuple(_normalize_gen(g) for g in self.gens))

    # -- monomials ------------------------------------------------------

    @property
    def unit_mono(self) -> Monomial:
        return (0,) * len(self.gens)

    def index(self, name: str) -> int:
        for i, g in enumerate(self.gens):
            if g.name == name:
                return i
        raise KeyError(name)

    def mono(self, **exps: int) -> Monomial:
        e = [0] * len(self.gens)
        for name, v in exps.items():
            e[self.index(name)] = v
        m = tuple(e)
        if not self.valid_mono(m):
            raise ValueError(f"invalid exponents {exps}")
        return m

    def valid_mono(self, m: Monomial) -> bool:
        for g, e in zip(self.gens, m):
            if g.kind is Kind.EXTERIOR and e not in (0, 1):
                return False
            if g.kind is Kind.TRUNCATED and not 0 <= e < g.height:
                return False
            if g.kind in (Kind.POLYNOMIAL, Kind.DIVIDED) and e < 0:
                return False
        return True

    def sdeg(self, m: Monomial) -> int:
        return sum(g.s * e for g, e in zip(self.gens, m) if e)

    def tdeg(self, m: Monomial) -> int:
        return sum(g.t * e for g, e in zip(self.gens, m) if e)

    def total(self, m: Monomial) -> int:
        return sum((g.s + g.t) * e for g, e in zip(self.gens, m) if e)

    def bidegree(self, m: Monomial) -> tuple[int, int]:
        return self.sdeg(m), self.tdeg(m)

    def key(self, m: Monomial):
        """Canonical monomial sort key: total degree, then exponent tuple."""
        return (self.total(m), m)

    def mono_str(self, m: Monomial) -> str:
        parts = []
        for g, e in zip(self.gens, m):
            if not e:
                continue
            if g.kind is Kind.DIVIDED:
                parts.append(f"{g.name}[{e}]")
            elif e == 1:
                parts.append(g.name)
            else:
                parts.append(f"{g.name}^{e}")
        return "*".join(parts) if parts else "1"

    # -- elements -------------------------------------------------------

    def unit(self) -> Element:
        return {self.unit_mono: 1}

    def elem(self, coeff: int = 1, **exps: int) -> Element:
        c = coeff % self.p
        return {self.mono(**exps): c} if c else {}

    def add(self, a: Element, b: Element) -> Element:
        out = dict(a)
        for m, c in b.items():
            v = (out.get(m, 0) + c) % self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    def scale(self, a: Element, c: int) -> Element:
        c %= self.p
        if not c:
            return {}
        return {m: (v * c) % self.p for m, v in a.items()}

    def mono_mul(self, m1: Monomial, m2: Monomial) -> tuple[Monomial, int] | None:
        """Product of two monomials: merged exponents with the Koszul sign
        and divided-power binomial; None when the product vanishes."""
        coeff = 1
        # moving each odd factor of m2 left past the higher-index odd part of m1
        swaps = 0
        tail_odd = 0
        for i in range(len(self.gens) - 1, -1, -1):
            g = self.gens[i]
            if g.odd:
                swaps += m2[i] * tail_odd
                tail_odd += m1[i]
        if swaps % 2:
            coeff = -1
        exps = []
        for g, e1, e2 in zip(self.gens, m1, m2):
            e = e1 + e2
            if g.kind is Kind.EXTERIOR and e > 1:
                return None
            if g.kind is Kind.TRUNCATED and e >= g.height:
                return None
            if g.kind is Kind.DIVIDED and e1 and e2:
                b = binom_mod_p(self.p, e1, e2)
                if not b:
                    return None
                coeff = coeff * b
            exps.append(e)
        return tuple(exps), coeff % self.p

    def mul(self, a: Element, b: Element) -> Element:
        out: Element = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                r = self.mono_mul(m1, m2)
                if r is None:
                    continue
                m, c = r
                v = (out.get(m, 0) + c1 * c2 * c) % self.p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def power(self, a: Element, n: int) -> Element:
        out = self.unit()
        for _ in range(n):
            out = self.mul(out, a)
        return out

    def elem_str(self, a: Element) -> str:
        if not a:
            return "0"
        parts = []
        for m in sorted(a, key=self.key):
            c = a[m]
            parts.append(self.mono_str(m) if c == 1 else f"{c}*{self.mono_str(m)}")
        return " + ".join(parts)

    def is_homogeneous(self, a: Element) -> bool:
        degs = {self.bidegree(m) for m in a}
        return len(degs) <= 1

    # -- bases ----------------------------------------------------------

    def basis_in_bidegree(self, s: int, t: int) -> list[Monomial]:
        """All monomials of bidegree (s, t), in canonical order.

        Generators of positive total degree are enumerated directly; at most
        two remaining unbounded generators are solved for exactly.  Raises
        when a bidegree is provably infinite (two unbounded generators with
        proportional bidegrees).
        """
        return list(_basis_in_bidegree_cached(self, s, t))

    def basis_monomials_by_total(self, lo: int, hi: int) -> dict[int, list[Monomial]]:
        """Monomials bucketed by total degree over [lo, hi]; requires every
        generator to have positive total degree."""
        for g in self.gens:
            if g.total <= 0 or g.kind is Kind.LAURENT:
                raise ValueError(
                    f"total-degree enumeration needs positive finite degrees; "
                    f"generator {g.name} is unbounded")
        out: dict[int, list[Monomial]] = {d: [] for d in range(lo, hi + 1)}

        def rec(i: int, budget: int, acc: list[int]):
            if i == len(self.gens):
                m = tuple(acc)
                d = self.total(m)
                if lo <= d <= hi:
                    out[d].append(m)
                return
            g = self.gens[i]
            e_hi = budget // g.total
            if g.kind is Kind.EXTERIOR:
                e_hi = min(e_hi, 1)
            elif g.kind is Kind.TRUNCATED:
                e_hi = min(e_hi, g.height - 1)
            for e in range(e_hi + 1):
                rec(i + 1, budget - e * g.total, acc + [e])

        rec(0, hi, [])
        for d in out:
            out[d].sort(key=self.key)
        return out


@lru_cache(maxsize=200_000)
def _basis_in_bidegree_cached(alg: Algebra, s: int, t: int) -> tuple[Monomial, ...]:
    finite: list[int] = []     # exterior/truncated: small fixed exponent range
    capped: list[int] = []     # poly/divided with a sound degree budget cap
    solved: list[int] = []     # Laurent or otherwise unbounded: solved exactly
    wild = any(g.kind is Kind.LAURENT or g.total <= 0 for g in alg.gens)
    s_nonneg = all(g.s >= 0 for g in alg.gens)
    t_nonneg = all(g.t >= 0 for g in alg.gens)
    for i, g in enumerate(alg.gens):
        if g.kind in (Kind.EXTERIOR, Kind.TRUNCATED):
            finite.append(i)
        elif g.kind is Kind.LAURENT or g.total <= 0:
            solved.append(i)
        elif not wild:
            capped.append(i)
        elif t_nonneg and g.t > 0 and all(
                alg.gens[j].t == 0 for j in range(len(alg.gens))
                if alg.gens[j].kind is Kind.LAURENT or alg.gens[j].total <= 0):
            capped.append(i)   # cap by internal degree; unbounded gens cannot refill it
        elif s_nonneg and g.s > 0 and all(
                alg.gens[j].s == 0 for j in range(len(alg.gens))
                if alg.gens[j].kind is Kind.LAURENT or alg.gens[j].total <= 0):
            capped.append(i)
        else:
            solved.append(i)
    if len(solved) > 2:
        names = ", ".join(alg.gens[i].name for i in solved)
        raise ValueError(f"bidegree enumeration impossible: generators {names}")

    out: list[Monomial] = []

    def solve_tail(rem_s: int, rem_t: int, acc: list[int]):
        exps = {i: 0 for i in solved}
        if len(solved) == 0:
            if rem_s or rem_t:
                return
        elif len(solved) == 1:
            g = alg.gens[solved[0]]
            if g.s == 0 and g.t == 0:
                raise ValueError(
                    f"bidegree enumeration impossible: generator {g.name} "
                    f"has bidegree (0, 0)")
            if g.s:
                if rem_s % g.s:
                    return
                e = rem_s // g.s
            else:
                if rem_t % g.t:
                    return
                e = rem_t // g.t
            if e * g.s != rem_s or e * g.t != rem_t:
                return
            if g.kind is not Kind.LAURENT and e < 0:
                return
            exps[solved[0]] = e
        else:
            i1, i2 = solved
            g1, g2 = alg.gens[i1], alg.gens[i2]
            det = g1.s * g2.t - g1.t * g2.s
            if det == 0:
                raise ValueError(
                    f"bidegree enumeration impossible: generators {g1.name}, "
                    f"{g2.name} have proportional bidegrees")
            num1 = rem_s * g2.t - rem_t * g2.s
            num2 = g1.s * rem_t - g1.t * rem_s
            if num1 % det or num2 % det:
                return
            e1, e2 = num1 // det, num2 // det
            if (g1.kind is not Kind.LAURENT and e1 < 0) or \
               (g2.kind is not Kind.LAURENT and e2 < 0):
                return
            exps[i1], exps[i2] = e1, e2
        full = list(acc)
        for i, e in exps.items():
            full[i] = e
        out.append(tuple(full))

    order = finite + capped

    def rec(pos: int, rem_s: int, rem_t: int, acc: list[int]):
        if pos == len(order):
            solve_tail(rem_s, rem_t, acc)
            return
        i = order[pos]
        g = alg.gens[i]
        if g.kind is Kind.EXTERIOR:
            e_hi = 1
        elif g.kind is Kind.TRUNCATED:
            e_hi = g.height - 1
        elif not wild:
            e_hi = max((rem_s + rem_t) // g.total, -1)
        elif g.t > 0 and t_nonneg:
            e_hi = max(rem_t // g.t, -1)
        else:
            e_hi = max(rem_s // g.s, -1)
        for e in range(e_hi + 1):
            acc[i] = e
            rec(pos + 1, rem_s - e * g.s, rem_t - e * g.t, acc)
        acc[i] = 0

    rec(0, s, t, [0] * len(alg.gens))
    out.sort(key=alg.key)
    return tuple(out)


def tensor(p: int, *factors: Algebra, tags: tuple[str, ...] | None = None
           ) -> tuple[Algebra, list]:
    """Tensor product of algebras with injective monomial maps.

    Generator names are prefixed with tags when collisions would occur.
    Returns (combined algebra, [monomial injections]).
    """
    if tags is None:
        tags = tuple("" for _ in factors)
    gens: list[Generator] = []
    offsets: list[int] = []
    for tag, alg in zip(tags, factors):
        offsets.append(len(gens))
        for g in alg.gens:
            gens.append(Generator(tag + g.name, g.s, g.t, g.kind, g.height))
    combined = Algebra(p, tuple(gens))
    n = len(gens)

    def make_inj(off: int, width: int):
        def inj(m: Monomial) -> Monomial:
            return (0,) * off + m + (0,) * (n - off - width)
        return inj

    injections = [make_inj(off, len(alg.gens))
                  for off, alg in zip(offsets, factors)]
    return combined, injections


def inject_elem(inj, a: Element) -> Element:
    return {inj(m): c for m, c in a.items()}


# -- Poincare series ----------------------------------------------------


@dataclass(frozen=True)
class PoincareSeries:
    """Dimension-per-total-degree table over a closed degree window."""

    lo: int
    hi: int
    dims: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.dims) != self.hi - self.lo + 1:
            raise ValueError("window/dims length mismatch")

    def get(self, d: int) -> int:
        if self.lo <= d <= self.hi:
            return self.dims[d - self.lo]
        raise KeyError(f"degree {d} outside window [{self.lo}, {self.hi}]")

    def items(self):
        return ((self.lo + i, v) for i, v in enumerate(self.dims))

    @classmethod
    def from_counts(cls, lo: int, hi: int, counts: dict[int, int]) -> "PoincareSeries":
        return cls(lo, hi, tuple(counts.get(d, 0) for d in range(lo, hi + 1)))

    def mul(self, other: "PoincareSeries") -> "PoincareSeries":
        """Truncated product; both series must start at degree 0."""
        if self.lo != 0 or other.lo != 0:
            raise ValueError("series product needs both windows to start at 0")
        hi = min(self.hi, other.hi)
        dims = [0] * (hi + 1)
        for i, a in enumerate(self.dims):
            if i > hi or not a:
                continue
            for j, b in enumerate(other.dims):
                if i + j > hi:
                    break
                dims[i + j] += a * b
        return PoincareSeries(0, hi, tuple(dims))

    def restrict(self, lo: int, hi: int) -> "PoincareSeries":
        if lo < self.lo or hi > self.hi:
            raise ValueError("cannot widen a series window")
        return PoincareSeries(lo, hi, self.dims[lo - self.lo:hi - self.lo + 1])


def ps_one_generator(lo: int, hi: int, degree: int, kind: Kind,
                     height: int = 0) -> PoincareSeries:
    if degree <= 0:
        raise ValueError("Poincare series needs positive generator degrees")
    counts: dict[int, int] = {0: 1}
    if kind is Kind.EXTERIOR:
        tops = [degree]
    elif kind is Kind.TRUNCATED:
        tops = [e * degree for e in range(1, height)]
    elif kind in (Kind.POLYNOMIAL, Kind.DIVIDED):
        tops = list(range(degree, hi + 1, degree))
    else:
        raise ValueError("Laurent generators have no Poincare series")
    for d in tops:
        if d <= hi:
            counts[d] = 1
    return PoincareSeries.from_counts(lo, hi, counts)


def poincare_series(alg: Algebra, lo: int, hi: int) -> PoincareSeries:
    """Exact dimensions of an algebra whose generators all have positive
    total degree; Laurent factors make every degree infinite and raise."""
    if lo < 0:
        raise ValueError("algebra series start at degree 0; use lo >= 0")
    out = PoincareSeries.from_counts(0, hi, {0: 1})
    for g in alg.gens:
        if g.kind is Kind.LAURENT or g.total <= 0:
            raise ValueError(f"generator {g.name} gives infinite degrees")
        out = out.mul(ps_one_generator(0, hi, g.total, g.kind, g.height))
    return out.restrict(lo, hi)


def ps_from_monomials(alg: Algebra, monomials, lo: int, hi: int) -> PoincareSeries:
    counts: dict[int, int] = {}
    for m in monomials:
        d = alg.total(m)
        if lo <= d <= hi:
            counts[d] = counts.get(d, 0) + 1
    return PoincareSeries.from_counts(lo, hi, counts)


def ps_from_degree_list(degrees, lo: int, hi: int) -> PoincareSeries:
    counts: dict[int, int] = {}
    for d in degrees:
        if lo <= d <= hi:
            counts[d] = counts.get(d, 0) + 1
    return PoincareSeries.from_counts(lo, hi, counts)

"""Homology-of-THH spectral sequences for the four coefficient rings.

The starting page is Hochschild homology of the homology of the ring:
the homology algebra tensor an exterior algebra on suspensions of the
even generators tensor a divided power algebra on suspensions of the odd
ones.  One differential family of length p-1 sends gamma_j classes to the
next exterior suspension times gamma_(j-p), leaving truncated polynomial
algebras of height p.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from ..comodule import RingId
from ..graded import Algebra, Generator, Kind, Monomial
from ..specseq import DerivationRule, Region, verify_turn

# which suspended tau-classes each ring carries, and which suspended
# xi-classes survive to the last page
_TAU_SETS = {
    RingId.HZP_MOD: lambda k: True,
    RingId.HZ_LOCAL: lambda k: k >= 1,
    RingId.ELL: lambda k: k >= 2,
    RingId.ELL_MOD_P: lambda k: k == 0 or k >= 2,
}
_SURVIVING_SXI = {
    RingId.HZP_MOD: (),
    RingId.HZ_LOCAL: (1,),
    RingId.ELL: (1, 2),
    RingId.ELL_MOD_P: (2,),
}


@lru_cache(maxsize=None)
def bokstedt_algebra(p: int, ring: RingId, top: int) -> Algebra:
    """Ambient algebra for the starting page, windowed by total degree."""
    gens: list[Generator] = []
    k = 1
    while 2 * (p ** k - 1) <= top:
        gens.append(Generator(f"bxi{k}", 0, 2 * (p ** k - 1), Kind.POLYNOMIAL))
        k += 1
    k = 0
    while 2 * p ** k - 1 <= top:
        if _TAU_SETS[ring](k):
            gens.append(Generator(f"btau{k}", 0, 2 * p ** k - 1, Kind.EXTERIOR))
        k += 1
    k = 1
    while 2 * p ** k - 1 <= top:
        gens.append(Generator(f"sbxi{k}", 1, 2 * (p ** k - 1), Kind.EXTERIOR))
        k += 1
    k = 0
    while 2 * p ** k <= top:
        if _TAU_SETS[ring](k):
            gens.append(Generator(f"sbtau{k}", 1, 2 * p ** k - 1, Kind.DIVIDED))
        k += 1
    return Algebra(p, tuple(gens))


@dataclass
class BokstedtPage:
    """Lazy page over the windowed ambient algebra, possibly filtered to the
    subalgebra that survives the differential."""

    label: str
    r: int
    algebra: Algebra
    ring: RingId
    top: int
    last: bool = False
    provenance: str = "closed-form"
    _cache: dict = field(default_factory=dict, repr=False)

    def _keep(self, m: Monomial) -> bool:
        if not self.last:
            return True
        p = self.algebra.p
        survivors = _SURVIVING_SXI[self.ring]
        for g, e in zip(self.algebra.gens, m):
            if not e:
                continue
            if g.name.startswith("sbxi") and int(g.name[4:]) not in survivors:
                return False
            if g.kind is Kind.DIVIDED and e >= p:
                return False
        return True

    def basis_at(self, s: int, t: int) -> tuple[Monomial, ...]:
        key = (s, t)
        if key not in self._cache:
            monos = self.algebra.basis_in_bidegree(s, t)
            self._cache[key] = tuple(m for m in monos if self._keep(m))
        return self._cache[key]

    def iter_region(self, region: Region) -> Iterable[Monomial]:
        lo = max(region.lo, 0)
        for total in range(lo, region.hi + 1):
            s_hi = min(total, region.s_hi, self.top)
            for s in range(max(region.s_lo, 0), s_hi + 1):
                yield from self.basis_at(s, total - s)


def bokstedt_e2_page(p: int, ring: RingId, top: int) -> BokstedtPage:
    alg = bokstedt_algebra(p, ring, top)
    return BokstedtPage(f"bokstedt:{ring.value}:start", 2, alg, ring, top)


def bokstedt_einf_page(p: int, ring: RingId, top: int) -> BokstedtPage:
    alg = bokstedt_algebra(p, ring, top)
    return BokstedtPage(f"bokstedt:{ring.value}:final", p, alg, ring, top,
                        last=True)


def bokstedt_rule(p: int, ring: RingId, top: int) -> DerivationRule:
    """The length p-1 differential: gamma_j of a suspended odd class maps to
    the next suspended even class times gamma_(j-p)."""
    alg = bokstedt_algebra(p, ring, top)
    power_rules = {}
    for g in alg.gens:
        if g.kind is not Kind.DIVIDED:
            continue
        k = int(g.name[5:])
        target = f"sbxi{k + 1}"
        name = g.name

        def rule_fn(j: int, name=name, target=target) -> dict:
            if j < p:
                return {}
            try:
                return alg.elem(**{name: j - p, target: 1})
            except KeyError:
                raise ValueError(
                    f"window too small: {target} needed by the differential")

        power_rules[g.name] = rule_fn
    return DerivationRule(p - 1, f"bokstedt-d{p - 1}", {}, power_rules)


def bokstedt_run(p: int, ring: RingId, lo: int, hi: int):
    """Verify the one differential family against the final closed form."""
    e2 = bokstedt_e2_page(p, ring, hi + 1)
    einf = bokstedt_einf_page(p, ring, hi + 1)
    rule = bokstedt_rule(p, ring, hi + 1)
    region = Region(lo, hi, 0, hi + 1)
    return verify_turn(e2, rule, einf, region)

"""Brute-force reference arithmetic for tiny curves.

Nothing here touches :mod:`ecot.curve` or :mod:`ecot.modular`: points are
plain ``(x, y)`` tuples (``None`` for the identity), inverses come from
Fermat's little theorem and scalar multiples from repeated addition.  The
duplication is deliberate; an oracle that shared code with the thing it
checks would share its bugs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from math import gcd
from typing import Iterator, Optional

from ..errors import InvalidPoint, TooLarge

SCAN_BOUND = 20_000

Pt = Optional[tuple[int, int]]


@dataclass(frozen=True)
class CurveParams:
    p: int
    a: int
    b: int

    @classmethod
    def of(cls, curve) -> CurveParams:
        """Accept anything with ``p``, ``a``, ``b`` attributes, or a triple."""
        if isinstance(curve, tuple):
            return cls(*curve)
        return cls(curve.p, curve.a, curve.b)

    def rhs(self, x: int) -> int:
        return (x * x * x + self.a * x + self.b) % self.p


@dataclass
class GroupTable:
    """Every element of E_p(a, b), identity first."""

    curve: CurveParams
    points: list[Pt]
    # y^2 value -> sorted list of y, for checking square roots
    roots: dict[int, list[int]] = field(repr=False)

    def __post_init__(self) -> None:
        self._members = set(self.points)
        self._cycles: dict[Pt, list[Pt]] = {}

    @property
    def order(self) -> int:
        return len(self.points)

    def __contains__(self, pt: Pt) -> bool:
        return pt in self._members

    def require(self, pt: Pt) -> Pt:
        if pt not in self._members:
            raise InvalidPoint(f"{pt} is not on E_{self.curve.p}({self.curve.a},{self.curve.b})")
        return pt

    def affine(self) -> list[tuple[int, int]]:
        return [pt for pt in self.points if pt is not None]

    def sqrt(self, s: int) -> tuple[int, ...]:
        return tuple(self.roots.get(s % self.curve.p, ()))

    # -- arithmetic --------------------------------------------------------

    def neg(self, pt: Pt) -> Pt:
        if pt is None:
            return None
        return (pt[0], (-pt[1]) % self.curve.p)

    def add(self, u: Pt, v: Pt) -> Pt:
        p = self.curve.p
        if u is None:
            return v
        if v is None:
            return u
        if u[0] == v[0] and (u[1] + v[1]) % p == 0:
            return None
        if u == v:
            num, den = 3 * u[0] * u[0] + self.curve.a, 2 * u[1]
        else:
            num, den = v[1] - u[1], v[0] - u[0]
        lam = num * pow(den % p, p - 2, p) % p
        x = (lam * lam - u[0] - v[0]) % p
        return (x, (lam * (u[0] - x) - u[1]) % p)

    def multiples(self, pt: Pt) -> Iterator[Pt]:
        """0*pt, 1*pt, 2*pt, ... forever, by repeated addition."""
        self.require(pt)
        acc = None
        while True:
            yield acc
            acc = self.add(acc, pt)

    def mul(self, k: int, pt: Pt) -> Pt:
        if k < 0:
            return self.mul(-k, self.neg(pt))
        self.require(pt)
        acc = None
        for _ in range(k):
            acc = self.add(acc, pt)
        return acc

    def mul_cached(self, k: int, pt: Pt) -> Pt:
        """k * pt read off pt's cycle of multiples, built once by addition."""
        cycle = self._cycles.get(pt)
        if cycle is None:
            cycle = self._cycles[pt] = [None] if pt is None else self.subgroup(pt)
        return cycle[k % len(cycle)]

    def point_order(self, pt: Pt) -> int:
        for k, q in enumerate(self.multiples(pt)):
            if k and q is None:
                return k
            if k > self.order:
                raise AssertionError("order exceeds the group size")
        raise AssertionError("unreachable")

    def dlog(self, base: Pt, target: Pt) -> Optional[int]:
        """Least k >= 0 with k*base = target, or None outside <base>."""
        if base is None:
            raise InvalidPoint("base must not be the identity")
        self.require(target)
        for k, q in enumerate(self.multiples(base)):
            if q == target:
                return k
            if k and q is None:
                return None
        raise AssertionError("unreachable")

    def subgroup(self, base: Pt) -> list[Pt]:
        out = []
        for k, q in enumerate(self.multiples(base)):
            if k and q is None:
                return out
            out.append(q)
        raise AssertionError("unreachable")


@dataclass(frozen=True)
class CyclicIndex:
    """All multiples of one generator, built by repeated addition.

    In a cyclic group every element is j*g for a unique j, so k * (j*g) is
    the entry at k*j mod n: cheap lookups for curves too big to rescan.
    """

    generator: tuple[int, int]
    multiples: list[Pt]
    index: dict

    @property
    def order(self) -> int:
        return len(self.multiples)

    def mul(self, k: int, pt: Pt) -> Pt:
        return self.multiples[k * self.index[pt] % self.order]

    def mul_cached(self, k: int, pt: Pt) -> Pt:
        """k * pt read off pt's cycle of multiples, built once by addition."""
        cycle = self._cycles.get(pt)
        if cycle is None:
            cycle = self._cycles[pt] = [None] if pt is None else self.subgroup(pt)
        return cycle[k % len(cycle)]

    def point_order(self, pt: Pt) -> int:
        return self.order // gcd(self.index[pt], self.order)


def cyclic_index(table: GroupTable, tries: int = 200, seed: int = 0) -> Optional[CyclicIndex]:
    """Index the group from a generator, or None if none turned up."""
    rng = random.Random(seed)
    affine = table.affine()
    for g in rng.sample(affine, min(tries, len(affine))):
        multiples = table.subgroup(g)
        if len(multiples) == table.order:
            return CyclicIndex(g, multiples, {pt: j for j, pt in enumerate(multiples)})
    return None


def naive_mul(table: GroupTable, k: int, pt: Pt) -> Pt:
    return table.mul(k, pt)


def small_dlog(table: GroupTable, base: Pt, target: Pt) -> Optional[int]:
    return table.dlog(base, target)


def _square_roots(p: int) -> dict[int, list[int]]:
    roots: dict[int, list[int]] = {}
    for y in range(p):
        roots.setdefault(y * y % p, []).append(y)
    return roots


def enumerate_group(curve, bound: int = SCAN_BOUND) -> GroupTable:
    """Exhaustive point list, counted twice: once by x and once by y."""
    params = CurveParams.of(curve)
    p = params.p
    if p > bound:
        raise TooLarge(f"p = {p} is above the scan bound {bound}")
    roots = _square_roots(p)
    by_x = [(x, y) for x in range(p) for y in roots.get(params.rhs(x), ())]
    xs_for: dict[int, list[int]] = {}
    for x in range(p):
        xs_for.setdefault(params.rhs(x), []).append(x)
    by_y = [(x, y) for y in range(p) for x in xs_for.get(y * y % p, ())]
    if sorted(by_x) != sorted(by_y) or len(set(by_x)) != len(by_x):
        raise AssertionError(f"x-scan and y-scan disagree on {params}")
    for x, y in by_x:
        if (y * y - params.rhs(x)) % p:
            raise AssertionError(f"({x}, {y}) fails the curve equation")
    return GroupTable(params, [None] + sorted(by_x), roots)

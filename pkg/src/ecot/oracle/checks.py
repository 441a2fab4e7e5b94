"""Core-versus-oracle agreement checks, reported property by property."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from ..curve import Curve
from ..encoding import Encoder
from ..errors import DegenerateX, EcotError
from ..modular import sqrt_mod_p
from .table import GroupTable, Pt, cyclic_index, enumerate_group

# above this many (element, partner) combinations a check samples instead
EXHAUSTIVE_LIMIT = 1_100_000
SAMPLES_PER_ELEMENT = 24


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    cases: int
    exhaustive: bool
    detail: str = ""

    def line(self) -> str:
        mode = "all" if self.exhaustive else "sampled"
        tail = f": {self.detail}" if self.detail else ""
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name} ({self.cases} cases, {mode}){tail}"


def _as_tuple(pt) -> Pt:
    return None if pt is None else (pt[0], pt[1])


class _Tally:
    def __init__(self, name: str, exhaustive: bool):
        self.name, self.exhaustive = name, exhaustive
        self.cases, self.first_bad = 0, ""

    def check(self, ok: bool, what: Callable[[], str]) -> None:
        self.cases += 1
        if not ok and not self.first_bad:
            self.first_bad = what()

    def result(self) -> CheckResult:
        return CheckResult(self.name, not self.first_bad, self.cases, self.exhaustive,
                           self.first_bad and f"first mismatch {self.first_bad}")


def check_sqrt(table: GroupTable) -> CheckResult:
    p, t = table.curve.p, _Tally("square roots", True)
    for s in range(p):
        got = sqrt_mod_p(s, p)
        t.check(got == table.sqrt(s), lambda: f"s={s}: core {got}, oracle {table.sqrt(s)}")
    return t.result()


def check_membership(curve: Curve, table: GroupTable, rng: random.Random) -> CheckResult:
    p = table.curve.p
    exhaustive = p * p <= EXHAUSTIVE_LIMIT
    t = _Tally("curve membership", exhaustive)
    if exhaustive:
        candidates = ((x, y) for x in range(p) for y in range(p))
    else:
        near_misses = [(x, (y + 1) % p) for x, y in table.affine()]
        candidates = iter(table.affine() + near_misses)
    for pt in candidates:
        got = curve.is_on_curve(pt)
        t.check(got == (pt in table), lambda: f"{pt}: core says {got}")
    return t.result()


def check_lift(curve: Curve, table: GroupTable) -> CheckResult:
    t = _Tally("x lifting", True)
    by_x: dict[int, list] = {}
    for pt in table.affine():
        by_x.setdefault(pt[0], []).append(pt)
    for x in range(table.curve.p):
        want = sorted(by_x.get(x, []))
        try:
            pair = curve.lift_x(x)
            got = [] if pair is None else sorted([_as_tuple(pair.p1), _as_tuple(pair.p2)])
        except DegenerateX:
            got = [(x, 0)]
        t.check(got == want, lambda: f"x={x}: core {got}, oracle {want}")
    return t.result()


def check_negate(curve: Curve, table: GroupTable) -> CheckResult:
    t = _Tally("negation", True)
    for pt in table.points:
        got = _as_tuple(curve.negate(pt))
        t.check(got == table.neg(pt) and got in table, lambda: f"-{pt}: core {got}")
        t.check(curve.add(pt, curve.negate(pt)) is None, lambda: f"{pt} + (-{pt}) is not O")
    return t.result()


def check_add(curve: Curve, table: GroupTable, rng: random.Random) -> CheckResult:
    pts = table.points
    exhaustive = len(pts) ** 2 <= EXHAUSTIVE_LIMIT
    t = _Tally("addition", exhaustive)
    for u in pts:
        partners = pts if exhaustive else [u, table.neg(u), None] + rng.sample(pts, SAMPLES_PER_ELEMENT)
        for v in partners:
            got = _as_tuple(curve.add(u, v))
            t.check(got == table.add(u, v), lambda: f"{u} + {v}: core {got}, oracle {table.add(u, v)}")
    return t.result()


def check_scalar_mul(curve: Curve, table: GroupTable, rng: random.Random) -> CheckResult:
    """k * P against repeated addition, for k in [0, #E]."""
    n = table.order
    exhaustive = len(table.points) * (n + 1) <= EXHAUSTIVE_LIMIT
    t = _Tally("scalar multiplication", exhaustive)
    if exhaustive:
        for pt in table.points:
            for k, want in zip(range(n + 1), table.multiples(pt)):
                got = _as_tuple(curve.scalar_mul(k, pt))
                t.check(got == want, lambda: f"{k}*{pt}: core {got}, oracle {want}")
        return t.result()
    idx = cyclic_index(table)
    if idx is None:
        return CheckResult(t.name, False, 0, False, "group not cyclic; no oracle index")
    # every scalar on the generator, sampled scalars on every element
    for k, want in enumerate(idx.multiples + [None]):
        got = _as_tuple(curve.scalar_mul(k, idx.generator))
        t.check(got == want, lambda: f"{k}*{idx.generator}: core {got}, oracle {want}")
    for pt in table.points:
        for k in [0, 1, 2, n] + rng.sample(range(n), SAMPLES_PER_ELEMENT):
            want = None if pt is None else idx.mul(k, pt)
            got = _as_tuple(curve.scalar_mul(k, pt))
            t.check(got == want, lambda: f"{k}*{pt}: core {got}, oracle {want}")
    return t.result()


def check_orders(curve: Curve, table: GroupTable, rng: random.Random) -> CheckResult:
    affine = table.affine()
    exhaustive = len(affine) * table.order <= 4 * EXHAUSTIVE_LIMIT
    t = _Tally("point orders (and Lagrange)", exhaustive)
    idx = None if exhaustive else cyclic_index(table)
    sample = affine if exhaustive else rng.sample(affine, 4 * SAMPLES_PER_ELEMENT)
    for pt in sample:
        got = curve.point_order(pt)
        want = table.point_order(pt)
        t.check(got == want, lambda: f"order{pt}: core {got}, oracle {want}")
        t.check(table.order % got == 0, lambda: f"order{pt} = {got} does not divide {table.order}")
    if idx is not None:
        # Lagrange for every element via the generator index
        for pt in affine:
            t.check(table.order % idx.point_order(pt) == 0, lambda: f"order{pt} fails Lagrange")
    return t.result()


def check_dlog_roundtrip(curve: Curve, table: GroupTable, rng: random.Random) -> CheckResult:
    """dlog(P, k*P) = k for k below the order of P, with k*P from the core."""
    affine = table.affine()
    exhaustive = len(affine) * table.order <= 20_000
    t = _Tally("small discrete logs", exhaustive)
    for pt in affine if exhaustive else rng.sample(affine, 16):
        order = table.point_order(pt)
        for k in range(order) if exhaustive else rng.sample(range(order), min(8, order)):
            got = table.dlog(pt, _as_tuple(curve.scalar_mul(k, pt)))
            t.check(got == k, lambda: f"dlog({pt}, {k}*{pt}) = {got}")
    return t.result()


def oracle_encoding(table: GroupTable, kappa: int) -> dict[int, Pt]:
    """Exhaustive scan of the try-and-increment embedding."""
    p = table.curve.p
    out = {}
    for v in range((p - 1) // kappa):
        for x in range(v * kappa, (v + 1) * kappa):
            ys = table.sqrt(table.curve.rhs(x))
            if len(ys) == 2:
                out[v] = (x, min(ys))
                break
    return out


def check_encoding(curve: Curve, table: GroupTable, kappa: int) -> CheckResult:
    enc = Encoder(curve, kappa)
    want = oracle_encoding(table, kappa)
    t = _Tally(f"message embedding (kappa={kappa})", True)
    for v in range(enc.max_value + 2):
        try:
            got = _as_tuple(enc.encode(v))
        except EcotError:
            got = None
        t.check(got == want.get(v), lambda: f"v={v}: core {got}, oracle {want.get(v)}")
        if got is not None:
            t.check(enc.decode(got) == v, lambda: f"decode(encode({v})) != {v}")
    return t.result()


def verify_curve(curve: Curve, kappa: Optional[int] = None, seed: int = 0) -> list[CheckResult]:
    """Run every agreement check on ``curve``; the oracle table is built fresh."""
    rng = random.Random(seed)
    table = enumerate_group(curve)
    results = [
        CheckResult(f"enumeration: #E = {table.order}, x-scan = y-scan", True, table.order, True),
        check_sqrt(table),
        check_membership(curve, table, rng),
        check_lift(curve, table),
        check_negate(curve, table),
        check_add(curve, table, rng),
        check_scalar_mul(curve, table, rng),
        check_orders(curve, table, rng),
        check_dlog_roundtrip(curve, table, rng),
    ]
    if kappa is not None and 2 * kappa < curve.p:
        results.append(check_encoding(curve, table, kappa))
    return results

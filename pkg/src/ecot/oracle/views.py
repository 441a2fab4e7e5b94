"""What A sees in step 2, under both receiver choices, on a tiny curve.

B's step-2 message is ``(n_B P_B, n_B (n_A P_A) + R, n_B R)``.  The checks
below compare the distribution of that message (and of projections of it)
between P_B = P_1 and P_B = P_2 = -P_1, exhaustively over R, using the
translation R -> R + 2 n_B n_A P_A to pair up sessions.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable

from .table import GroupTable, Pt

Triple = tuple[Pt, Pt, Pt]


@dataclass(frozen=True)
class ViewReport:
    name: str
    passed: bool
    cases: int
    failures: int
    example: str = ""

    def line(self) -> str:
        tail = f"; e.g. {self.example}" if self.example else ""
        return (f"{'PASS' if self.passed else 'FAIL'}  {self.name} "
                f"({self.cases - self.failures}/{self.cases} agree{tail})")


def step2_triple(table: GroupTable, pb: Pt, n_b: int, step1: Pt, r: Pt) -> Triple:
    mul = table.mul_cached
    return (mul(n_b, pb), table.add(mul(n_b, step1), r), mul(n_b, r))


def shift(table: GroupTable, n_a: int, n_b: int, pa: Pt) -> Pt:
    """The translation 2 n_B n_A P_A pairing sessions across the two choices."""
    return table.mul_cached(2 * n_a * n_b, pa)


def _sessions(table: GroupTable, pair: tuple[Pt, Pt], pa_choice: int, n_a: int, n_b: int,
              pb_choice: int, bijection: bool) -> list[Triple]:
    pa, pb = pair[pa_choice], pair[pb_choice]
    step1 = table.mul_cached(n_a, pa)
    c = shift(table, n_a, n_b, pa) if bijection else None
    out = []
    for r in table.points:
        rr = table.add(r, c) if bijection else r
        out.append(step2_triple(table, pb, n_b, step1, rr))
    return out


def _compare(name: str, cases: Iterable[tuple[str, Counter, Counter]]) -> ViewReport:
    total = bad = 0
    example = ""
    for label, left, right in cases:
        total += 1
        if left != right:
            bad += 1
            example = example or label
    return ViewReport(name, bad == 0, total, bad, example)


def _per_key_cases(table: GroupTable, pair, scalars, project: Callable[[Triple, int], object]):
    for pa_choice in (0, 1):
        for n_a in scalars:
            for n_b in scalars:
                first = _sessions(table, pair, pa_choice, n_a, n_b, 0, bijection=False)
                second = _sessions(table, pair, pa_choice, n_a, n_b, 1, bijection=True)
                yield (f"P_A={pair[pa_choice]}, n_A={n_a}, n_B={n_b}",
                       Counter(project(t, n_a) for t in first),
                       Counter(project(t, n_a) for t in second))


def literal_triples(table: GroupTable, pair, scalars) -> ViewReport:
    """Full ordered triples, fixed (n_A, n_B), all R: the strong statement."""
    return _compare("step-2 triples coincide for fixed keys",
                    _per_key_cases(table, pair, scalars, lambda t, _: t))


def unordered_triples(table: GroupTable, pair, scalars) -> ViewReport:
    """Same, reading each message as an unordered multiset of points."""
    key = lambda t, _: tuple(sorted(t, key=lambda q: (q is not None, q)))  # noqa: E731
    return _compare("step-2 point multisets coincide for fixed keys",
                    _per_key_cases(table, pair, scalars, key))


def sender_inner_value(table: GroupTable, pair, scalars) -> ViewReport:
    """A's working value n_B(n_A P_A) + R - n_A(n_B P_B), the input to Q."""
    def inner(t: Triple, n_a: int) -> Pt:
        return table.add(t[1], table.neg(table.mul_cached(n_a, t[0])))
    return _compare("A's step-3 input coincides for fixed keys",
                    _per_key_cases(table, pair, scalars, inner))


def slot_marginals(table: GroupTable, pair, scalars) -> ViewReport:
    """Each slot on its own, over all R and every nonzero n_B, for fixed n_A."""
    order = table.point_order(pair[0])
    cases = []
    for pa_choice in (0, 1):
        for n_a in scalars:
            for slot in range(3):
                left, right = Counter(), Counter()
                for n_b in range(1, order):
                    left.update(t[slot] for t in
                                _sessions(table, pair, pa_choice, n_a, n_b, 0, bijection=False))
                    right.update(t[slot] for t in
                                 _sessions(table, pair, pa_choice, n_a, n_b, 1, bijection=True))
                cases.append((f"slot {slot + 1}, P_A={pair[pa_choice]}, n_A={n_a}", left, right))
    return _compare("each step-2 slot has the same distribution", cases)


def joint_first_two(table: GroupTable, pair) -> ViewReport:
    """(slot 1, slot 2) paired up by (n_B, R) -> (-n_B, R + 2 n_B n_A P_A).

    n_B runs over every nonzero residue of the order of P_1, so the
    negated scalar stays in range.
    """
    order = table.point_order(pair[0])
    cases = []
    for pa_choice in (0, 1):
        pa = pair[pa_choice]
        for n_a in range(1, order):
            step1 = table.mul_cached(n_a, pa)
            left, right = Counter(), Counter()
            for n_b in range(1, order):
                c = shift(table, n_a, n_b, pa)
                for r in table.points:
                    left[step2_triple(table, pair[0], n_b, step1, r)[:2]] += 1
                    right[step2_triple(table, pair[1], order - n_b, step1, table.add(r, c))[:2]] += 1
            cases.append((f"P_A={pa}, n_A={n_a}", left, right))
    return _compare("first two step-2 slots coincide jointly over (n_B, R)", cases)


def joint_triples(table: GroupTable, pair) -> ViewReport:
    """Full triples jointly over n_B and R (any pairing of sessions gives the same multiset)."""
    order = table.point_order(pair[0])
    cases = []
    for pa_choice in (0, 1):
        pa = pair[pa_choice]
        for n_a in range(1, order):
            step1 = table.mul_cached(n_a, pa)
            left, right = Counter(), Counter()
            for n_b in range(1, order):
                for r in table.points:
                    left[step2_triple(table, pair[0], n_b, step1, r)] += 1
                    right[step2_triple(table, pair[1], n_b, step1, r)] += 1
            cases.append((f"P_A={pa}, n_A={n_a}", left, right))
    return _compare("step-2 triples coincide jointly over (n_B, R)", cases)


def obliviousness_report(table: GroupTable, pair: tuple[Pt, Pt], scalars) -> list[ViewReport]:
    scalars = list(scalars)
    return [
        literal_triples(table, pair, scalars),
        unordered_triples(table, pair, scalars),
        sender_inner_value(table, pair, scalars),
        slot_marginals(table, pair, scalars),
        joint_first_two(table, pair),
        joint_triples(table, pair),
    ]

"""Golden vectors for the worked key-transfer example on E_23(9,21).

Both cases use x = 7 (P_1 = (7,6), P_2 = (7,17)), n_A = 5, n_B = 3,
R = (2,1) and P_A = P_1.  Case 1 has P_B = P_1 and recovers the key;
case 2 has P_B = P_2 and does not.

The case-2 step-5 values K and Z_B pinned here were computed with the
brute-force oracle.  The second step-4 slot depends on the embedding; with kappa = 2
the key 5 embeds as (11, 5).
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Optional

from . import rabin
from .config import EXAMPLE_CURVE, EXAMPLE_KAPPA, EXAMPLE_X
from .curve import Point
from .encoding import Encoder
from .oracle.table import GroupTable, Pt, enumerate_group

N_A, N_B = 5, 3
R_POINT = (2, 1)
P1, P2 = (7, 6), (7, 17)


@dataclass(frozen=True)
class CaseVector:
    pa: Pt
    pb: Pt
    step1: Pt
    step2: tuple[Pt, Pt, Pt]
    q: Pt
    step4_first: Pt
    mask_term: Pt          # n_A (n_B R), before P_{n_A} is added
    step4_second: Pt       # with the kappa = 2 embedding
    k: Pt
    z: Pt
    outcome: Optional[int]


CASE_1 = CaseVector(
    pa=P1, pb=P1, step1=(11, 18), step2=((1, 10), (11, 5), (14, 19)), q=(7, 17),
    step4_first=(15, 9), mask_term=(1, 13), step4_second=(19, 6),
    k=(7, 17), z=(11, 5), outcome=N_A,
)

CASE_2 = CaseVector(
    pa=P1, pb=P2, step1=(11, 18), step2=((1, 13), (11, 5), (14, 19)), q=(9, 7),
    step4_first=(17, 2), mask_term=(1, 13), step4_second=(19, 6),
    # K and Z_B from the oracle
    k=(2, 22), z=(17, 21), outcome=None,
)

CASES = {1: CASE_1, 2: CASE_2}

# the key point P_{n_A} under the kappa = 2 embedding
KEY_POINT = (11, 5)


def oracle_case(table: GroupTable, pb: Pt, key_point: Pt = KEY_POINT) -> CaseVector:
    """Every intermediate, straight from the formulas with oracle arithmetic."""
    mul, add = table.mul, table.add

    def sub(u, v):
        return add(u, table.neg(v))

    pa = P1
    step1 = mul(N_A, pa)
    step2 = (mul(N_B, pb), add(mul(N_B, step1), R_POINT), mul(N_B, R_POINT))
    q = mul(N_A, sub(step2[1], mul(N_A, step2[0])))
    first = add(mul(N_A, step2[0]), q)
    mask_term = mul(N_A, step2[2])
    second = add(mask_term, key_point)
    k = sub(first, mul(N_B, step1))
    z = sub(second, mul(N_B, k))
    outcome = None
    if z is not None:
        cand = z[0] // EXAMPLE_KAPPA
        if step1 in (mul(cand, P1), mul(cand, P2)):
            outcome = cand
    return CaseVector(pa, pb, step1, step2, q, first, mask_term, second, k, z, outcome)


def core_case(pb: Pt) -> CaseVector:
    """Run the state machines with the example's injected inputs."""
    curve, enc = EXAMPLE_CURVE, Encoder(EXAMPLE_CURVE, EXAMPLE_KAPPA)
    pair = curve.lift_x(EXAMPLE_X)
    sender = rabin.Sender(curve, pair, pair.choice_of(Point(*P1)), N_A, enc)
    receiver = rabin.Receiver(curve, pair, pair.choice_of(Point(*pb)), N_B, enc, Point(*R_POINT))
    m1 = sender.step1()
    m2 = receiver.step2(m1)
    m4 = sender.step3_step4(m2)
    outcome = receiver.step5(m4)
    mask_term = curve.scalar_mul(N_A, m2.nb_r)
    return CaseVector(P1, pb, tuple(m1.na_pa), (tuple(m2.nb_pb), tuple(m2.blinded_r), tuple(m2.nb_r)),
                      tuple(sender.q), tuple(m4.keyed_q), tuple(mask_term), tuple(m4.masked_key),
                      tuple(receiver.k_point), tuple(receiver.z_point), outcome)


def emit() -> dict:
    """Pinned vectors plus live oracle and core recomputations."""
    table = enumerate_group(EXAMPLE_CURVE)
    out = {
        "curve": {"p": EXAMPLE_CURVE.p, "a": EXAMPLE_CURVE.a, "b": EXAMPLE_CURVE.b},
        "x": EXAMPLE_X, "kappa": EXAMPLE_KAPPA, "n_a": N_A, "n_b": N_B, "r": list(R_POINT),
        "key_point": list(KEY_POINT), "cases": {},
    }
    for num, pinned in CASES.items():
        oracle = oracle_case(table, pinned.pb)
        core = core_case(pinned.pb)
        out["cases"][str(num)] = {
            "pinned": _jsonable(asdict(pinned)),
            "oracle_agrees": oracle == pinned,
            "core_agrees": core == pinned,
        }
    return out


def _jsonable(value):
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    return value

"""Oblivious transfer of a secret key over an agreed x-coordinate.

Both parties pick one of the two points P_1, P_2 over the public x.  The
sender A conveys its key n_A; the receiver B ends up with n_A exactly when
the two picks agree, which A cannot tell.

    1. A -> B  n_A P_A
    2. B -> A  {n_B P_B ; n_B (n_A P_A) + R ; n_B R}
    3. A       Q = n_A [n_B (n_A P_A) + R - n_A (n_B P_B)]
    4. A -> B  {n_A (n_B P_B) + Q ; n_A (n_B R) + P_nA}
    5. B       K = n_A (n_B P_B) + Q - n_B (n_A P_A)
               Z = n_A (n_B R) + P_nA - n_B K

B accepts z = decode(Z) only if z P_1 or z P_2 equals the step-1 point.
"""

from __future__ import annotations

from enum import Enum
from typing import Optional

from .curve import AffinePoint, Curve, Point, XPair
from .encoding import Encoder
from .errors import DecodeFailure, DegenerateValue, InvalidPoint, PhaseError
from .messages import RabinStep1, RabinStep2, RabinStep4
from .session import RECV, Role, expect


def scalar_bound(curve: Curve) -> int:
    """Largest admissible secret scalar for ``curve``."""
    return (curve.base_order or curve.p) - 1


def sample_key(rng, curve: Curve, encoder: Encoder | None = None) -> int:
    """Uniform scalar in [2, bound]; encodable under ``encoder`` when given."""
    hi = scalar_bound(curve)
    if encoder is not None:
        hi = min(hi, encoder.max_value)
    if hi < 2:
        raise ValueError(f"no admissible scalars on {curve}")
    while True:
        n = rng.randint(2, hi)
        if encoder is None or encoder.can_encode(n):
            return n


def check_key(curve: Curve, n: int) -> None:
    if not 2 <= n <= scalar_bound(curve):
        raise ValueError(f"secret scalar {n} outside [2, {scalar_bound(curve)}]")


def nonidentity(curve: Curve, pt: AffinePoint, what: str) -> Point:
    pt = curve.check(pt)
    if pt is None:
        raise DegenerateValue(f"{what} is the identity")
    return pt


def verify_key(curve: Curve, xpair: XPair, encoder: Encoder, z_point: AffinePoint,
               target: Point) -> Optional[int]:
    """Decode ``z_point`` and accept it iff z P_1 or z P_2 equals ``target``."""
    try:
        z = encoder.decode(z_point)
    except (DecodeFailure, InvalidPoint):
        return None
    if curve.scalar_mul(z, xpair.p1) == target or curve.scalar_mul(z, xpair.p2) == target:
        return z
    return None


class SenderPhase(Enum):
    INIT = "init"
    SENT_STEP1 = "sent-step1"
    SENT_STEP4 = "sent-step4"


class ReceiverPhase(Enum):
    INIT = "init"
    SENT_STEP2 = "sent-step2"
    DONE = "done"


class Sender:
    """Role A: holds the key n_A being transferred."""

    def __init__(self, curve: Curve, xpair: XPair, pa_choice: int, n_a: int, encoder: Encoder):
        check_key(curve, n_a)
        self.curve = curve
        self.xpair = xpair
        self.pa_choice = pa_choice
        self.pa = xpair.point(pa_choice)
        self.n_a = n_a
        self.encoder = encoder
        self.p_na = encoder.encode(n_a)
        self.phase = SenderPhase.INIT
        self.received: RabinStep2 | None = None
        self.q: AffinePoint = None

    def step1(self) -> RabinStep1:
        if self.phase is not SenderPhase.INIT:
            raise PhaseError(f"step 1 already sent (phase {self.phase.value})")
        na_pa = self.curve.scalar_mul(self.n_a, self.pa)
        if na_pa is None:
            raise DegenerateValue("n_A * P_A is the identity")
        self.phase = SenderPhase.SENT_STEP1
        return RabinStep1(na_pa)

    def step3_step4(self, msg: RabinStep2) -> RabinStep4:
        if self.phase is not SenderPhase.SENT_STEP1:
            raise PhaseError(f"step 2 not expected in phase {self.phase.value}")
        c = self.curve
        nb_pb = nonidentity(c, msg.nb_pb, "n_B P_B")
        blinded = nonidentity(c, msg.blinded_r, "n_B (n_A P_A) + R")
        nb_r = nonidentity(c, msg.nb_r, "n_B R")
        n = self.n_a
        # one formula for both cases; A never learns which case it is in
        na_nb_pb = c.scalar_mul(n, nb_pb)
        self.q = c.scalar_mul(n, c.sub(blinded, na_nb_pb))
        keyed_q = c.add(na_nb_pb, self.q)
        masked_key = c.add(c.scalar_mul(n, nb_r), self.p_na)
        if keyed_q is None or masked_key is None:
            raise DegenerateValue("step-4 slot is the identity")
        self.received = msg
        self.phase = SenderPhase.SENT_STEP4
        return RabinStep4(keyed_q, masked_key)


class Receiver:
    """Role B: obtains n_A with probability one half."""

    def __init__(self, curve: Curve, xpair: XPair, pb_choice: int, n_b: int, encoder: Encoder,
                 r_point: AffinePoint = None):
        check_key(curve, n_b)
        self.curve = curve
        self.xpair = xpair
        self.pb_choice = pb_choice
        self.pb = xpair.point(pb_choice)
        self.n_b = n_b
        self.encoder = encoder
        self.r_point = None if r_point is None else nonidentity(curve, r_point, "R")
        self.phase = ReceiverPhase.INIT
        self.step1_point: Point | None = None
        self.received: RabinStep4 | None = None
        self.k_point: AffinePoint = None
        self.z_point: AffinePoint = None
        self.outcome: Optional[int] = None

    def step2(self, msg: RabinStep1, rng=None) -> RabinStep2:
        if self.phase is not ReceiverPhase.INIT:
            raise PhaseError(f"step 1 not expected in phase {self.phase.value}")
        c = self.curve
        na_pa = nonidentity(c, msg.na_pa, "n_A P_A")
        if self.r_point is None:
            if rng is None:
                raise ValueError("no R injected and no rng to sample one")
            self.r_point = c.random_point(rng)
        r, n = self.r_point, self.n_b
        reply = RabinStep2(c.scalar_mul(n, self.pb), c.add(c.scalar_mul(n, na_pa), r), c.scalar_mul(n, r))
        if None in (reply.nb_pb, reply.blinded_r, reply.nb_r):
            raise DegenerateValue("step-2 slot is the identity")
        self.step1_point = na_pa
        self.phase = ReceiverPhase.SENT_STEP2
        return reply

    def step5(self, msg: RabinStep4) -> Optional[int]:
        """Recover n_A if possible; returns it, or None when not received."""
        if self.phase is not ReceiverPhase.SENT_STEP2:
            raise PhaseError(f"step 4 not expected in phase {self.phase.value}")
        c = self.curve
        keyed_q = nonidentity(c, msg.keyed_q, "n_A (n_B P_B) + Q")
        masked_key = nonidentity(c, msg.masked_key, "n_A (n_B R) + P_nA")
        n = self.n_b
        self.k_point = c.sub(keyed_q, c.scalar_mul(n, self.step1_point))
        self.z_point = c.sub(masked_key, c.scalar_mul(n, self.k_point))
        self.outcome = verify_key(c, self.xpair, self.encoder, self.z_point, self.step1_point)
        self.received = msg
        self.phase = ReceiverPhase.DONE
        return self.outcome


def sender_role(sender: Sender) -> Role:
    yield sender.step1()
    msg = expect((yield RECV), RabinStep2)
    yield sender.step3_step4(msg)
    return sender


def receiver_role(receiver: Receiver, rng=None) -> Role:
    msg = expect((yield RECV), RabinStep1)
    yield receiver.step2(msg, rng)
    msg = expect((yield RECV), RabinStep4)
    receiver.step5(msg)
    return receiver

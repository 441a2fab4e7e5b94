"""Chosen 1-out-of-2 oblivious transfer built on the key-transfer protocol.

A binds secret s_0 (key n_A0) to P_1 and s_1 (key n_A1) to P_2.  B picks
P_B = P_1 to learn s_0 or P_B = P_2 to learn s_1; only the step-4 pair of
the chosen branch unblinds to a key point.

    1. A -> B  {n_A0 P_1 ; n_A1 P_2}
    2. B -> A  {n_B P_B ; n_B (n_A0 P_1) + R ; n_B (n_A1 P_2) + R ; n_B R}
    3. A       H_1 = n_A0 [n_B (n_A0 P_1) + R - n_A0 (n_B P_B)]
               H_2 = n_A1 [n_B (n_A1 P_2) + R - n_A1 (n_B P_B)]
    4. A -> B  {n_A0 (n_B P_B) + H_1 ; n_A0 (n_B R) + P_nA0 ;
                n_A1 (n_B P_B) + H_2 ; n_A1 (n_B R) + P_nA1}
    5. B       K = first - n_B (n_A,c P_c);  Z = second - n_B K
    6. A -> B  {P_s0 + n_A0 G ; P_s1 + n_A1 G}

Step 5 subtracts n_B K; with addition the key point would not come out.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .curve import AffinePoint, Curve, Point, XPair
from .encoding import Encoder
from .errors import DecodeFailure, DegenerateValue, InvalidPoint, PhaseError, VerificationFailed
from .exchange import final_transfer, recover_secret
from .messages import Ot12Secrets, Ot12Step1, Ot12Step2, Ot12Step4
from .rabin import check_key, nonidentity, verify_key
from .session import RECV, Role, expect


class Phase(Enum):
    INIT = "init"
    SENT_STEP1 = "sent-step1"
    SENT_STEP2 = "sent-step2"
    SENT_STEP4 = "sent-step4"
    KEYED = "keyed"
    DONE = "done"


@dataclass
class BranchResult:
    """What B computes from one step-4 pair."""

    k_point: AffinePoint
    z_point: AffinePoint
    key: Optional[int]


class Ot12Sender:
    def __init__(self, curve: Curve, xpair: XPair, keys: tuple[int, int],
                 secrets: tuple[bytes, bytes], encoder: Encoder):
        n0, n1 = keys
        if n0 == n1:
            raise ValueError("the two branch keys must differ")
        for n in keys:
            check_key(curve, n)
        if len(secrets[0]) != len(secrets[1]):
            raise ValueError("both secrets must have the same length")
        curve.require_base()
        self.curve = curve
        self.xpair = xpair
        self.keys = keys
        self.key_points = (encoder.encode(n0), encoder.encode(n1))
        self.secrets = secrets
        self.secret_points = (encoder.encode_bytes(secrets[0]), encoder.encode_bytes(secrets[1]))
        self.encoder = encoder
        self.phase = Phase.INIT
        self.h: tuple[AffinePoint, AffinePoint] = (None, None)

    def step1(self) -> Ot12Step1:
        if self.phase is not Phase.INIT:
            raise PhaseError(f"step 1 already sent (phase {self.phase.value})")
        c, (n0, n1) = self.curve, self.keys
        msg = Ot12Step1(c.scalar_mul(n0, self.xpair.p1), c.scalar_mul(n1, self.xpair.p2))
        if msg.n0_p1 is None or msg.n1_p2 is None:
            raise DegenerateValue("step-1 slot is the identity")
        self.phase = Phase.SENT_STEP1
        return msg

    def step3_step4(self, msg: Ot12Step2) -> Ot12Step4:
        if self.phase is not Phase.SENT_STEP1:
            raise PhaseError(f"step 2 not expected in phase {self.phase.value}")
        c = self.curve
        nb_pb = nonidentity(c, msg.nb_pb, "n_B P_B")
        blinded = (nonidentity(c, msg.blinded_r0, "n_B (n_A0 P_1) + R"),
                   nonidentity(c, msg.blinded_r1, "n_B (n_A1 P_2) + R"))
        nb_r = nonidentity(c, msg.nb_r, "n_B R")
        slots, h = [], []
        for n, bl, key_point in zip(self.keys, blinded, self.key_points):
            n_nb_pb = c.scalar_mul(n, nb_pb)
            h_i = c.scalar_mul(n, c.sub(bl, n_nb_pb))
            h.append(h_i)
            slots += [c.add(n_nb_pb, h_i), c.add(c.scalar_mul(n, nb_r), key_point)]
        if None in slots:
            raise DegenerateValue("step-4 slot is the identity")
        self.h = (h[0], h[1])
        self.phase = Phase.SENT_STEP4
        return Ot12Step4(*slots)

    def deliver_secrets(self) -> Ot12Secrets:
        if self.phase is not Phase.SENT_STEP4:
            raise PhaseError(f"secrets not deliverable in phase {self.phase.value}")
        c = self.curve
        out = [final_transfer(c, sp, n) for sp, n in zip(self.secret_points, self.keys)]
        if None in out:
            raise DegenerateValue("masked secret is the identity")
        self.phase = Phase.DONE
        return Ot12Secrets(*out)


class Ot12Receiver:
    """B with choice bit c: P_B = P_1 when c = 0, P_2 when c = 1."""

    def __init__(self, curve: Curve, xpair: XPair, choice: int, n_b: int, encoder: Encoder,
                 secret_length: int, r_point: AffinePoint = None, diagnostics: bool = False):
        check_key(curve, n_b)
        self.curve = curve
        self.xpair = xpair
        self.choice = choice
        self.pb = xpair.point(choice)
        self.n_b = n_b
        self.encoder = encoder
        self.secret_length = secret_length
        self.r_point = None if r_point is None else nonidentity(curve, r_point, "R")
        # diagnostics also evaluates the other branch (tests only)
        self.diagnostics = diagnostics
        self.phase = Phase.INIT
        self.step1_points: tuple[Point, Point] | None = None
        self.branches: dict[int, BranchResult] = {}
        self.key: Optional[int] = None
        self.secret: Optional[bytes] = None

    def step2(self, msg: Ot12Step1, rng=None) -> Ot12Step2:
        if self.phase is not Phase.INIT:
            raise PhaseError(f"step 1 not expected in phase {self.phase.value}")
        c = self.curve
        m0 = nonidentity(c, msg.n0_p1, "n_A0 P_1")
        m1 = nonidentity(c, msg.n1_p2, "n_A1 P_2")
        if self.r_point is None:
            if rng is None:
                raise ValueError("no R injected and no rng to sample one")
            self.r_point = c.random_point(rng)
        r, n = self.r_point, self.n_b
        # the same R blinds both branches
        reply = Ot12Step2(c.scalar_mul(n, self.pb), c.add(c.scalar_mul(n, m0), r),
                          c.add(c.scalar_mul(n, m1), r), c.scalar_mul(n, r))
        if None in (reply.nb_pb, reply.blinded_r0, reply.blinded_r1, reply.nb_r):
            raise DegenerateValue("step-2 slot is the identity")
        self.step1_points = (m0, m1)
        self.phase = Phase.SENT_STEP2
        return reply

    def evaluate_branch(self, msg: Ot12Step4, branch: int) -> BranchResult:
        c = self.curve
        keyed_h, masked_key = branch_slots = msg.branch(branch)
        for pt in branch_slots:
            nonidentity(c, pt, "step-4 slot")
        k_point = c.sub(keyed_h, c.scalar_mul(self.n_b, self.step1_points[branch]))
        z_point = c.sub(masked_key, c.scalar_mul(self.n_b, k_point))
        key = verify_key(c, self.xpair, self.encoder, z_point, self.step1_points[branch])
        return BranchResult(k_point, z_point, key)

    def step5(self, msg: Ot12Step4) -> int:
        if self.phase is not Phase.SENT_STEP2:
            raise PhaseError(f"step 4 not expected in phase {self.phase.value}")
        chosen = self.evaluate_branch(msg, self.choice)
        self.branches[self.choice] = chosen
        if self.diagnostics:
            self.branches[1 - self.choice] = self.evaluate_branch(msg, 1 - self.choice)
        if chosen.key is None:
            raise VerificationFailed(f"branch {self.choice} did not yield a verifiable key")
        self.key = chosen.key
        self.phase = Phase.KEYED
        return chosen.key

    def receive_secrets(self, msg: Ot12Secrets) -> bytes:
        if self.phase is not Phase.KEYED:
            raise PhaseError(f"secrets not expected in phase {self.phase.value}")
        masked = msg.masked_s1 if self.choice else msg.masked_s0
        point = recover_secret(self.curve, self.curve.check(masked), self.key)
        try:
            self.secret = self.encoder.decode_bytes(point, self.secret_length)
        except (DecodeFailure, InvalidPoint) as exc:
            raise VerificationFailed(f"chosen secret does not decode: {exc}") from None
        self.phase = Phase.DONE
        return self.secret


def sender_role(sender: Ot12Sender) -> Role:
    yield sender.step1()
    msg = expect((yield RECV), Ot12Step2)
    yield sender.step3_step4(msg)
    yield sender.deliver_secrets()
    return sender


def receiver_role(receiver: Ot12Receiver, rng=None) -> Role:
    msg = expect((yield RECV), Ot12Step1)
    yield receiver.step2(msg, rng)
    receiver.step5(expect((yield RECV), Ot12Step4))
    receiver.receive_secrets(expect((yield RECV), Ot12Secrets))
    return receiver

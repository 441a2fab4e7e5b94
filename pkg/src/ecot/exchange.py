"""Mutual secret exchange on top of two oblivious key transfers.

After keys have crossed in both directions, each party announces
``k XOR S`` where the knowledge mask k is M if it learned the peer's key
and the complement of M otherwise.  A then sends ``P_SA + n_A G`` and B
answers with ``P_SB + n_B G``.  A B that withholds its last message must
have known n_A, so its mask was M and A unmasks ``S_B = (M XOR S_B) XOR M``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import rabin
from .config import SessionConfig
from .curve import AffinePoint, Curve
from .errors import AbortedByPeer, DegenerateValue, LengthMismatch
from .messages import ABORT_WITHHOLD, Abort, FinalTransfer, MaskedSecret
from .session import RECV, Role, Swap, expect, run_pair, with_restarts


def xor_bytes(x: bytes, y: bytes) -> bytes:
    if len(x) != len(y):
        raise LengthMismatch(f"cannot combine {len(x)} and {len(y)} bytes")
    return bytes(i ^ j for i, j in zip(x, y))


def complement(data: bytes) -> bytes:
    return bytes(b ^ 0xFF for b in data)


@dataclass(frozen=True)
class KnowledgeMask:
    m_const: bytes
    knows: bool

    @property
    def value(self) -> bytes:
        return self.m_const if self.knows else complement(self.m_const)


def mask_secret(mask: KnowledgeMask, secret: bytes) -> bytes:
    return xor_bytes(mask.value, secret)


def cheat_recover(masked: bytes, m_const: bytes) -> bytes:
    """``masked XOR M``: the peer's secret, provided the peer's mask was M."""
    return xor_bytes(masked, m_const)


def final_transfer(curve: Curve, secret_point: AffinePoint, n: int) -> AffinePoint:
    """secret_point + n * G."""
    g = curve.require_base()
    return curve.add(secret_point, curve.scalar_mul(n, g))


def recover_secret(curve: Curve, transferred: AffinePoint, n: int) -> AffinePoint:
    """transferred - n * G."""
    g = curve.require_base()
    return curve.sub(transferred, curve.scalar_mul(n, g))


@dataclass
class ExchangeParty:
    """One side's private inputs.  Unset randomness is drawn per attempt.

    ``cheat`` makes the party withhold its final transfer whenever it has
    already learned the peer's key (only meaningful for B, who moves last).
    """

    secret: bytes
    key: Optional[int] = None
    cheat: bool = False
    sender_choice: Optional[int] = None
    receiver_choice: Optional[int] = None
    r_point: AffinePoint = None


@dataclass
class ExchangeOutcome:
    role: str
    peer_key: Optional[int]
    other_secret: Optional[bytes]
    via_cheat_recovery: bool = False

    @property
    def knew_key(self) -> bool:
        return self.peer_key is not None

    @property
    def got_other(self) -> bool:
        return self.other_secret is not None


def exchange_role(cfg: SessionConfig, role: str, party: ExchangeParty, rng) -> Role:
    """Generator for one side of the full exchange (role "A" or "B")."""
    curve, xpair, enc = cfg.curve, cfg.xpair, cfg.encoder
    if len(party.secret) != cfg.secret_length:
        raise LengthMismatch(f"secret must be {cfg.secret_length} bytes")
    secret_point = enc.encode_bytes(party.secret)
    key = party.key
    # settle a key whose final transfer is not the identity before talking;
    # a restart later on could not fix it without a fresh key
    while key is None or final_transfer(curve, secret_point, key) is None:
        if party.key is not None:
            raise DegenerateValue("secret point + key * G is the identity for the given key")
        key = rabin.sample_key(rng, curve, enc)

    def pick(choice):
        return choice if choice is not None else rng.getrandbits(1)

    def attempt(_):
        sender = rabin.Sender(curve, xpair, pick(party.sender_choice), key, enc)
        receiver = rabin.Receiver(curve, xpair, pick(party.receiver_choice), key, enc,
                                  party.r_point)
        if role == "A":
            yield from rabin.sender_role(sender)
            yield from rabin.receiver_role(receiver, rng)
        else:
            yield from rabin.receiver_role(receiver, rng)
            yield from rabin.sender_role(sender)
        peer_key = receiver.outcome
        mask = KnowledgeMask(cfg.m_const, peer_key is not None)
        reply = expect((yield Swap(MaskedSecret(mask_secret(mask, party.secret)))), MaskedSecret)
        peer_masked = reply.data
        if len(peer_masked) != cfg.secret_length:
            raise LengthMismatch("peer's masked secret has the wrong length")
        mine = FinalTransfer(final_transfer(curve, secret_point, key))

        def unmask(msg: FinalTransfer) -> Optional[bytes]:
            if peer_key is None:
                return None
            return enc.decode_bytes(recover_secret(curve, msg.point, peer_key), cfg.secret_length)

        if role == "A":
            yield mine
            try:
                theirs = expect((yield RECV), FinalTransfer)
            except AbortedByPeer as exc:
                if exc.reason != ABORT_WITHHOLD:
                    raise
                # B only withholds once it holds n_A, so k_B = M
                return ExchangeOutcome(role, peer_key, cheat_recover(peer_masked, cfg.m_const),
                                       via_cheat_recovery=True)
            return ExchangeOutcome(role, peer_key, unmask(theirs))
        theirs = expect((yield RECV), FinalTransfer)
        got = unmask(theirs)
        yield Abort(ABORT_WITHHOLD) if party.cheat and peer_key is not None else mine
        return ExchangeOutcome(role, peer_key, got)

    return (yield from with_restarts(attempt))


def run_exchange(cfg: SessionConfig, party_a: ExchangeParty, party_b: ExchangeParty,
                 rng: random.Random) -> tuple[ExchangeOutcome, ExchangeOutcome]:
    """Run both sides in-process; each side gets its own stream split off ``rng``."""
    rng_a = random.Random(rng.getrandbits(64))
    rng_b = random.Random(rng.getrandbits(64))
    return run_pair(exchange_role(cfg, "A", party_a, rng_a),
                    exchange_role(cfg, "B", party_b, rng_b))

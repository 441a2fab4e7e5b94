"""Scenario roles shared by the local and socket runners.

Each role starts with a handshake swap, then runs its scenario with
restarts on degenerate values.  Private inputs left as None are sampled
from the role's own rng.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .. import ot12, rabin
from ..config import SessionConfig
from ..curve import AffinePoint
from ..errors import HandshakeMismatch
from ..exchange import ExchangeParty, exchange_role, final_transfer
from ..session import Role, Swap, expect, with_restarts
from .wire import SCENARIOS, Handshake

# "exchange-with-cheat" is the exchange run with a cheating B; the peer
# cannot know, so both announce plain "exchange" in the handshake
SCENARIO_NAMES = ("rabin", "exchange", "exchange-with-cheat", "ot12")


@dataclass
class Inputs:
    """Private inputs for both roles; a socket process reads only its own."""

    # role A
    n_a: Optional[int] = None
    pa_choice: Optional[int] = None
    secret_a: Optional[bytes] = None
    keys: Optional[tuple[int, int]] = None
    secrets: Optional[tuple[bytes, bytes]] = None
    # role B
    n_b: Optional[int] = None
    pb_choice: Optional[int] = None
    r_point: AffinePoint = None
    secret_b: Optional[bytes] = None
    choice: Optional[int] = None
    cheat: bool = False
    diagnostics: bool = False


def wire_scenario(scenario: str) -> str:
    if scenario not in SCENARIO_NAMES:
        raise ValueError(f"unknown scenario {scenario!r}; expected one of {SCENARIO_NAMES}")
    return "exchange" if scenario == "exchange-with-cheat" else scenario


def role_rng(seed, role: str) -> random.Random:
    """Per-role randomness: reproducible from ``seed``, system entropy if None."""
    if seed is None:
        return random.SystemRandom()
    return random.Random(f"{seed}/{role}")


def handshake_then(cfg: SessionConfig, scenario: str, inner: Role) -> Role:
    mine = Handshake.from_config(cfg, wire_scenario(scenario))
    theirs = expect((yield Swap(mine)), Handshake)
    if theirs != mine:
        raise HandshakeMismatch(f"peer announced {theirs.render()}, expected {mine.render()}")
    return (yield from inner)


def _default_secret(rng, cfg: SessionConfig) -> bytes:
    hi = min(cfg.encoder.max_value, 256 ** cfg.secret_length - 1)
    return rng.randint(0, hi).to_bytes(cfg.secret_length, "big")


def _rabin_a(cfg: SessionConfig, inp: Inputs, rng) -> Role:
    def attempt(_):
        n = inp.n_a if inp.n_a is not None else rabin.sample_key(rng, cfg.curve, cfg.encoder)
        choice = inp.pa_choice if inp.pa_choice is not None else rng.getrandbits(1)
        return (yield from rabin.sender_role(rabin.Sender(cfg.curve, cfg.xpair, choice, n, cfg.encoder)))
    return (yield from with_restarts(attempt))


def _rabin_b(cfg: SessionConfig, inp: Inputs, rng) -> Role:
    def attempt(_):
        n = inp.n_b if inp.n_b is not None else rabin.sample_key(rng, cfg.curve)
        choice = inp.pb_choice if inp.pb_choice is not None else rng.getrandbits(1)
        receiver = rabin.Receiver(cfg.curve, cfg.xpair, choice, n, cfg.encoder, inp.r_point)
        return (yield from rabin.receiver_role(receiver, rng))
    return (yield from with_restarts(attempt))


def _masks_to_identity(cfg: SessionConfig, keys, secrets) -> bool:
    enc = cfg.encoder
    return any(final_transfer(cfg.curve, enc.encode_bytes(s), n) is None
               for s, n in zip(secrets, keys))


def _ot12_a(cfg: SessionConfig, inp: Inputs, rng) -> Role:
    secrets = inp.secrets or (_default_secret(rng, cfg), _default_secret(rng, cfg))

    def attempt(_):
        keys = inp.keys
        while keys is None or keys[0] == keys[1] or _masks_to_identity(cfg, keys, secrets):
            if inp.keys is not None:
                break       # injected keys are used as given
            keys = (rabin.sample_key(rng, cfg.curve, cfg.encoder),
                    rabin.sample_key(rng, cfg.curve, cfg.encoder))
        sender = ot12.Ot12Sender(cfg.curve, cfg.xpair, keys, secrets, cfg.encoder)
        return (yield from ot12.sender_role(sender))
    return (yield from with_restarts(attempt))


def _ot12_b(cfg: SessionConfig, inp: Inputs, rng) -> Role:
    choice = inp.choice if inp.choice is not None else rng.getrandbits(1)

    def attempt(_):
        n = inp.n_b if inp.n_b is not None else rabin.sample_key(rng, cfg.curve)
        receiver = ot12.Ot12Receiver(cfg.curve, cfg.xpair, choice, n, cfg.encoder,
                                     cfg.secret_length, inp.r_point, inp.diagnostics)
        return (yield from ot12.receiver_role(receiver, rng))
    return (yield from with_restarts(attempt))


def _exchange(cfg: SessionConfig, inp: Inputs, rng, role: str, cheat: bool) -> Role:
    if role == "A":
        secret = inp.secret_a if inp.secret_a is not None else _default_secret(rng, cfg)
        party = ExchangeParty(secret, key=inp.n_a, sender_choice=inp.pa_choice)
    else:
        secret = inp.secret_b if inp.secret_b is not None else _default_secret(rng, cfg)
        party = ExchangeParty(secret, key=inp.n_b, cheat=cheat, receiver_choice=inp.pb_choice,
                              r_point=inp.r_point)
    return exchange_role(cfg, role, party, rng)


def make_role(cfg: SessionConfig, scenario: str, role: str, inputs: Inputs, rng) -> Role:
    """Full role generator (handshake included) for ``scenario``."""
    wire_scenario(scenario)
    if role not in ("A", "B"):
        raise ValueError(f"role must be A or B, got {role!r}")
    if scenario == "rabin":
        inner = (_rabin_a if role == "A" else _rabin_b)(cfg, inputs, rng)
    elif scenario == "ot12":
        inner = (_ot12_a if role == "A" else _ot12_b)(cfg, inputs, rng)
    else:
        cheat = scenario == "exchange-with-cheat" or inputs.cheat
        inner = _exchange(cfg, inputs, rng, role, cheat)
    return handshake_then(cfg, scenario, inner)


def summarize(outcome) -> dict:
    """JSON-friendly view of a role's final state."""
    if isinstance(outcome, rabin.Sender):
        return {"role": "A", "n_a": outcome.n_a, "pa_choice": outcome.pa_choice}
    if isinstance(outcome, rabin.Receiver):
        return {"role": "B", "pb_choice": outcome.pb_choice, "recovered_key": outcome.outcome}
    if isinstance(outcome, ot12.Ot12Sender):
        return {"role": "A", "keys": list(outcome.keys),
                "secrets": [s.hex() for s in outcome.secrets]}
    if isinstance(outcome, ot12.Ot12Receiver):
        return {"role": "B", "choice": outcome.choice, "key": outcome.key,
                "secret": outcome.secret.hex() if outcome.secret is not None else None}
    return {"role": outcome.role, "peer_key": outcome.peer_key,
            "other_secret": outcome.other_secret.hex() if outcome.other_secret is not None else None,
            "via_cheat_recovery": outcome.via_cheat_recovery}


__all__ = ["Inputs", "SCENARIO_NAMES", "SCENARIOS", "make_role", "role_rng", "summarize"]

import random

import pytest

from ecot.config import SessionConfig, default_config
from ecot.curve import Curve
from ecot.errors import LengthMismatch, MissingBasePoint
from ecot.exchange import (ExchangeParty, KnowledgeMask, cheat_recover, complement, final_transfer,
                           mask_secret, recover_secret, run_exchange, xor_bytes)

M = bytes.fromhex("a5a5")


def test_mask_identities():
    s = bytes.fromhex("0f0f")
    knows, blind = KnowledgeMask(M, True), KnowledgeMask(M, False)
    assert mask_secret(knows, s) == bytes.fromhex("aaaa")
    assert mask_secret(knows, mask_secret(knows, s)) == s
    assert xor_bytes(mask_secret(knows, s), mask_secret(blind, s)) == b"\xff\xff"
    assert blind.value == complement(M) == bytes.fromhex("5a5a")


def test_cheat_recover():
    s = bytes.fromhex("1234")
    assert cheat_recover(mask_secret(KnowledgeMask(M, True), s), M) == s
    assert cheat_recover(mask_secret(KnowledgeMask(M, False), s), M) == complement(s)
    assert cheat_recover(b"", b"") == b""
    with pytest.raises(LengthMismatch):
        cheat_recover(b"\x00", M)
    with pytest.raises(LengthMismatch):
        mask_secret(KnowledgeMask(M, True), b"\x00")


def test_final_transfer(curve23):
    secret_point = (7, 6)           # value 3 under kappa = 2
    sent = final_transfer(curve23, secret_point, 5)
    assert sent == (9, 16)
    assert recover_secret(curve23, sent, 5) == secret_point
    assert final_transfer(curve23, secret_point, 0) == secret_point
    assert recover_secret(curve23, secret_point, 0) == secret_point
    with pytest.raises(MissingBasePoint):
        final_transfer(Curve(23, 9, 21), secret_point, 5)
    with pytest.raises(MissingBasePoint):
        recover_secret(Curve(23, 9, 21), secret_point, 5)


def _parties(rng, cfg, cheat=False, **choices):
    sa = rng.randbytes(cfg.secret_length)
    sb = rng.randbytes(cfg.secret_length)
    a = ExchangeParty(sa, sender_choice=choices.get("a_send"), receiver_choice=choices.get("a_recv"))
    b = ExchangeParty(sb, cheat=cheat, sender_choice=choices.get("b_send"),
                      receiver_choice=choices.get("b_recv"))
    return a, b


@pytest.mark.parametrize("a_send,b_recv,b_send,a_recv", [
    (0, 0, 1, 1), (0, 1, 0, 0), (1, 1, 0, 1), (1, 0, 1, 0)])
def test_forced_outcomes(a_send, b_recv, b_send, a_recv):
    cfg = default_config()
    rng = random.Random(a_send * 8 + b_recv * 4 + b_send * 2 + a_recv)
    a, b = _parties(rng, cfg, a_send=a_send, b_recv=b_recv, b_send=b_send, a_recv=a_recv)
    out_a, out_b = run_exchange(cfg, a, b, rng)
    assert out_b.knew_key == (a_send == b_recv)
    assert out_a.knew_key == (b_send == a_recv)
    assert out_a.other_secret == (b.secret if out_a.knew_key else None)
    assert out_b.other_secret == (a.secret if out_b.knew_key else None)


def test_withholding_b_is_caught():
    cfg = default_config()
    rng = random.Random(11)
    a, b = _parties(rng, cfg, cheat=True, a_send=0, b_recv=0, b_send=0, a_recv=1)
    out_a, out_b = run_exchange(cfg, a, b, rng)
    assert out_b.other_secret == a.secret
    assert not out_a.knew_key
    assert out_a.via_cheat_recovery and out_a.other_secret == b.secret


def test_cheater_gains_nothing_when_blind():
    cfg = default_config()
    rng = random.Random(12)
    a, b = _parties(rng, cfg, cheat=True, a_send=0, b_recv=1, b_send=0, a_recv=0)
    out_a, out_b = run_exchange(cfg, a, b, rng)
    # B never learned n_A, so it has no reason to withhold and plays honestly
    assert not out_b.knew_key and out_b.other_secret is None
    assert out_a.other_secret == b.secret and not out_a.via_cheat_recovery


def test_end_to_end_consistency():
    cfg = default_config()
    rng = random.Random(5)
    for _ in range(150):
        a, b = _parties(rng, cfg)
        out_a, out_b = run_exchange(cfg, a, b, rng)
        assert out_a.got_other == out_a.knew_key
        assert out_b.got_other == out_b.knew_key
        if out_a.got_other:
            assert out_a.other_secret == b.secret
        if out_b.got_other:
            assert out_b.other_secret == a.secret


def test_example_curve_exchange(cfg23):
    rng = random.Random(2)
    for _ in range(100):
        a = ExchangeParty(bytes([rng.randint(0, 10)]))
        b = ExchangeParty(bytes([rng.randint(0, 10)]))
        out_a, out_b = run_exchange(cfg23, a, b, rng)
        assert out_a.other_secret in (None, b.secret)
        assert out_b.other_secret in (None, a.secret)


def test_secret_length_checked():
    cfg = default_config()
    rng = random.Random(0)
    with pytest.raises(LengthMismatch):
        run_exchange(cfg, ExchangeParty(b"\x01"), ExchangeParty(b"\x01\x02"), rng)


def test_session_config_m():
    cfg = SessionConfig(default_config().curve, 5, secret_length=3)
    assert cfg.m_const == b"\xa5\xa5\xa5"
    with pytest.raises(ValueError):
        SessionConfig(default_config().curve, 5, secret_length=2, m_const=b"\x01")

import random

import pytest

from ecot import ot12
from ecot.config import EXAMPLE_KAPPA, default_config
from ecot.curve import Point
from ecot.encoding import Encoder
from ecot.errors import PhaseError, VerificationFailed
from ecot.exchange import final_transfer, recover_secret
from ecot.messages import Ot12Secrets, Ot12Step1, Ot12Step2, Ot12Step4
from ecot.session import run_pair

# n_A0 = 5, n_A1 = 7, n_B = 3, R = (2,1) on E_23(9,21), x = 7, kappa = 2;
# every point below comes from the brute-force group table
STEP1 = Ot12Step1((11, 18), (20, 17))
STEP2_C0 = Ot12Step2((1, 10), (11, 5), (19, 6), (14, 19))
STEP4_C0 = Ot12Step4((15, 9), (19, 6), (9, 16), (1, 10))


@pytest.fixture
def parts(curve23):
    return curve23, curve23.lift_x(7), Encoder(curve23, EXAMPLE_KAPPA)


def pair_up(curve, xpair, enc, choice, keys=(5, 7), n_b=3, r=Point(2, 1),
            secrets=(b"\x03", b"\x08"), diagnostics=False):
    sender = ot12.Ot12Sender(curve, xpair, keys, secrets, enc)
    receiver = ot12.Ot12Receiver(curve, xpair, choice, n_b, enc, 1, r, diagnostics)
    return sender, receiver


def test_pinned_vector(parts):
    curve = parts[0]
    s, r = pair_up(*parts, 0)
    m1 = s.step1()
    assert m1 == STEP1
    m2 = r.step2(m1)
    assert m2 == STEP2_C0
    m4 = s.step3_step4(m2)
    assert m4 == STEP4_C0
    assert s.key_points == ((11, 5), (14, 4))
    # the chosen branch H equals n_A0 R; the other does not equal n_A1 R
    assert s.h[0] == curve.scalar_mul(5, Point(2, 1)) == (7, 17)
    assert s.h[1] == (11, 5) and curve.scalar_mul(7, Point(2, 1)) == (19, 6)
    assert r.step5(m4) == 5


def test_choice_one_learns_second_key(parts):
    s, r = pair_up(*parts, 1)
    m4 = s.step3_step4(r.step2(s.step1()))
    assert r.step5(m4) == 7
    assert r.receive_secrets(s.deliver_secrets()) == b"\x08"


@pytest.mark.parametrize("choice", [0, 1])
def test_role_generators(parts, choice):
    s, r = pair_up(*parts, choice)
    out_a, out_b = run_pair(ot12.sender_role(s), ot12.receiver_role(r))
    assert out_b.secret == (b"\x03", b"\x08")[choice]
    assert out_b.key == (5, 7)[choice]
    assert out_a.phase is ot12.Phase.DONE


def test_tampered_step4_fails_verification(parts):
    curve = parts[0]
    s, r = pair_up(*parts, 0)
    m4 = s.step3_step4(r.step2(s.step1()))
    bad = Ot12Step4(m4.keyed_h0, curve.add(m4.masked_key0, Point(1, 10)), m4.keyed_h1, m4.masked_key1)
    with pytest.raises(VerificationFailed):
        r.step5(bad)


def test_phase_order(parts):
    s, r = pair_up(*parts, 0)
    with pytest.raises(PhaseError):
        s.deliver_secrets()
    with pytest.raises(PhaseError):
        r.step5(STEP4_C0)
    s.step1()
    with pytest.raises(PhaseError):
        s.step1()


def test_keys_must_differ(parts):
    with pytest.raises(ValueError):
        pair_up(*parts, 0, keys=(5, 5))


def test_step2_slots_do_not_depend_on_choice_except_first(parts):
    s0, r0 = pair_up(*parts, 0)
    s1, r1 = pair_up(*parts, 1)
    a, b = r0.step2(s0.step1()), r1.step2(s1.step1())
    assert (a.blinded_r0, a.blinded_r1, a.nb_r) == (b.blinded_r0, b.blinded_r1, b.nb_r)
    assert a.nb_pb == parts[0].negate(b.nb_pb)


def test_diagnostics_evaluates_other_branch(parts):
    s, r = pair_up(*parts, 0, diagnostics=True)
    r.step5(s.step3_step4(r.step2(s.step1())))
    assert set(r.branches) == {0, 1}
    assert r.branches[0].key == 5


def test_other_secret_stays_hidden_on_default_curve():
    cfg = default_config()
    curve, enc = cfg.curve, cfg.encoder
    rng = random.Random(11)
    for _ in range(50):
        keys = (rng.randrange(1, enc.max_value), rng.randrange(1, enc.max_value))
        if keys[0] == keys[1]:
            continue
        secrets = (rng.randbytes(2), rng.randbytes(2))
        choice = rng.getrandbits(1)
        s = ot12.Ot12Sender(curve, cfg.xpair, keys, secrets, enc)
        r = ot12.Ot12Receiver(curve, cfg.xpair, choice, rng.randrange(1, curve.base_order), enc, 2,
                              None, diagnostics=True)
        _, out_b = run_pair(ot12.sender_role(s), ot12.receiver_role(r, rng))
        assert out_b.secret == secrets[choice]
        assert r.branches[1 - choice].key is None
        # the learned key opens the chosen slot but not the other one
        masked = [final_transfer(curve, sp, n) for sp, n in zip(s.secret_points, keys)]
        assert recover_secret(curve, masked[choice], out_b.key) == s.secret_points[choice]
        assert recover_secret(curve, masked[1 - choice], out_b.key) != s.secret_points[1 - choice]


def test_secrets_message_fields(parts):
    s, r = pair_up(*parts, 0)
    r.step5(s.step3_step4(r.step2(s.step1())))
    msg = s.deliver_secrets()
    assert isinstance(msg, Ot12Secrets)
    assert msg.masked_s0 == parts[0].add(s.secret_points[0], parts[0].scalar_mul(5, Point(1, 10)))

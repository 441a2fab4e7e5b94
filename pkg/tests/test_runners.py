import json
import queue
import socket
import subprocess
import sys
import threading

import pytest

from ecot.config import EXAMPLE_CURVE, SessionConfig, default_config, example_config
from ecot.errors import ConnectionLost, HandshakeMismatch, Timeout
from ecot.messages import RabinStep1, RabinStep2, RabinStep4
from ecot.transport.local import Transcript, open_transcript, run_local
from ecot.transport.net import FrameChannel, run_session, run_socket
from ecot.transport.roles import Inputs, summarize
from ecot.transport.wire import Handshake
from ecot import vectors


def socket_pair(cfg_a, cfg_b, scenario, seed, inputs=None, timeout=5):
    ready, res = queue.Queue(), {}
    ta, tb = Transcript(), Transcript()

    def serve():
        try:
            res["A"] = run_socket(cfg_a, scenario, "A", "127.0.0.1:0", listen=True, seed=seed,
                                  inputs=inputs, transcript=ta, on_listen=ready.put, timeout=timeout)
        except Exception as exc:  # handed back to the test
            res["A"] = exc

    th = threading.Thread(target=serve)
    th.start()
    host, port = ready.get(timeout=timeout)
    try:
        res["B"] = run_socket(cfg_b, scenario, "B", f"{host}:{port}", listen=False, seed=seed,
                              inputs=inputs, transcript=tb, timeout=timeout)
    except Exception as exc:
        res["B"] = exc
    th.join()
    return ta, tb, res


def case_one_inputs():
    return Inputs(n_a=5, pa_choice=0, n_b=3, pb_choice=0, r_point=vectors.R_POINT)


def test_case_one_transcript():
    t, (a, b) = run_local(example_config(), "rabin", inputs=case_one_inputs())
    msgs = t.messages()
    assert isinstance(msgs[0], Handshake) and msgs[0] == msgs[1]
    c = vectors.CASE_1
    assert msgs[2:] == [RabinStep1(c.step1), RabinStep2(*c.step2), RabinStep4(c.step4_first, c.step4_second)]
    assert [r.direction for r in t.records] == ["A->B", "B->A", "A->B", "B->A", "A->B"]
    assert b.outcome == vectors.N_A


@pytest.mark.parametrize("scenario", ["rabin", "exchange", "exchange-with-cheat", "ot12"])
def test_same_seed_same_transcript(scenario):
    cfg = default_config()
    first, outs1 = run_local(cfg, scenario, seed=7)
    second, outs2 = run_local(cfg, scenario, seed=7)
    assert first.dumps() == second.dumps()
    assert [summarize(o) for o in outs1] == [summarize(o) for o in outs2]
    other, _ = run_local(cfg, scenario, seed=8)
    assert other.dumps() != first.dumps()


def test_cheating_b_is_recovered_from():
    cfg = default_config()
    paths = set()
    for seed in range(20):
        inputs = Inputs(secret_a=b"\x12\x34", secret_b=b"\xab\xcd")
        t, (a, b) = run_local(cfg, "exchange-with-cheat", seed=seed, inputs=inputs)
        # B withholds exactly when it learned n_A; A then falls back on k_B = M
        assert a.via_cheat_recovery == b.knew_key
        if b.knew_key:
            assert a.other_secret == b"\xab\xcd" and b.other_secret == b"\x12\x34"
        else:
            assert a.other_secret == (b"\xab\xcd" if a.knew_key else None)
            assert b.other_secret is None
        paths.add(a.via_cheat_recovery)
    assert paths == {True, False}


@pytest.mark.parametrize("scenario", ["rabin", "exchange", "exchange-with-cheat", "ot12"])
def test_socket_matches_local(scenario):
    cfg = default_config()
    for seed in range(3):
        ta, tb, res = socket_pair(cfg, cfg, scenario, seed)
        tl, (a, b) = run_local(cfg, scenario, seed=seed)
        assert ta.dumps() == tb.dumps() == tl.dumps()
        assert summarize(res["A"]) == summarize(a)
        assert summarize(res["B"]) == summarize(b)


def test_parameter_mismatch_fails_both_sides():
    other = SessionConfig(EXAMPLE_CURVE, 7, kappa=3, secret_length=1)
    _, _, res = socket_pair(example_config(), other, "rabin", 1)
    assert isinstance(res["A"], HandshakeMismatch)
    assert isinstance(res["B"], HandshakeMismatch)


def test_scenario_mismatch_fails():
    cfg = example_config()
    a, b = socket.socketpair()
    with a, b:
        FrameChannel(b, cfg).send(Handshake.from_config(cfg, "ot12"))
        with pytest.raises(HandshakeMismatch):
            run_session(a, cfg, "rabin", "A", timeout=2)


def test_disconnect_mid_session_flushes_transcript(tmp_path):
    cfg = example_config()
    path = tmp_path / "t.jsonl"
    a, b = socket.socketpair()
    with a:
        peer = FrameChannel(b, cfg)
        peer.send(Handshake.from_config(cfg, "rabin"))
        peer_thread = threading.Thread(target=lambda: (peer.recv(), peer.recv(), b.close()))
        peer_thread.start()
        with pytest.raises(ConnectionLost) as info:
            run_session(a, cfg, "rabin", "A", seed=0, timeout=5, transcript=open_transcript(path))
        peer_thread.join()
    lines = [json.loads(line) for line in path.read_text().splitlines()]
    assert [r["tag"] for r in lines] == ["handshake", "handshake", "rabin.step1", "error"]
    assert "ConnectionLost" in lines[-1]["text"]
    assert len(info.value.transcript) == 4


def test_silent_peer_times_out():
    cfg = example_config()
    a, b = socket.socketpair()
    with a, b:
        FrameChannel(b, cfg).send(Handshake.from_config(cfg, "rabin"))
        with pytest.raises(Timeout):
            run_session(a, cfg, "rabin", "B", seed=0, timeout=0.3)


def test_cli_processes_run_ot12():
    serve = subprocess.Popen(
        [sys.executable, "-m", "ecot.cli", "serve", "--role", "A", "--listen", "127.0.0.1:0",
         "--scenario", "ot12", "--secrets", "aa01,bb02", "--timeout", "20"],
        stdout=subprocess.PIPE, stderr=subprocess.PIPE, text=True)
    try:
        line = serve.stderr.readline()
        assert line.startswith("listening on ")
        endpoint = line.split()[-1]
        done = subprocess.run(
            [sys.executable, "-m", "ecot.cli", "connect", "--role", "B", "--peer", endpoint,
             "--scenario", "ot12", "--choice", "1", "--timeout", "20"],
            capture_output=True, text=True, timeout=60)
        out_a, _ = serve.communicate(timeout=30)
    finally:
        serve.kill()
    assert done.returncode == 0, done.stderr
    got = json.loads(done.stdout)
    assert got["choice"] == 1 and got["secret"] == "bb02"
    assert "aa01" not in done.stdout
    assert json.loads(out_a)["secrets"] == ["aa01", "bb02"]

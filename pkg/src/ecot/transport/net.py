"""Socket runner: one role per process over a TCP byte stream.

The role generator is driven exactly as in the local runner.  A swap
sends first and then reads, and both sides record its two frames with A's
first, so each side's transcript matches the local one for the same seed.
"""

from __future__ import annotations

import socket
import time
from typing import Any, Callable, Optional

from ..config import SessionConfig
from ..errors import ConnectionLost, EcotError, FrameError, ProtocolError, Timeout
from ..messages import ABORT_ERROR, Abort, Message
from ..session import RECV, Role, Swap, peer_of
from .local import Transcript
from .roles import Inputs, make_role, role_rng
from .wire import decode_frame, encode_frame, frame_length

DEFAULT_TIMEOUT = 30.0
MAX_FRAME = 1 << 16


def parse_endpoint(text: str) -> tuple[str, int]:
    host, sep, port = text.rpartition(":")
    if not sep or not port.isdigit():
        raise ValueError(f"endpoint must be host:port, got {text!r}")
    return host or "127.0.0.1", int(port)


class FrameChannel:
    """Whole frames over a connected socket."""

    def __init__(self, sock: socket.socket, cfg: SessionConfig, timeout: float = DEFAULT_TIMEOUT):
        self.sock = sock
        self.curve = cfg.curve
        sock.settimeout(timeout)

    def _read_exact(self, n: int) -> bytes:
        buf = bytearray()
        while len(buf) < n:
            try:
                chunk = self.sock.recv(n - len(buf))
            except socket.timeout:
                raise Timeout("peer went quiet") from None
            except OSError as exc:
                raise ConnectionLost(f"receive failed: {exc}") from None
            if not chunk:
                raise ConnectionLost(f"peer closed the connection ({len(buf)}/{n} bytes read)")
            buf += chunk
        return bytes(buf)

    def send(self, msg: Message) -> bytes:
        frame = encode_frame(msg)
        try:
            self.sock.sendall(frame)
        except socket.timeout:
            raise Timeout("send timed out") from None
        except OSError as exc:
            raise ConnectionLost(f"send failed: {exc}") from None
        return frame

    def recv(self) -> tuple[bytes, Message]:
        header = self._read_exact(4)
        length = frame_length(header)
        if length == 0 or length > MAX_FRAME:
            raise FrameError(f"refusing frame of {length} bytes")
        frame = header + self._read_exact(length)
        return frame, decode_frame(frame, self.curve)


def drive(role: str, gen: Role, channel: FrameChannel, transcript: Transcript) -> Any:
    """Run one role generator against the peer on ``channel``."""
    peer = peer_of(role)
    value, started = None, False
    while True:
        try:
            action = gen.send(value) if started else next(gen)
        except StopIteration as stop:
            return stop.value
        started, value = True, None
        if action is RECV:
            frame, value = channel.recv()
            transcript.record_frame(peer, frame, value)
        elif isinstance(action, Swap):
            out = channel.send(action.msg)
            frame, value = channel.recv()
            mine = (role, out, decode_frame(out))
            theirs = (peer, frame, value)
            for rec in ((mine, theirs) if role == "A" else (theirs, mine)):
                transcript.record_frame(*rec)
        elif isinstance(action, Message):
            transcript.record_frame(role, channel.send(action), action)
        else:
            raise TypeError(f"role {role} yielded {action!r}")


def run_session(sock: socket.socket, cfg: SessionConfig, scenario: str, role: str,
                inputs: Inputs | None = None, seed=None, timeout: float = DEFAULT_TIMEOUT,
                transcript: Transcript | None = None) -> Any:
    """Play ``role`` on an already connected socket; returns the role's outcome."""
    transcript = transcript if transcript is not None else Transcript()
    gen = make_role(cfg, scenario, role, inputs or Inputs(), role_rng(seed, role))
    channel = FrameChannel(sock, cfg, timeout)
    try:
        return drive(role, gen, channel, transcript)
    except EcotError as exc:
        transcript.record_error(role, exc)
        if isinstance(exc, ProtocolError) and not isinstance(exc, (ConnectionLost, Timeout)):
            # best effort: let a waiting peer fail fast instead of timing out
            try:
                channel.send(Abort(ABORT_ERROR))
            except EcotError:
                pass
        exc.transcript = transcript
        raise


def open_listener(endpoint: str) -> socket.socket:
    host, port = parse_endpoint(endpoint)
    listener = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    listener.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
    listener.bind((host, port))
    listener.listen(1)
    return listener


def accept_one(listener: socket.socket, timeout: float = DEFAULT_TIMEOUT) -> socket.socket:
    listener.settimeout(timeout)
    try:
        conn, _ = listener.accept()
    except socket.timeout:
        raise Timeout("no peer connected") from None
    return conn


def dial(endpoint: str, timeout: float = DEFAULT_TIMEOUT) -> socket.socket:
    """Connect, retrying while the listener is not up yet."""
    host, port = parse_endpoint(endpoint)
    deadline = time.monotonic() + timeout
    while True:
        try:
            return socket.create_connection((host, port), timeout=timeout)
        except (ConnectionRefusedError, socket.timeout) as exc:
            if time.monotonic() >= deadline:
                raise Timeout(f"could not reach {host}:{port}: {exc}") from None
            time.sleep(0.05)


def run_socket(cfg: SessionConfig, scenario: str, role: str, endpoint: str, *, listen: bool,
               inputs: Inputs | None = None, seed=None, timeout: float = DEFAULT_TIMEOUT,
               transcript: Transcript | None = None,
               on_listen: Optional[Callable[[tuple[str, int]], None]] = None) -> Any:
    """Listen on (or dial) ``endpoint`` and play one session as ``role``.

    ``on_listen`` receives the bound address, useful with port 0.
    """
    if listen:
        with open_listener(endpoint) as listener:
            if on_listen is not None:
                on_listen(listener.getsockname()[:2])
            conn = accept_one(listener, timeout)
    else:
        conn = dial(endpoint, timeout)
    with conn:
        return run_session(conn, cfg, scenario, role, inputs, seed, timeout, transcript)


__all__ = ["DEFAULT_TIMEOUT", "FrameChannel", "accept_one", "dial", "drive",
           "open_listener", "parse_endpoint", "run_session", "run_socket"]

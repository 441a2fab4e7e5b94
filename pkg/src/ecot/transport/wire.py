"""Bit-exact framing for protocol messages.

    frame   := length:u32 | tag:u8 | payload      (length counts tag + payload)
    point   := 0x00                               identity
             | 0x04 | x:u32 | y:u32               affine point
    bytes   := raw remainder of the payload

All integers are big-endian.  Decoding enforces curve membership, so no
off-curve or unreduced coordinate is ever accepted from the wire.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, fields
from typing import ClassVar

from ..config import SessionConfig
from ..curve import AffinePoint, Curve, Point, format_point
from ..errors import FrameError, InvalidPoint, TruncatedFrame, UnknownTag
from ..messages import MESSAGE_TYPES, Message

IDENTITY_BYTE = 0x00
POINT_BYTE = 0x04
HANDSHAKE_TAG = 0x30

SCENARIOS = {"rabin": 0x01, "exchange": 0x02, "ot12": 0x03}


def encode_point(pt: AffinePoint) -> bytes:
    if pt is None:
        return bytes([IDENTITY_BYTE])
    return struct.pack(">BII", POINT_BYTE, pt[0], pt[1])


def decode_point(buf: bytes, offset: int, curve: Curve | None) -> tuple[AffinePoint, int]:
    if offset >= len(buf):
        raise TruncatedFrame("point missing")
    marker = buf[offset]
    if marker == IDENTITY_BYTE:
        return None, offset + 1
    if marker != POINT_BYTE:
        raise FrameError(f"bad point marker {marker:#04x}")
    if offset + 9 > len(buf):
        raise TruncatedFrame("point cut short")
    _, x, y = struct.unpack_from(">BII", buf, offset)
    pt = Point(x, y)
    if curve is not None and not curve.is_on_curve(pt):
        raise InvalidPoint(f"{pt} from the wire is not on {curve}")
    return pt, offset + 9


@dataclass(frozen=True)
class Handshake(Message):
    """Public parameters; both parties must announce identical values."""

    TAG = HANDSHAKE_TAG
    NAME = "handshake"
    LAYOUT: ClassVar[tuple[str, ...]] = ()
    version: int
    p: int
    a: int
    b: int
    base: AffinePoint
    base_order: int
    x: int
    kappa: int
    secret_length: int
    m_const: bytes
    scenario: int

    @classmethod
    def from_config(cls, cfg: SessionConfig, scenario: str, version: int = 1) -> Handshake:
        c = cfg.curve
        return cls(version, c.p, c.a, c.b, c.base, c.base_order or 0, cfg.x, cfg.kappa,
                   cfg.secret_length, cfg.m_const, SCENARIOS[scenario])

    def to_config(self) -> SessionConfig:
        curve = Curve(self.p, self.a, self.b, self.base, self.base_order or None)
        return SessionConfig(curve, self.x, self.kappa, self.secret_length, self.m_const)

    def points(self) -> list[AffinePoint]:
        return [self.base]

    def render(self) -> str:
        scenario = {v: k for k, v in SCENARIOS.items()}.get(self.scenario, "?")
        return (f"handshake {{v{self.version}; E_{self.p}({self.a},{self.b}); "
                f"G={format_point(self.base)}; n={self.base_order}; x={self.x}; "
                f"kappa={self.kappa}; len={self.secret_length}; M={self.m_const.hex()}; "
                f"{scenario}}}")

    def payload(self) -> bytes:
        return (struct.pack(">BIII", self.version, self.p, self.a, self.b)
                + encode_point(self.base)
                + struct.pack(">IIHH", self.base_order, self.x, self.kappa, self.secret_length)
                + self.m_const + bytes([self.scenario]))

    @classmethod
    def parse(cls, buf: bytes) -> Handshake:
        try:
            version, p, a, b = struct.unpack_from(">BIII", buf, 0)
            base, off = decode_point(buf, 13, None)
            base_order, x, kappa, length = struct.unpack_from(">IIHH", buf, off)
        except struct.error:
            raise TruncatedFrame("handshake cut short") from None
        off += 12
        end = off + length + 1
        if len(buf) < end:
            raise TruncatedFrame("handshake cut short")
        if len(buf) > end:
            raise FrameError(f"{len(buf) - end} trailing bytes in handshake")
        m_const, scenario = buf[off:off + length], buf[off + length]
        return cls(version, p, a, b, base, base_order, x, kappa, length, bytes(m_const), scenario)


def message_payload(msg: Message) -> bytes:
    if isinstance(msg, Handshake):
        return msg.payload()
    out = bytearray()
    for f, kind in zip(fields(msg), msg.LAYOUT):
        value = getattr(msg, f.name)
        if kind == "point":
            out += encode_point(value)
        elif kind == "bytes":
            out += value
        else:
            out.append(value)
    return bytes(out)


def encode_frame(msg: Message) -> bytes:
    body = bytes([msg.TAG]) + message_payload(msg)
    return struct.pack(">I", len(body)) + body


def decode_frame(data: bytes, curve: Curve | None = None) -> Message:
    """Parse exactly one frame; ``curve`` (if given) validates every point."""
    if len(data) < 5:
        raise TruncatedFrame(f"{len(data)} bytes is shorter than a frame header")
    (length,) = struct.unpack_from(">I", data, 0)
    if length < 1:
        raise FrameError("zero-length frame")
    if len(data) < 4 + length:
        raise TruncatedFrame(f"frame announces {length} bytes, {len(data) - 4} present")
    if len(data) > 4 + length:
        raise FrameError(f"{len(data) - 4 - length} trailing bytes after frame")
    tag, payload = data[4], data[5:]
    if tag == HANDSHAKE_TAG:
        return Handshake.parse(payload)
    cls = MESSAGE_TYPES.get(tag)
    if cls is None:
        raise UnknownTag(f"unknown tag {tag:#04x}")
    values, off = [], 0
    for kind in cls.LAYOUT:
        if kind == "point":
            pt, off = decode_point(payload, off, curve)
            values.append(pt)
        elif kind == "bytes":
            values.append(bytes(payload[off:]))
            off = len(payload)
        else:
            if off >= len(payload):
                raise TruncatedFrame("byte field missing")
            values.append(payload[off])
            off += 1
    if off != len(payload):
        raise FrameError(f"{len(payload) - off} trailing bytes in {cls.NAME} payload")
    return cls(*values)


def frame_length(header: bytes) -> int:
    """Body length announced by a 4-byte frame header."""
    return struct.unpack(">I", header)[0]


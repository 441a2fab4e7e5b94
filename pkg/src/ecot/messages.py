"""Protocol message types.

Each message class carries its one-byte wire ``TAG``, a short ``NAME`` for
transcripts, and a ``LAYOUT`` naming the codec of every field in order:
``"point"`` (tagged point), ``"bytes"`` (rest of the payload) or ``"u8"``.
"""

from __future__ import annotations

from dataclasses import astuple, dataclass, fields
from typing import ClassVar

from .curve import AffinePoint, format_point


class Message:
    TAG: ClassVar[int]
    NAME: ClassVar[str]
    LAYOUT: ClassVar[tuple[str, ...]]

    def points(self) -> list[AffinePoint]:
        return [v for v, kind in zip(astuple(self), self.LAYOUT) if kind == "point"]

    def render(self) -> str:
        parts = []
        for f, kind in zip(fields(self), self.LAYOUT):
            value = getattr(self, f.name)
            if kind == "point":
                parts.append(format_point(value))
            elif kind == "bytes":
                parts.append(value.hex())
            else:
                parts.append(f"{value:#04x}")
        return f"{self.NAME} {{{'; '.join(parts)}}}"


# -- oblivious key transfer ------------------------------------------------

@dataclass(frozen=True)
class RabinStep1(Message):
    """n_A * P_A."""
    TAG = 0x01
    NAME = "rabin.step1"
    LAYOUT = ("point",)
    na_pa: AffinePoint


@dataclass(frozen=True)
class RabinStep2(Message):
    """{n_B * P_B ; n_B * (n_A * P_A) + R ; n_B * R}."""
    TAG = 0x02
    NAME = "rabin.step2"
    LAYOUT = ("point", "point", "point")
    nb_pb: AffinePoint
    blinded_r: AffinePoint
    nb_r: AffinePoint


@dataclass(frozen=True)
class RabinStep4(Message):
    """{n_A * (n_B * P_B) + Q ; n_A * (n_B * R) + P_nA}."""
    TAG = 0x04
    NAME = "rabin.step4"
    LAYOUT = ("point", "point")
    keyed_q: AffinePoint
    masked_key: AffinePoint


# -- secret exchange -------------------------------------------------------

@dataclass(frozen=True)
class MaskedSecret(Message):
    """k XOR S for the sender's knowledge mask k."""
    TAG = 0x10
    NAME = "exchange.masked"
    LAYOUT = ("bytes",)
    data: bytes


@dataclass(frozen=True)
class FinalTransfer(Message):
    """P_S + n * G."""
    TAG = 0x11
    NAME = "exchange.final"
    LAYOUT = ("point",)
    point: AffinePoint


ABORT_DEGENERATE = 0x01
ABORT_WITHHOLD = 0x02
ABORT_ERROR = 0x03


@dataclass(frozen=True)
class Abort(Message):
    TAG = 0x12
    NAME = "abort"
    LAYOUT = ("u8",)
    reason: int


# -- chosen 1-out-of-2 -----------------------------------------------------

@dataclass(frozen=True)
class Ot12Step1(Message):
    """{n_A0 * P_1 ; n_A1 * P_2}."""
    TAG = 0x21
    NAME = "ot12.step1"
    LAYOUT = ("point", "point")
    n0_p1: AffinePoint
    n1_p2: AffinePoint


@dataclass(frozen=True)
class Ot12Step2(Message):
    """{n_B * P_B ; n_B * (n_A0 * P_1) + R ; n_B * (n_A1 * P_2) + R ; n_B * R}."""
    TAG = 0x22
    NAME = "ot12.step2"
    LAYOUT = ("point", "point", "point", "point")
    nb_pb: AffinePoint
    blinded_r0: AffinePoint
    blinded_r1: AffinePoint
    nb_r: AffinePoint


@dataclass(frozen=True)
class Ot12Step4(Message):
    """{n_A0(n_B P_B) + H_1 ; n_A0(n_B R) + P_nA0 ; n_A1(n_B P_B) + H_2 ; n_A1(n_B R) + P_nA1}."""
    TAG = 0x24
    NAME = "ot12.step4"
    LAYOUT = ("point", "point", "point", "point")
    keyed_h0: AffinePoint
    masked_key0: AffinePoint
    keyed_h1: AffinePoint
    masked_key1: AffinePoint

    def branch(self, c: int) -> tuple[AffinePoint, AffinePoint]:
        return (self.keyed_h0, self.masked_key0) if c == 0 else (self.keyed_h1, self.masked_key1)


@dataclass(frozen=True)
class Ot12Secrets(Message):
    """{P_s0 + n_A0 * G ; P_s1 + n_A1 * G}."""
    TAG = 0x25
    NAME = "ot12.secrets"
    LAYOUT = ("point", "point")
    masked_s0: AffinePoint
    masked_s1: AffinePoint


MESSAGE_TYPES: dict[int, type[Message]] = {
    cls.TAG: cls
    for cls in (
        RabinStep1, RabinStep2, RabinStep4,
        MaskedSecret, FinalTransfer, Abort,
        Ot12Step1, Ot12Step2, Ot12Step4, Ot12Secrets,
    )
}

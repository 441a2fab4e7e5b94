"""Invertible embedding of small integers and byte strings into curve points.

Try-and-increment: value ``v`` owns the x-block ``[v*kappa, (v+1)*kappa)``
and is encoded as the first point found in that block (smaller y).  Decoding
is ``x // kappa``, so the y-coordinate, and which x in the block was hit, do
not matter.
"""

from __future__ import annotations

from dataclasses import dataclass

from .curve import AffinePoint, Curve, Point
from .errors import DecodeFailure, InvalidPoint, OutOfRange, Unencodable
from .modular import sqrt_mod_p

DEFAULT_KAPPA = 16


@dataclass(frozen=True)
class Encoder:
    curve: Curve
    kappa: int = DEFAULT_KAPPA

    def __post_init__(self) -> None:
        if self.kappa < 2:
            raise ValueError(f"kappa must be at least 2, got {self.kappa}")
        if 2 * self.kappa >= self.curve.p:
            raise ValueError(f"kappa {self.kappa} leaves no room on {self.curve}")

    @property
    def max_value(self) -> int:
        """Largest v with (v + 1) * kappa < p."""
        return (self.curve.p - 1) // self.kappa - 1

    def encode(self, value: int) -> Point:
        if not 0 <= value <= self.max_value:
            raise OutOfRange(f"{value} is outside [0, {self.max_value}] for kappa={self.kappa}")
        p = self.curve.p
        base = value * self.kappa
        for x in range(base, base + self.kappa):
            roots = sqrt_mod_p(self.curve.rhs(x), p)
            # (x, 0) is skipped: it would decode fine but cannot be negated apart
            if len(roots) == 2:
                return Point(x, roots[0])
        raise Unencodable(f"no residue in x-block of {value} (kappa={self.kappa})")

    def can_encode(self, value: int) -> bool:
        try:
            self.encode(value)
        except (OutOfRange, Unencodable):
            return False
        return True

    def decode(self, pt: AffinePoint) -> int:
        if pt is None:
            raise InvalidPoint("the identity does not encode any value")
        self.curve.check(pt)
        value = pt[0] // self.kappa
        if value > self.max_value:
            raise DecodeFailure(f"{pt} lies past the last full x-block")
        return value

    # byte strings ride on their big-endian integer value

    def max_bytes(self) -> int:
        """Longest byte string whose every value is encodable by range."""
        n = 0
        while 256 ** (n + 1) - 1 <= self.max_value:
            n += 1
        return n

    def encode_bytes(self, data: bytes) -> Point:
        return self.encode(int.from_bytes(data, "big"))

    def decode_bytes(self, pt: AffinePoint, length: int) -> bytes:
        value = self.decode(pt)
        try:
            return value.to_bytes(length, "big")
        except OverflowError:
            raise DecodeFailure(f"{value} does not fit in {length} bytes") from None

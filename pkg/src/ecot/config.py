"""Public session parameters and the curves shipped with the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .curve import Curve, XPair
from .encoding import DEFAULT_KAPPA, Encoder
from .errors import InvalidCurve

# The worked-example curve: 33 points, cyclic.  G = (1, 10) = 3 * (7, 6)
# generates the order-11 subgroup; the full-order alternative would admit
# scalars that are multiples of 11 and leak through the small subgroup.
EXAMPLE_CURVE = Curve(23, 9, 21, base=(1, 10), base_order=11)
EXAMPLE_X = 7
EXAMPLE_KAPPA = 2

# Desk-scale curve with prime group order 1049537, roomy enough for
# two-byte secrets at kappa = 16.
DEFAULT_CURVE = Curve(1048759, 5, 11, base=(6, 240722), base_order=1049537)
DEFAULT_X = 5

DEFAULT_M_BYTE = 0xA5
PROTOCOL_VERSION = 1


def default_m(length: int) -> bytes:
    return bytes([DEFAULT_M_BYTE]) * length


@dataclass(frozen=True)
class SessionConfig:
    """Everything both parties must agree on before the protocol starts."""

    curve: Curve
    x: int
    kappa: int = DEFAULT_KAPPA
    secret_length: int = 2
    m_const: bytes = field(default=b"")

    def __post_init__(self) -> None:
        if not self.m_const:
            object.__setattr__(self, "m_const", default_m(self.secret_length))
        if len(self.m_const) != self.secret_length:
            raise ValueError("M must be exactly secret_length bytes")
        if self.curve.lift_x(self.x) is None:
            raise InvalidCurve(f"x = {self.x} does not lift on {self.curve}")

    @cached_property
    def xpair(self) -> XPair:
        return self.curve.lift_x(self.x)

    @cached_property
    def encoder(self) -> Encoder:
        return Encoder(self.curve, self.kappa)


def example_config(secret_length: int = 1) -> SessionConfig:
    return SessionConfig(EXAMPLE_CURVE, EXAMPLE_X, kappa=EXAMPLE_KAPPA, secret_length=secret_length)


def default_config(secret_length: int = 2) -> SessionConfig:
    return SessionConfig(DEFAULT_CURVE, DEFAULT_X, secret_length=secret_length)

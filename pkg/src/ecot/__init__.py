"""Oblivious transfer over small elliptic curves.

The arithmetic core lives in :mod:`ecot.curve` and :mod:`ecot.modular`,
message embedding in :mod:`ecot.encoding`, the protocols in
:mod:`ecot.rabin`, :mod:`ecot.exchange` and :mod:`ecot.ot12`, and the
wire format and runners in :mod:`ecot.transport`.
"""

from .config import DEFAULT_CURVE, EXAMPLE_CURVE, SessionConfig, default_config, example_config
from .curve import IDENTITY, Curve, Point, XPair
from .encoding import Encoder

__version__ = "0.1.0"

__all__ = ["DEFAULT_CURVE", "IDENTITY", "EXAMPLE_CURVE", "Curve", "Encoder", "Point",
           "SessionConfig", "XPair", "default_config", "example_config"]

"""Exception hierarchy shared by every layer of the package."""


class EcotError(Exception):
    """Base class for all errors raised by ecot."""


# -- curve arithmetic ------------------------------------------------------

class InvalidCurve(EcotError, ValueError):
    """Curve parameters are unusable (composite p, singular, bad base point)."""


class InvalidPoint(EcotError, ValueError):
    """A point is not on the curve or otherwise malformed."""


class DegenerateX(EcotError, ValueError):
    """The x-coordinate lifts to a single point with y = 0."""


class Exhausted(EcotError, RuntimeError):
    """A bounded sampling loop ran out of attempts."""


# -- point encoding --------------------------------------------------------

class OutOfRange(EcotError, ValueError):
    """Value too large for the curve under the chosen padding factor."""


class Unencodable(EcotError, ValueError):
    """No quadratic residue found in the value's x-block."""


class DecodeFailure(EcotError, ValueError):
    """A point does not decode to a value in the encodable range."""


# -- protocol state machines -----------------------------------------------

class ProtocolError(EcotError):
    """Base class for protocol-level failures."""


class PhaseError(ProtocolError):
    """An operation or message arrived in the wrong protocol phase."""


class DegenerateValue(ProtocolError):
    """The identity point showed up where the protocol forbids it."""


class VerificationFailed(ProtocolError):
    """The chosen branch of a 1-out-of-2 transfer did not verify."""


class LengthMismatch(EcotError, ValueError):
    """Byte strings of different lengths were combined."""


class MissingBasePoint(EcotError, ValueError):
    """An operation needs a base point G but the curve has none."""


class AbortedByPeer(ProtocolError):
    """The counterparty sent an abort frame.

    ``reason`` carries the one-byte abort code from the wire.
    """

    def __init__(self, reason: int, message: str = ""):
        self.reason = reason
        super().__init__(message or f"peer aborted (reason {reason:#04x})")


# -- transport -------------------------------------------------------------

class FrameError(EcotError, ValueError):
    """Malformed frame bytes."""


class UnknownTag(FrameError):
    pass


class TruncatedFrame(FrameError):
    pass


class HandshakeMismatch(ProtocolError):
    """The two parties announced different public session parameters."""


class ConnectionLost(ProtocolError, ConnectionError):
    pass


class Timeout(ProtocolError, TimeoutError):
    pass


# -- oracle ----------------------------------------------------------------

class TooLarge(EcotError, ValueError):
    """The curve is too large for exhaustive enumeration."""

"""Short Weierstrass curves y^2 = x^3 + ax + b over a small prime field.

Points are ``Point(x, y)`` named tuples with reduced coordinates; the
identity (point at infinity) is ``None``.  Public methods validate their
inputs; the underscore-prefixed helpers assume on-curve arguments and are
used on hot paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .errors import DegenerateX, Exhausted, InvalidCurve, InvalidPoint, MissingBasePoint
from .modular import factorize, inverse_mod, is_prime, sqrt_mod_p

# Coordinates go on the wire as 4-byte unsigned integers.
MAX_PRIME = 2**31


class Point(NamedTuple):
    x: int
    y: int

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


AffinePoint = Optional[Point]
IDENTITY: AffinePoint = None


def format_point(pt: AffinePoint) -> str:
    return "O" if pt is None else str(pt)


@dataclass(frozen=True)
class Curve:
    """Curve parameters, optionally with a base point ``G`` of known order."""

    p: int
    a: int
    b: int
    base: AffinePoint = None
    base_order: int | None = None

    def __post_init__(self) -> None:
        p = self.p
        if not 3 < p < MAX_PRIME or not is_prime(p):
            raise InvalidCurve(f"modulus {p} must be a prime with 3 < p < 2^31")
        object.__setattr__(self, "a", self.a % p)
        object.__setattr__(self, "b", self.b % p)
        if (4 * self.a**3 + 27 * self.b**2) % p == 0:
            raise InvalidCurve(f"singular curve: 4a^3 + 27b^2 = 0 mod {p}")
        if self.base is None:
            if self.base_order is not None:
                raise InvalidCurve("base_order given without a base point")
            return
        base = Point(*self.base)
        object.__setattr__(self, "base", base)
        if not self.is_on_curve(base):
            raise InvalidCurve(f"base point {base} is not on {self}")
        if self.base_order is not None:
            self._check_order(base, self.base_order)

    def _check_order(self, pt: Point, n: int) -> None:
        if n < 1 or self._mul(n, pt) is not None:
            raise InvalidCurve(f"{n} * {pt} is not the identity")
        # n is the least such integer iff no n / r (r a prime factor) kills pt
        for r in factorize(n):
            if self._mul(n // r, pt) is None:
                raise InvalidCurve(f"order of {pt} is a proper divisor of {n}")

    def __str__(self) -> str:
        return f"E_{self.p}({self.a},{self.b})"

    # -- membership ------------------------------------------------------

    def rhs(self, x: int) -> int:
        """Right-hand side x^3 + ax + b reduced mod p."""
        return (x * x * x + self.a * x + self.b) % self.p

    def is_on_curve(self, pt: AffinePoint) -> bool:
        if pt is None:
            return True
        x, y = pt
        if not (0 <= x < self.p and 0 <= y < self.p):
            return False
        return y * y % self.p == self.rhs(x)

    def check(self, pt: AffinePoint) -> AffinePoint:
        """Return ``pt`` as a ``Point`` (or None) or raise InvalidPoint."""
        if not self.is_on_curve(pt):
            raise InvalidPoint(f"{pt} is not on {self}")
        return None if pt is None else Point(*pt)

    def require_base(self) -> Point:
        if self.base is None:
            raise MissingBasePoint(f"{self} has no base point configured")
        return self.base

    # -- group law -------------------------------------------------------

    def _neg(self, pt: AffinePoint) -> AffinePoint:
        if pt is None:
            return None
        return Point(pt[0], (-pt[1]) % self.p)

    def _add(self, p1: AffinePoint, p2: AffinePoint) -> AffinePoint:
        if p1 is None:
            return p2
        if p2 is None:
            return p1
        p = self.p
        x1, y1 = p1
        x2, y2 = p2
        if x1 == x2:
            if (y1 + y2) % p == 0:
                return None
            # tangent; y1 != 0 here because y1 = -y1 was handled above
            slope = (3 * x1 * x1 + self.a) * inverse_mod(2 * y1, p) % p
        else:
            slope = (y2 - y1) * inverse_mod(x2 - x1, p) % p
        x3 = (slope * slope - x1 - x2) % p
        y3 = (slope * (x1 - x3) - y1) % p
        return Point(x3, y3)

    def _mul(self, k: int, pt: AffinePoint) -> AffinePoint:
        result = None
        for bit in bin(k)[2:] if k > 0 else "":
            result = self._add(result, result)
            if bit == "1":
                result = self._add(result, pt)
        return result

    def negate(self, pt: AffinePoint) -> AffinePoint:
        return self._neg(self.check(pt))

    def add(self, p1: AffinePoint, p2: AffinePoint) -> AffinePoint:
        return self._add(self.check(p1), self.check(p2))

    def sub(self, p1: AffinePoint, p2: AffinePoint) -> AffinePoint:
        return self._add(self.check(p1), self._neg(self.check(p2)))

    def scalar_mul(self, k: int, pt: AffinePoint) -> AffinePoint:
        """k * pt by left-to-right double-and-add; k must be non-negative."""
        if k < 0:
            raise ValueError(f"scalar must be non-negative, got {k}")
        return self._mul(k, self.check(pt))

    # -- x-coordinate lifting --------------------------------------------

    def lift_x(self, x: int) -> XPair | None:
        """Both points with abscissa ``x``, or None if x^3 + ax + b is a non-residue.

        Raises DegenerateX when the right-hand side is zero, since the single
        point (x, 0) is its own negative.
        """
        if not 0 <= x < self.p:
            raise InvalidPoint(f"x-coordinate {x} is not reduced modulo {self.p}")
        roots = sqrt_mod_p(self.rhs(x), self.p)
        if not roots:
            return None
        if len(roots) == 1:
            raise DegenerateX(f"x = {x} gives y = 0 on {self}")
        return XPair(x, Point(x, roots[0]), Point(x, roots[1]))

    def point_order(self, pt: AffinePoint) -> int:
        """Least n >= 1 with n * pt = O, by repeated addition."""
        pt = self.check(pt)
        if pt is None:
            raise InvalidPoint("the identity has no meaningful order here")
        n, acc = 1, pt
        while acc is not None:
            acc = self._add(acc, pt)
            n += 1
        return n

    def random_point(self, rng, max_attempts: int = 10_000) -> Point:
        """Uniform non-identity point: random x, then a fair coin for the root.

        A y = 0 point is kept with probability one half so that it is not
        favoured over the two points sharing every other x.
        """
        for _ in range(max_attempts):
            x = rng.randrange(self.p)
            roots = sqrt_mod_p(self.rhs(x), self.p)
            coin = rng.getrandbits(1)
            if len(roots) == 2:
                return Point(x, roots[coin])
            if len(roots) == 1 and coin:
                return Point(x, 0)
        raise Exhausted(f"no curve point found on {self} after {max_attempts} tries")


@dataclass(frozen=True)
class XPair:
    """The two points over an agreed x-coordinate; ``p1`` has the smaller y."""

    x: int
    p1: Point
    p2: Point

    def point(self, choice: int) -> Point:
        """P_1 for choice 0, P_2 for choice 1."""
        if choice not in (0, 1):
            raise ValueError(f"choice must be 0 or 1, got {choice}")
        return self.p2 if choice else self.p1

    def choice_of(self, pt: AffinePoint) -> int:
        if pt == self.p1:
            return 0
        if pt == self.p2:
            return 1
        raise InvalidPoint(f"{pt} is neither point over x = {self.x}")

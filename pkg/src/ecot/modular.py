"""Number theory over small prime fields: inverses, square roots, primality."""

from __future__ import annotations

from functools import lru_cache


@lru_cache(maxsize=256)
def is_prime(n: int) -> bool:
    """Deterministic trial division; fine for the desk-scale moduli used here."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError(f"cannot factor {n}")
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def inverse_mod(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    old_r, r = a % p, p
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise ZeroDivisionError(f"{a} has no inverse modulo {p}")
    return old_s % p


def legendre(s: int, p: int) -> int:
    """Legendre symbol (s/p) as -1, 0 or 1."""
    s %= p
    if s == 0:
        return 0
    return 1 if pow(s, (p - 1) // 2, p) == 1 else -1


def _tonelli_shanks(s: int, p: int) -> int:
    # p - 1 = q * 2^e with q odd
    q, e = p - 1, 0
    while q % 2 == 0:
        q //= 2
        e += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = e, pow(z, q, p), pow(s, q, p), pow(s, (q + 1) // 2, p)
    while t != 1:
        # least i with t^(2^i) = 1
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def sqrt_mod_p(s: int, p: int) -> tuple[int, ...]:
    """All square roots of ``s`` modulo the odd prime ``p``, ascending.

    Returns an empty tuple for a non-residue and ``(0,)`` for ``s = 0``.
    Uses the ``(p + 1) / 4`` exponent when ``p = 3 (mod 4)`` and
    Tonelli-Shanks otherwise.
    """
    s %= p
    if s == 0:
        return (0,)
    if legendre(s, p) != 1:
        return ()
    if p % 4 == 3:
        r = pow(s, (p + 1) // 4, p)
    else:
        r = _tonelli_shanks(s, p)
    assert r * r % p == s
    return tuple(sorted((r, p - r)))

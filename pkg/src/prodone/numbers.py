"""Small number-theory helpers (trial division scale)."""

from __future__ import annotations

from math import gcd, isqrt

__all__ = ["gcd", "factorize", "largest_prime_factor", "totient", "is_prime"]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError(f"cannot factorize {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def largest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError(f"{n} has no prime factor")
    return max(factorize(n))


def totient(n: int) -> int:
    """Euler phi of n >= 1."""
    result = n
    for p in factorize(n):
        result = result // p * (p - 1)
    return result


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for d in range(2, isqrt(n) + 1):
        if n % d == 0:
            return False
    return True

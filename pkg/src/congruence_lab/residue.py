"""Exact arithmetic over Z_m: factorization, totient, inverses, divisors.

Everything here is deterministic trial-division arithmetic sized for
desk-scale moduli (up to ~10^7).  Python integers are unbounded, so
products such as x1*x2*x3 never overflow before reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NonInvertibleError

__all__ = [
    "Modulus",
    "build_modulus",
    "mod_inverse",
    "divisors",
    "divisor_count",
    "floor_nth_root",
]


@dataclass(frozen=True)
class Modulus:
    """An integer modulus with its factorization and structural flags."""

    value: int
    factorization: tuple[tuple[int, int], ...]
    phi: int
    is_prime: bool
    is_cubefree: bool

    def __int__(self) -> int:
        return self.value


def factorize(n: int) -> tuple[tuple[int, int], ...]:
    """Factor n >= 1 by trial division; returns (prime, exponent) pairs, primes ascending."""
    if n < 1:
        raise ValueError(f"cannot factor {n}; expected a positive integer")
    out: list[tuple[int, int]] = []
    rest = n
    d = 2
    while d * d <= rest:
        if rest % d == 0:
            e = 0
            while rest % d == 0:
                rest //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if rest > 1:
        out.append((rest, 1))
    return tuple(out)


def build_modulus(m: int) -> Modulus:
    """Build a Modulus for m >= 1 with totient and prime/cubefree flags."""
    if m < 1:
        raise ValueError(f"modulus must be a positive integer, got {m}")
    fact = factorize(m)
    phi = 1
    for p, e in fact:
        phi *= p ** (e - 1) * (p - 1)
    is_prime = len(fact) == 1 and fact[0][1] == 1 and m > 1
    is_cubefree = all(e <= 2 for _, e in fact)
    return Modulus(value=m, factorization=fact, phi=phi, is_prime=is_prime, is_cubefree=is_cubefree)


def as_modulus(m: int | Modulus) -> Modulus:
    """Coerce an int to a Modulus; pass a Modulus through unchanged."""
    return m if isinstance(m, Modulus) else build_modulus(m)


def mod_inverse(a: int, m: int | Modulus) -> int:
    """Return b in [1, m-1] with a*b = 1 (mod m).

    Raises NonInvertibleError when gcd(a, m) > 1.
    """
    mv = m.value if isinstance(m, Modulus) else m
    if mv < 1:
        raise ValueError(f"modulus must be positive, got {mv}")
    if mv == 1:
        # Z_1 is the zero ring; 0 is its own inverse.
        return 0
    g = math.gcd(a, mv)
    if g != 1:
        raise NonInvertibleError(f"{a} is not invertible mod {mv} (gcd {g})")
    return pow(a, -1, mv)


def divisors(x: int) -> list[int]:
    """Sorted list of all positive divisors of x >= 1."""
    if x < 1:
        raise ValueError(f"expected a positive integer, got {x}")
    small: list[int] = []
    large: list[int] = []
    d = 1
    while d * d <= x:
        if x % d == 0:
            small.append(d)
            if d != x // d:
                large.append(x // d)
        d += 1
    return small + large[::-1]


def divisor_count(x: int) -> int:
    """Number of positive divisors of x >= 1."""
    count = 1
    for _, e in factorize(x):
        count *= e + 1
    return count


def floor_nth_root(x: int, n: int) -> int:
    """Exact floor(x ** (1/n)) for integers x >= 0, n >= 1."""
    if x < 0 or n < 1:
        raise ValueError(f"floor_nth_root requires x >= 0 and n >= 1, got ({x}, {n})")
    if x in (0, 1) or n == 1:
        return x
    r = int(round(x ** (1.0 / n)))
    while r > 0 and r**n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r

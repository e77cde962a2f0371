"""Prime sieving and exact prime counting.

A plain dense Eratosthenes sieve; experiments stay at desk scale
(N up to ~10^7), so segmented sieving is not needed.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field

from .errors import BudgetExceededError

__all__ = ["PrimeTable", "sieve", "prime_count", "DEFAULT_SIEVE_MAX"]

DEFAULT_SIEVE_MAX = 100_000_000


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to a fixed limit, with a dense membership index."""

    limit: int
    primes: tuple[int, ...]
    membership: bytes = field(repr=False)

    def is_prime(self, n: int) -> bool:
        if n < 0 or n > self.limit:
            raise ValueError(f"{n} outside sieved range [0, {self.limit}]")
        return bool(self.membership[n])

    def count_leq(self, n: int) -> int:
        """pi(n) for any n <= limit."""
        if n > self.limit:
            raise ValueError(f"{n} exceeds sieved limit {self.limit}")
        return bisect_right(self.primes, n)

    def in_range(self, lo: int, hi: int) -> tuple[int, ...]:
        """Primes q with lo < q <= hi."""
        i = bisect_right(self.primes, lo)
        j = bisect_right(self.primes, hi)
        return self.primes[i:j]


def sieve(n: int, max_n: int = DEFAULT_SIEVE_MAX) -> PrimeTable:
    """Sieve of Eratosthenes up to n (inclusive).

    Rejects n above the memory budget max_n (config key sieve.max_n).
    """
    if n < 1:
        raise ValueError(f"sieve limit must be >= 1, got {n}")
    if n > max_n:
        raise BudgetExceededError(f"sieve limit {n} exceeds budget sieve.max_n={max_n}")
    flags = bytearray([1]) * (n + 1)
    flags[0] = 0
    if n >= 1:
        flags[1] = 0
    p = 2
    while p * p <= n:
        if flags[p]:
            flags[p * p :: p] = bytes(len(range(p * p, n + 1, p)))
        p += 1
    primes = tuple(i for i in range(2, n + 1) if flags[i])
    return PrimeTable(limit=n, primes=primes, membership=bytes(flags))


def prime_count(n: int, max_n: int = DEFAULT_SIEVE_MAX) -> int:
    """Exact pi(n), the number of primes <= n."""
    if n < 0:
        raise ValueError(f"prime_count requires n >= 0, got {n}")
    if n < 2:
        return 0
    return len(sieve(n, max_n=max_n).primes)

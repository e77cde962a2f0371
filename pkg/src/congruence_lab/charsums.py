"""Character sums over intervals and shifted primes, exact identities, and
large-value censuses.

Identity checks (moment and Parseval) compare a full character sweep against
independent tuple counting; censuses report how many nonprincipal characters
exceed each threshold next to the reference curve N^2/V^2 + p*N^4/V^6.
Empirical interval and shifted-prime reports carry ratios against reference
curves only; no asymptotic inequality is asserted because its constants are
not observable at desk scale.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .characters import Character, CharacterGroup
from .errors import BudgetExceededError, PreconditionFailedError
from .primes import PrimeTable, sieve

__all__ = [
    "SumRecord",
    "LevelCensus",
    "MomentCheck",
    "interval_sum",
    "shifted_prime_sum",
    "moment_identity",
    "parseval_identity",
    "large_value_census",
    "dyadic_intervals",
    "burgess_report",
    "vinogradov_report",
    "DEFAULT_MOMENT_TUPLES",
]

DEFAULT_MOMENT_TUPLES = 10_000_000


def interval_sum(chi: Character, n: int) -> complex:
    """Exact sum of chi(x) for x = 1..n; full periods cancel for nonprincipal chi."""
    if n < 0:
        raise ValueError(f"interval length must be >= 0, got {n}")
    group = chi.group
    m = group.modulus.value
    full, rem = divmod(n, m)
    total = complex(full * group.phi) if chi.is_principal else 0j
    for x in range(1, rem + 1):
        total += chi(x).value
    return total


def shifted_prime_sum(
    chi: Character, n: int, k: int, primes: PrimeTable | None = None
) -> complex:
    """Exact sum of chi(q + k) over primes q <= n."""
    if n < 0:
        raise ValueError(f"prime bound must be >= 0, got {n}")
    if n < 2:
        return 0j
    table = primes if primes is not None and primes.limit >= n else sieve(n)
    total = 0j
    for q in table.in_range(1, n):
        total += chi(q + k).value
    return total


@dataclass(frozen=True)
class MomentCheck:
    """Both sides of the 2n-th moment identity for interval character sums."""

    m: int
    interval: int
    n: int
    lhs: float
    congruence_count: int
    equation_count: int


def _coprime_values(m: int, u: int) -> list[int]:
    return [x for x in range(1, u + 1) if math.gcd(x, m) == 1]


def moment_identity(
    group: CharacterGroup, u: int, n: int, max_tuples: int = DEFAULT_MOMENT_TUPLES
) -> MomentCheck:
    """Check (1/phi) * sum over chi of |sum_{x<=U} chi(x)|^(2n) against tuple counts.

    The right-hand sides count 2n-tuples of integers in [1, U] coprime to m
    whose first-half product matches the second half: once modulo m, once as
    an exact integer equation.  The congruence count always matches the sweep;
    the equation count matches whenever U^n <= m.
    """
    if u < 1 or n < 1:
        raise ValueError(f"need U >= 1 and n >= 1, got ({u}, {n})")
    if u**n > max_tuples:
        raise BudgetExceededError(
            f"U^n = {u**n} exceeds budget moments.max_tuples={max_tuples}"
        )
    m = group.modulus.value
    sums = group.char_sums(range(1, u + 1))
    lhs = float((np.abs(sums) ** (2 * n)).sum() / group.phi)

    values = _coprime_values(m, u)
    mod_hist: Counter[int] = Counter({1 % m: 1})
    exact_hist: Counter[int] = Counter({1: 1})
    for _ in range(n):
        nxt_mod: Counter[int] = Counter()
        nxt_exact: Counter[int] = Counter()
        for a, c in mod_hist.items():
            for v in values:
                nxt_mod[a * v % m] += c
        for a, c in exact_hist.items():
            for v in values:
                nxt_exact[a * v] += c
        mod_hist, exact_hist = nxt_mod, nxt_exact
    congruence_count = sum(c * c for c in mod_hist.values())
    equation_count = sum(c * c for c in exact_hist.values())
    return MomentCheck(
        m=m,
        interval=u,
        n=n,
        lhs=lhs,
        congruence_count=congruence_count,
        equation_count=equation_count,
    )


def parseval_identity(group: CharacterGroup, values) -> tuple[float, int]:
    """lhs = sum over all chi of |sum_{s in values} chi(s)|^2; rhs = phi * sum c_a^2.

    c_a counts the elements of `values` (a multiset) congruent to a and
    coprime to m.  The two sides agree exactly.
    """
    vals = list(values)
    sums = group.char_sums(vals)
    lhs = float((np.abs(sums) ** 2).sum())
    m = group.modulus.value
    counts = Counter(v % m for v in vals if math.gcd(v, m) == 1)
    rhs = group.phi * sum(c * c for c in counts.values())
    return lhs, rhs


@dataclass(frozen=True)
class LevelCensus:
    """Counts of nonprincipal characters whose sum magnitude clears each threshold."""

    m: int
    interval_length: int
    thresholds: tuple[float, ...]
    counts: tuple[int, ...]
    reference_curve: tuple[float, ...]
    parseval_total: float
    nonprincipal_total: int


def large_value_census(
    group: CharacterGroup,
    values,
    v_grid: list[float] | tuple[float, ...],
    interval_length: int | None = None,
) -> LevelCensus:
    """Census R(V) of nonprincipal characters with |sum chi(v)| >= V.

    The reference curve N^2/V^2 + m*N^4/V^6 is reported per threshold, never
    asserted.  parseval_total records sum over all characters of |S|^2 for
    the Chebyshev consistency check R(V)*V^2 <= total.
    """
    grid = [float(v) for v in v_grid]
    if any(v <= 0 for v in grid) or any(a > b for a, b in zip(grid, grid[1:])):
        raise ValueError(f"threshold grid must be positive and ascending, got {grid}")
    vals = list(values)
    length = int(interval_length) if interval_length is not None else (max(vals) if vals else 0)
    sums = group.char_sums(vals)
    mags = np.abs(sums)
    nonprincipal = mags[1:]
    m = group.modulus.value
    counts = tuple(int((nonprincipal >= v).sum()) for v in grid)
    curve = tuple(length**2 / v**2 + m * length**4 / v**6 for v in grid)
    return LevelCensus(
        m=m,
        interval_length=length,
        thresholds=tuple(grid),
        counts=counts,
        reference_curve=curve,
        parseval_total=float((mags**2).sum()),
        nonprincipal_total=group.phi - 1,
    )


def dyadic_intervals(n: int) -> list[tuple[int, int]]:
    """Split [1, n] into blocks (lo, hi] with hi <= 2*lo, starting from (0, 1]."""
    if n < 1:
        return []
    out = [(0, 1)]
    lo = 1
    while lo < n:
        hi = min(2 * lo, n)
        out.append((lo, hi))
        lo = hi
    return out


@dataclass(frozen=True)
class SumRecord:
    """Largest nonprincipal character-sum magnitude at one sweep point."""

    m: int
    bound: int
    shift: int | None
    chi_index: int
    magnitude: float
    reference: str
    reference_value: float
    ratio: float
    delta_eff: float


def _delta_eff(magnitude: float, n: int, m: int) -> float:
    """Effective cancellation exponent: magnitude = n * m^(-delta_eff)."""
    if magnitude <= 0.0:
        return float("inf")
    if n <= 0 or m <= 1:
        return float("nan")
    return -math.log(magnitude / n) / math.log(m)


def _max_nonprincipal(sums: np.ndarray) -> tuple[int, float]:
    mags = np.abs(sums[1:])
    i = int(np.argmax(mags))
    return i + 1, float(mags[i])


def burgess_report(group: CharacterGroup, n_grid: list[int]) -> list[SumRecord]:
    """Per interval length N: the largest |sum_{x<=N} chi(x)| over nonprincipal chi.

    Rows are emitted for ascending N with prefix sums carried between grid
    points.  The ratio is against the trivial bound N; delta_eff makes the
    observed cancellation comparable to a N*m^(-delta) reference shape.
    """
    if any(n < 1 for n in n_grid):
        raise ValueError(f"interval grid must be positive, got {n_grid}")
    if group.phi < 2:
        return []
    m = group.modulus.value
    records = []
    running = np.zeros(group.phi, dtype=np.complex128)
    prev = 0
    for n in sorted(set(int(n) for n in n_grid)):
        running = running + group.char_sums(range(prev + 1, n + 1))
        prev = n
        idx, mag = _max_nonprincipal(running)
        records.append(
            SumRecord(
                m=m,
                bound=n,
                shift=None,
                chi_index=idx,
                magnitude=mag,
                reference="trivial",
                reference_value=float(n),
                ratio=mag / n,
                delta_eff=_delta_eff(mag, n, m),
            )
        )
    return records


def vinogradov_report(
    group: CharacterGroup,
    n_grid: list[int],
    k: int,
    primes: PrimeTable | None = None,
) -> list[SumRecord]:
    """Per prime bound N: the largest |sum_{q<=N} chi(q+k)| over nonprincipal chi.

    Requires a prime modulus.  The reference curve is p^(1/4) * N^(2/3); the
    ratio is report-only since the curve's constant is not pinned down.
    """
    if not group.modulus.is_prime:
        raise PreconditionFailedError(
            f"shifted-prime report requires a prime modulus, got {group.modulus.value}"
        )
    if any(n < 1 for n in n_grid):
        raise ValueError(f"prime-bound grid must be positive, got {n_grid}")
    if group.phi < 2:
        return []
    p = group.modulus.value
    top = max(n_grid)
    table = primes if primes is not None and primes.limit >= top else sieve(top)
    records = []
    running = np.zeros(group.phi, dtype=np.complex128)
    prev = 0
    for n in sorted(set(int(n) for n in n_grid)):
        shifted = [q + k for q in table.in_range(prev, n)]
        running = running + group.char_sums(shifted)
        prev = n
        idx, mag = _max_nonprincipal(running)
        reference = p**0.25 * n ** (2.0 / 3.0)
        records.append(
            SumRecord(
                m=p,
                bound=n,
                shift=k,
                chi_index=idx,
                magnitude=mag,
                reference="vinogradov",
                reference_value=reference,
                ratio=mag / reference,
                delta_eff=_delta_eff(mag, n, p),
            )
        )
    return records

"""Counting prime solutions of q1*q2*(q3 + k) = lam (mod p) against pi(N)^3/p.

count_solutions resolves the third variable through a residue-multiplicity
table, so one instance costs O(pi(N)^2) modular operations instead of a
cubic triple loop.  character_sum_count re-derives the same number through
the full character sweep, which is the orthogonality identity behind the
main-term/error split.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from random import Random

import numpy as np

from .characters import CharacterGroup, build_group
from .errors import BudgetExceededError, DomainError, PreconditionFailedError
from .primes import PrimeTable, sieve
from .residue import as_modulus

__all__ = [
    "CongruenceInstance",
    "SolutionReport",
    "count_solutions",
    "character_sum_count",
    "principal_character_term",
    "solution_report",
    "solution_sweep",
    "resolve_bound",
    "resolve_lambdas",
    "exponent_threshold",
    "BASELINE_THRESHOLD",
    "DEFAULT_PAIR_BUDGET",
]

DEFAULT_PAIR_BUDGET = 200_000_000


@dataclass(frozen=True)
class CongruenceInstance:
    """One instance q1*q2*(q3 + k) = lam (mod p) over primes q1, q2, q3 <= N."""

    p: int
    n: int
    k: int
    lam: int

    def __post_init__(self):
        if not as_modulus(self.p).is_prime:
            raise PreconditionFailedError(f"modulus {self.p} is not prime")
        if not 1 <= self.n < self.p:
            raise PreconditionFailedError(f"need 1 <= N < p, got N={self.n}, p={self.p}")
        if self.k == 0:
            raise PreconditionFailedError("shift k must be nonzero")
        object.__setattr__(self, "lam", self.lam % self.p)
        if self.lam == 0:
            raise PreconditionFailedError(f"lambda must be coprime to p={self.p}")


def _prime_table(inst: CongruenceInstance, primes: PrimeTable | None) -> PrimeTable:
    if primes is not None and primes.limit >= inst.n:
        return primes
    return sieve(inst.n)


def count_solutions(
    inst: CongruenceInstance,
    primes: PrimeTable | None = None,
    max_pairs: int = DEFAULT_PAIR_BUDGET,
) -> int:
    """Exact number of ordered prime triples (q1, q2, q3) solving the congruence.

    For each pair (q1, q3) with q3 + k nonzero mod p, the remaining variable
    must satisfy q2 = lam * (q1 * (q3 + k))^(-1), and its multiplicity comes
    from the residue table of primes <= N.
    """
    table = _prime_table(inst, primes)
    qs = table.in_range(1, inst.n)
    if len(qs) ** 2 > max_pairs:
        raise BudgetExceededError(
            f"pi(N)^2 = {len(qs)**2} exceeds budget primecong.max_pairs={max_pairs}"
        )
    p = inst.p
    if not qs:
        return 0
    residues = np.asarray(qs, dtype=np.int64) % p
    mult = np.bincount(residues, minlength=p).astype(np.int64)
    inv1 = np.asarray([pow(int(r), -1, p) for r in residues], dtype=np.int64)
    shifted = (np.asarray(qs, dtype=np.int64) + inst.k) % p
    shifted = shifted[shifted != 0]
    if shifted.size == 0:
        return 0
    inv3 = np.asarray([pow(int(s), -1, p) for s in shifted], dtype=np.int64)
    t1 = (inst.lam * inv1) % p
    total = 0
    block = max(1, 50_000_000 // max(1, inv3.size))
    for lo in range(0, t1.size, block):
        targets = (t1[lo : lo + block, None] * inv3[None, :]) % p
        total += int(mult[targets].sum())
    return total


def character_sum_count(
    inst: CongruenceInstance,
    group: CharacterGroup | None = None,
    primes: PrimeTable | None = None,
) -> complex:
    """The solution count re-expressed as a full character sweep.

    Returns (1/phi(p)) * sum over chi of S(chi)^2 * T(chi) * conj(chi(lam)),
    where S sums chi over primes <= N and T sums chi over shifted primes.
    Equals count_solutions exactly up to rendering error.
    """
    g = group if group is not None and group.modulus.value == inst.p else build_group(inst.p)
    table = _prime_table(inst, primes)
    qs = table.in_range(1, inst.n)
    s = g.char_sums(qs)
    t = g.char_sums([q + inst.k for q in qs])
    lam_vals = g._roots[g.char_numerators(inst.lam)]
    return complex((s * s * t * np.conj(lam_vals)).sum() / g.phi)


def principal_character_term(inst: CongruenceInstance, primes: PrimeTable | None = None) -> float:
    """The principal character's share of the sweep: pi(N)^2 * #{q3 : q3+k != 0} / phi(p)."""
    table = _prime_table(inst, primes)
    qs = table.in_range(1, inst.n)
    good = sum(1 for q in qs if (q + inst.k) % inst.p != 0)
    return len(qs) ** 2 * good / (inst.p - 1)


def exponent_threshold(alpha, beta) -> Fraction:
    """max(alpha/(1-beta), (5+alpha)/(7-beta)) in exact rational arithmetic.

    This is the admissible-range exponent: the congruence keeps its main
    term for N > p^(theta+eps) given a shifted-prime sum bound p^alpha*N^beta.
    Pass Fractions (or strings like "2/3") to keep the arithmetic exact.
    """
    a, b = Fraction(alpha), Fraction(beta)
    if not (0 <= a < 1) or not (0 <= b < 1):
        raise DomainError(f"need 0 <= alpha < 1 and 0 <= beta < 1, got ({alpha}, {beta})")
    return max(a / (1 - b), (5 + a) / (7 - b))


#: Exponent produced by the shifted-prime bound pair (alpha, beta) = (1/4, 2/3).
BASELINE_THRESHOLD = Fraction(63, 76)


@dataclass(frozen=True)
class SolutionReport:
    """Exact count for one instance next to the equidistribution main term."""

    instance: CongruenceInstance
    solutions: int
    main_term: float
    ratio: float
    threshold_ok: bool
    runtime_ms: float


def solution_report(
    inst: CongruenceInstance,
    primes: PrimeTable | None = None,
    epsilon: float = 0.01,
    max_pairs: int = DEFAULT_PAIR_BUDGET,
) -> SolutionReport:
    """Count one instance and compare against pi(N)^3 / p."""
    table = _prime_table(inst, primes)
    start = time.perf_counter()
    j = count_solutions(inst, table, max_pairs=max_pairs)
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    pi_n = table.count_leq(inst.n)
    main = pi_n**3 / inst.p
    ratio = j / main if main > 0 else float("nan")
    threshold_ok = inst.n > inst.p ** (float(BASELINE_THRESHOLD) + epsilon)
    return SolutionReport(
        instance=inst,
        solutions=j,
        main_term=main,
        ratio=ratio,
        threshold_ok=threshold_ok,
        runtime_ms=elapsed_ms,
    )


def resolve_bound(p: int, n_rule) -> int:
    """Turn an N rule into a concrete bound: ints pass through, floats are
    exponents (N = ceil(p^e)); either is capped at p - 1."""
    if isinstance(n_rule, float):
        n = int(np.ceil(p**n_rule))
    else:
        n = int(n_rule)
    return max(1, min(n, p - 1))


def resolve_lambdas(p: int, lambda_rule, count: int, rng: Random) -> list[int]:
    """Turn a lambda rule into concrete residues: an int, a list, or "random"."""
    if lambda_rule == "random":
        return [rng.randrange(1, p) for _ in range(count)]
    if isinstance(lambda_rule, int):
        return [lambda_rule]
    return [int(v) for v in lambda_rule]


def solution_sweep(
    p_grid: list[int],
    n_rule,
    k: int,
    lambda_rule,
    lambdas_per_p: int = 1,
    seed: int = 0,
    epsilon: float = 0.01,
    max_pairs: int = DEFAULT_PAIR_BUDGET,
) -> list[SolutionReport]:
    """One SolutionReport per (p, lambda) grid point, rows in grid order."""
    rng = Random(seed)
    reports = []
    for p in sorted(p_grid):
        n = resolve_bound(p, n_rule)
        table = sieve(n)
        for lam in resolve_lambdas(p, lambda_rule, lambdas_per_p, rng):
            inst = CongruenceInstance(p=p, n=n, k=k, lam=lam)
            reports.append(solution_report(inst, table, epsilon=epsilon, max_pairs=max_pairs))
    return reports

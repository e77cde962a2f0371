"""Product sets {x1*...*xk mod m : xj in [1, Nj]} and their exceptional residues.

Sets are dense boolean masks over Z_m built by iterated set-multiplication,
so membership, coverage deficiency, and the gcd stratification of missing
residues are all exact.  Costs scale as O(m * sum(Nj)) per set, which keeps
full sweeps at desk scale under the configured work budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetExceededError, ModulusMismatchError, PreconditionFailedError
from .residue import Modulus, as_modulus, divisors

__all__ = [
    "ResidueSet",
    "CoverageReport",
    "product_set",
    "set_product",
    "missing_by_gcd",
    "verify_missing_multiples",
    "collision_count",
    "coverage_report",
    "coverage_sweep",
    "bounds_from_exponent",
    "DEFAULT_COVERAGE_WORK",
    "DEFAULT_COLLISION_TRIPLES",
]

DEFAULT_COVERAGE_WORK = 1_000_000_000
DEFAULT_COLLISION_TRIPLES = 1_000_000_000


class ResidueSet:
    """Dense membership set over {0, ..., m-1} with unit coverage statistics."""

    __slots__ = ("modulus", "mask", "covered_total", "covered_units", "missing_units")

    def __init__(self, modulus: Modulus, mask: np.ndarray):
        m = modulus.value
        if mask.shape != (m,):
            raise ValueError(f"mask length {mask.shape} does not match modulus {m}")
        self.modulus = modulus
        self.mask = mask.astype(bool, copy=False)
        self.covered_total = int(self.mask.sum())
        units = np.gcd(np.arange(m, dtype=np.int64), m) == 1
        self.covered_units = int((self.mask & units).sum())
        self.missing_units = modulus.phi - self.covered_units

    def __contains__(self, residue: int) -> bool:
        return bool(self.mask[residue % self.modulus.value])

    def __len__(self) -> int:
        return self.covered_total

    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def missing(self) -> np.ndarray:
        return np.flatnonzero(~self.mask)

    def __repr__(self) -> str:
        return (
            f"ResidueSet(mod {self.modulus.value}, "
            f"{self.covered_total}/{self.modulus.value} covered)"
        )


def _interval_counts(m: int, n: int) -> np.ndarray:
    """Multiplicity of each residue class among x in [1, n]."""
    counts = np.full(m, n // m, dtype=np.float64)
    rem = n % m
    if rem:
        counts[1 : rem + 1] += 1
    return counts


def product_set(modulus: int | Modulus, bounds: list[int] | tuple[int, ...]) -> ResidueSet:
    """Exact {x1*...*xk mod m : xj in [1, Nj]} by iterated set-multiplication."""
    mod = as_modulus(modulus)
    if len(bounds) == 0:
        raise ValueError("at least one interval bound is required")
    if any(n < 1 for n in bounds):
        raise ValueError(f"interval bounds must be >= 1, got {list(bounds)}")
    m = mod.value
    mask = np.zeros(m, dtype=bool)
    first = min(bounds[0], m)
    mask[np.arange(1, first + 1, dtype=np.int64) % m] = True
    for n in bounds[1:]:
        members = np.flatnonzero(mask).astype(np.int64)
        nxt = np.zeros(m, dtype=bool)
        for x in range(1, min(n, m) + 1):
            nxt[(members * x) % m] = True
        mask = nxt
    return ResidueSet(mod, mask)


def set_product(a: ResidueSet, b: ResidueSet) -> ResidueSet:
    """{x*y mod m : x in a, y in b}."""
    if a.modulus.value != b.modulus.value:
        raise ModulusMismatchError(
            f"sets have different moduli ({a.modulus.value} vs {b.modulus.value})"
        )
    m = a.modulus.value
    xs, ys = a.members().astype(np.int64), b.members().astype(np.int64)
    if len(ys) < len(xs):
        xs, ys = ys, xs
    mask = np.zeros(m, dtype=bool)
    for x in xs:
        mask[(ys * int(x)) % m] = True
    return ResidueSet(a.modulus, mask)


def missing_by_gcd(rset: ResidueSet) -> dict[int, list[int]]:
    """Partition of the missing residues by gcd with m, keyed by every divisor of m."""
    m = rset.modulus.value
    missing = rset.missing()
    g = np.gcd(missing, m)
    out: dict[int, list[int]] = {d: [] for d in divisors(m)}
    for d in out:
        out[d] = [int(r) for r in missing[g == d]]
    return out


def verify_missing_multiples(q: int, n: int, bound: int) -> bool:
    """Check that none of q, 2q, ..., nq lies in the product set of [1,B]^3 mod q*n.

    Applicable as stated only for prime q > B with B^3 < q*n, so that no
    product can wrap around the modulus or pick up a factor of q.
    """
    if q < 2 or n < 1 or bound < 1:
        raise PreconditionFailedError(f"need q >= 2, n >= 1, B >= 1; got ({q}, {n}, {bound})")
    mod = as_modulus(q * n)
    q_mod = as_modulus(q)
    if not q_mod.is_prime:
        raise PreconditionFailedError(f"q={q} is not prime")
    if q <= bound:
        raise PreconditionFailedError(f"claim requires q > B, got q={q} <= B={bound}")
    if bound**3 >= mod.value:
        raise PreconditionFailedError(
            f"claim requires B^3 < m, got {bound}^3 = {bound**3} >= {mod.value}"
        )
    rset = product_set(mod, [bound, bound, bound])
    return not any((t * q) % mod.value in rset for t in range(1, n + 1))


def collision_count(
    modulus: int | Modulus,
    bounds: list[int] | tuple[int, ...],
    max_triples: int = DEFAULT_COLLISION_TRIPLES,
) -> int:
    """Exact number of solutions of x1*x2*x3 = y1*y2*y3 (mod m), xj, yj in [1, Nj].

    Computed as sum of c_a^2 over the histogram c_a of products mod m; the
    histogram is built stage by stage (interval convolution), never by
    enumerating all triples.
    """
    mod = as_modulus(modulus)
    if len(bounds) == 0:
        raise ValueError("at least one interval bound is required")
    if any(n < 1 for n in bounds):
        raise ValueError(f"interval bounds must be >= 1, got {list(bounds)}")
    total = math.prod(bounds)
    if total > max_triples:
        raise BudgetExceededError(
            f"{total} tuples exceed budget collisions.max_triples={max_triples}"
        )
    m = mod.value
    # Counts stay below max_triples <= 2^53, so float64 accumulation is exact.
    hist = _interval_counts(m, bounds[0])
    for n in bounds[1:]:
        weights = _interval_counts(m, n)
        idx = np.flatnonzero(hist).astype(np.int64)
        vals = hist[idx]
        nxt = np.zeros(m, dtype=np.float64)
        for r in np.flatnonzero(weights):
            w = weights[r]
            nxt += np.bincount((idx * int(r)) % m, weights=vals * w, minlength=m)
        hist = nxt
    return sum(int(c) * int(c) for c in hist[hist > 0])


@dataclass(frozen=True)
class CoverageReport:
    """One coverage measurement: deficiency of a product set over Z_m."""

    m: int
    k: int
    bounds: tuple[int, ...]
    epsilon: float | None
    exponent_sum: float
    covered_total: int
    deficiency: int
    deficiency_fraction: float
    missing_units: int
    missing_by_gcd: dict[int, int] = field(hash=False)
    cubefree: bool


def bounds_from_exponent(m: int, epsilon: float, k: int) -> tuple[int, ...]:
    """Interval bounds Nj = ceil(m^((1+epsilon)/k)), identical in every slot."""
    n = math.ceil(m ** ((1.0 + epsilon) / k))
    return (max(n, 1),) * k


def coverage_report(
    modulus: int | Modulus,
    bounds: list[int] | tuple[int, ...],
    epsilon: float | None = None,
    max_work: int = DEFAULT_COVERAGE_WORK,
) -> CoverageReport:
    """Build the product set and measure its coverage deficiency."""
    mod = as_modulus(modulus)
    m = mod.value
    work = m * sum(min(n, m) for n in bounds)
    if work > max_work:
        raise BudgetExceededError(
            f"m*sum(Nj) = {work} exceeds budget coverage.max_work={max_work}"
        )
    rset = product_set(mod, bounds)
    per_gcd = {d: len(v) for d, v in missing_by_gcd(rset).items()}
    log_m = math.log(m) if m > 1 else float("nan")
    exponent_sum = sum(math.log(n) for n in bounds) / log_m if m > 1 else float("nan")
    deficiency = m - rset.covered_total
    return CoverageReport(
        m=m,
        k=len(bounds),
        bounds=tuple(int(n) for n in bounds),
        epsilon=epsilon,
        exponent_sum=exponent_sum,
        covered_total=rset.covered_total,
        deficiency=deficiency,
        deficiency_fraction=deficiency / m,
        missing_units=rset.missing_units,
        missing_by_gcd=per_gcd,
        cubefree=mod.is_cubefree,
    )


def coverage_sweep(
    m_grid: list[int],
    epsilon: float,
    k: int,
    max_work: int = DEFAULT_COVERAGE_WORK,
) -> list[CoverageReport]:
    """One CoverageReport per modulus, bounds from the exponent rule, rows sorted by m.

    k=4 carries the cubefree restriction: non-cubefree moduli are filtered out.
    """
    if k not in (3, 4):
        raise ValueError(f"sweep supports k in {{3, 4}}, got {k}")
    rows = []
    for m in sorted(m_grid):
        mod = as_modulus(m)
        if k == 4 and not mod.is_cubefree:
            continue
        rows.append(coverage_report(mod, bounds_from_exponent(m, epsilon, k), epsilon, max_work))
    return rows

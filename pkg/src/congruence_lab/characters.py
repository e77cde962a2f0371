"""The full group of Dirichlet characters mod m, with exact evaluation.

A character is an exponent vector over the cyclic components of the unit
group (Z/m)*, one component per odd prime-power factor plus the standard
<-1> x <5> pair for factors 2^e with e >= 3.  Discrete logs are tabulated
in full once per group, so single evaluations are O(1) lookups and whole
character sweeps reduce to one integer matrix product per block.

Values are exact roots of unity (numerator, order) rendered to complex
only at aggregation points.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

import numpy as np

from .errors import GroupMismatchError
from .residue import Modulus, as_modulus, factorize

__all__ = [
    "UnityValue",
    "Character",
    "CharacterGroup",
    "build_group",
    "all_characters",
]


@dataclass(frozen=True)
class UnityValue:
    """Exact e^(2*pi*i*numerator/order), or the distinguished Zero."""

    numerator: int
    order: int
    is_zero: bool = False

    @staticmethod
    def zero() -> "UnityValue":
        return UnityValue(0, 1, is_zero=True)

    @staticmethod
    def root(numerator: int, order: int) -> "UnityValue":
        """Canonical (reduced) root of unity."""
        if order < 1:
            raise ValueError(f"order must be positive, got {order}")
        k = numerator % order
        g = math.gcd(k, order)
        return UnityValue(k // g, order // g)

    @property
    def value(self) -> complex:
        """Rendered complex value (within 1e-12 of the exact root)."""
        if self.is_zero:
            return 0j
        if self.order == 1:
            return 1 + 0j
        if 2 * self.numerator == self.order:
            return -1 + 0j
        angle = 2.0 * math.pi * self.numerator / self.order
        return complex(math.cos(angle), math.sin(angle))

    def __complex__(self) -> complex:
        return self.value

    def __mul__(self, other: "UnityValue") -> "UnityValue":
        if self.is_zero or other.is_zero:
            return UnityValue.zero()
        d = self.order * other.order
        k = self.numerator * other.order + other.numerator * self.order
        return UnityValue.root(k, d)

    def conjugate(self) -> "UnityValue":
        if self.is_zero:
            return self
        return UnityValue.root(-self.numerator, self.order)


def _primitive_root(pk: int, p: int, phi_pk: int) -> int:
    """Smallest primitive root mod pk = p^e for odd prime p."""
    checks = [phi_pk // q for q, _ in factorize(phi_pk)]
    g = 2
    while True:
        if g % p != 0 and all(pow(g, c, pk) != 1 for c in checks):
            return g
        g += 1


@dataclass(frozen=True)
class Character:
    """One Dirichlet character: exponents over the group's cyclic components."""

    group: "CharacterGroup"
    exponents: tuple[int, ...]

    def __call__(self, n: int) -> UnityValue:
        return self.group._evaluate(self.exponents, n)

    @property
    def is_principal(self) -> bool:
        return all(a == 0 for a in self.exponents)

    @property
    def index(self) -> int:
        """Rank in the canonical iteration order (0 = principal)."""
        idx = 0
        for a, d in zip(self.exponents, self.group.component_orders):
            idx = idx * d + a
        return idx

    def conjugate(self) -> "Character":
        exps = tuple((-a) % d for a, d in zip(self.exponents, self.group.component_orders))
        return Character(self.group, exps)

    def __mul__(self, other: "Character") -> "Character":
        if self.group != other.group:
            raise GroupMismatchError(
                f"characters live in different groups "
                f"(mod {self.group.modulus.value} vs mod {other.group.modulus.value})"
            )
        exps = tuple(
            (a + b) % d
            for a, b, d in zip(self.exponents, other.exponents, self.group.component_orders)
        )
        return Character(self.group, exps)


class CharacterGroup:
    """All phi(m) Dirichlet characters mod m, built over the CRT factor components."""

    def __init__(self, modulus: int | Modulus):
        mod = as_modulus(modulus)
        self.modulus = mod
        comp_moduli: list[int] = []
        comp_orders: list[int] = []
        comp_generators: list[int] = []
        dlogs: list[np.ndarray] = []

        for p, e in mod.factorization:
            pk = p**e
            if p == 2:
                if e == 1:
                    continue  # (Z/2)* is trivial: no component
                if e == 2:
                    table = np.full(4, -1, dtype=np.int64)
                    table[1] = 0
                    table[3] = 1
                    comp_moduli.append(4)
                    comp_orders.append(2)
                    comp_generators.append(3)
                    dlogs.append(table)
                else:
                    # <-1> x <5>, sign component first
                    half = pk >> 2
                    sign = np.full(pk, -1, dtype=np.int64)
                    five = np.full(pk, -1, dtype=np.int64)
                    for s in (0, 1):
                        u = pk - 1 if s else 1
                        for t in range(half):
                            sign[u] = s
                            five[u] = t
                            u = u * 5 % pk
                    comp_moduli.extend((pk, pk))
                    comp_orders.extend((2, half))
                    comp_generators.extend((pk - 1, 5))
                    dlogs.extend((sign, five))
            else:
                phi_pk = pk // p * (p - 1)
                g = _primitive_root(pk, p, phi_pk)
                table = np.full(pk, -1, dtype=np.int64)
                pw = 1
                for j in range(phi_pk):
                    table[pw] = j
                    pw = pw * g % pk
                comp_moduli.append(pk)
                comp_orders.append(phi_pk)
                comp_generators.append(g)
                dlogs.append(table)

        self.component_moduli = tuple(comp_moduli)
        self.component_orders = tuple(comp_orders)
        self.component_generators = tuple(comp_generators)
        self._dlogs = dlogs
        self.order = math.lcm(*comp_orders) if comp_orders else 1
        self._weights = tuple(self.order // d for d in comp_orders)

    # -- basic protocol ------------------------------------------------

    @property
    def phi(self) -> int:
        return self.modulus.phi

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CharacterGroup):
            return NotImplemented
        return self.modulus.value == other.modulus.value

    def __hash__(self) -> int:
        return hash(("CharacterGroup", self.modulus.value))

    def __repr__(self) -> str:
        return f"CharacterGroup(mod {self.modulus.value}, {self.phi} characters)"

    # -- construction of characters -------------------------------------

    @property
    def principal(self) -> Character:
        return Character(self, (0,) * len(self.component_orders))

    def character(self, exponents: tuple[int, ...] | list[int]) -> Character:
        exps = tuple(int(a) for a in exponents)
        if len(exps) != len(self.component_orders):
            raise ValueError(
                f"expected {len(self.component_orders)} exponents, got {len(exps)}"
            )
        return Character(self, tuple(a % d for a, d in zip(exps, self.component_orders)))

    def characters(self) -> Iterator[Character]:
        """All phi(m) characters in canonical order, principal first."""
        for exps in itertools.product(*(range(d) for d in self.component_orders)):
            yield Character(self, exps)

    # -- exact evaluation ------------------------------------------------

    def dlog_vector(self, n: int) -> tuple[int, ...] | None:
        """Exponent vector of n over the component generators, or None for non-units."""
        m = self.modulus.value
        n %= m
        if math.gcd(n, m) != 1:
            return None
        return tuple(int(self._dlogs[i][n % pk]) for i, pk in enumerate(self.component_moduli))

    def _evaluate(self, exponents: tuple[int, ...], n: int) -> UnityValue:
        xs = self.dlog_vector(n)
        if xs is None:
            return UnityValue.zero()
        num = 0
        for a, w, x in zip(exponents, self._weights, xs):
            num += a * w * x
        return UnityValue.root(num, self.order)

    # -- vectorized sweep machinery ---------------------------------------

    @cached_property
    def unit_residues(self) -> np.ndarray:
        m = self.modulus.value
        r = np.arange(m, dtype=np.int64)
        return np.flatnonzero(np.gcd(r, m) == 1).astype(np.int64)

    @cached_property
    def _roots(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.order) / self.order)

    @cached_property
    def _exponent_matrix(self) -> np.ndarray:
        """phi x r matrix of all character exponent vectors, canonical row order."""
        r = len(self.component_orders)
        if r == 0:
            return np.zeros((1, 0), dtype=np.int64)
        rows = list(itertools.product(*(range(d) for d in self.component_orders)))
        return np.asarray(rows, dtype=np.int64)

    @cached_property
    def _scaled_exponent_matrix(self) -> np.ndarray:
        w = np.asarray(self._weights, dtype=np.int64)
        return self._exponent_matrix * w

    def _dlog_matrix(self, units: np.ndarray) -> np.ndarray:
        """len(units) x r dlog matrix; callers must pass unit residues only."""
        cols = [
            self._dlogs[i][units % pk] for i, pk in enumerate(self.component_moduli)
        ]
        if not cols:
            return np.zeros((len(units), 0), dtype=np.int64)
        return np.stack(cols, axis=1)

    def char_numerators(self, n: int) -> np.ndarray:
        """Numerator of chi(n) (to base order) for every character; n must be a unit."""
        xs = self.dlog_vector(n)
        if xs is None:
            raise ValueError(f"{n} is not a unit mod {self.modulus.value}")
        x = np.asarray(xs, dtype=np.int64)
        return (self._scaled_exponent_matrix @ x) % self.order

    def char_sums(self, values, block: int = 512) -> np.ndarray:
        """For every character chi (canonical order) the sum of chi(v) over values.

        Non-unit values contribute zero.  Repeats in `values` are summed with
        multiplicity.  Returns a complex array of length phi(m).
        """
        m = self.modulus.value
        vals = np.asarray(list(values), dtype=np.int64) % m
        if vals.size:
            vals = vals[np.gcd(vals, m) == 1]
        if len(self.component_orders) == 0:
            return np.array([complex(vals.size)])
        if vals.size == 0:
            return np.zeros(self.phi, dtype=np.complex128)
        x_t = self._dlog_matrix(vals).T.copy()  # r x n
        a = self._scaled_exponent_matrix
        roots = self._roots
        out = np.empty(self.phi, dtype=np.complex128)
        for lo in range(0, self.phi, block):
            hi = min(lo + block, self.phi)
            k = (a[lo:hi] @ x_t) % self.order
            out[lo:hi] = roots[k].sum(axis=1)
        return out

    def character_table(self) -> np.ndarray:
        """Full phi x phi table chi(u) over ascending unit residues u."""
        units = self.unit_residues
        if len(self.component_orders) == 0:
            return np.ones((1, len(units)), dtype=np.complex128)
        k = (self._scaled_exponent_matrix @ self._dlog_matrix(units).T) % self.order
        return self._roots[k]

    def orthogonality(self, a: int, b: int) -> complex:
        """(1/phi) * sum over chi of chi(a) * conj(chi(b))."""
        m = self.modulus.value
        if math.gcd(a % m, m) != 1 or math.gcd(b % m, m) != 1:
            return 0j
        if len(self.component_orders) == 0:
            return 1 + 0j
        ka = self.char_numerators(a)
        kb = self.char_numerators(b)
        return complex(self._roots[(ka - kb) % self.order].sum() / self.phi)


def build_group(m: int | Modulus) -> CharacterGroup:
    """Construct the character group mod m with canonical component ordering."""
    return CharacterGroup(m)


def all_characters(group: CharacterGroup) -> Iterator[Character]:
    """Iterate the group's characters in canonical order (principal first)."""
    return group.characters()

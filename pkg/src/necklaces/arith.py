"""Exact integer and prime-field primitives.

Everything here works on Python ints, so nothing overflows.  Functions that
stand for a costed operation (exponentiation, gcd) take an optional ledger
and bump it once per call.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from necklaces.counting import OpLedger

MAX_MODULUS = 2**64


class DomainError(ValueError):
    """An argument lies outside the domain of a number-theoretic function."""


def gcd(a: int, b: int, ledger: Optional["OpLedger"] = None) -> int:
    if a < 0 or b < 0:
        raise DomainError(f"gcd is defined here for nonnegative ints, got ({a}, {b})")
    if a == 0 and b == 0:
        raise DomainError("gcd(0, 0) is undefined")
    if ledger is not None:
        ledger.gcds += 1
    return math.gcd(a, b)


def factorize(m: int) -> dict[int, int]:
    """Prime factorization of ``m >= 1`` by trial division, as ``{p: e}``."""
    if m < 1:
        raise DomainError(f"cannot factor {m}")
    out: dict[int, int] = {}
    p = 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def totient(m: int) -> int:
    if m < 1:
        raise DomainError(f"totient needs m >= 1, got {m}")
    result = m
    for p in factorize(m):
        result -= result // p
    return result


def divisors(m: int) -> list[int]:
    if m < 1:
        raise DomainError(f"divisors needs m >= 1, got {m}")
    small, large = [], []
    d = 1
    while d * d <= m:
        if m % d == 0:
            small.append(d)
            if d * d != m:
                large.append(m // d)
        d += 1
    return small + large[::-1]


# Deterministic Miller-Rabin witnesses for every n < 3.3e24, which covers 64 bits.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    for p in _MR_BASES:
        if m % p == 0:
            return m == p
    d, s = m - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, m)
        if x == 1 or x == m - 1:
            continue
        for _ in range(s - 1):
            x = x * x % m
            if x == m - 1:
                break
        else:
            return False
    return True


@functools.lru_cache(maxsize=256)
def _valid_modulus(q: int) -> bool:
    return 2 <= q < MAX_MODULUS and is_prime(q)


@dataclass(frozen=True)
class FieldElement:
    """A residue of the prime field of size ``modulus``."""

    value: int
    modulus: int

    def __post_init__(self):
        if not _valid_modulus(self.modulus):
            raise DomainError(f"modulus {self.modulus} is not a prime below 2**64")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise DomainError(f"mixed moduli {self.modulus} and {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def __mul__(self, other) -> "FieldElement":
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.value * v % self.modulus, self.modulus)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if isinstance(other, (FieldElement, int)):
            try:
                return self.value == self._coerce(other)
            except DomainError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.modulus))

    def __pow__(self, exponent: int) -> "FieldElement":
        return mod_pow(self, exponent)

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"{self.value} mod {self.modulus}"


def mod_pow(base: FieldElement, exponent: int, ledger: Optional["OpLedger"] = None) -> FieldElement:
    """``base**exponent`` in the field, charged as one exponentiation.

    Python's three-argument ``pow`` already does square-and-multiply; the
    ledger only sees the power evaluation as a whole.  ``0**0`` is 1.
    """
    if exponent < 0:
        raise DomainError(f"negative exponent {exponent}")
    if ledger is not None:
        ledger.exponentiations += 1
    return FieldElement(pow(base.value, exponent, base.modulus), base.modulus)


def multiplicative_order(a: FieldElement) -> int:
    """Least ``k >= 1`` with ``a**k == 1``; only divisors of ``q - 1`` are tried."""
    if a.value == 0:
        raise DomainError("0 has no multiplicative order")
    q = a.modulus
    order = q - 1
    # Strip prime factors of q-1 while the power still lands on 1.
    for p in factorize(q - 1):
        while order % p == 0 and pow(a.value, order // p, q) == 1:
            order //= p
    return order


def primitive_root(q: int) -> int:
    """Smallest generator of the multiplicative group of the field of size ``q``."""
    if not is_prime(q):
        raise DomainError(f"{q} is not prime")
    if q == 2:
        return 1
    primes = list(factorize(q - 1))
    for g in range(2, q):
        if all(pow(g, (q - 1) // p, q) != 1 for p in primes):
            return g
    raise AssertionError("unreachable: every prime field has a primitive root")

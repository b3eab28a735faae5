"""Brute-force orbit enumeration, used as the oracle for the counting formulas.

Strings of length n over F_q are coefficient vectors ``(a_0, ..., a_{n-1})``
of polynomials of degree < n.  Internally each string is the integer
``sum(a_k * q**(n-1-k))``, so a_0 is the most significant digit and integer
order coincides with lexicographic order of the coefficient vector.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from necklaces.arith import FieldElement, is_prime, primitive_root
from necklaces.counting import ValidationError

DEFAULT_LIMIT = 10**6


class EnumerationLimitError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class NecklaceString:
    coeffs: tuple[int, ...]
    q: int

    def __post_init__(self):
        if not self.coeffs:
            raise ValidationError("a necklace string needs length >= 1")
        if any(not 0 <= a < self.q for a in self.coeffs):
            raise ValidationError(f"coefficients {self.coeffs} not all in [0, {self.q})")

    @property
    def n(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_code(cls, code: int, q: int, n: int) -> "NecklaceString":
        digits = []
        for _ in range(n):
            code, a = divmod(code, q)
            digits.append(a)
        return cls(tuple(reversed(digits)), q)

    def code(self) -> int:
        out = 0
        for a in self.coeffs:
            out = out * self.q + a
        return out

    @classmethod
    def parse(cls, text: str, q: int, n: int) -> "NecklaceString":
        """Read polynomial notation such as ``"3x+4"`` or ``"x^2+1"``."""
        coeffs = [0] * n
        for term in text.replace(" ", "").split("+"):
            if "x" in term:
                c, _, power = term.partition("x")
                k = int(power[1:]) if power else 1
                a = int(c) if c else 1
            else:
                k, a = 0, int(term)
            if k >= n:
                raise ValidationError(f"degree {k} too large for length {n}")
            coeffs[k] = (coeffs[k] + a) % q
        return cls(tuple(coeffs), q)

    def __str__(self) -> str:
        terms = []
        for k in range(self.n - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            if k == 0:
                terms.append(str(a))
            else:
                var = "x" if k == 1 else f"x^{k}"
                terms.append(var if a == 1 else f"{a}{var}")
        return "+".join(terms) or "0"


@dataclass(frozen=True)
class RelationSpec:
    """Generators of an equivalence: shift by ``lam`` (1 = rotation), optional scalars."""

    lam: int = 1
    scalars: bool = False

    @classmethod
    def for_category(cls, category: str, lam: int = 1) -> "RelationSpec":
        if category == "classic":
            return cls(1, False)
        if category == "1":
            return cls(1, True)
        if category == "2":
            return cls(lam, False)
        if category == "3":
            return cls(lam, True)
        raise ValidationError(f"unknown category {category!r}")

    @property
    def shift(self) -> str:
        return "cyclic" if self.lam == 1 else "constacyclic"


@dataclass
class OrbitDecomposition:
    q: int
    n: int
    spec: RelationSpec
    classes: list[list[NecklaceString]]

    @property
    def representatives(self) -> list[NecklaceString]:
        return [c[0] for c in self.classes]

    @property
    def sizes(self) -> Counter:
        return Counter(len(c) for c in self.classes)

    def __len__(self) -> int:
        return len(self.classes)


def _as_int(x) -> int:
    return x.value if isinstance(x, FieldElement) else int(x)


def constacyclic_shift(s: NecklaceString, lam) -> NecklaceString:
    """Multiply by x modulo ``x**n - lam``: the top coefficient wraps round times lam."""
    lam = _as_int(lam) % s.q
    if lam == 0:
        raise ValidationError("shift constant must be nonzero")
    a = s.coeffs
    return NecklaceString((lam * a[-1] % s.q,) + a[:-1], s.q)


def scalar_multiply(s: NecklaceString, c) -> NecklaceString:
    c = _as_int(c) % s.q
    if c == 0:
        raise ValidationError("scalar must be nonzero")
    return NecklaceString(tuple(c * a % s.q for a in s.coeffs), s.q)


def _check(q: int, n: int, spec: RelationSpec, limit: int) -> int:
    if not is_prime(q):
        raise ValidationError(f"q must be prime, got {q}")
    if n < 1:
        raise ValidationError(f"n must be positive, got {n}")
    if not 1 <= spec.lam < q:
        raise ValidationError(f"lambda must lie in [1, {q - 1}], got {spec.lam}")
    size = q**n
    if size > limit:
        raise EnumerationLimitError(f"{q}^{n} = {size} strings exceeds the enumeration limit {limit}")
    return size


def _generator_images(q: int, n: int, spec: RelationSpec) -> list[np.ndarray]:
    codes = np.arange(q**n, dtype=np.int64)
    top = q ** (n - 1)
    gens = []
    shifted = (spec.lam * (codes % q)) % q * top + codes // q
    gens.append(shifted)
    if spec.scalars and q > 2:
        # A primitive root generates every nonzero scalar.
        g = primitive_root(q)
        scaled = np.zeros_like(codes)
        rest = codes.copy()
        place = 1
        for _ in range(n):
            scaled += (g * (rest % q)) % q * place
            rest //= q
            place *= q
        gens.append(scaled)
    return gens


def orbit_labels(q: int, n: int, spec: RelationSpec, limit: int = DEFAULT_LIMIT) -> np.ndarray:
    """For each string code, the smallest code in its class.

    Min-label propagation over the generator permutations and their
    inverses, with pointer jumping; stops at the fixed point, where labels
    are constant on classes and equal to the class minimum.
    """
    size = _check(q, n, spec, limit)
    edges = []
    for image in _generator_images(q, n, spec):
        inverse = np.empty_like(image)
        inverse[image] = np.arange(size, dtype=np.int64)
        edges += [image, inverse]
    labels = np.arange(size, dtype=np.int64)
    while True:
        new = labels.copy()
        for e in edges:
            np.minimum(new, new[e], out=new)
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


def decompose(q: int, n: int, spec: RelationSpec, limit: int = DEFAULT_LIMIT) -> OrbitDecomposition:
    labels = orbit_labels(q, n, spec, limit)
    order = np.argsort(labels, kind="stable")
    bounds = np.flatnonzero(np.diff(labels[order])) + 1
    classes = [
        [NecklaceString.from_code(int(c), q, n) for c in chunk]
        for chunk in np.split(order, bounds)
    ]
    return OrbitDecomposition(q, n, spec, classes)


def oracle_count(q: int, n: int, spec: RelationSpec, limit: int = DEFAULT_LIMIT) -> int:
    labels = orbit_labels(q, n, spec, limit)
    return int(np.count_nonzero(labels == np.arange(labels.size)))


def class_sizes(q: int, n: int, spec: RelationSpec, limit: int = DEFAULT_LIMIT) -> Counter:
    labels = orbit_labels(q, n, spec, limit)
    counts = np.bincount(labels)
    return Counter(int(c) for c in counts[counts > 0])


def orbit_of(s: NecklaceString, spec: RelationSpec) -> set[NecklaceString]:
    """Closure of one string by breadth-first search; slow, for spot checks."""
    scalars: Iterable[int] = range(1, s.q) if spec.scalars else (1,)
    seen = {s}
    frontier = [s]
    while frontier:
        nxt: list[NecklaceString] = []
        for x in frontier:
            for y in [constacyclic_shift(x, spec.lam)] + [scalar_multiply(x, c) for c in scalars]:
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen

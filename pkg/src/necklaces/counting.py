"""Closed-form necklace counts and the three evaluators for category 3.

Category 1 is rotation plus nonzero scalars, category 2 is the constacyclic
shift by a fixed ``lam``, category 3 is that shift plus nonzero scalars.
Every evaluator returns a :class:`CountOutcome` whose ledger tallies the
abstract operations it performed.  All arithmetic is on Python ints; the
final division is checked and never rounded.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

from necklaces.arith import (
    DomainError,
    FieldElement,
    divisors,
    gcd,
    is_prime,
    mod_pow,
    multiplicative_order,
    totient,
)

STRATEGIES = ("naive", "lambda_cache", "gcd_grouped")


class ValidationError(ValueError):
    """Bad problem parameters (composite q, n < 1, lam out of range)."""


class DivisibilityError(ArithmeticError):
    """A Burnside numerator failed to divide exactly: an implementation bug."""


@dataclass
class OpLedger:
    exponentiations: int = 0
    multiplications: int = 0
    additions: int = 0  # additions and subtractions together
    gcds: int = 0
    divisions: int = 0

    def __add__(self, other: "OpLedger") -> "OpLedger":
        return OpLedger(**{k: v + getattr(other, k) for k, v in asdict(self).items()})

    def merge(self, other: "OpLedger") -> None:
        for k, v in asdict(other).items():
            setattr(self, k, getattr(self, k) + v)

    def as_dict(self) -> dict[str, int]:
        return asdict(self)


@dataclass(frozen=True)
class NecklaceInstance:
    q: int
    n: int
    lam: int
    ord_lambda: int = field(init=False)
    L: int = field(init=False)

    def __post_init__(self):
        _check_qn(self.q, self.n)
        if not 1 <= self.lam < self.q:
            raise ValidationError(f"lambda must lie in [1, {self.q - 1}], got {self.lam}")
        try:
            order = multiplicative_order(FieldElement(self.lam, self.q))
        except DomainError as exc:
            raise ValidationError(str(exc)) from exc
        object.__setattr__(self, "ord_lambda", order)
        object.__setattr__(self, "L", order * self.n)

    @property
    def lam_element(self) -> FieldElement:
        return FieldElement(self.lam, self.q)


@dataclass
class CountOutcome:
    count: int
    strategy: str
    ledger: OpLedger
    match_count: int = 0
    numerator: int = 0
    # Step 2/3 bookkeeping of the grouped evaluator; kept out of the ledger.
    setup_ops: int = 0
    # Exponentiations split into "precompute", "condition" and "terms".
    phases: dict[str, int] = field(default_factory=dict)


@dataclass
class GcdGrouping:
    gcdiv: list[int]  # gcdiv[i - 1] = gcd(n, i) for i in 1..L
    distinct: list[int]
    groups: list[list[int]]
    nbygcd: list[int]
    setup_ops: int = 0

    @property
    def d(self) -> int:
        return len(self.distinct)


def _check_qn(q: int, n: int) -> None:
    if not isinstance(q, int) or not is_prime(q):
        raise ValidationError(f"q must be prime, got {q}")
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"n must be a positive integer, got {n}")


def _finish(numerator: int, divisor: int, ledger: OpLedger, plus_one: bool = True) -> int:
    quotient, remainder = divmod(numerator, divisor)
    ledger.divisions += 1
    if remainder:
        raise DivisibilityError(f"numerator {numerator} not divisible by {divisor}")
    if plus_one:
        ledger.additions += 1
        quotient += 1
    return quotient


def count_classic(q: int, n: int) -> CountOutcome:
    """Plain necklaces: ``(1/n) * sum over d | n of phi(n/d) * q**d``."""
    _check_qn(q, n)
    ledger = OpLedger()
    total = 0
    for d in divisors(n):
        ledger.divisions += 1
        ledger.exponentiations += 1
        ledger.multiplications += 1
        ledger.additions += 1
        total += totient(n // d) * q**d
    count = _finish(total, n, ledger, plus_one=False)
    return CountOutcome(count, "closed_form", ledger, numerator=total)


def count_cat1(q: int, n: int) -> CountOutcome:
    _check_qn(q, n)
    ledger = OpLedger()
    total = 0
    for d in divisors(n):
        g = gcd(d, q - 1, ledger)
        ledger.divisions += 1
        ledger.exponentiations += 1
        ledger.multiplications += 2
        ledger.additions += 2
        total += totient(d) * g * (q ** (n // d) - 1)
    count = _finish(total, (q - 1) * n, ledger)
    return CountOutcome(count, "closed_form", ledger, numerator=total)


def count_cat2(inst: NecklaceInstance) -> CountOutcome:
    q, n, L = inst.q, inst.n, inst.L
    lam = inst.lam_element
    ledger = OpLedger()
    total = matches = 0
    for i in range(1, L + 1):
        g = gcd(n, i, ledger)
        ledger.divisions += 1
        if mod_pow(lam, i // g, ledger) == 1:
            matches += 1
            total += _fixed_nonzero(q, g, ledger)
    count = _finish(total, L, ledger)
    return CountOutcome(count, "closed_form", ledger, match_count=matches, numerator=total)


def _phases(precompute: int, total: int, matches: int) -> dict[str, int]:
    return {"precompute": precompute, "condition": total - precompute - matches, "terms": matches}


def _fixed_nonzero(q: int, g: int, ledger: OpLedger) -> int:
    """``q**g - 1``, charged as one exponentiation and two additions."""
    ledger.exponentiations += 1
    ledger.additions += 2
    return q**g - 1


def naive_strategy(inst: NecklaceInstance) -> CountOutcome:
    """Evaluate every (t, i) pair from scratch, both powers included."""
    q, n, L = inst.q, inst.n, inst.L
    lam = inst.lam_element
    ledger = OpLedger()
    total = matches = 0
    for t in range(1, q):
        t_el = FieldElement(t, q)
        for i in range(1, L + 1):
            g = gcd(n, i, ledger)
            ledger.divisions += 2
            ledger.multiplications += 1
            if mod_pow(t_el, n // g, ledger) * mod_pow(lam, i // g, ledger) == 1:
                matches += 1
                total += _fixed_nonzero(q, g, ledger)
    count = _finish(total, (q - 1) * L, ledger)
    phases = _phases(0, ledger.exponentiations, matches)
    return CountOutcome(count, "naive", ledger, match_count=matches, numerator=total, phases=phases)


def lambda_powers(inst: NecklaceInstance, ledger: Optional[OpLedger] = None) -> list[FieldElement]:
    """``[lam**(i / gcd(n, i)) for i in 1..L]``, one exponentiation each."""
    ledger = ledger if ledger is not None else OpLedger()
    out = []
    for i in range(1, inst.L + 1):
        g = gcd(inst.n, i, ledger)
        ledger.divisions += 1
        out.append(mod_pow(inst.lam_element, i // g, ledger))
    return out


def lambda_cache_strategy(inst: NecklaceInstance) -> CountOutcome:
    """Precompute the lambda powers once; only the t power stays per pair."""
    q, n, L = inst.q, inst.n, inst.L
    ledger = OpLedger()
    lam_exp = lambda_powers(inst, ledger)
    precompute = ledger.exponentiations
    total = matches = 0
    for t in range(1, q):
        t_el = FieldElement(t, q)
        for i in range(1, L + 1):
            g = gcd(n, i, ledger)
            ledger.divisions += 1
            ledger.multiplications += 1
            if mod_pow(t_el, n // g, ledger) * lam_exp[i - 1] == 1:
                matches += 1
                total += _fixed_nonzero(q, g, ledger)
    count = _finish(total, (q - 1) * L, ledger)
    phases = _phases(precompute, ledger.exponentiations, matches)
    return CountOutcome(count, "lambda_cache", ledger, match_count=matches, numerator=total, phases=phases)


def build_gcd_grouping(inst: NecklaceInstance, ledger: Optional[OpLedger] = None) -> GcdGrouping:
    """Tabulate gcd(n, i) over 1..L and bucket the indices by value.

    The distinct gcds come out ascending: the first index with gcd ``g``
    is ``g`` itself.  ``setup_ops`` counts the comparisons made while
    bucketing, bounded by ``d * L``.
    """
    ledger = ledger if ledger is not None else OpLedger()
    n, L = inst.n, inst.L
    gcdiv = [gcd(n, i, ledger) for i in range(1, L + 1)]
    distinct: list[int] = []
    groups: list[list[int]] = []
    setup = 0
    for i, g in enumerate(gcdiv, start=1):
        for j, seen in enumerate(distinct):
            setup += 1
            if seen == g:
                groups[j].append(i)
                break
        else:
            distinct.append(g)
            groups.append([i])
    nbygcd = []
    for g in distinct:
        ledger.divisions += 1
        nbygcd.append(n // g)
    return GcdGrouping(gcdiv, distinct, groups, nbygcd, setup_ops=setup)


def gcd_grouped_strategy(
    inst: NecklaceInstance,
    trace: Optional[Callable[[int, int, int], None]] = None,
) -> CountOutcome:
    """Share each ``t**(n/g)`` across every index with the same gcd ``g``.

    ``trace(t, j, running_total)`` fires after each (t, j) block, with ``j``
    1-based, for replaying the loop by hand.
    """
    q, L = inst.q, inst.L
    ledger = OpLedger()
    grouping = build_gcd_grouping(inst, ledger)
    lam = inst.lam_element
    lam_exp = []
    for i, g in enumerate(grouping.gcdiv, start=1):
        ledger.divisions += 1
        lam_exp.append(mod_pow(lam, i // g, ledger))
    precompute = ledger.exponentiations

    total = matches = 0
    for t in range(1, q):
        t_el = FieldElement(t, q)
        for j, (g, members) in enumerate(zip(grouping.distinct, grouping.groups), start=1):
            texp = mod_pow(t_el, grouping.nbygcd[j - 1], ledger)
            for k in members:
                ledger.multiplications += 1
                if texp * lam_exp[k - 1] == 1:
                    matches += 1
                    total += _fixed_nonzero(q, g, ledger)
            if trace is not None:
                trace(t, j, total)
    count = _finish(total, (q - 1) * L, ledger)
    return CountOutcome(
        count, "gcd_grouped", ledger, match_count=matches, numerator=total,
        setup_ops=grouping.setup_ops,
        phases=_phases(precompute, ledger.exponentiations, matches),
    )


_EVALUATORS = {
    "naive": naive_strategy,
    "lambda_cache": lambda_cache_strategy,
    "gcd_grouped": gcd_grouped_strategy,
}


def count_cat3(inst: NecklaceInstance, strategy: str = "gcd_grouped") -> CountOutcome:
    try:
        evaluate = _EVALUATORS[strategy]
    except KeyError:
        raise ValidationError(f"unknown strategy {strategy!r}; pick one of {STRATEGIES}") from None
    return evaluate(inst)


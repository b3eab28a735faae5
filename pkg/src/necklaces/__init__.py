"""Counting and enumerating generalized necklaces over prime fields."""

from necklaces.arith import FieldElement, gcd, is_prime, mod_pow, multiplicative_order, totient, divisors
from necklaces.counting import (
    STRATEGIES,
    CountOutcome,
    DivisibilityError,
    GcdGrouping,
    NecklaceInstance,
    OpLedger,
    ValidationError,
    build_gcd_grouping,
    count_cat1,
    count_cat2,
    count_cat3,
    count_classic,
)
from necklaces.orbits import NecklaceString, OrbitDecomposition, RelationSpec, decompose, oracle_count

__version__ = "0.1.0"

__all__ = [
    "FieldElement", "gcd", "is_prime", "mod_pow", "multiplicative_order", "totient", "divisors",
    "STRATEGIES", "CountOutcome", "DivisibilityError", "GcdGrouping", "NecklaceInstance", "OpLedger",
    "ValidationError", "build_gcd_grouping", "count_cat1", "count_cat2", "count_cat3", "count_classic",
    "NecklaceString", "OrbitDecomposition", "RelationSpec", "decompose", "oracle_count",
]

import itertools

import pytest
from hypothesis import given, settings, strategies as st

import necklaces.counting as counting
from necklaces.counting import (
    STRATEGIES,
    DivisibilityError,
    NecklaceInstance,
    OpLedger,
    ValidationError,
    build_gcd_grouping,
    count_cat1,
    count_cat2,
    count_cat3,
    count_classic,
    gcd_grouped_strategy,
    lambda_cache_strategy,
    lambda_powers,
    naive_strategy,
)

PRIMES = [2, 3, 5, 7, 11, 13]
SWEEP = [
    (q, n, lam)
    for q in PRIMES
    for n in range(1, 7)
    for lam in range(1, q)
]


def sum_pairs(q, n, lam):
    """Straight transcription of the category-3 sum: (matches, numerator)."""
    order = next(k for k in range(1, q) if pow(lam, k, q) == 1)
    matches = numerator = 0
    for t in range(1, q):
        for i in range(1, order * n + 1):
            g = next(d for d in range(min(n, i), 0, -1) if n % d == 0 and i % d == 0)
            if pow(t, n // g, q) * pow(lam, i // g, q) % q == 1:
                matches += 1
                numerator += q**g - 1
    return matches, numerator


def burnside_by_fixed_points(q, n, lam):
    """Average, over all (t, i), the number of strings fixed by t * shift**i."""
    order = next(k for k in range(1, q) if pow(lam, k, q) == 1)

    def shift(s):
        return (lam * s[-1] % q,) + s[:-1]

    strings = list(itertools.product(range(q), repeat=n))
    fixed = 0
    for i in range(1, order * n + 1):
        shifted = {}
        for s in strings:
            x = s
            for _ in range(i):
                x = shift(x)
            shifted[s] = x
        for t in range(1, q):
            fixed += sum(1 for s in strings if tuple(t * a % q for a in shifted[s]) == s)
    total = (q - 1) * order * n
    assert fixed % total == 0
    return fixed // total


def rotation_classes(q, n):
    seen, classes = set(), 0
    for s in itertools.product(range(q), repeat=n):
        if s in seen:
            continue
        classes += 1
        for k in range(n):
            seen.add(s[k:] + s[:k])
    return classes


# ---- closed forms ---------------------------------------------------------

@pytest.mark.parametrize("q", PRIMES)
def test_classic_length_one(q):
    assert count_classic(q, 1).count == q


def test_classic_small_binary():
    assert count_classic(2, 3).count == rotation_classes(2, 3) == 4
    assert count_classic(2, 2).count == rotation_classes(2, 2) == 3


def test_classic_matches_rotation_enumeration():
    for q in (2, 3, 5):
        for n in range(1, 7):
            if q**n <= 20000:
                assert count_classic(q, n).count == rotation_classes(q, n)


def test_cat1_listed_values():
    assert count_cat1(5, 2).count == 5
    assert count_cat1(11, 2).count == 8
    for q in PRIMES:
        assert count_cat1(q, 1).count == 2


def test_cat2_listed_values():
    assert count_cat2(NecklaceInstance(5, 2, 2)).count == 4
    assert count_cat2(NecklaceInstance(11, 2, 3)).count == 14


@pytest.mark.parametrize("q", PRIMES)
def test_reduction_identities(q):
    for n in range(1, 7):
        inst = NecklaceInstance(q, n, 1)
        assert count_cat2(inst).count == count_classic(q, n).count
        for s in STRATEGIES:
            assert count_cat3(inst, s).count == count_cat1(q, n).count


@pytest.mark.parametrize("fn", [count_classic, count_cat1])
def test_closed_forms_validate(fn):
    with pytest.raises(ValidationError):
        fn(6, 2)
    with pytest.raises(ValidationError):
        fn(5, 0)


def test_instance_validation():
    with pytest.raises(ValidationError):
        NecklaceInstance(9, 2, 2)
    with pytest.raises(ValidationError):
        NecklaceInstance(5, 0, 2)
    with pytest.raises(ValidationError):
        NecklaceInstance(5, 2, 0)
    with pytest.raises(ValidationError):
        NecklaceInstance(5, 2, 5)
    with pytest.raises(ValidationError):
        NecklaceInstance(2, 3, 2)


def test_instance_derived_fields():
    inst = NecklaceInstance(11, 2, 3)
    assert (inst.ord_lambda, inst.L) == (5, 10)
    assert NecklaceInstance(5, 2, 2).ord_lambda == 4
    assert NecklaceInstance(2, 4, 1).L == 4


def test_unknown_strategy():
    with pytest.raises(ValidationError):
        count_cat3(NecklaceInstance(5, 2, 2), "clever")


# ---- category 3 -----------------------------------------------------------

@pytest.mark.parametrize("strategy", STRATEGIES)
def test_cat3_worked_instance(strategy):
    out = count_cat3(NecklaceInstance(11, 2, 3), strategy)
    assert out.count == 8
    assert out.numerator == 700
    assert out.match_count == 15
    assert out.strategy == strategy


def test_worked_instance_match_count_by_pair_loop():
    assert sum_pairs(11, 2, 3) == (15, 700)


def test_cat3_q5_lambda2():
    # every shift class here is already closed under scalars, so the count stays 4
    assert burnside_by_fixed_points(5, 2, 2) == 4
    for s in STRATEGIES:
        assert count_cat3(NecklaceInstance(5, 2, 2), s).count == 4


@pytest.mark.parametrize("q, n", [(2, 3), (3, 3), (5, 2), (5, 3), (7, 2), (3, 4)])
def test_cat3_against_fixed_point_count(q, n):
    for lam in range(1, q):
        expected = burnside_by_fixed_points(q, n, lam)
        assert count_cat3(NecklaceInstance(q, n, lam)).count == expected


@pytest.mark.parametrize("q", PRIMES)
def test_strategies_agree_on_sweep(q):
    for n in range(1, 7):
        for lam in range(1, q):
            inst = NecklaceInstance(q, n, lam)
            outs = [count_cat3(inst, s) for s in STRATEGIES]
            assert len({o.count for o in outs}) == 1
            assert len({o.match_count for o in outs}) == 1
            assert (outs[0].match_count, outs[0].numerator) == sum_pairs(q, n, lam)
            assert outs[0].count >= 2


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([17, 19, 23, 29, 31, 37]), st.integers(1, 4), st.data())
def test_strategies_agree_on_larger_fields(q, n, data):
    lam = data.draw(st.integers(1, q - 1))
    inst = NecklaceInstance(q, n, lam)
    counts = {count_cat3(inst, s).count for s in STRATEGIES}
    assert counts == {sum_pairs(q, n, lam)[1] // ((q - 1) * inst.L) + 1}


# ---- ledgers ---------------------------------------------------------------

def test_naive_ledger_worked_instance():
    out = naive_strategy(NecklaceInstance(11, 2, 3))
    assert out.phases["condition"] == 200
    assert out.ledger.exponentiations == 200 + 15
    assert out.ledger.multiplications == 100


def test_naive_ledger_trivial_instance():
    out = naive_strategy(NecklaceInstance(2, 1, 1))
    assert out.match_count == 1
    assert out.ledger.exponentiations == 3
    assert out.count == 2


def test_lambda_powers_listed():
    vals = [x.value for x in lambda_powers(NecklaceInstance(11, 2, 3))]
    assert vals == [3, 3, 5, 9, 1, 5, 9, 4, 4, 1]


def test_lambda_cache_ledger_worked_instance():
    out = lambda_cache_strategy(NecklaceInstance(11, 2, 3))
    assert out.ledger.exponentiations == 10 + 100 + 15 == 125
    assert out.phases == {"precompute": 10, "condition": 100, "terms": 15}


def test_grouping_worked_instance():
    grp = build_gcd_grouping(NecklaceInstance(11, 2, 3))
    assert grp.gcdiv == [1, 2, 1, 2, 1, 2, 1, 2, 1, 2]
    assert grp.distinct == [1, 2]
    assert grp.groups == [[1, 3, 5, 7, 9], [2, 4, 6, 8, 10]]
    assert grp.nbygcd == [2, 1]


@pytest.mark.parametrize("q, lam", [(5, 2), (7, 3), (13, 12)])
def test_grouping_length_one(q, lam):
    inst = NecklaceInstance(q, 1, lam)
    grp = build_gcd_grouping(inst)
    assert grp.distinct == [1]
    assert grp.groups == [list(range(1, inst.L + 1))]


@pytest.mark.parametrize("q", PRIMES)
def test_grouping_invariants(q):
    for n in range(1, 7):
        for lam in range(1, q):
            inst = NecklaceInstance(q, n, lam)
            led = OpLedger()
            grp = build_gcd_grouping(inst, led)
            flat = sorted(i for g in grp.groups for i in g)
            assert flat == list(range(1, inst.L + 1))
            assert len(set(grp.distinct)) == grp.d
            assert grp.distinct == sorted(grp.distinct)
            for g, members, m in zip(grp.distinct, grp.groups, grp.nbygcd):
                assert n % g == 0 and m * g == n
                assert all(grp.gcdiv[i - 1] == g for i in members)
            assert led.gcds == inst.L
            assert led.divisions == grp.d
            assert grp.setup_ops <= grp.d * inst.L


def test_grouped_trace_worked_instance():
    seen = {}
    out = gcd_grouped_strategy(NecklaceInstance(11, 2, 3), trace=lambda t, j, c: seen.__setitem__((t, j), c))
    assert seen[(1, 2)] == 130
    assert seen[(2, 1)] == 140
    assert seen[(2, 2)] == 140
    assert seen[(3, 1)] == 150
    assert seen[(10, 1)] == 700
    assert seen[(10, 2)] == 700
    assert out.phases["condition"] == 20
    assert out.count == 8


@pytest.mark.parametrize("q", PRIMES)
def test_ledger_exactness_on_sweep(q):
    for n in range(1, 7):
        for lam in range(1, q):
            inst = NecklaceInstance(q, n, lam)
            L, d = inst.L, build_gcd_grouping(inst).d
            naive = naive_strategy(inst)
            cache = lambda_cache_strategy(inst)
            grouped = gcd_grouped_strategy(inst)
            m = naive.match_count
            assert naive.ledger.exponentiations == 2 * (q - 1) * L + m
            assert naive.ledger.multiplications == (q - 1) * L
            assert cache.ledger.exponentiations == L + (q - 1) * L + m
            assert cache.ledger.multiplications == (q - 1) * L
            assert grouped.ledger.exponentiations == L + (q - 1) * d + m
            assert grouped.ledger.multiplications == (q - 1) * L
            assert grouped.ledger.gcds == L
            assert grouped.ledger.divisions >= d
            for o in (naive, cache, grouped):
                # the q**g terms are bounded by the number of pairs
                assert o.phases["terms"] <= (q - 1) * L
                # two per match plus the final "+1"
                assert o.ledger.additions == 2 * m + 1 <= 2 * (q - 1) * L + 1


@pytest.mark.parametrize("q", [p for p in PRIMES if p >= 3])
def test_exponentiation_reduction(q):
    for n in range(1, 7):
        for lam in range(1, q):
            inst = NecklaceInstance(q, n, lam)
            naive, cache, grouped = (count_cat3(inst, s).ledger.exponentiations for s in STRATEGIES)
            assert cache < naive
            assert grouped <= cache
            if q >= 11:
                assert cache / naive <= 0.65


def test_cat2_numerator_divisible_on_sweep():
    for q, n, lam in SWEEP:
        out = count_cat2(NecklaceInstance(q, n, lam))
        assert out.numerator % (NecklaceInstance(q, n, lam).L) == 0
        assert out.count >= 2


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_inexact_division_aborts(monkeypatch, strategy):
    monkeypatch.setattr(counting, "_fixed_nonzero", lambda q, g, ledger: q**g)
    with pytest.raises(DivisibilityError):
        count_cat3(NecklaceInstance(11, 2, 3), strategy)


def test_ledger_arithmetic():
    a = OpLedger()
    assert a.as_dict() == dict.fromkeys(
        ["exponentiations", "multiplications", "additions", "gcds", "divisions"], 0
    )
    b = OpLedger(1, 2, 3, 4, 5)
    c = b + OpLedger(10, 10, 10, 10, 10)
    assert c == OpLedger(11, 12, 13, 14, 15)
    a.merge(b)
    a.merge(b)
    assert a == OpLedger(2, 4, 6, 8, 10)

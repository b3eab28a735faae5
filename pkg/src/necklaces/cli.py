"""Command line front end: ``necklaces {count,compare,enumerate,table}``.

Exit status: 0 success, 2 bad arguments, 3 a numerator failed to divide,
4 evaluators disagree.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from necklaces.arith import is_prime
from necklaces.counting import (
    STRATEGIES,
    CountOutcome,
    DivisibilityError,
    NecklaceInstance,
    ValidationError,
    count_cat1,
    count_cat2,
    count_cat3,
    count_classic,
)
from necklaces.orbits import DEFAULT_LIMIT, EnumerationLimitError, RelationSpec, decompose, oracle_count

EXIT_USAGE = 2
EXIT_DIVISIBILITY = 3
EXIT_DISAGREE = 4

CATEGORIES = ("classic", "1", "2", "3")
TABLE_FIELDS = (
    "q", "n", "lambda", "ord_lambda", "category", "strategy", "count",
    "exponentiations", "multiplications", "additions", "gcds", "divisions", "match_count",
)


class UsageError(Exception):
    pass


@dataclass
class RunReport:
    q: int
    n: int
    lam: int
    category: str
    outcomes: dict[str, CountOutcome] = field(default_factory=dict)
    oracle: Optional[int] = None

    @property
    def agreement(self) -> bool:
        counts = {o.count for o in self.outcomes.values()}
        if self.oracle is not None:
            counts.add(self.oracle)
        return len(counts) <= 1


def evaluate(q: int, n: int, category: str, lam: int = 1, strategy: str = "gcd_grouped") -> CountOutcome:
    """Dispatch one count; ``lam`` is ignored for the classic and category-1 counts."""
    if category == "classic":
        return count_classic(q, n)
    if category == "1":
        return count_cat1(q, n)
    inst = NecklaceInstance(q, n, lam)
    if category == "2":
        return count_cat2(inst)
    if category == "3":
        return count_cat3(inst, strategy)
    raise ValidationError(f"unknown category {category!r}")


def _needs_lambda(category: str, lam: Optional[int]) -> int:
    if category in ("2", "3"):
        if lam is None:
            raise UsageError(f"--lambda is required for category {category}")
        return lam
    return 1


def cmd_count(args, out) -> int:
    lam = _needs_lambda(args.category, args.lam)
    outcome = evaluate(args.q, args.n, args.category, lam, args.strategy)
    print(f"count: {outcome.count}", file=out)
    if args.verbose:
        print(f"strategy: {outcome.strategy}", file=out)
        for k, v in outcome.ledger.as_dict().items():
            print(f"{k}: {v}", file=out)
        print(f"match_count: {outcome.match_count}", file=out)
        print(f"numerator: {outcome.numerator}", file=out)
        if outcome.setup_ops:
            print(f"setup_ops: {outcome.setup_ops}", file=out)
    return 0


def run_compare(q: int, n: int, lam: int, limit: int = DEFAULT_LIMIT) -> RunReport:
    inst = NecklaceInstance(q, n, lam)
    report = RunReport(q, n, lam, "3")
    for s in STRATEGIES:
        report.outcomes[s] = count_cat3(inst, s)
    if q**n <= limit:
        report.oracle = oracle_count(q, n, RelationSpec(lam, True), limit)
    return report


def cmd_compare(args, out) -> int:
    report = run_compare(args.q, args.n, args.lam, args.limit)
    inst = NecklaceInstance(args.q, args.n, args.lam)
    print(f"q={args.q} n={args.n} lambda={args.lam} ord_lambda={inst.ord_lambda} L={inst.L}", file=out)
    cols = ("strategy", "count", "exp", "exp_pre", "exp_cond", "exp_terms", "mul", "add", "gcd", "div", "matches")
    print("  ".join(f"{c:>12}" for c in cols), file=out)
    for name, o in report.outcomes.items():
        led = o.ledger
        row = (
            name, o.count, led.exponentiations, o.phases["precompute"], o.phases["condition"],
            o.phases["terms"], led.multiplications, led.additions, led.gcds, led.divisions, o.match_count,
        )
        print("  ".join(f"{v:>12}" for v in row), file=out)
    grouped = report.outcomes["gcd_grouped"]
    print(f"setup_ops (gcd_grouped bucketing, not in ledger): {grouped.setup_ops}", file=out)
    naive = report.outcomes["naive"].ledger.exponentiations
    cache = report.outcomes["lambda_cache"].ledger.exponentiations
    print(f"exp ratio lambda_cache/naive: {cache / naive:.4f}", file=out)
    print(f"exp ratio gcd_grouped/naive: {grouped.ledger.exponentiations / naive:.4f}", file=out)
    if report.oracle is None:
        print("oracle: skipped (over enumeration limit)", file=out)
    else:
        print(f"oracle: {report.oracle}", file=out)
    print(f"agreement: {'yes' if report.agreement else 'NO'}", file=out)
    return 0 if report.agreement else EXIT_DISAGREE


def cmd_enumerate(args, out) -> int:
    lam = _needs_lambda(args.category, args.lam)
    spec = RelationSpec.for_category(args.category, lam)
    dec = decompose(args.q, args.n, spec, args.limit)
    for idx, members in enumerate(dec.classes, start=1):
        if args.format == "machine":
            print(",".join("(" + ",".join(map(str, m.coeffs)) + ")" for m in members), file=out)
        else:
            print(f"E{idx} [{len(members)}]: " + ", ".join(str(m) for m in members), file=out)
    if args.format != "machine":
        print(f"classes: {len(dec)}", file=out)
    return 0


def parse_range(text: str) -> list[int]:
    """``"2-13"``, ``"2,3,5"`` or a mix like ``"2-5,11"``."""
    values: list[int] = []
    try:
        for part in text.split(","):
            lo, sep, hi = part.strip().partition("-")
            if sep:
                values.extend(range(int(lo), int(hi) + 1))
            else:
                values.append(int(lo))
    except ValueError:
        raise UsageError(f"cannot parse range {text!r}") from None
    return sorted(set(values))


def table_rows(qs, ns, lam_policy: str, category: str, strategy: str, warn=None):
    """Yield one dict per (q, n, lam) in ascending order."""
    warn = warn or (lambda msg: None)
    strategies = STRATEGIES if strategy == "all" else (strategy,)
    for q in qs:
        if not is_prime(q):
            warn(f"skipping composite q={q}")
            continue
        if category in ("classic", "1"):
            lams = [1]
        elif lam_policy == "all":
            lams = list(range(1, q))
        else:
            lam = int(lam_policy)
            if not 1 <= lam < q:
                warn(f"skipping q={q}: lambda={lam} not in [1, {q - 1}]")
                continue
            lams = [lam]
        for n in ns:
            if n < 1:
                warn(f"skipping n={n}")
                continue
            for lam in lams:
                ord_lambda = NecklaceInstance(q, n, lam).ord_lambda
                for s in strategies if category == "3" else ("closed_form",):
                    o = evaluate(q, n, category, lam, s)
                    row = {
                        "q": q, "n": n, "lambda": lam, "ord_lambda": ord_lambda,
                        "category": category, "strategy": o.strategy, "count": o.count,
                    }
                    row.update(o.ledger.as_dict())
                    row["match_count"] = o.match_count
                    yield row


def cmd_table(args, out) -> int:
    if args.category in ("2", "3") and args.lam is None:
        raise UsageError("--lambda (an integer or 'all') is required for categories 2 and 3")
    lam_policy = args.lam if args.lam is not None else "1"
    if lam_policy != "all":
        try:
            int(lam_policy)
        except ValueError:
            raise UsageError(f"--lambda must be an integer or 'all', got {lam_policy!r}") from None
    warn = lambda msg: print(f"warning: {msg}", file=sys.stderr)
    rows = list(table_rows(parse_range(args.q), parse_range(args.n), lam_policy, args.category, args.strategy, warn))
    if not rows:
        raise UsageError("no valid (q, n, lambda) combination in the requested ranges")
    if args.format == "json":
        json.dump(rows, out, indent=1)
        out.write("\n")
    else:
        writer = csv.DictWriter(out, fieldnames=TABLE_FIELDS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="necklaces", description="Count and enumerate generalized necklaces over prime fields.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="evaluate a counting formula")
    c.add_argument("--q", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--category", choices=CATEGORIES, required=True)
    c.add_argument("--lambda", dest="lam", type=int)
    c.add_argument("--strategy", choices=STRATEGIES, default="gcd_grouped")
    c.add_argument("-v", "--verbose", action="store_true")
    c.set_defaults(func=cmd_count)

    m = sub.add_parser("compare", help="run all category-3 evaluators and the oracle")
    m.add_argument("--q", type=int, required=True)
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--lambda", dest="lam", type=int, required=True)
    m.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    m.set_defaults(func=cmd_compare)

    e = sub.add_parser("enumerate", help="list the equivalence classes by brute force")
    e.add_argument("--q", type=int, required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--category", choices=CATEGORIES, required=True)
    e.add_argument("--lambda", dest="lam", type=int)
    e.add_argument("--limit", type=int, default=DEFAULT_LIMIT)
    e.add_argument("--format", choices=("text", "machine"), default="text")
    e.set_defaults(func=cmd_enumerate)

    t = sub.add_parser("table", help="sweep counts over ranges of q, n and lambda")
    t.add_argument("--q", required=True, help="e.g. 2-13 or 5,7,11")
    t.add_argument("--n", required=True, help="e.g. 1-6")
    t.add_argument("--lambda", dest="lam", help="an integer or 'all'")
    t.add_argument("--category", choices=CATEGORIES, required=True)
    t.add_argument("--strategy", choices=STRATEGIES + ("all",), default="gcd_grouped")
    t.add_argument("--format", choices=("csv", "json"), default="csv")
    t.set_defaults(func=cmd_table)
    return p


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (UsageError, ValidationError, EnumerationLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DivisibilityError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_DIVISIBILITY


if __name__ == "__main__":
    sys.exit(main())

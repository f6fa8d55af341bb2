"""Verification suite shared by the CLI ``verify`` command and the
acceptance tests.

Each check returns a named pass/fail result with a one-line detail.  The
full run covers: exactness of the harmonic-sum expansions, the closed-form
power expansion, the depth-one collapse combinations, the reduction
tables, end-to-end closed forms, numerical confirmation of every fixture
record, the algebraic/numeric property suites, the regularized relation,
and the generating-function cross-check.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    LinComb,
    Sequence,
    depth_one_combination,
    multinomial_expansion,
    seq,
    stuffle,
    stuffle_power,
)
from .harmonic import HarmonicSumSpec, expand, flajolet_combination, hsum
from .numerics import (
    EvalConfig,
    eval_const_poly,
    eval_euler_sum,
    eval_harmonic_sum,
    eval_lincomb,
)
from .reduction import IRREDUCIBLE, admissible_sequences, closed_form_harmonic, solved_table
from .relations import adz_coefficient, adz_sequence, regularized_double_shuffle
from .tables import RECORDS, FixtureRecord
from .words import Word, duality, seq_to_word, shuffle, word_to_seq

_SEED = 20250810


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(passed), detail)


# --------------------------------------------------------------------------
# criterion 1: expansion exactness


def _prefixed(outer: int, terms) -> LinComb:
    return LinComb(
        [(Sequence((outer,) + tuple(t)), c) for t, c in terms]
    )


_EXPECTED_EXPANSIONS: list[tuple[tuple[int, ...], list]] = [
    ((1, 1), [((2,), 1), ((1, 1), 2)]),
    ((1, 1, 1), [((3,), 1), ((2, 1), 3), ((1, 2), 3), ((1, 1, 1), 6)]),
    ((-1, -1), [((2,), 1), ((-1, -1), 2)]),
    (
        (-1, -1, -1),
        [((-3,), -1), ((2, -1), -3), ((-1, 2), -3), ((-1, -1, -1), -6)],
    ),
    ((1, -2), [((-3,), -1), ((1, -2), -1), ((-2, 1), -1)]),
    ((-1, -2), [((3,), 1), ((-1, -2), 1), ((-2, -1), 1)]),
    (
        (1, 1, 1, 1),
        [
            ((4,), 1),
            ((3, 1), 4),
            ((1, 3), 4),
            ((2, 2), 6),
            ((2, 1, 1), 12),
            ((1, 2, 1), 12),
            ((1, 1, 2), 12),
            ((1, 1, 1, 1), 24),
        ],
    ),
    (
        (-1, -1, -1, -1),
        [
            ((4,), 1),
            ((-3, -1), 4),
            ((-1, -3), 4),
            ((2, 2), 6),
            ((2, -1, -1), 12),
            ((-1, 2, -1), 12),
            ((-1, -1, 2), 12),
            ((-1, -1, -1, -1), 24),
        ],
    ),
]


def check_expansion_exactness() -> CheckResult:
    outers = (2, 3, 7, -1, -2)
    for inner, expected in _EXPECTED_EXPANSIONS:
        reference_inner = None
        for outer in outers:
            got = expand(HarmonicSumSpec(outer, inner))
            if got != _prefixed(outer, expected):
                return _result(
                    "expansion-exactness",
                    False,
                    f"S({outer};{inner}) expansion mismatch",
                )
            stripped = LinComb(
                [(Sequence(s.indices[1:]), c) for s, c in got.terms()]
            )
            if reference_inner is None:
                reference_inner = stripped
            elif stripped != reference_inner:
                return _result(
                    "expansion-exactness",
                    False,
                    f"inner structure of S(n;{inner}) depends on n",
                )
    return _result(
        "expansion-exactness",
        True,
        f"{len(_EXPECTED_EXPANSIONS)} expansions exact at outer indices {outers}",
    )


# --------------------------------------------------------------------------
# criterion 2: power expansion equals iterated product


def check_power_expansion() -> CheckResult:
    cases = 0
    for r, k, barred in itertools.product(range(1, 4), range(1, 6), (False, True)):
        closed = multinomial_expansion(r, k, barred=barred)
        iterated = stuffle_power(seq(-r if barred else r), k)
        if closed != iterated:
            return _result(
                "power-expansion", False, f"mismatch at r={r} k={k} barred={barred}"
            )
        cases += 1
    return _result("power-expansion", True, f"{cases} (r,k,barred) cases exact")


# --------------------------------------------------------------------------
# criterion 3: depth-one collapse and its harmonic-sum counterpart


_FLAJOLET_EXPECTED = {
    2: {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)},
    3: {(1, 1, 1): Fraction(1, 6), (2, 1): Fraction(-1, 2), (3,): Fraction(1, 3)},
    4: {
        (1, 1, 1, 1): Fraction(1, 24),
        (2, 1, 1): Fraction(-1, 4),
        (3, 1): Fraction(1, 3),
        (2, 2): Fraction(1, 8),
        (4,): Fraction(-1, 4),
    },
}


def check_depth_one_collapse() -> CheckResult:
    for m in range(1, 9):
        if depth_one_combination(m) != LinComb.single(Sequence((1,) * m)):
            return _result("depth-one-collapse", False, f"collapse fails at m={m}")
    for m, expected in _FLAJOLET_EXPECTED.items():
        got = flajolet_combination(2, m)
        want = {HarmonicSumSpec(2, inner): c for inner, c in expected.items()}
        if got != want:
            return _result(
                "depth-one-collapse", False, f"combination map differs at m={m}"
            )
    for m in range(1, 7):
        total = LinComb.zero()
        for spec, c in flajolet_combination(2, m).items():
            total = total + expand(spec) * c
        if total != LinComb.single(Sequence((2,) + (1,) * m)):
            return _result(
                "depth-one-collapse", False, f"expanded combination differs at m={m}"
            )
    return _result(
        "depth-one-collapse",
        True,
        "collapse exact for m<=8; combination maps m=2,3,4 frozen; identity m<=6",
    )


# --------------------------------------------------------------------------
# criteria 4 and 5: reduction tables and end-to-end closed forms


def check_reduction_tables() -> CheckResult:
    count = 0
    for record in RECORDS:
        if not isinstance(record.lhs, Sequence):
            continue
        value = solved_table(record.weight, record.level).get(record.lhs)
        if value is IRREDUCIBLE or value is None:
            return _result("reduction-tables", False, f"{record.id} irreducible")
        if value.canonical() != record.rhs.canonical():
            return _result(
                "reduction-tables",
                False,
                f"{record.id}: got {value}, expected {record.rhs}",
            )
        count += 1
    return _result("reduction-tables", True, f"{count} table entries exact")


def check_closed_forms() -> CheckResult:
    count = 0
    for record in RECORDS:
        if not isinstance(record.lhs, HarmonicSumSpec):
            continue
        value = closed_form_harmonic(record.lhs)
        if value.canonical() != record.rhs.canonical():
            return _result(
                "closed-forms",
                False,
                f"{record.id}: got {value}, expected {record.rhs}",
            )
        count += 1
    return _result("closed-forms", True, f"{count} closed forms exact")


# --------------------------------------------------------------------------
# criterion 6: numerical confirmation of every fixture record


def record_residual(record: FixtureRecord, cfg: EvalConfig) -> float:
    if isinstance(record.lhs, HarmonicSumSpec):
        lhs = eval_harmonic_sum(record.lhs, cfg)
    else:
        lhs = eval_euler_sum(record.lhs, cfg)
    rhs = eval_const_poly(record.rhs, cfg)
    return abs(float(lhs.value - rhs.value))


def check_numeric_confirmation(
    tolerance: float = 1e-6,
    target: float = 1e-8,
    records: tuple[FixtureRecord, ...] = RECORDS,
) -> CheckResult:
    cfg = EvalConfig()
    worst = 0.0
    slowest = 0.0
    for record in records:
        start = time.monotonic()
        residual = record_residual(record, cfg)
        elapsed = time.monotonic() - start
        slowest = max(slowest, elapsed)
        worst = max(worst, residual)
        if residual > tolerance or elapsed > 60.0:
            return _result(
                "numeric-confirmation",
                False,
                f"{record.id}: residual {residual:.2e} in {elapsed:.1f}s",
            )
    hit = "meets" if worst <= target else "misses"
    return _result(
        "numeric-confirmation",
        True,
        f"{len(records)} records; max residual {worst:.2e} "
        f"({hit} target {target:g}); slowest {slowest:.2f}s",
    )


# --------------------------------------------------------------------------
# criterion 7: property suites


def _random_sequence(rng: random.Random, max_depth: int, max_weight: int) -> Sequence:
    depth = rng.randint(1, max_depth)
    values = []
    budget = max_weight
    for i in range(depth):
        remaining = depth - i - 1
        magnitude = rng.randint(1, max(1, budget - remaining))
        budget -= magnitude
        values.append(magnitude * rng.choice((1, -1)))
    return Sequence(tuple(values))


def _random_lincomb(rng: random.Random) -> LinComb:
    n_terms = rng.randint(1, 2)
    return LinComb(
        [
            (_random_sequence(rng, 3, 8), rng.choice((-3, -2, -1, 1, 2, 3)))
            for _ in range(n_terms)
        ]
    )


def check_stuffle_properties(cases: int = 100) -> CheckResult:
    rng = random.Random(_SEED)
    unit = LinComb.unit()
    for _ in range(cases):
        a, b, c = (_random_lincomb(rng) for _ in range(3))
        if stuffle(a, b) != stuffle(b, a):
            return _result("stuffle-properties", False, "commutativity fails")
        if stuffle(stuffle(a, b), c) != stuffle(a, stuffle(b, c)):
            return _result("stuffle-properties", False, "associativity fails")
        if stuffle(unit, a) != a or stuffle(a, unit) != a:
            return _result("stuffle-properties", False, "unit law fails")
    return _result(
        "stuffle-properties", True, f"{cases} random commutativity/associativity cases"
    )


def _random_admissible(rng: random.Random, weight: int) -> Sequence:
    while True:
        candidates = admissible_sequences(weight, 2)
        s = rng.choice(candidates)
        return s


def check_stuffle_homomorphism(pairs: int = 20, tolerance: float = 1e-6) -> CheckResult:
    rng = random.Random(_SEED + 1)
    cfg = EvalConfig()
    worst = 0.0
    for _ in range(pairs):
        wa = rng.randint(1, 4)
        wb = rng.randint(1, 5 - wa)
        a = _random_admissible(rng, wa)
        b = _random_admissible(rng, wb)
        product = eval_euler_sum(a, cfg).value * eval_euler_sum(b, cfg).value
        combined = eval_lincomb(stuffle(a, b), cfg).value
        residual = abs(float(product - combined))
        worst = max(worst, residual)
        if residual > tolerance:
            return _result(
                "stuffle-homomorphism",
                False,
                f"zeta({a})zeta({b}) residual {residual:.2e}",
            )
    return _result(
        "stuffle-homomorphism", True, f"{pairs} pairs, max residual {worst:.2e}"
    )


def check_duality(tolerance: float = 2e-6) -> CheckResult:
    cfg = EvalConfig()
    worst = 0.0
    count = 0
    for weight in range(2, 7):
        for s in admissible_sequences(weight, 1):
            dual = duality(s)
            if duality(dual) != s:
                return _result("duality", False, f"involution fails at {s}")
            if dual.weight != s.weight:
                return _result("duality", False, f"weight changes at {s}")
            residual = abs(
                float(eval_euler_sum(s, cfg).value - eval_euler_sum(dual, cfg).value)
            )
            worst = max(worst, residual)
            count += 1
            if residual > tolerance:
                return _result(
                    "duality", False, f"{s} vs {dual} residual {residual:.2e}"
                )
    return _result(
        "duality", True, f"{count} sequences (weight<=6), max residual {worst:.2e}"
    )


def check_sum_formula_numeric(tolerance: float = 1e-6) -> CheckResult:
    cfg = EvalConfig()
    worst = 0.0
    cases = 0
    from .algebra import compositions

    for weight in range(3, 8):
        for depth in range(2, min(weight, 5)):
            total = LinComb.zero()
            for comp in compositions(weight, depth):
                if comp[0] >= 2:
                    total = total + LinComb.single(Sequence(comp))
            residual = abs(
                float(
                    eval_lincomb(total, cfg).value
                    - eval_euler_sum(seq(weight), cfg).value
                )
            )
            worst = max(worst, residual)
            cases += 1
            if residual > tolerance:
                return _result(
                    "sum-formula",
                    False,
                    f"weight {weight} depth {depth} residual {residual:.2e}",
                )
    return _result(
        "sum-formula",
        True,
        f"{cases} (weight<=7, depth<=4) cases, max residual {worst:.2e}",
    )


def check_shuffle_counts(cases: int = 60) -> CheckResult:
    rng = random.Random(_SEED + 2)
    letters = (-1, 0, 1)
    for _ in range(cases):
        w1 = Word(tuple(rng.choice(letters) for _ in range(rng.randint(0, 5))))
        w2 = Word(tuple(rng.choice(letters) for _ in range(rng.randint(0, 5))))
        total = sum(shuffle(w1, w2).values())
        if total != math.comb(len(w1) + len(w2), len(w1)):
            return _result("shuffle-counts", False, f"count fails for {w1} x {w2}")
    return _result("shuffle-counts", True, f"{cases} random word pairs")


# --------------------------------------------------------------------------
# criterion 8: the regularized relation


def check_regularized() -> CheckResult:
    relation = regularized_double_shuffle(seq(-2))
    expected = (
        LinComb.single(seq(-2, 1))
        + LinComb.single(seq(-3))
        - LinComb.single(seq(2, -1))
        - LinComb.single(seq(-2, -1))
    )
    if relation.zeta_part != expected or not relation.const_part.is_zero():
        return _result("regularized-relation", False, "relation differs")
    if any(not s.is_admissible for s in relation.zeta_part.sequences()):
        return _result("regularized-relation", False, "non-admissible term")
    return _result(
        "regularized-relation",
        True,
        "z(b2,1)+z(b3) = z(2,b1)+z(b2,b1) reproduced, all terms admissible",
    )


# --------------------------------------------------------------------------
# criterion 9: generating-function cross-check


def check_adz() -> CheckResult:
    for total in range(2, 7):
        for m in range(1, total):
            n = total - m
            coeff = adz_coefficient(m, n)
            pinned = solved_table(total, 1).get(adz_sequence(m, n))
            if pinned is IRREDUCIBLE or pinned is None:
                return _result("adz", False, f"({m},{n}) not pinned by tables")
            if coeff.canonical() != pinned.canonical():
                return _result("adz", False, f"({m},{n}) disagrees with tables")
    for total in range(2, 9):
        for m in range(1, total):
            n = total - m
            if adz_coefficient(m, n) != adz_coefficient(n, m):
                return _result("adz", False, f"symmetry fails at ({m},{n})")
    return _result("adz", True, "agrees with tables for m+n<=6; symmetric for m+n<=8")


# --------------------------------------------------------------------------
# driver


def run_checks(
    weight: int | None = None,
    level: int | None = None,
    tolerance: float = 1e-8,
) -> list[CheckResult]:
    """Run the verification suite.

    With a weight and/or level, only the fixture records in scope are
    verified (exact reduction plus numerical residual); otherwise the full
    criteria list runs.
    """
    if weight is not None or level is not None:
        records = tuple(
            r
            for r in RECORDS
            if (weight is None or r.weight == weight)
            and (level is None or r.level == level)
        )
        results = []
        cfg = EvalConfig()
        for record in records:
            if isinstance(record.lhs, HarmonicSumSpec):
                exact = closed_form_harmonic(record.lhs).canonical() == record.rhs.canonical()
            else:
                value = solved_table(record.weight, record.level).get(record.lhs)
                exact = (
                    value is not None
                    and value is not IRREDUCIBLE
                    and value.canonical() == record.rhs.canonical()
                )
            residual = record_residual(record, cfg)
            ok = exact and residual <= max(tolerance, 1e-6)
            results.append(
                _result(
                    record.id,
                    ok,
                    f"{record.lhs} = {record.rhs}; residual {residual:.2e}",
                )
            )
        return results
    return [
        check_expansion_exactness(),
        check_power_expansion(),
        check_depth_one_collapse(),
        check_reduction_tables(),
        check_closed_forms(),
        check_numeric_confirmation(),
        check_stuffle_properties(),
        check_stuffle_homomorphism(),
        check_duality(),
        check_sum_formula_numeric(),
        check_shuffle_counts(),
        check_regularized(),
        check_adz(),
    ]

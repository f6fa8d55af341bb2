"""Exact reduction of (alternating) Euler sums to classical constants.

For a fixed weight and level this module collects every relation the
generators produce — duality, sum formula, double shuffle (including the
product rows whose right-hand sides come from already-solved lower
weights), regularized double shuffle, the Aomoto-Drinfel'd-Zagier rows,
eta normalizations and zeta({2}^n) — and runs rational Gaussian
elimination with a deterministic pivot order.  Values the system pins are
returned as constant polynomials; values it does not pin are reported as
IRREDUCIBLE, which is an explicit answer rather than an error.

Supported envelope: level 1 (all-positive sequences) up to weight 7,
level 2 (alternating) up to weight 3.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import LinComb, Sequence, compositions, seq
from .harmonic import HarmonicSumSpec, expand
from .relations import (
    ConstPolynomial,
    Relation,
    adz_coefficient,
    adz_sequence,
    double_shuffle,
    eta_value,
    regularized_double_shuffle,
    shuffle_side,
    stuffle_side,
    sum_formula,
    zeta_atom,
    zeta_two_repeated,
)
from .words import duality

LEVEL_ONE_MAX_WEIGHT = 7
LEVEL_TWO_MAX_WEIGHT = 3


class EnvelopeError(ValueError):
    """Requested weight/level outside the supported range."""


class IrreducibleError(ValueError):
    """A needed value is not pinned by the relation system."""


class InconsistentSystemError(RuntimeError):
    """The relation system contradicts itself (generator bug)."""


class _Irreducible:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Irreducible"


IRREDUCIBLE = _Irreducible()


def _check_envelope(weight: int, level: int) -> None:
    if level == 1:
        if not 2 <= weight <= LEVEL_ONE_MAX_WEIGHT:
            raise EnvelopeError(
                f"level 1 supports weights 2..{LEVEL_ONE_MAX_WEIGHT}, got {weight}"
            )
    elif level == 2:
        if not 1 <= weight <= LEVEL_TWO_MAX_WEIGHT:
            raise EnvelopeError(
                f"level 2 supports weights 1..{LEVEL_TWO_MAX_WEIGHT}, got {weight}"
            )
    else:
        raise EnvelopeError(f"level must be 1 or 2, got {level}")


def admissible_sequences(weight: int, level: int) -> list[Sequence]:
    """All admissible sequences of the weight, in solver unknown order
    (descending depth, then canonical order)."""
    found = []
    for comp in compositions(weight):
        sign_choices = (
            [(1,) * len(comp)]
            if level == 1
            else itertools.product((1, -1), repeat=len(comp))
        )
        for signs in sign_choices:
            s = Sequence(tuple(v * e for v, e in zip(comp, signs)))
            if s.is_admissible:
                found.append(s)
    return sorted(found, key=lambda s: (-s.depth, s.sort_key()))


@dataclass(frozen=True)
class ReductionSystem:
    weight: int
    level: int
    unknowns: tuple[Sequence, ...]
    rows: tuple[Relation, ...]

    def __str__(self) -> str:
        return (
            f"ReductionSystem(weight={self.weight}, level={self.level}, "
            f"{len(self.unknowns)} unknowns, {len(self.rows)} rows)"
        )


def _factor_pairs(weight: int, level: int):
    for wa in range(1, weight // 2 + 1):
        wb = weight - wa
        for a in admissible_sequences(wa, level):
            for b in admissible_sequences(wb, level):
                if wa == wb and a.sort_key() > b.sort_key():
                    continue
                yield a, b


def _prior_values(weight: int, level: int) -> dict[Sequence, ConstPolynomial]:
    lowest = 2 if level == 1 else 1
    prior: dict[Sequence, ConstPolynomial] = {}
    for w in range(lowest, weight):
        for s, value in solved_table(w, level).items():
            if value is not IRREDUCIBLE:
                prior[s] = value
    return prior


def build_system(weight: int, level: int) -> ReductionSystem:
    """Collect all generated relations at one weight and level."""
    _check_envelope(weight, level)
    prior = _prior_values(weight, level)
    rows: list[Relation] = []

    def pin(s: Sequence, value: ConstPolynomial, family: str, label: str) -> None:
        rows.append(
            Relation(LinComb.single(s), -value, family=family, label=label).validate()
        )

    if weight >= 2:
        pin(
            seq(weight),
            ConstPolynomial.atom(zeta_atom(weight)),
            "atom",
            f"atom({weight})",
        )
    if level == 2:
        pin(seq(-weight), eta_value(weight), "eta", f"eta({weight})")

    for s in admissible_sequences(weight, 1):
        dual = duality(s)
        if dual.sort_key() > s.sort_key():
            rows.append(
                Relation(
                    LinComb.single(s) - LinComb.single(dual),
                    family="duality",
                    label=f"duality{s}",
                ).validate()
            )

    for depth in range(2, weight):
        rows.append(sum_formula(weight, depth))

    if weight % 2 == 0 and weight >= 2:
        pin(
            Sequence((2,) * (weight // 2)),
            zeta_two_repeated(weight // 2),
            "ztwo",
            f"ztwo({weight // 2})",
        )

    if weight >= 2:
        for m in range(1, weight):
            pin(
                adz_sequence(m, weight - m),
                adz_coefficient(m, weight - m),
                "adz",
                f"adz({m},{weight - m})",
            )

    for a, b in _factor_pairs(weight, level):
        rows.append(double_shuffle(a, b))
        value_a = prior.get(a)
        value_b = prior.get(b)
        if value_a is not None and value_b is not None:
            product = value_a * value_b
            rows.append(
                Relation(
                    stuffle_side(a, b),
                    -product,
                    family="dshuffle",
                    label=f"stuffle-value{a}{b}",
                ).validate()
            )
            rows.append(
                Relation(
                    shuffle_side(a, b),
                    -product,
                    family="dshuffle",
                    label=f"shuffle-value{a}{b}",
                ).validate()
            )

    if weight >= 2:
        for w in admissible_sequences(weight - 1, level):
            rows.append(regularized_double_shuffle(w))

    rows = [r for r in rows if not r.is_trivial]
    return ReductionSystem(
        weight, level, tuple(admissible_sequences(weight, level)), tuple(rows)
    )


def solve(system: ReductionSystem) -> dict[Sequence, ConstPolynomial | _Irreducible]:
    """Rational Gaussian elimination with deterministic pivoting.

    Unknowns are eliminated highest depth first, so surviving generators
    line up with the depth-1/2 presentation of the tables.  Returns a
    presented constant polynomial per pinned unknown and IRREDUCIBLE for
    the rest; an inconsistent system aborts loudly.
    """
    unknowns = list(system.unknowns)
    index = {s: i for i, s in enumerate(unknowns)}
    matrix: list[list[Fraction]] = []
    consts: list[ConstPolynomial] = []
    for rel in system.rows:
        row = [Fraction(0)] * len(unknowns)
        for s, c in rel.zeta_part.terms():
            row[index[s]] += c
        matrix.append(row)
        consts.append(rel.const_part.canonical())

    pivot_row_of: dict[int, int] = {}
    used_rows: set[int] = set()
    for col in range(len(unknowns)):
        pivot = next(
            (
                r
                for r in range(len(matrix))
                if r not in used_rows and matrix[r][col]
            ),
            None,
        )
        if pivot is None:
            continue
        used_rows.add(pivot)
        pivot_row_of[col] = pivot
        inv = 1 / matrix[pivot][col]
        matrix[pivot] = [v * inv for v in matrix[pivot]]
        consts[pivot] = consts[pivot] * inv
        for r in range(len(matrix)):
            if r != pivot and matrix[r][col]:
                factor = matrix[r][col]
                matrix[r] = [
                    v - factor * p for v, p in zip(matrix[r], matrix[pivot])
                ]
                consts[r] = consts[r] - consts[pivot] * factor

    for r in range(len(matrix)):
        if r not in used_rows and not any(matrix[r]) and not consts[r].is_zero():
            raise InconsistentSystemError(
                f"0 = {consts[r]} derived in weight-{system.weight} "
                f"level-{system.level} system"
            )

    table: dict[Sequence, ConstPolynomial | _Irreducible] = {}
    for col, s in enumerate(unknowns):
        pivot = pivot_row_of.get(col)
        if pivot is None:
            table[s] = IRREDUCIBLE
            continue
        row = matrix[pivot]
        if any(row[j] for j in range(len(unknowns)) if j != col):
            table[s] = IRREDUCIBLE
            continue
        table[s] = (-consts[pivot]).presented()
    return table


def verify_solution(
    system: ReductionSystem, table: dict[Sequence, ConstPolynomial | _Irreducible]
) -> bool:
    """Back-substitute: every fully-solved row must vanish identically."""
    for rel in system.rows:
        acc = rel.const_part.canonical()
        solved = True
        for s, c in rel.zeta_part.terms():
            value = table.get(s)
            if value is None or value is IRREDUCIBLE:
                solved = False
                break
            acc = acc + value.canonical() * c
        if solved and not acc.is_zero():
            return False
    return True


@functools.lru_cache(maxsize=None)
def solved_table(
    weight: int, level: int
) -> dict[Sequence, ConstPolynomial | _Irreducible]:
    if level == 2 and weight == 1:
        # Base case: the only admissible weight-1 value is the barred 1.
        return {seq(-1): eta_value(1).presented()}
    return solve(build_system(weight, level))


def reduce_sequence(s: Sequence) -> ConstPolynomial:
    """Closed form of a single admissible sequence, if pinned."""
    if not s.is_admissible:
        raise ValueError(f"non-admissible sequence {s}")
    value = solved_table(s.weight, s.level).get(s)
    if value is None or value is IRREDUCIBLE:
        raise IrreducibleError(f"{s} is not pinned at weight {s.weight}")
    return value


def closed_form_harmonic(spec: HarmonicSumSpec) -> ConstPolynomial:
    """Expand a harmonic sum and substitute solved closed forms."""
    _check_envelope(spec.weight, spec.level)
    table = solved_table(spec.weight, spec.level)
    acc = ConstPolynomial.zero()
    for s, c in expand(spec).terms():
        value = table.get(s)
        if value is None or value is IRREDUCIBLE:
            raise IrreducibleError(f"{spec} needs unpinned value {s}")
        acc = acc + value.canonical() * c
    return acc.presented()

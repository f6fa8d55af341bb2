"""Harmonic sums and their expansion into alternating Euler sums.

A harmonic sum S(n; r_1, ..., r_l) weights a product of (alternating)
harmonic numbers with exponents r_i by 1/(k+1)^n; a barred outer index
(encoded negative) adds an alternating outer sign.  Every such sum is an
integer combination of alternating Euler sums of the same weight: take the
quasi-shuffle product of the depth-one sequences (r_1) * ... * (r_l),
prefix every term with n, and multiply by (-1)^(number of barred r_i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    LinComb,
    Sequence,
    check_index,
    compositions,
    format_index,
    multinomial_expansion,
    seq,
    stuffle,
)


def _check_outer(value: int) -> int:
    check_index(value)
    if value == 1:
        raise ValueError("outer index must be nonzero, >=2 if positive")
    return value


def _inner_key(r: int) -> tuple[int, int]:
    # Descending magnitude, unbarred before barred at equal magnitude.
    return (-abs(r), 0 if r > 0 else 1)


@dataclass(frozen=True)
class HarmonicSumSpec:
    """The pair (n; r_1, ..., r_l).  The inner indices form a multiset and
    are stored in canonical order, so reorderings compare equal."""

    outer: int
    inner: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_outer(self.outer)
        if not self.inner:
            raise ValueError("at least one inner index is required")
        ordered = tuple(sorted((check_index(r) for r in self.inner), key=_inner_key))
        object.__setattr__(self, "inner", ordered)

    @property
    def weight(self) -> int:
        return abs(self.outer) + sum(abs(r) for r in self.inner)

    @property
    def depth(self) -> int:
        return len(self.inner)

    @property
    def level(self) -> int:
        return 2 if self.outer < 0 or any(r < 0 for r in self.inner) else 1

    def __str__(self) -> str:
        inner = ",".join(format_index(r) for r in self.inner)
        return f"S({format_index(self.outer)};{inner})"


def hsum(outer: int, *inner: int) -> HarmonicSumSpec:
    return HarmonicSumSpec(outer, tuple(inner))


def expand(spec: HarmonicSumSpec) -> LinComb:
    """Expand a harmonic sum into alternating Euler sums.

    Every output sequence has weight equal to the spec weight and depth at
    most l+1; coefficients are integers.  Inner reorderings give the same
    result (the quasi-shuffle product is commutative).
    """
    barred = sum(1 for r in spec.inner if r < 0)
    product = LinComb.unit()
    for r in spec.inner:
        product = stuffle(product, seq(r))
    sign = -1 if barred % 2 else 1
    prefixed = product.map_sequences(
        lambda s: Sequence((spec.outer,) + s.indices)
    )
    return prefixed * sign


def expand_repeated(outer: int, r: int, k: int, barred: bool = False) -> LinComb:
    """Expansion of S(n; {r}^k) (or S(n; {rbar}^k)) in closed form.

    Uses the multinomial formula for the k-fold quasi-shuffle power instead
    of iterated products; agrees with :func:`expand` on the equivalent spec.
    """
    _check_outer(outer)
    if k < 1:
        raise ValueError("k must be positive")
    body = multinomial_expansion(r, k, barred=barred)
    sign = -1 if (barred and k % 2) else 1
    return body.map_sequences(lambda s: Sequence((outer,) + s.indices)) * sign


def flajolet_combination(outer: int, m: int) -> dict[HarmonicSumSpec, Fraction]:
    """Rational combination of harmonic sums collapsing to zeta(n, {1}^m).

    Returns the family {S(n; r_1, ..., r_l): (-1)^(m-l)/(l! r_1 ... r_l)}
    over compositions of m, keyed on canonicalized specs (coefficients of
    equal sums merge).  Expanding every member and summing gives exactly
    the single term zeta(n, {1}^m) with coefficient 1.
    """
    if outer < 2:
        raise ValueError("outer index must be >= 2")
    if m < 1:
        raise ValueError("m must be positive")
    acc: dict[HarmonicSumSpec, Fraction] = {}
    for length in range(1, m + 1):
        sign = -1 if (m - length) % 2 else 1
        for comp in compositions(m, length):
            denom = math.factorial(length)
            for r in comp:
                denom *= r
            spec = HarmonicSumSpec(outer, comp)
            c = acc.get(spec, Fraction(0)) + Fraction(sign, denom)
            if c:
                acc[spec] = c
            elif spec in acc:
                del acc[spec]
    return acc

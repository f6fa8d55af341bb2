"""Signed index sequences and the quasi-shuffle (harmonic shuffle) product.

A sequence is an ordered tuple of nonzero integers.  A positive entry k is
an ordinary index; a negative entry -k encodes the alternating ("barred")
index of magnitude k.  The empty sequence is the multiplicative unit.
Formal linear combinations of sequences with exact rational coefficients
form the carrier algebra.

The quasi-shuffle product interleaves two sequences in all order-preserving
ways and, in addition, merges colliding head indices.  The merged index has
magnitude |k| + |l| and is barred exactly when one of the two operands is
barred (signs multiply).
"""

from __future__ import annotations

import functools
import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

Coeff = Union[int, Fraction]


def check_index(value: int) -> int:
    """Validate a single index: a nonzero integer (negative = barred)."""
    if not isinstance(value, int) or isinstance(value, bool) or value == 0:
        raise ValueError(f"index must be a nonzero integer, got {value!r}")
    return value


def format_index(value: int, barred: str = "b") -> str:
    return str(value) if value > 0 else f"{barred}{-value}"


@dataclass(frozen=True)
class Sequence:
    """An immutable tuple of nonzero integer indices (empty = unit)."""

    indices: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "indices", tuple(check_index(v) for v in self.indices)
        )

    @property
    def weight(self) -> int:
        return sum(abs(v) for v in self.indices)

    @property
    def depth(self) -> int:
        return len(self.indices)

    @property
    def level(self) -> int:
        """1 for all-positive sequences, 2 if any index is barred."""
        return 2 if any(v < 0 for v in self.indices) else 1

    @property
    def is_admissible(self) -> bool:
        """Leading index distinct from unbarred 1, so the sum converges."""
        return self.depth > 0 and self.indices[0] != 1

    def sort_key(self) -> tuple:
        # Canonical order: ascending depth, then per-position (|value|, sign),
        # unbarred before barred.  Cached: LinComb construction sorts a lot.
        key = self.__dict__.get("_key")
        if key is None:
            key = (
                self.depth,
                tuple((abs(v), 0 if v > 0 else 1) for v in self.indices),
            )
            object.__setattr__(self, "_key", key)
        return key

    def __str__(self) -> str:
        return "(" + ",".join(format_index(v) for v in self.indices) + ")"


def seq(*indices: int) -> Sequence:
    return Sequence(tuple(indices))


class LinComb:
    """A formal finite linear combination of Sequences over the rationals.

    Zero coefficients are never stored; iteration follows the canonical
    sequence order, so equal combinations render identically.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[Sequence, Coeff]] | dict | None = None):
        data: dict[Sequence, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for s, c in items:
                if not isinstance(s, Sequence):
                    s = Sequence(tuple(s))
                if not isinstance(c, (int, Fraction)):
                    c = Fraction(c)
                if c:
                    c0 = data.get(s)
                    c = c if c0 is None else c0 + c
                    if c:
                        data[s] = c
                    elif s in data:
                        del data[s]
        self._terms = {s: data[s] for s in sorted(data, key=Sequence.sort_key)}

    @classmethod
    def _from_map(cls, data: dict[Sequence, Coeff]) -> "LinComb":
        # Internal: keys already unique; prune zeros and order canonically.
        out = cls.__new__(cls)
        clean = {s: c for s, c in data.items() if c}
        out._terms = {s: clean[s] for s in sorted(clean, key=Sequence.sort_key)}
        return out

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    @classmethod
    def unit(cls) -> "LinComb":
        return cls([(Sequence(), 1)])

    @classmethod
    def single(cls, s: Sequence, c: Coeff = 1) -> "LinComb":
        return cls([(s, c)])

    def terms(self) -> list[tuple[Sequence, Fraction]]:
        return list(self._terms.items())

    def sequences(self) -> list[Sequence]:
        return list(self._terms)

    def coeff(self, s: Sequence) -> Fraction:
        return self._terms.get(s, Fraction(0))

    def coefficient_mass(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    def map_sequences(self, fn) -> "LinComb":
        """Apply fn: Sequence -> Sequence to every term, merging collisions."""
        return LinComb([(fn(s), c) for s, c in self._terms.items()])

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinComb) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "LinComb") -> "LinComb":
        out = dict(self._terms)
        for s, c in other._terms.items():
            v = out.get(s, Fraction(0)) + c
            if v:
                out[s] = v
            elif s in out:
                del out[s]
        return LinComb(out)

    def __sub__(self, other: "LinComb") -> "LinComb":
        return self + (-other)

    def __neg__(self) -> "LinComb":
        return LinComb({s: -c for s, c in self._terms.items()})

    def __mul__(self, c: Coeff) -> "LinComb":
        c = Fraction(c)
        if not c:
            return LinComb()
        return LinComb({s: v * c for s, v in self._terms.items()})

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for s, c in self._terms.items():
            mag = "" if abs(c) == 1 else f"{abs(c)}*"
            body = f"{mag}{s}" if s.depth else (f"{abs(c)}" if abs(c) != 1 else "1")
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"LinComb({self._terms!r})"


def concat(a: Sequence, b: Sequence) -> Sequence:
    """Concatenate two sequences; weights and depths add."""
    return Sequence(a.indices + b.indices)


def merge(k: int, l: int) -> int:
    """Merged head index: magnitude |k|+|l|, barred iff exactly one input is."""
    check_index(k)
    check_index(l)
    sign = 1 if (k > 0) == (l > 0) else -1
    return sign * (abs(k) + abs(l))


@functools.lru_cache(maxsize=None)
def _stuffle_tuples(
    a: tuple[int, ...], b: tuple[int, ...]
) -> tuple[tuple[tuple[int, ...], int], ...]:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    k, a_rest = a[0], a[1:]
    l, b_rest = b[0], b[1:]
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for t, c in _stuffle_tuples(a_rest, b):
        out[(k,) + t] += c
    for t, c in _stuffle_tuples(a, b_rest):
        out[(l,) + t] += c
    m = merge(k, l)
    for t, c in _stuffle_tuples(a_rest, b_rest):
        out[(m,) + t] += c
    return tuple(out.items())


_interned: dict[tuple[int, ...], Sequence] = {}


def _sequence(indices: tuple[int, ...]) -> Sequence:
    # Construction bypass for tuples produced by the product recursions,
    # which are valid by construction.
    s = _interned.get(indices)
    if s is None:
        s = object.__new__(Sequence)
        object.__setattr__(s, "indices", indices)
        _interned[indices] = s
    return s


def stuffle(a: LinComb | Sequence, b: LinComb | Sequence) -> LinComb:
    """Quasi-shuffle product, extended bilinearly to linear combinations."""
    if isinstance(a, Sequence):
        a = LinComb.single(a)
    if isinstance(b, Sequence):
        b = LinComb.single(b)
    acc: dict[tuple[int, ...], Coeff] = defaultdict(int)
    for sa, ca in a.terms():
        for sb, cb in b.terms():
            cab = ca * cb
            if isinstance(cab, Fraction) and cab.denominator == 1:
                cab = cab.numerator
            for t, c in _stuffle_tuples(sa.indices, sb.indices):
                acc[t] += cab * c
    return LinComb._from_map({_sequence(t): c for t, c in acc.items()})


def stuffle_power(a: LinComb | Sequence, k: int) -> LinComb:
    """k-fold quasi-shuffle power; the empty product is the unit."""
    if k < 0:
        raise ValueError("power must be nonnegative")
    out = LinComb.unit()
    for _ in range(k):
        out = stuffle(out, a)
    return out


def compositions(total: int, parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of positive integers summing to ``total``.

    With ``parts`` set, only compositions of that exact length.
    """
    if total < 0:
        raise ValueError("total must be nonnegative")
    if parts is None:
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in compositions(total - first):
                yield (first,) + rest
        return
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        if total >= 1:
            yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def multinomial_expansion(r: int, k: int, barred: bool = False) -> LinComb:
    """Closed form of the k-fold quasi-shuffle power of the single index r.

    Sums over compositions (a_1, ..., a_l) of k with multinomial
    coefficients k!/(a_1! ... a_l!).  In the barred variant the part r*a_i
    stays unbarred when a_i is even and is barred when a_i is odd, because
    merging an even number of barred indices cancels the sign.
    """
    if r < 1 or k < 1:
        raise ValueError("r and k must be positive")
    fact_k = math.factorial(k)
    acc: dict[Sequence, Fraction] = {}
    for comp in compositions(k):
        coeff = fact_k
        for a in comp:
            coeff //= math.factorial(a)
        if barred:
            values = tuple(r * a if a % 2 == 0 else -(r * a) for a in comp)
        else:
            values = tuple(r * a for a in comp)
        s = Sequence(values)
        acc[s] = acc.get(s, 0) + coeff
    return LinComb(acc)


def depth_one_combination(m: int) -> LinComb:
    """Alternating-coefficient combination of products of depth-one indices.

    Returns  sum_{l=1}^{m} (-1)^(m-l)/l! * sum_{r_1+...+r_l=m}
    (r_1)*(r_2)*...*(r_l) / (r_1 ... r_l)  as a linear combination; it
    collapses to the single sequence ({1}^m).
    """
    if m < 1:
        raise ValueError("m must be positive")
    out = LinComb.zero()
    for length in range(1, m + 1):
        sign = -1 if (m - length) % 2 else 1
        outer = Fraction(sign, math.factorial(length))
        for comp in compositions(m, length):
            prod = 1
            for r in comp:
                prod *= r
            product = LinComb.unit()
            for r in comp:
                product = stuffle(product, seq(r))
            out = out + product * Fraction(outer, prod)
    return out

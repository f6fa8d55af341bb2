"""Relation families among (alternating) Euler sums, and the constants they
evaluate to.

Closed forms are polynomials with exact rational coefficients in the
classical constants log 2, pi, zeta(k) and (reserved) Li_4(1/2).  Two
normal forms are used: the *canonical* form rewrites every even zeta
value into an exact rational multiple of a pi-power, which makes linear
algebra over monomials unambiguous; the *presented* form collapses even
pi-powers back into single zeta atoms, matching the usual table
vocabulary (zeta(6) rather than pi^6 or zeta(2)^3).

Generated relation families:

* sum formula: fixed-weight fixed-depth admissible sums equal zeta(weight);
* duality (in :mod:`.words`);
* double shuffle: the quasi-shuffle and shuffle expansions of one product
  agree;
* regularized double shuffle: the same comparison against the divergent
  depth-one index 1, after the single divergent term cancels;
* eta values: zeta(nbar) = (2^(1-n) - 1) zeta(n), with zeta(1bar) = -log 2;
* the Aomoto-Drinfel'd-Zagier generating function for zeta(m+1, {1}^(n-1));
* zeta({2}^n) = pi^(2n)/(2n+1)!.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import LinComb, Sequence, compositions, seq, stuffle
from .words import seq_to_word, shuffle_product_seqs, word, word_to_seq, shuffle, decode, Y_PLUS

# --------------------------------------------------------------------------
# constant atoms / monomials / polynomials

Atom = tuple[str, int]

LOG2: Atom = ("log2", 0)
PI: Atom = ("pi", 0)
LI4_HALF: Atom = ("li4half", 0)


def zeta_atom(k: int) -> Atom:
    if k < 2:
        raise ValueError("zeta atoms require k >= 2")
    return ("zeta", k)


def atom_weight(atom: Atom) -> int:
    name, arg = atom
    if name == "zeta":
        return arg
    if name in ("log2", "pi"):
        return 1
    if name == "li4half":
        return 4
    raise ValueError(f"unknown atom {atom!r}")


def atom_text(atom: Atom) -> str:
    name, arg = atom
    return f"zeta({arg})" if name == "zeta" else name


def _atom_from_text(text: str) -> Atom:
    if text.startswith("zeta(") and text.endswith(")"):
        return zeta_atom(int(text[5:-1]))
    if text in ("log2", "pi", "li4half"):
        return (text, 0)
    raise ValueError(f"unknown atom name {text!r}")


Monomial = tuple[Atom, ...]  # atoms in sorted order; () is the unit


def _bernoulli_numbers(n_max: int) -> list[Fraction]:
    values = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for j in range(n):
            acc += math.comb(n + 1, j) * values[j]
        values.append(-acc / (n + 1))
    return values


_BERNOULLI = _bernoulli_numbers(16)

# zeta(2n) / pi^(2n) as an exact rational, derived from Bernoulli numbers.
EVEN_ZETA_OVER_PI_POWER: dict[int, Fraction] = {
    2 * n: Fraction((-1) ** (n + 1) * 2 ** (2 * n - 1), math.factorial(2 * n))
    * _BERNOULLI[2 * n]
    for n in range(1, 5)
}


def _atom_display_key(a: Atom) -> tuple:
    order = {"zeta": 0, "li4half": 1, "pi": 2, "log2": 3}
    return (order[a[0]], a[1])


def _display_atoms(monomial: Monomial) -> list[Atom]:
    return sorted(monomial, key=_atom_display_key)


def _display_key(monomial: Monomial) -> tuple:
    # More atoms first, then by atom kind; puts zeta(2)*log2 before zeta(3)
    # and zeta(3)^2 before zeta(6), as in the usual tables.
    return (-len(monomial), tuple(_atom_display_key(a) for a in _display_atoms(monomial)))


class ConstPolynomial:
    """Exact-rational polynomial in classical constant atoms."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        data: dict[Monomial, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for mono, c in items:
                mono = tuple(sorted(mono))
                c = Fraction(c)
                if c:
                    v = data.get(mono, Fraction(0)) + c
                    if v:
                        data[mono] = v
                    elif mono in data:
                        del data[mono]
        self._terms = {m: data[m] for m in sorted(data, key=_display_key)}

    @classmethod
    def zero(cls) -> "ConstPolynomial":
        return cls()

    @classmethod
    def rational(cls, c) -> "ConstPolynomial":
        return cls({(): Fraction(c)})

    @classmethod
    def atom(cls, a: Atom, c=1) -> "ConstPolynomial":
        return cls({(a,): Fraction(c)})

    @classmethod
    def monomial(cls, atoms, c=1) -> "ConstPolynomial":
        return cls({tuple(atoms): Fraction(c)})

    def terms(self) -> list[tuple[Monomial, Fraction]]:
        return list(self._terms.items())

    def coeff(self, atoms) -> Fraction:
        return self._terms.get(tuple(sorted(atoms)), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def weights(self) -> set[int]:
        return {sum(atom_weight(a) for a in m) for m in self._terms}

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, ConstPolynomial) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __add__(self, other: "ConstPolynomial") -> "ConstPolynomial":
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, Fraction(0)) + c
            if v:
                out[m] = v
            elif m in out:
                del out[m]
        return ConstPolynomial(out)

    def __sub__(self, other: "ConstPolynomial") -> "ConstPolynomial":
        return self + (-other)

    def __neg__(self) -> "ConstPolynomial":
        return ConstPolynomial({m: -c for m, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, ConstPolynomial):
            out: dict[Monomial, Fraction] = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = tuple(sorted(m1 + m2))
                    v = out.get(m, Fraction(0)) + c1 * c2
                    if v:
                        out[m] = v
                    elif m in out:
                        del out[m]
            return ConstPolynomial(out)
        return ConstPolynomial(
            {m: c * Fraction(other) for m, c in self._terms.items()}
        )

    __rmul__ = __mul__

    def canonical(self) -> "ConstPolynomial":
        """Rewrite even zeta atoms as rational multiples of pi-powers."""
        out = ConstPolynomial.zero()
        for mono, c in self._terms.items():
            atoms: list[Atom] = []
            factor = Fraction(1)
            for a in mono:
                if a[0] == "zeta" and a[1] % 2 == 0 and a[1] in EVEN_ZETA_OVER_PI_POWER:
                    factor *= EVEN_ZETA_OVER_PI_POWER[a[1]]
                    atoms.extend([PI] * a[1])
                else:
                    atoms.append(a)
            out = out + ConstPolynomial.monomial(atoms, c * factor)
        return out

    def presented(self) -> "ConstPolynomial":
        """Collapse even pi-powers into single zeta atoms (table vocabulary)."""
        out = ConstPolynomial.zero()
        for mono, c in self.canonical()._terms.items():
            pis = sum(1 for a in mono if a == PI)
            rest = [a for a in mono if a != PI]
            factor = Fraction(1)
            if pis and pis % 2 == 0 and pis in EVEN_ZETA_OVER_PI_POWER:
                factor /= EVEN_ZETA_OVER_PI_POWER[pis]
                rest.append(zeta_atom(pis))
            else:
                rest.extend([PI] * pis)
            out = out + ConstPolynomial.monomial(rest, c * factor)
        return out

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self._terms.items():
            shown = _display_atoms(mono)
            runs: list[str] = []
            i = 0
            while i < len(shown):
                j = i
                while j < len(shown) and shown[j] == shown[i]:
                    j += 1
                text = atom_text(shown[i])
                runs.append(text if j - i == 1 else f"{text}^{j - i}")
                i = j
            body = "*".join(runs)
            mag = abs(c)
            if body:
                term = body if mag == 1 else f"{mag}*{body}"
            else:
                term = str(mag)
            parts.append(("- " if c < 0 else "+ ") + term)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"ConstPolynomial({self._terms!r})"

    def to_json(self) -> list[dict]:
        return [
            {"coeff": str(c), "atoms": [atom_text(a) for a in _display_atoms(m)]}
            for m, c in self._terms.items()
        ]

    @classmethod
    def from_json(cls, data: list[dict]) -> "ConstPolynomial":
        return cls(
            [
                (tuple(_atom_from_text(t) for t in rec["atoms"]), Fraction(rec["coeff"]))
                for rec in data
            ]
        )


def poly(*terms) -> ConstPolynomial:
    """Build a polynomial from (coeff, atom, atom, ...) tuples."""
    return ConstPolynomial([(tuple(t[1:]), Fraction(t[0])) for t in terms])


# --------------------------------------------------------------------------
# relations


@dataclass(frozen=True)
class Relation:
    """A linear identity: sum of zeta terms plus a constant part equals 0."""

    zeta_part: LinComb
    const_part: ConstPolynomial = field(default_factory=ConstPolynomial.zero)
    family: str = ""
    label: str = ""

    @property
    def weight(self) -> int | None:
        weights = {s.weight for s in self.zeta_part.sequences()}
        weights |= self.const_part.weights()
        return weights.pop() if len(weights) == 1 else None

    @property
    def is_trivial(self) -> bool:
        return not self.zeta_part and self.const_part.is_zero()

    def validate(self) -> "Relation":
        bad = [s for s in self.zeta_part.sequences() if not s.is_admissible]
        if bad:
            raise ValueError(f"non-admissible term(s) {bad} in relation {self.label}")
        weights = {s.weight for s in self.zeta_part.sequences()}
        weights |= self.const_part.weights()
        if len(weights) > 1:
            raise ValueError(f"relation {self.label} is not weight-homogeneous")
        return self

    def __str__(self) -> str:
        zeta_text = str(self.zeta_part)
        if self.const_part.is_zero():
            return f"{zeta_text} = 0"
        return f"{zeta_text} = {-self.const_part}"


def sum_formula(weight: int, depth: int) -> Relation:
    """Admissible sums of fixed weight and depth add up to zeta(weight)."""
    if depth < 1 or weight <= depth:
        raise ValueError("requires weight > depth >= 1")
    total = LinComb.zero()
    for comp in compositions(weight, depth):
        if comp[0] >= 2:
            total = total + LinComb.single(Sequence(comp))
    zeta_part = total - LinComb.single(seq(weight))
    return Relation(zeta_part, family="sum", label=f"sum({weight},{depth})").validate()


def stuffle_side(a: Sequence, b: Sequence) -> LinComb:
    return stuffle(a, b)


def shuffle_side(a: Sequence, b: Sequence) -> LinComb:
    return shuffle_product_seqs(a, b)


def double_shuffle(a: Sequence, b: Sequence) -> Relation:
    """Quasi-shuffle minus shuffle expansion of the product zeta(a)zeta(b)."""
    for s in (a, b):
        if not s.is_admissible:
            raise ValueError(f"non-admissible factor {s}")
    zeta_part = stuffle(a, b) - shuffle_product_seqs(a, b)
    return Relation(
        zeta_part, family="dshuffle", label=f"dshuffle{a}{b}"
    ).validate()


def regularized_double_shuffle(w: Sequence) -> Relation:
    """Double shuffle against the divergent index (1).

    Both expansions contain the single divergent term (1, w) with
    coefficient one; it cancels in the difference and every surviving term
    is admissible.  A surviving non-admissible term signals an encoding
    bug, so it fails hard.
    """
    if not w.is_admissible:
        raise ValueError(f"non-admissible argument {w}")
    st = stuffle(seq(1), w)
    sh = decode(shuffle(word(Y_PLUS), seq_to_word(w)))
    divergent = Sequence((1,) + w.indices)
    if st.coeff(divergent) != 1 or sh.coeff(divergent) != 1:
        raise RuntimeError(f"divergent term bookkeeping failed for {w}")
    diff = st - sh
    bad = [s for s in diff.sequences() if not s.is_admissible]
    if bad:
        raise RuntimeError(f"non-admissible survivors {bad} for {w}")
    return Relation(diff, family="regdshuffle", label=f"regdshuffle{w}").validate()


def eta_value(n: int) -> ConstPolynomial:
    """Closed form of zeta(nbar): -log 2 for n = 1, else (2^(1-n)-1) zeta(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return ConstPolynomial.atom(LOG2, -1)
    return ConstPolynomial.atom(zeta_atom(n), Fraction(1, 2 ** (n - 1)) - 1)


def zeta_two_repeated(n: int) -> ConstPolynomial:
    """zeta({2}^n) = pi^(2n) / (2n+1)!."""
    if n < 1:
        raise ValueError("n must be positive")
    return ConstPolynomial.monomial(
        (PI,) * (2 * n), Fraction(1, math.factorial(2 * n + 1))
    )


# --------------------------------------------------------------------------
# the Aomoto-Drinfel'd-Zagier generating function

ADZ_DEFAULT_TRUNCATION = 8

_BivSeries = dict[tuple[int, int], ConstPolynomial]


def _biv_mul(a: _BivSeries, b: _BivSeries, cap: int) -> _BivSeries:
    out: _BivSeries = {}
    for (i1, j1), p1 in a.items():
        for (i2, j2), p2 in b.items():
            i, j = i1 + i2, j1 + j2
            if i + j > cap:
                continue
            prod = p1 * p2
            out[(i, j)] = out[(i, j)] + prod if (i, j) in out else prod
    return {k: v for k, v in out.items() if not v.is_zero()}


@functools.lru_cache(maxsize=None)
def _adz_table(truncation: int) -> _BivSeries:
    # log of the generating function: sum_k zeta(k) (x^k + y^k - (x+y)^k)/k;
    # the pure x^k and y^k terms cancel against the binomial expansion, so
    # only mixed monomials survive.
    log_part: _BivSeries = {}
    for k in range(2, truncation + 1):
        zk_over_k = ConstPolynomial.atom(zeta_atom(k), Fraction(-1, k))
        for i in range(1, k):
            log_part[(i, k - i)] = zk_over_k * math.comb(k, i)
    exponential: _BivSeries = {(0, 0): ConstPolynomial.rational(1)}
    power: _BivSeries = {(0, 0): ConstPolynomial.rational(1)}
    for p in range(1, truncation // 2 + 1):
        power = _biv_mul(power, log_part, truncation)
        inv_fact = Fraction(1, math.factorial(p))
        for key, val in power.items():
            term = val * inv_fact
            exponential[key] = exponential[key] + term if key in exponential else term
    return {
        key: -val for key, val in exponential.items() if key != (0, 0) and val
    }


def adz_coefficient(
    m: int, n: int, truncation: int = ADZ_DEFAULT_TRUNCATION
) -> ConstPolynomial:
    """Coefficient of x^m y^n in 1 - exp(sum_k zeta(k)(x^k+y^k-(x+y)^k)/k).

    Equals zeta(m+1, {1}^(n-1)) as a polynomial in zeta atoms; symmetric
    under (m, n) <-> (n, m).
    """
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    if m + n > truncation:
        raise ValueError(
            f"total degree {m + n} exceeds series truncation {truncation}"
        )
    return _adz_table(truncation).get((m, n), ConstPolynomial.zero())


def adz_sequence(m: int, n: int) -> Sequence:
    """The sequence (m+1, {1}^(n-1)) pinned by :func:`adz_coefficient`."""
    return Sequence((m + 1,) + (1,) * (n - 1))

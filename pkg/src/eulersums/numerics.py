"""High-precision numerical evaluation of Euler sums and harmonic sums.

This is the independent oracle: it never consults the symbolic reduction
machinery.  A nested sum is evaluated by running the defining recursion
for the inner partial sums up to an adaptive cutoff M and replacing the
outer tail by a termwise-summed asymptotic expansion.

Asymptotic expansions are linear combinations of monomials
``m^-t * log^s m * (-1)^(m * osc)``.  Partial sums of non-oscillating
monomials are expanded with the Euler-Maclaurin formula to third order
(Bernoulli terms through B6); oscillating monomials use Boole summation,
i.e. the iterated-averaging (Euler transformation) coefficients of
1/(1 + e^x) through the seventh derivative.  The integration constant of
each intermediate level is anchored to the numerically computed partial
sum at M, which keeps every level of the recursion self-contained.

Error bounds for accelerated sums are heuristic (dominated by the first
dropped Euler-Maclaurin order) and are flagged as such; bounds for the
classical constants are small and treated as rigorous.  Working precision
defaults to 30 decimal digits to absorb cancellation.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpf

from .algebra import LinComb, Sequence
from .harmonic import HarmonicSumSpec
from .relations import Atom, ConstPolynomial

_EM_ORDER = 3  # Bernoulli corrections through B(2 * _EM_ORDER)
_BOOLE_ORDER = 7  # derivatives used in the alternating-tail expansion

TOLERANCE_FLOOR = 1e-6


class ToleranceError(RuntimeError):
    """The requested tolerance is unreachable within the term budget."""


@dataclass(frozen=True)
class EvalConfig:
    tolerance: float = 1e-8
    max_terms: int = 1_000_000
    working_precision: int = 30

    def __post_init__(self) -> None:
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.tolerance > TOLERANCE_FLOOR:
            raise ValueError(f"tolerance floor is {TOLERANCE_FLOOR:g}")
        if self.max_terms < 64:
            raise ValueError("max_terms must be at least 64")
        guard = 4 + math.ceil(-math.log10(self.tolerance))
        if self.working_precision < guard:
            raise ValueError(
                f"working_precision={self.working_precision} leaves fewer than "
                f"4 guard digits beyond tolerance {self.tolerance:g}"
            )


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class NumericValue:
    value: mpf
    error_bound: mpf
    heuristic: bool

    def __float__(self) -> float:
        return float(self.value)


def _bound_estimate(cutoff: int, dps: int) -> float:
    # First dropped Euler-Maclaurin order decays like M^-(u + 2*order + 1)
    # with u >= 1; log factors from inner harmonic growth.
    return math.log(cutoff + 3) ** 6 * (cutoff + 1) ** (
        -(2 * _EM_ORDER + 2)
    ) + 10.0 ** (4 - dps)


@functools.lru_cache(maxsize=None)
def _parameters(cfg: EvalConfig) -> tuple[int, int, int]:
    """Cutoff M, series order L and decimal precision for a config."""
    dps = max(cfg.working_precision, 4 + math.ceil(-math.log10(cfg.tolerance)))
    order = max(14, math.ceil(-math.log10(cfg.tolerance)) + 6)
    cutoff = 64
    while _bound_estimate(cutoff, dps) > cfg.tolerance / 4:
        cutoff *= 2
        if cutoff > cfg.max_terms:
            raise ToleranceError(
                f"tolerance {cfg.tolerance:g} unreachable within "
                f"max_terms={cfg.max_terms}"
            )
    return cutoff, order, dps


# --------------------------------------------------------------------------
# exact transform tables (structure is rational; only anchors are floats)


def _bernoulli_numbers(n_max: int) -> list[Fraction]:
    values = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = Fraction(0)
        for j in range(n):
            acc += math.comb(n + 1, j) * values[j]
        values.append(-acc / (n + 1))
    return values


_BERNOULLI = _bernoulli_numbers(2 * _EM_ORDER + 2)


def _boole_coefficients(order: int) -> list[Fraction]:
    # power series of 1/(1 + e^x): applying it to shifts turns an
    # alternating tail into derivatives at the truncation point.
    coeffs = [Fraction(1, 2)]
    for n in range(1, order + 1):
        acc = Fraction(0)
        for i in range(1, n + 1):
            acc += Fraction(1, math.factorial(i)) * coeffs[n - i]
        coeffs.append(-acc / 2)
    return coeffs


_BOOLE = _boole_coefficients(_BOOLE_ORDER)

# A "mono list" is a tuple of ((t, s), Fraction) pairs standing for
# sum c * m^-t * log^s m; all transform tables below are exact.
MonoList = tuple[tuple[tuple[int, int], Fraction], ...]


def _normalized(entries: list[tuple[tuple[int, int], Fraction]], order: int) -> MonoList:
    acc: dict[tuple[int, int], Fraction] = {}
    for key, c in entries:
        if key[0] > order or not c:
            continue
        v = acc.get(key, Fraction(0)) + c
        if v:
            acc[key] = v
        elif key in acc:
            del acc[key]
    return tuple(sorted(acc.items()))


def _derivative(mono_list: MonoList, order: int) -> MonoList:
    out = []
    for (t, s), c in mono_list:
        out.append(((t + 1, s), -t * c))
        if s:
            out.append(((t + 1, s - 1), s * c))
    return _normalized(out, order)


@functools.lru_cache(maxsize=None)
def _shift_mono(t: int, s: int, delta: int, order: int) -> MonoList:
    """Expansion of (m+delta)^-t log^s(m+delta) in monomials of m."""
    # (m+delta)^-t
    base: dict[int, Fraction] = {}
    for i in range(0, order - t + 1):
        base[i] = Fraction((-1) ** i * math.comb(t + i - 1, i) * delta**i) if t else (
            Fraction(1) if i == 0 else Fraction(0)
        )
    # log(m+delta) = log m + D,  D = sum_i (-1)^(i+1) delta^i / (i m^i)
    d_series: dict[int, Fraction] = {
        i: Fraction((-1) ** (i + 1) * delta**i, i) for i in range(1, order + 1)
    }

    def series_mul(u: dict[int, Fraction], v: dict[int, Fraction]) -> dict[int, Fraction]:
        out: dict[int, Fraction] = {}
        for i, ci in u.items():
            for j, cj in v.items():
                if i + j <= order and ci and cj:
                    out[i + j] = out.get(i + j, Fraction(0)) + ci * cj
        return out

    entries: list[tuple[tuple[int, int], Fraction]] = []
    d_power: dict[int, Fraction] = {0: Fraction(1)}
    for b in range(0, s + 1):
        if b:
            d_power = series_mul(d_power, d_series)
        comb = math.comb(s, b)
        for extra, c_extra in series_mul(base, d_power).items():
            entries.append(((t + extra, s - b), comb * c_extra))
    return _normalized(entries, order)


def _shift_list(mono_list: MonoList, delta: int, order: int) -> MonoList:
    out = []
    for (t, s), c in mono_list:
        for key, c2 in _shift_mono(t, s, delta, order):
            out.append((key, c * c2))
    return _normalized(out, order)


@functools.lru_cache(maxsize=None)
def _em_correction(t: int, s: int, order: int) -> MonoList:
    """g(m)/2 + sum B_2i/(2i)! g^(2i-1)(m) for g = m^-t log^s m."""
    entries = [((t, s), Fraction(1, 2))]
    deriv: MonoList = (((t, s), Fraction(1)),)
    level = 0
    for i in range(1, _EM_ORDER + 1):
        while level < 2 * i - 1:
            deriv = _derivative(deriv, order)
            level += 1
        factor = _BERNOULLI[2 * i] / math.factorial(2 * i)
        entries.extend((key, factor * c) for key, c in deriv)
    return _normalized(entries, order)


@functools.lru_cache(maxsize=None)
def _integral_tail(t: int, s: int, order: int) -> MonoList:
    """integral_m^infinity x^-t log^s x dx, for t >= 2 (by parts)."""
    entries = []
    for i in range(0, s + 1):
        c = Fraction(
            math.factorial(s) // math.factorial(s - i), (t - 1) ** (i + 1)
        )
        entries.append(((t - 1, s - i), c))
    return _normalized(entries, order)


@functools.lru_cache(maxsize=None)
def _partial_nonosc(t: int, s: int, order: int) -> MonoList:
    """sum_{j<=m} j^-t log^s j  =  C + (this list)(m), non-oscillating."""
    if t < 1:
        raise RuntimeError(f"non-summable growth (t={t}) in expansion")
    if t == 1:
        integral: MonoList = (((0, s + 1), Fraction(1, s + 1)),)
    else:
        integral = tuple((key, -c) for key, c in _integral_tail(t, s, order))
    return _normalized(list(integral) + list(_em_correction(t, s, order)), order)


@functools.lru_cache(maxsize=None)
def _boole_transform(t: int, s: int, order: int) -> MonoList:
    """T with  sum_{j>m} (-1)^j g(j) = (-1)^(m+1) T(m),  g = m^-t log^s m."""
    if t < 1:
        raise RuntimeError(f"non-summable oscillation (t={t}) in expansion")
    entries: list[tuple[tuple[int, int], Fraction]] = []
    deriv: MonoList = (((t, s), Fraction(1)),)
    for i in range(0, _BOOLE_ORDER + 1):
        if i:
            deriv = _derivative(deriv, order)
        entries.extend((key, _BOOLE[i] * c) for key, c in deriv)
    return _shift_list(_normalized(entries, order), +1, order)


# --------------------------------------------------------------------------
# expansions with numeric coefficients: dict[(t, s, osc)] -> mpf


def _exp_mul(a: dict, b: dict, order: int) -> dict:
    out: dict[tuple[int, int, bool], mpf] = {}
    for (t1, s1, o1), c1 in a.items():
        for (t2, s2, o2), c2 in b.items():
            t = t1 + t2
            if t > order:
                continue
            key = (t, s1 + s2, o1 != o2)
            prod = c1 * c2
            out[key] = out[key] + prod if key in out else prod
    return out


def _exp_apply(mono_c: mpf, table: MonoList, osc: bool, out: dict) -> None:
    for (t, s), frac in table:
        key = (t, s, osc)
        term = mono_c * mpf(frac.numerator) / frac.denominator
        out[key] = out[key] + term if key in out else term


def _partial_sum_expansion(summand: dict, order: int) -> dict:
    """Symbolic partial sum: sum_{j<=m} f(j) = C + result(m)."""
    out: dict[tuple[int, int, bool], mpf] = {}
    for (t, s, osc), c in summand.items():
        if osc:
            _exp_apply(c, _boole_transform(t, s, order), True, out)
        else:
            _exp_apply(c, _partial_nonosc(t, s, order), False, out)
    return out


class _Evaluator:
    """Shared numeric helpers at one precision and truncation point."""

    def __init__(self, cutoff: int, order: int, dps: int):
        self.cutoff = cutoff
        self.order = order
        self.dps = dps
        with mp.workdps(dps):
            big_m = mpf(cutoff)
            self.inv_powers = [mpf(1)]
            for _ in range(order + 2):
                self.inv_powers.append(self.inv_powers[-1] / big_m)
            self.log_powers = [mpf(1)]
            log_m = mp.log(big_m)
            for _ in range(12):
                self.log_powers.append(self.log_powers[-1] * log_m)

    def eval_list(self, table: MonoList, coeff: mpf) -> mpf:
        acc = mpf(0)
        for (t, s), frac in table:
            acc += mpf(frac.numerator) / frac.denominator * self.inv_powers[t] * self.log_powers[s]
        return acc * coeff

    def eval_expansion(self, expansion: dict) -> mpf:
        """Value of the non-constant expansion at m = cutoff."""
        sign_m = -1 if self.cutoff % 2 else 1
        acc = mpf(0)
        for (t, s, osc), c in expansion.items():
            term = c * self.inv_powers[t] * self.log_powers[s]
            acc += term * sign_m if osc else term
        return acc

    def tail_sum(self, summand: dict) -> mpf:
        """sum_{j > cutoff} f(j) from the summand expansion."""
        acc = mpf(0)
        osc_sign = 1 if self.cutoff % 2 else -1  # (-1)^(cutoff+1)
        for (t, s, osc), c in summand.items():
            if osc:
                acc += osc_sign * self.eval_list(
                    _boole_transform(t, s, self.order), c
                )
            else:
                if t < 2:
                    raise RuntimeError(
                        f"divergent tail monomial t={t} (non-admissible input?)"
                    )
                table = _normalized(
                    list(_integral_tail(t, s, self.order))
                    + [(key, -v) for key, v in _em_correction(t, s, self.order)],
                    self.order,
                )
                acc += self.eval_list(table, c)
        return acc


# --------------------------------------------------------------------------
# public evaluators

_euler_cache: dict[tuple, mpf] = {}
_harmonic_cache: dict[tuple, mpf] = {}


def _signed_inverse_power(m: int, k: int, negative: bool) -> mpf:
    v = mpf(1) / m**k
    return -v if (negative and m % 2) else v


def _euler_sum_value(indices: tuple[int, ...], cutoff: int, order: int, dps: int) -> mpf:
    key = (indices, cutoff, order, dps)
    cached = _euler_cache.get(key)
    if cached is not None:
        return cached
    with mp.workdps(dps):
        depth = len(indices)
        exps = [abs(v) for v in indices]
        negs = [v < 0 for v in indices]
        partial = [mpf(0)] * (depth + 1)  # partial[i] tracks level i (2-based)
        outer = mpf(0)
        for m in range(1, cutoff + 1):
            if depth > 1:
                outer += (
                    _signed_inverse_power(m, exps[0], negs[0]) * partial[2]
                )
                for i in range(2, depth + 1):
                    inner_prev = partial[i + 1] if i < depth else mpf(1)
                    partial[i] += (
                        _signed_inverse_power(m, exps[i - 1], negs[i - 1])
                        * inner_prev
                    )
            else:
                outer += _signed_inverse_power(m, exps[0], negs[0])
        ev = _Evaluator(cutoff, order, dps)

        def level_summand(expansion: dict, level_index: int) -> dict:
            # f(j) = sigma^j j^-k E(j-1): shift the inner expansion by -1,
            # raise every power by k, and flip oscillation for sigma = -1.
            out: dict = {}
            for (t, s, osc), c in _shift_expansion(expansion, -1, order).items():
                t2 = t + exps[level_index]
                if t2 > order:
                    continue
                key2 = (t2, s, osc != negs[level_index])
                out[key2] = out.get(key2, mpf(0)) + c
            return out

        expansion = {(0, 0, False): mpf(1)}
        for i in range(depth, 1, -1):
            body = _partial_sum_expansion(level_summand(expansion, i - 1), order)
            anchor = partial[i] - ev.eval_expansion(body)
            expansion = dict(body)
            expansion[(0, 0, False)] = expansion.get((0, 0, False), mpf(0)) + anchor
        value = outer + ev.tail_sum(level_summand(expansion, 0))
    _euler_cache[key] = value
    return value


def _shift_expansion(expansion: dict, delta: int, order: int) -> dict:
    out: dict = {}
    for (t, s, osc), c in expansion.items():
        factor = -c if (osc and delta % 2) else c
        for (t2, s2), frac in _shift_mono(t, s, delta, order):
            key = (t2, s2, osc)
            term = factor * mpf(frac.numerator) / frac.denominator
            out[key] = out.get(key, mpf(0)) + term
    return out


def _harmonic_sum_value(
    outer: int, inner: tuple[int, ...], cutoff: int, order: int, dps: int
) -> mpf:
    key = (outer, inner, cutoff, order, dps)
    cached = _harmonic_cache.get(key)
    if cached is not None:
        return cached
    with mp.workdps(dps):
        n_abs = abs(outer)
        alternating = outer < 0
        factors = len(inner)
        x = [mpf(0)] * factors
        total = mpf(0)
        for k in range(1, cutoff + 1):
            for i, r in enumerate(inner):
                if r > 0:
                    x[i] += mpf(1) / k**r
                else:
                    v = mpf(1) / k ** (-r)
                    x[i] += v if k % 2 else -v  # (-1)^(k+1)
            term = mpf(1)
            for v in x:
                term *= v
            term /= (k + 1) ** n_abs
            if alternating and k % 2 == 0:
                term = -term
            total += term
        ev = _Evaluator(cutoff, order, dps)
        product = {(0, 0, False): mpf(1)}
        for i, r in enumerate(inner):
            if r > 0:
                summand = {(r, 0, False): mpf(1)}
            else:
                summand = {(-r, 0, True): mpf(-1)}  # (-1)^(k+1) = -(-1)^k
            body = _partial_sum_expansion(summand, order)
            anchor = x[i] - ev.eval_expansion(body)
            factor_exp = dict(body)
            factor_exp[(0, 0, False)] = factor_exp.get((0, 0, False), mpf(0)) + anchor
            product = _exp_mul(product, factor_exp, order)
        outer_power = {
            (t, s, False): mpf(frac.numerator) / frac.denominator
            for (t, s), frac in _shift_mono(n_abs, 0, +1, order)
        }
        summand = _exp_mul(product, outer_power, order)
        if alternating:
            summand = {(t, s, not osc): -c for (t, s, osc), c in summand.items()}
        value = total + ev.tail_sum(summand)
    _harmonic_cache[key] = value
    return value


def constant(atom: Atom, cfg: EvalConfig = DEFAULT_CONFIG) -> NumericValue:
    """Numerical value of a constant atom (computed with mpmath)."""
    _, _, dps = _parameters(cfg)
    with mp.workdps(dps):
        name, arg = atom
        if name == "log2":
            value = mp.log(2)
        elif name == "pi":
            value = +mp.pi
        elif name == "li4half":
            value = mp.polylog(4, mpf(1) / 2)
        elif name == "zeta":
            if not 2 <= arg <= 8:
                raise ValueError(f"zeta atom outside supported range: {arg}")
            value = mp.zeta(arg)
        else:
            raise ValueError(f"unsupported atom {atom!r}")
        bound = mpf(10) ** (2 - dps) * (1 + abs(value))
    return NumericValue(value, bound, heuristic=False)


def eval_euler_sum(s: Sequence, cfg: EvalConfig = DEFAULT_CONFIG) -> NumericValue:
    """Evaluate an admissible (alternating) Euler sum to the configured
    tolerance; the empty sequence evaluates to 1 exactly."""
    if s.depth == 0:
        return NumericValue(mpf(1), mpf(0), heuristic=False)
    if not s.is_admissible:
        raise ValueError(f"non-admissible sequence {s}")
    cutoff, order, dps = _parameters(cfg)
    value = _euler_sum_value(s.indices, cutoff, order, dps)
    bound = mpf(_bound_estimate(cutoff, dps))
    return NumericValue(value, bound, heuristic=True)


def eval_harmonic_sum(
    spec: HarmonicSumSpec, cfg: EvalConfig = DEFAULT_CONFIG
) -> NumericValue:
    """Evaluate a harmonic sum directly from its defining series."""
    cutoff, order, dps = _parameters(cfg)
    value = _harmonic_sum_value(spec.outer, spec.inner, cutoff, order, dps)
    bound = mpf(_bound_estimate(cutoff, dps))
    return NumericValue(value, bound, heuristic=True)


def eval_lincomb(comb: LinComb, cfg: EvalConfig = DEFAULT_CONFIG) -> NumericValue:
    """Linear combination of Euler-sum evaluations with summed bounds."""
    _, _, dps = _parameters(cfg)
    with mp.workdps(dps):
        value = mpf(0)
        bound = mpf(0)
        heuristic = False
        for s, c in comb.terms():
            coeff = mpf(c.numerator) / c.denominator
            part = eval_euler_sum(s, cfg)
            value += coeff * part.value
            bound += abs(coeff) * part.error_bound
            heuristic = heuristic or part.heuristic
    return NumericValue(value, bound, heuristic)


def eval_const_poly(
    p: ConstPolynomial, cfg: EvalConfig = DEFAULT_CONFIG
) -> NumericValue:
    """Evaluate a constant polynomial atom by atom."""
    _, _, dps = _parameters(cfg)
    with mp.workdps(dps):
        value = mpf(0)
        bound = mpf(0)
        for mono, c in p.terms():
            term = mpf(c.numerator) / c.denominator
            for atom in mono:
                term *= constant(atom, cfg).value
            value += term
            bound += abs(term) * mpf(10) ** (2 - dps) * (len(mono) + 1)
    return NumericValue(value, bound, heuristic=False)

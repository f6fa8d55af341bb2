import itertools
import random
from fractions import Fraction

import pytest

from eulersums.algebra import (
    LinComb,
    Sequence,
    concat,
    depth_one_combination,
    merge,
    multinomial_expansion,
    seq,
    stuffle,
    stuffle_power,
)


def test_index_validation():
    with pytest.raises(ValueError):
        seq(0)
    with pytest.raises(ValueError):
        Sequence((2, 0, 1))
    with pytest.raises(ValueError):
        Sequence((2, 1.5))


def test_sequence_weight_depth_level():
    s = seq(3, -1, 2)
    assert s.weight == 6
    assert s.depth == 3
    assert s.level == 2
    assert seq(2, 1).level == 1
    assert Sequence().weight == 0 and Sequence().depth == 0


def test_admissibility():
    assert seq(2, 1).is_admissible
    assert seq(-1, 1).is_admissible
    assert not seq(1, 2).is_admissible
    assert not Sequence().is_admissible


def test_concat():
    assert concat(seq(2), seq(1, 1)) == seq(2, 1, 1)
    assert concat(Sequence(), seq(3)) == seq(3)
    assert concat(seq(-1), seq(-2)) == seq(-1, -2)
    a, b = seq(3, 1), seq(-2, 1)
    assert concat(a, b).weight == a.weight + b.weight
    assert concat(a, b).depth == a.depth + b.depth


def test_merge_cases():
    assert merge(1, 1) == 2
    assert merge(-1, -2) == 3
    assert merge(1, -2) == -3
    assert merge(-3, 2) == -5
    for k, l in itertools.product((-3, -1, 2, 5), repeat=2):
        m = merge(k, l)
        assert abs(m) == abs(k) + abs(l)
        assert (m < 0) == ((k < 0) != (l < 0))


def test_stuffle_displayed_products():
    assert stuffle(seq(1), seq(1)) == LinComb([((1, 1), 2), ((2,), 1)])
    assert stuffle(stuffle(seq(1), seq(1)), seq(1)) == LinComb(
        [((3,), 1), ((1, 2), 3), ((2, 1), 3), ((1, 1, 1), 6)]
    )
    assert stuffle(seq(1), seq(-2)) == LinComb(
        [((1, -2), 1), ((-2, 1), 1), ((-3,), 1)]
    )
    assert stuffle(seq(-1), seq(-2)) == LinComb(
        [((-1, -2), 1), ((-2, -1), 1), ((3,), 1)]
    )


def test_stuffle_unit_and_zero():
    target = LinComb.single(seq(5, -3))
    assert stuffle(LinComb.unit(), target) == target
    assert stuffle(target, LinComb.unit()) == target
    # the empty combination (no terms) annihilates; the unit does not
    assert stuffle(LinComb.zero(), target) == LinComb.zero()
    assert LinComb.zero() != LinComb.unit()


def test_stuffle_weight_grading_and_depth_bounds():
    rng = random.Random(7)
    for _ in range(50):
        da, db = rng.randint(1, 3), rng.randint(1, 3)
        a = Sequence(tuple(rng.choice((1, -1)) * rng.randint(1, 3) for _ in range(da)))
        b = Sequence(tuple(rng.choice((1, -1)) * rng.randint(1, 3) for _ in range(db)))
        for s, _ in stuffle(a, b).terms():
            assert s.weight == a.weight + b.weight
            assert max(da, db) <= s.depth <= da + db


def test_stuffle_power():
    assert stuffle_power(seq(1), 2) == LinComb([((1, 1), 2), ((2,), 1)])
    assert stuffle_power(seq(-7), 0) == LinComb.unit()
    assert stuffle_power(seq(1), 3) == LinComb(
        [((3,), 1), ((1, 2), 3), ((2, 1), 3), ((1, 1, 1), 6)]
    )
    with pytest.raises(ValueError):
        stuffle_power(seq(1), -1)


def _ordered_set_partition_count(k: int) -> int:
    # Fubini number via direct enumeration: assign each of k labelled items
    # to one of b blocks, blocks ordered, none empty.
    count = 0
    for blocks in range(1, k + 1):
        for assignment in itertools.product(range(blocks), repeat=k):
            if set(assignment) == set(range(blocks)):
                count += 1
    return count


@pytest.mark.parametrize("k,expected", [(1, 1), (2, 3), (3, 13), (4, 75)])
def test_stuffle_power_coefficient_mass_is_fubini(k, expected):
    assert _ordered_set_partition_count(k) == expected
    assert stuffle_power(seq(1), k).coefficient_mass() == expected


@pytest.mark.parametrize("r", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
@pytest.mark.parametrize("barred", [False, True])
def test_multinomial_expansion_matches_iterated_product(r, k, barred):
    closed = multinomial_expansion(r, k, barred=barred)
    assert closed == stuffle_power(seq(-r if barred else r), k)


def test_multinomial_expansion_examples():
    assert multinomial_expansion(1, 2) == LinComb([((2,), 1), ((1, 1), 2)])
    assert multinomial_expansion(1, 1, barred=True) == LinComb.single(seq(-1))
    # the tilde rule: even parts lose the bar
    got = multinomial_expansion(2, 2, barred=True)
    assert got == LinComb([((4,), 1), ((-2, -2), 2)])
    with pytest.raises(ValueError):
        multinomial_expansion(0, 2)


@pytest.mark.parametrize("m", range(1, 9))
def test_depth_one_combination_collapses(m):
    assert depth_one_combination(m) == LinComb.single(Sequence((1,) * m))


def test_lincomb_canonical_order_and_pruning():
    comb = LinComb([((2, 1), 1), ((3,), 2), ((1, 1), Fraction(1, 2)), ((2, 1), -1)])
    assert comb.sequences() == [seq(3), seq(1, 1)]
    assert comb.coeff(seq(2, 1)) == 0
    assert (comb - comb) == LinComb.zero()
    assert not LinComb.zero()
    assert str(LinComb([((2,), -1), ((1, 1), 3)])) == "-(2) + 3*(1,1)"


def test_lincomb_scalar_arithmetic():
    comb = LinComb([((2,), 1), ((1, 1), 2)])
    assert comb * 0 == LinComb.zero()
    assert comb * Fraction(1, 2) == LinComb([((2,), Fraction(1, 2)), ((1, 1), 1)])
    assert -(-comb) == comb
    assert comb + comb == comb * 2

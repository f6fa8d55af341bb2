"""Iterated-integral words, the shuffle product, and duality.

Words are spelled over three letters: X and the two signed letters Y+ and
Y-.  A sequence ((k_1, s_1), ..., (k_n, s_n)) maps to the concatenation of
blocks X^(k_j - 1) Y^(e_j) where e_j = s_1 s_2 ... s_j is the running
product of signs; decoding recovers s_j = e_(j-1) e_j.  A word decodes to a
sequence exactly when it ends in a Y-letter, and the decoded sum converges
exactly when the word does not start with Y+.

Shuffling two words sums all interleavings that preserve the internal
order of each factor; on convergent words this multiplies the underlying
values, giving the second ("integral side") expansion of a product.
"""

from __future__ import annotations

import functools
from collections import defaultdict
from dataclasses import dataclass

from .algebra import LinComb, Sequence

X = 0
Y_PLUS = 1
Y_MINUS = -1

_LETTER_TEXT = {X: "x", Y_PLUS: "Y+", Y_MINUS: "Y-"}


@dataclass(frozen=True)
class Word:
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for letter in self.letters:
            if letter not in (X, Y_PLUS, Y_MINUS):
                raise ValueError(f"unknown letter {letter!r}")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_decodable(self) -> bool:
        return bool(self.letters) and self.letters[-1] != X

    @property
    def is_admissible(self) -> bool:
        return self.is_decodable and self.letters[0] != Y_PLUS

    def __str__(self) -> str:
        return "".join(_LETTER_TEXT[l] for l in self.letters) or "1"


def word(*letters: int) -> Word:
    return Word(tuple(letters))


def seq_to_word(s: Sequence) -> Word:
    """Encode a nonempty sequence as a word, one X^(k-1) Y^e block per index."""
    if s.depth == 0:
        raise ValueError("cannot encode the empty sequence")
    letters: list[int] = []
    running = 1
    for v in s.indices:
        running *= 1 if v > 0 else -1
        letters.extend([X] * (abs(v) - 1))
        letters.append(Y_PLUS if running > 0 else Y_MINUS)
    return Word(tuple(letters))


def word_to_seq(w: Word) -> Sequence:
    """Exact inverse of :func:`seq_to_word`; requires a trailing Y-letter."""
    if not w.is_decodable:
        raise ValueError(f"word {w} does not end in a Y-letter")
    values: list[int] = []
    prev = 1
    run = 0
    for letter in w.letters:
        if letter == X:
            run += 1
            continue
        sign = letter * prev  # s_j = e_(j-1) * e_j with e-values +-1
        values.append(sign * (run + 1))
        prev = letter
        run = 0
    return Sequence(tuple(values))


@functools.lru_cache(maxsize=None)
def _shuffle_tuples(
    a: tuple[int, ...], b: tuple[int, ...]
) -> tuple[tuple[tuple[int, ...], int], ...]:
    if not a:
        return ((b, 1),)
    if not b:
        return ((a, 1),)
    out: dict[tuple[int, ...], int] = defaultdict(int)
    for t, c in _shuffle_tuples(a[1:], b):
        out[(a[0],) + t] += c
    for t, c in _shuffle_tuples(a, b[1:]):
        out[(b[0],) + t] += c
    return tuple(sorted(out.items()))


def shuffle(w1: Word, w2: Word) -> dict[Word, int]:
    """Shuffle product: all interleavings with multiplicity.

    The total term count (with multiplicity) is binomial(|w1|+|w2|, |w1|).
    """
    return {Word(t): c for t, c in _shuffle_tuples(w1.letters, w2.letters)}


def shuffle_comb(terms: dict[Word, int], other: Word) -> dict[Word, int]:
    """Shuffle every word of a combination with ``other``."""
    out: dict[Word, int] = defaultdict(int)
    for w, c in terms.items():
        for t, c2 in _shuffle_tuples(w.letters, other.letters):
            out[Word(t)] += c * c2
    return dict(out)


def decode(terms: dict[Word, int]) -> LinComb:
    """Decode a word combination to sequence space (termwise)."""
    return LinComb([(word_to_seq(w), c) for w, c in terms.items()])


def shuffle_product_seqs(a: Sequence, b: Sequence) -> LinComb:
    """Shuffle of the encodings of two sequences, decoded back to sequences."""
    return decode(shuffle(seq_to_word(a), seq_to_word(b)))


def duality(s: Sequence) -> Sequence:
    """Dual of an admissible all-positive sequence.

    Reverse the encoding word and swap X with Y+.  The transform is an
    involution and preserves weight; the underlying values agree.
    """
    if s.level != 1:
        raise ValueError(f"duality requires an all-positive sequence, got {s}")
    if not s.is_admissible:
        raise ValueError(f"duality requires an admissible sequence, got {s}")
    letters = seq_to_word(s).letters
    swapped = tuple(Y_PLUS if l == X else X for l in reversed(letters))
    return word_to_seq(Word(swapped))

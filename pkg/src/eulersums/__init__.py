"""Symbolic and numerical toolkit for harmonic sums and alternating Euler sums.

Expands generalized harmonic sums into exact integer combinations of
alternating Euler sums through the quasi-shuffle product, generates the
classical relation families among (alternating) multiple zeta values,
reduces low-weight values to closed forms in classical constants, and
cross-checks every identity with an independent high-precision numerical
evaluator.
"""

from .algebra import (
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
from .harmonic import HarmonicSumSpec, expand, expand_repeated, flajolet_combination
from .words import Word, duality, seq_to_word, shuffle, word_to_seq
from .relations import (
    ConstPolynomial,
    Relation,
    adz_coefficient,
    double_shuffle,
    eta_value,
    regularized_double_shuffle,
    sum_formula,
    zeta_two_repeated,
)
from .reduction import (
    IRREDUCIBLE,
    EnvelopeError,
    IrreducibleError,
    ReductionSystem,
    build_system,
    closed_form_harmonic,
    solve,
    solved_table,
)
from .numerics import (
    EvalConfig,
    NumericValue,
    constant,
    eval_const_poly,
    eval_euler_sum,
    eval_harmonic_sum,
    eval_lincomb,
)

__version__ = "0.1.0"

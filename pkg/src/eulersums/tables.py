"""Reference closed-form table: classical evaluations of Euler sums and
harmonic sums at weights 2-6, used as fixture goldens.

Each record pairs a left-hand side (an Euler sum z(...) or a harmonic sum
S(n;...)) with its closed form over the constant atoms.  The serialized
copy lives in goldens/paper_tables.json; the JSON file and this module
must stay byte-identical (tests enforce it), and the verification suite
checks every record both exactly against the reduction tables and
numerically against the evaluator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Sequence, seq
from .harmonic import HarmonicSumSpec, hsum
from .relations import LOG2, ConstPolynomial, zeta_atom

Z2, Z3, Z4, Z5, Z6 = (zeta_atom(k) for k in (2, 3, 4, 5, 6))


def _poly(*terms) -> ConstPolynomial:
    return ConstPolynomial([(tuple(t[1:]), Fraction(t[0])) for t in terms])


@dataclass(frozen=True)
class FixtureRecord:
    id: str
    family: str
    lhs: Sequence | HarmonicSumSpec
    rhs: ConstPolynomial

    @property
    def weight(self) -> int:
        return self.lhs.weight

    @property
    def level(self) -> int:
        return self.lhs.level

    def to_json(self) -> dict:
        if isinstance(self.lhs, HarmonicSumSpec):
            lhs = {
                "type": "harmonic",
                "outer": self.lhs.outer,
                "inner": list(self.lhs.inner),
            }
        else:
            lhs = {"type": "zeta", "seq": list(self.lhs.indices)}
        return {
            "id": self.id,
            "family": self.family,
            "weight": self.weight,
            "level": self.level,
            "lhs": lhs,
            "rhs": self.rhs.to_json(),
        }


RECORDS: tuple[FixtureRecord, ...] = (
    # the classical square-of-harmonic-numbers example, weight 4
    FixtureRecord("s2-11", "eva", hsum(2, 1, 1), _poly(("11/4", Z4))),
    # depth-2 evaluations at weight 5
    FixtureRecord("z41", "w5", seq(4, 1), _poly((-1, Z2, Z3), (2, Z5))),
    FixtureRecord("z32", "w5", seq(3, 2), _poly((3, Z2, Z3), ("-11/2", Z5))),
    FixtureRecord("z23", "w5", seq(2, 3), _poly((-2, Z2, Z3), ("9/2", Z5))),
    # weight 6
    FixtureRecord("z51", "w6", seq(5, 1), _poly(("-1/2", Z3, Z3), ("3/4", Z6))),
    FixtureRecord("z42", "w6", seq(4, 2), _poly((1, Z3, Z3), ("-4/3", Z6))),
    FixtureRecord("z33", "w6", seq(3, 3), _poly(("1/2", Z3, Z3), ("-1/2", Z6))),
    FixtureRecord("z24", "w6", seq(2, 4), _poly((-1, Z3, Z3), ("25/12", Z6))),
    FixtureRecord("z411", "w6", seq(4, 1, 1), _poly((-1, Z3, Z3), ("23/16", Z6))),
    FixtureRecord("z321", "w6", seq(3, 2, 1), _poly((3, Z3, Z3), ("-203/48", Z6))),
    FixtureRecord("z312", "w6", seq(3, 1, 2), _poly(("-3/2", Z3, Z3), ("53/24", Z6))),
    FixtureRecord("z222", "w6", seq(2, 2, 2), _poly(("3/16", Z6))),
    # alternating values, weight 2
    FixtureRecord("zb1-1", "alt2", seq(-1, 1), _poly(("1/2", LOG2, LOG2))),
    FixtureRecord(
        "zb1-b1", "alt2", seq(-1, -1), _poly(("1/2", LOG2, LOG2), ("-1/2", Z2))
    ),
    # alternating values, weight 3
    FixtureRecord("z2-b1", "alt3", seq(2, -1), _poly(("-3/2", Z2, LOG2), (1, Z3))),
    FixtureRecord("zb2-1", "alt3", seq(-2, 1), _poly(("1/8", Z3))),
    FixtureRecord(
        "zb2-b1", "alt3", seq(-2, -1), _poly(("3/2", Z2, LOG2), ("-13/8", Z3))
    ),
    FixtureRecord("zb1-2", "alt3", seq(-1, 2), _poly(("1/2", Z2, LOG2), ("-1/4", Z3))),
    FixtureRecord("zb1-b2", "alt3", seq(-1, -2), _poly((-1, Z2, LOG2), ("5/8", Z3))),
    FixtureRecord("zb1-11", "alt3", seq(-1, 1, 1), _poly(("-1/6", LOG2, LOG2, LOG2))),
    FixtureRecord(
        "zb1-1b1",
        "alt3",
        seq(-1, 1, -1),
        _poly(("-1/6", LOG2, LOG2, LOG2), ("1/8", Z3)),
    ),
    FixtureRecord(
        "zb1-b11",
        "alt3",
        seq(-1, -1, 1),
        _poly(("-1/6", LOG2, LOG2, LOG2), ("1/2", Z2, LOG2), ("-7/8", Z3)),
    ),
    FixtureRecord(
        "zb1-b1b1",
        "alt3",
        seq(-1, -1, -1),
        _poly(("-1/6", LOG2, LOG2, LOG2), ("1/2", Z2, LOG2), ("-1/4", Z3)),
    ),
    # harmonic sums of repeated ones, weights 5 and 6
    FixtureRecord(
        "s2-111", "hsum1k", hsum(2, 1, 1, 1), _poly((1, Z2, Z3), ("15/2", Z5))
    ),
    FixtureRecord(
        "s3-111", "hsum1k", hsum(3, 1, 1, 1), _poly((2, Z3, Z3), ("-33/16", Z6))
    ),
    FixtureRecord(
        "s2-1111", "hsum1k", hsum(2, 1, 1, 1, 1), _poly((3, Z3, Z3), ("859/24", Z6))
    ),
    # alternating harmonic sums of weight 3
    FixtureRecord("s2-b1", "alths", hsum(2, -1), _poly(("3/2", Z2, LOG2), (-1, Z3))),
    FixtureRecord("sb2-1", "alths", hsum(-2, 1), _poly(("1/8", Z3))),
    FixtureRecord(
        "sb2-b1", "alths", hsum(-2, -1), _poly(("-3/2", Z2, LOG2), ("13/8", Z3))
    ),
    FixtureRecord(
        "sb1-2", "alths", hsum(-1, 2), _poly(("1/2", Z2, LOG2), ("-1/4", Z3))
    ),
    FixtureRecord(
        "sb1-11",
        "alths",
        hsum(-1, 1, 1),
        _poly(("-1/3", LOG2, LOG2, LOG2), ("1/2", Z2, LOG2), ("-1/4", Z3)),
    ),
    FixtureRecord(
        "sb1-1b1",
        "alths",
        hsum(-1, 1, -1),
        _poly(("1/3", LOG2, LOG2, LOG2), ("1/2", Z2, LOG2), ("1/8", Z3)),
    ),
    FixtureRecord(
        "sb1-b1b1",
        "alths",
        hsum(-1, -1, -1),
        _poly(("-1/3", LOG2, LOG2, LOG2), ("3/2", Z2, LOG2), ("-3/4", Z3)),
    ),
    # depth-one alternating reductions
    FixtureRecord("zb1", "eta", seq(-1), _poly((-1, LOG2))),
    FixtureRecord("zb2", "eta", seq(-2), _poly(("-1/2", Z2))),
    FixtureRecord("zb3", "eta", seq(-3), _poly(("-3/4", Z3))),
)

CORE_FAMILIES = ("eva", "w5", "w6", "alt2", "alt3", "hsum1k")


def core_records() -> tuple[FixtureRecord, ...]:
    """The 26 table identities at weights 2-6."""
    return tuple(r for r in RECORDS if r.family in CORE_FAMILIES)


def fixture_json_text() -> str:
    payload = {"records": [r.to_json() for r in RECORDS]}
    return json.dumps(payload, indent=2) + "\n"

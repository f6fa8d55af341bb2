"""Command-line front end.

Subcommands:

* ``expand``    — expand a harmonic sum ``S(n;r1,...,rl)`` into Euler sums;
* ``reduce``    — closed form of a harmonic sum or Euler sum over classical
                  constants;
* ``eval``      — high-precision numerical value with an error bound;
* ``relations`` — dump one generated relation family at a weight/level;
* ``verify``    — run the full verification suite (fixtures + properties).

Expressions use ``S(n;r1,...,rl)`` and ``z(k1,...,kn)`` with either ``b2``
or ``-2`` marking a barred index.  Human-readable output uses the ``b``
notation; JSON output uses signed integers.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 envelope exceeded or value irreducible.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction

from .algebra import LinComb, Sequence, format_index
from .harmonic import HarmonicSumSpec, expand
from .numerics import EvalConfig, NumericValue, eval_euler_sum, eval_harmonic_sum
from .reduction import (
    EnvelopeError,
    IrreducibleError,
    build_system,
    closed_form_harmonic,
    reduce_sequence,
)
from .relations import ConstPolynomial

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_ENVELOPE = 3


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class ExprAST:
    """Parsed ``S(...)`` or ``z(...)`` expression."""

    kind: str  # "harmonic" | "zeta"
    outer: int | None
    indices: tuple[int, ...]

    def to_spec(self) -> HarmonicSumSpec:
        assert self.kind == "harmonic" and self.outer is not None
        return HarmonicSumSpec(self.outer, self.indices)

    def to_sequence(self) -> Sequence:
        assert self.kind == "zeta"
        return Sequence(self.indices)


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, char: str) -> None:
        self.skip_ws()
        if self.pos >= len(self.text) or self.text[self.pos] != char:
            raise ParseError(f"expected {char!r}", self.pos)
        self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def index(self) -> int:
        self.skip_ws()
        start = self.pos
        barred = False
        if self.peek() in ("b", "-"):
            barred = True
            self.pos += 1
        digits = ""
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            digits += self.text[self.pos]
            self.pos += 1
        if not digits:
            raise ParseError("expected an index", start)
        value = int(digits)
        if value == 0:
            raise ParseError("index must be nonzero", start)
        return -value if barred else value

    def index_list(self, terminator: str) -> tuple[int, ...]:
        values = [self.index()]
        while self.peek() == ",":
            self.expect(",")
            values.append(self.index())
        self.expect(terminator)
        return tuple(values)

    def done(self) -> None:
        self.skip_ws()
        if self.pos != len(self.text):
            raise ParseError("trailing input", self.pos)


def parse_expr(text: str) -> ExprAST:
    scanner = _Scanner(text)
    head = scanner.peek()
    if head in ("S", "s"):
        scanner.pos += 1
        scanner.expect("(")
        outer = scanner.index()
        scanner.expect(";")
        inner = scanner.index_list(")")
        scanner.done()
        return ExprAST("harmonic", outer, inner)
    if head in ("z", "Z"):
        scanner.pos += 1
        scanner.expect("(")
        indices = scanner.index_list(")")
        scanner.done()
        return ExprAST("zeta", None, indices)
    raise ParseError("expected 'S(...)' or 'z(...)'", scanner.pos)


def format_expr(ast: ExprAST) -> str:
    if ast.kind == "harmonic":
        inner = ",".join(format_index(v) for v in ast.indices)
        return f"S({format_index(ast.outer)};{inner})"
    return "z(" + ",".join(format_index(v) for v in ast.indices) + ")"


# --------------------------------------------------------------------------
# rendering


def zeta_text(s: Sequence) -> str:
    return "z(" + ",".join(format_index(v) for v in s.indices) + ")"


def lincomb_text(comb: LinComb) -> str:
    if not comb:
        return "0"
    parts = []
    for s, c in comb.terms():
        mag = "" if abs(c) == 1 else f"{abs(c)} "
        parts.append(("- " if c < 0 else "+ ") + f"{mag}{zeta_text(s)}")
    text = " ".join(parts)
    return text[2:] if text.startswith("+ ") else "-" + text[2:]


def lincomb_json(comb: LinComb) -> dict:
    return {
        "terms": [
            {"coeff": str(c), "seq": list(s.indices)} for s, c in comb.terms()
        ]
    }


def _print_json(payload: dict) -> None:
    print(json.dumps(payload, indent=2))


def _config(args) -> EvalConfig:
    kwargs = {}
    if getattr(args, "tol", None) is not None:
        kwargs["tolerance"] = args.tol
    if getattr(args, "precision", None) is not None:
        kwargs["working_precision"] = args.precision
    return EvalConfig(**kwargs)


def _numeric_payload(result: NumericValue) -> dict:
    return {
        "value": mp_str(result.value),
        "error_bound": f"{float(result.error_bound):.2e}",
        "heuristic": result.heuristic,
    }


def mp_str(value) -> str:
    from mpmath import nstr

    return nstr(value, 20)


# --------------------------------------------------------------------------
# subcommands


def cmd_expand(args) -> int:
    ast = parse_expr(args.expr)
    if ast.kind != "harmonic":
        print("expand requires a harmonic sum S(n;...)", file=sys.stderr)
        return EXIT_USAGE
    combination = expand(ast.to_spec())
    if args.json:
        _print_json({"expr": format_expr(ast), **lincomb_json(combination)})
    else:
        print(lincomb_text(combination))
    return EXIT_OK


def cmd_reduce(args) -> int:
    ast = parse_expr(args.expr)
    if ast.kind == "harmonic":
        result = closed_form_harmonic(ast.to_spec())
    else:
        result = reduce_sequence(ast.to_sequence())
    if args.json:
        _print_json({"expr": format_expr(ast), "closed_form": result.to_json()})
    else:
        print(result)
    return EXIT_OK


def cmd_eval(args) -> int:
    ast = parse_expr(args.expr)
    cfg = _config(args)
    if ast.kind == "harmonic":
        result = eval_harmonic_sum(ast.to_spec(), cfg)
    else:
        result = eval_euler_sum(ast.to_sequence(), cfg)
    if args.json:
        _print_json({"expr": format_expr(ast), **_numeric_payload(result)})
    else:
        flavor = "heuristic" if result.heuristic else "rigorous"
        print(
            f"{mp_str(result.value)} "
            f"(error bound {float(result.error_bound):.2e}, {flavor})"
        )
    return EXIT_OK


def cmd_relations(args) -> int:
    system = build_system(args.weight, args.level)
    chosen = [r for r in system.rows if r.family == args.family]
    if args.json:
        _print_json(
            {
                "family": args.family,
                "weight": args.weight,
                "level": args.level,
                "relations": [
                    {
                        "label": r.label,
                        "zeta_part": lincomb_json(r.zeta_part)["terms"],
                        "const_part": r.const_part.to_json(),
                    }
                    for r in chosen
                ],
            }
        )
    else:
        for r in chosen:
            const = r.const_part.presented()
            right = "0" if const.is_zero() else str(-const)
            print(f"{r.label}: {lincomb_text(r.zeta_part)} = {right}")
        print(f"({len(chosen)} relations)")
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verification import run_checks

    results = run_checks(
        weight=args.weight, level=args.level, tolerance=args.tol or 1e-8
    )
    failed = [r for r in results if not r.passed]
    if args.json:
        _print_json(
            {
                "checks": [
                    {"name": r.name, "pass": r.passed, "detail": r.detail}
                    for r in results
                ],
                "passed": len(results) - len(failed),
                "failed": len(failed),
            }
        )
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail}")
        print(f"{len(results) - len(failed)} passed, {len(failed)} failed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eulersums",
        description="Expand, reduce, evaluate and verify harmonic and Euler sums.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand S(n;...) into Euler sums")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("reduce", help="closed form over classical constants")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("eval", help="high-precision numerical value")
    p.add_argument("expr")
    p.add_argument("--tol", type=float)
    p.add_argument("--precision", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("relations", help="dump one relation family")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--level", type=int, default=1, choices=(1, 2))
    p.add_argument(
        "--family",
        required=True,
        choices=("duality", "sum", "dshuffle", "regdshuffle", "adz"),
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_relations)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--weight", type=int)
    p.add_argument("--level", type=int, choices=(1, 2))
    p.add_argument("--tol", type=float)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (EnvelopeError, IrreducibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ENVELOPE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry_point() -> None:  # console-script hook
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())

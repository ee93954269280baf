"""Command-line front end.

Every subcommand prints an output document on stdout, either plain text
or JSON (--json); diagnostics go to stderr.  Exit codes: 0 success,
1 domain errors (divergence caps, oversize inputs, oracle mismatches),
2 parse errors.  Exact rationals are printed as decimal-free p/q
strings; decimal renderings appear alongside and are labeled with their
precision.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import exprlang, fock, groupoid, series, species
from .errors import BadCycle, DomainError
from .exprlang import BAD_NUMBER, ParseError, SourceSpan

DECIMAL_DIGITS = 10


def rat_str(value) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "%d/%d" % (value.numerator, value.denominator)


def dec_str(value, digits=DECIMAL_DIGITS) -> str:
    value = Fraction(value)
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(value.numerator) / Decimal(value.denominator)
    return str(d)


def complex_str(z: complex) -> str:
    real = "%.10g" % z.real
    sign = "-" if z.imag < 0 else "+"
    return "%s %s %si" % (real, sign, "%.10g" % abs(z.imag))


def parse_rational(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(
            BAD_NUMBER,
            "%s must be a rational like 3 or 5/2, got %r" % (what, text),
            SourceSpan(0, len(text)),
        ) from None


def parse_nat_list(text: str, what: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    out = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk.isdigit():
            raise ParseError(
                BAD_NUMBER,
                "%s must be comma-separated naturals, got %r" % (what, chunk),
                SourceSpan(0, len(text)),
            )
        out.append(int(chunk))
    return tuple(out)


def _print_doc(doc, lines, as_json):
    if as_json:
        sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _eval_fields(result: series.EvalResult):
    fields = {
        "status": result.status,
        "terms_used": result.terms_used,
        "value": rat_str(result.value),
        "value_decimal": dec_str(result.value),
        "decimal_digits": DECIMAL_DIGITS,
    }
    if result.tail_bound is not None:
        fields["tail_bound"] = rat_str(result.tail_bound)
        fields["tail_bound_decimal"] = dec_str(result.tail_bound)
    return fields


def _eval_lines(echo, fields):
    lines = [
        echo,
        "status: %s" % fields["status"],
        "terms_used: %d" % fields["terms_used"],
        "value: %s" % fields["value"],
        "decimal: %s (~%d significant digits)"
        % (fields["value_decimal"], DECIMAL_DIGITS),
    ]
    if "tail_bound" in fields:
        lines.append("tail_bound: %s" % fields["tail_bound"])
    return lines


def cmd_coeff(args) -> int:
    expr = exprlang.parse_species(args.expr)
    seq = species.compile(expr)
    rows = []
    for n in range(args.terms):
        count = seq.term(n)
        rows.append(
            {
                "n": n,
                "count": rat_str(count),
                "egf_coefficient": rat_str(count / Fraction(math.factorial(n))),
            }
        )
    echo = "coeff %s terms=%d%s" % (args.expr, args.terms, " egf" if args.egf else "")
    doc = {
        "command": "coeff",
        "input": {"expr": args.expr, "terms": args.terms, "egf": args.egf},
        "result": {"sequence": rows},
    }
    lines = [echo]
    for row in rows:
        shown = row["egf_coefficient"] if args.egf else row["count"]
        lines.append("%d: %s" % (row["n"], shown))
    _print_doc(doc, lines, args.json)
    return 0


def cmd_eval(args) -> int:
    expr = exprlang.parse_species(args.expr)
    at = parse_rational(args.at, "--at")
    tol = parse_rational(args.tol, "--tol")
    seq = species.compile(expr)
    result = series.seq_eval(seq, at, args.terms, tol)
    fields = _eval_fields(result)
    echo = "eval %s at=%s terms=%d tol=%s" % (
        args.expr,
        rat_str(at),
        args.terms,
        rat_str(tol),
    )
    lines = _eval_lines(echo, fields)
    if result.status == series.DIVERGED and expr == species.B and at != 0:
        continuation = series.catalan_closed_form(at)
        fields["continuation"] = {
            "real": continuation.real,
            "imag": continuation.imag,
            "display": complex_str(continuation),
        }
        lines.append(
            "note: series diverges; closed-form continuation %s"
            % complex_str(continuation)
        )
    doc = {
        "command": "eval",
        "input": {
            "expr": args.expr,
            "at": rat_str(at),
            "terms": args.terms,
            "tol": rat_str(tol),
        },
        "result": fields,
    }
    _print_doc(doc, lines, args.json)
    return 0


def cmd_inner(args) -> int:
    f = species.compile(exprlang.parse_species(args.exprF))
    g = species.compile(exprlang.parse_species(args.exprG))
    tol = parse_rational(args.tol, "--tol")
    result = fock.inner_product(f, g, args.terms, tol)
    fields = _eval_fields(result)
    echo = "inner %s %s terms=%d tol=%s" % (
        args.exprF,
        args.exprG,
        args.terms,
        rat_str(tol),
    )
    doc = {
        "command": "inner",
        "input": {
            "exprF": args.exprF,
            "exprG": args.exprG,
            "terms": args.terms,
            "tol": rat_str(tol),
        },
        "result": fields,
    }
    _print_doc(doc, _eval_lines(echo, fields), args.json)
    return 0


def cmd_quotient(args) -> int:
    gens = groupoid.parse_generator_list(args.gens, args.size)
    action = groupoid.PermAction(args.size, gens)
    result = groupoid.weak_quotient(action)
    orbit_rows = [
        {
            "elements": list(members),
            "size": len(members),
            "stabilizer_order": stab,
        }
        for members, stab in result.orbits
    ]
    doc = {
        "command": "quotient",
        "input": {"size": args.size, "gens": args.gens},
        "result": {
            "group_order": result.group_order,
            "orbits": orbit_rows,
            "cardinality": rat_str(result.cardinality),
        },
    }
    lines = ["quotient size=%d gens=%s" % (args.size, args.gens)]
    lines.append("group_order: %d" % result.group_order)
    for row in orbit_rows:
        lines.append(
            "orbit {%s}: size %d, stabilizer %d"
            % (
                ", ".join(str(x) for x in row["elements"]),
                row["size"],
                row["stabilizer_order"],
            )
        )
    lines.append("cardinality: %s" % rat_str(result.cardinality))
    _print_doc(doc, lines, args.json)
    return 0


def cmd_homotopy(args) -> int:
    components = []
    for chunk in args.components.split(";"):
        components.append(parse_nat_list(chunk, "--components"))
    orders = groupoid.HomotopyOrders(tuple(components))
    total = groupoid.homotopy_cardinality(orders)
    comp_rows = []
    for comp in orders.components:
        value = groupoid.homotopy_cardinality(groupoid.HomotopyOrders((comp,)))
        comp_rows.append({"orders": list(comp), "cardinality": rat_str(value)})
    doc = {
        "command": "homotopy",
        "input": {"components": args.components},
        "result": {"components": comp_rows, "cardinality": rat_str(total)},
    }
    lines = ["homotopy components=%s" % args.components]
    for row in comp_rows:
        lines.append("component %s: %s" % (row["orders"], row["cardinality"]))
    lines.append("cardinality: %s" % rat_str(total))
    _print_doc(doc, lines, args.json)
    return 0


def cmd_wick(args) -> int:
    if args.power is not None:
        op = fock.wick_power(args.power)
        echo = "wick power=%d" % args.power
        shown = ":Phi^%d:" % args.power
        input_doc = {"power": args.power}
    else:
        tree = exprlang.parse_operator(args.normal)
        op = fock.weyl_from_expr(tree)
        echo = "wick normal=%s" % args.normal
        shown = args.normal
        input_doc = {"normal": args.normal}
    term_rows = [
        {"creation": j, "annihilation": l, "coefficient": rat_str(c)}
        for (j, l), c in sorted(op.terms.items())
    ]
    rendered = fock.format_weyl(op)
    doc = {
        "command": "wick",
        "input": input_doc,
        "result": {"normal_form": rendered, "terms": term_rows},
    }
    lines = [echo, "%s = %s" % (shown, rendered)]
    for row in term_rows:
        lines.append(
            "(j=%d, l=%d): %s"
            % (row["creation"], row["annihilation"], row["coefficient"])
        )
    _print_doc(doc, lines, args.json)
    return 0


def cmd_feynman(args) -> int:
    valences = parse_nat_list(args.valences, "--valences")
    problem = fock.MatchingProblem(valences, args.out_legs, args.in_legs)
    algebraic = fock.feynman_algebraic(problem)
    result = {"algebraic": rat_str(algebraic)}
    echo = "feynman valences=%s out=%d in=%d" % (
        args.valences,
        args.out_legs,
        args.in_legs,
    )
    lines = [echo, "algebraic: %s" % rat_str(algebraic)]
    exit_code = 0
    if args.oracle:
        count, _ = fock.feynman_oracle(problem)
        agree = Fraction(count) == algebraic
        result["oracle"] = count
        result["verdict"] = "agree" if agree else "mismatch"
        lines.append("oracle: %d" % count)
        lines.append("verdict: %s" % result["verdict"])
        if not agree:
            exit_code = 1
    doc = {
        "command": "feynman",
        "input": {
            "valences": list(valences),
            "out": args.out_legs,
            "in": args.in_legs,
            "oracle": args.oracle,
        },
        "result": result,
    }
    _print_doc(doc, lines, args.json)
    return exit_code


def cmd_oracle(args) -> int:
    expr = exprlang.parse_species(args.expr)
    rows = species.oracle_check(expr, args.nmax)
    row_docs = [
        {
            "n": row.n,
            "engine": rat_str(row.engine_count),
            "enumerated": row.enumerated_count,
        }
        for row in rows
    ]
    doc = {
        "command": "oracle",
        "input": {"expr": args.expr, "nmax": args.nmax},
        "result": {"rows": row_docs, "verdict": "agree"},
    }
    lines = ["oracle %s nmax=%d" % (args.expr, args.nmax)]
    for row in row_docs:
        lines.append(
            "n=%d: engine %s, enumerated %d"
            % (row["n"], row["engine"], row["enumerated"])
        )
    lines.append("verdict: agree")
    _print_doc(doc, lines, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="finfock",
        description="Exact counting of labeled structures, groupoid "
        "cardinalities, normal-ordered operators and Feynman diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit a JSON document")

    p = sub.add_parser("coeff", help="counting sequence of a species expression")
    p.add_argument("expr")
    p.add_argument("--terms", type=int, default=8)
    p.add_argument("--egf", action="store_true", help="show EGF coefficients")
    add_json(p)
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("eval", help="evaluate the EGF at a nonnegative rational")
    p.add_argument("expr")
    p.add_argument("--at", required=True)
    p.add_argument("--terms", type=int, default=64)
    p.add_argument("--tol", default="1/1000000000")
    add_json(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("inner", help="Fock inner product of two species")
    p.add_argument("exprF")
    p.add_argument("exprG")
    p.add_argument("--terms", type=int, default=64)
    p.add_argument("--tol", default="1/1000000000")
    add_json(p)
    p.set_defaults(func=cmd_inner)

    p = sub.add_parser("quotient", help="weak quotient of a permutation action")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--gens", default="", help="cycle notation; ';' separates generators")
    add_json(p)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("homotopy", help="homotopy cardinality from group orders")
    p.add_argument(
        "--components",
        required=True,
        help="per-component orders, e.g. '2' or '6,2;3'",
    )
    add_json(p)
    p.set_defaults(func=cmd_homotopy)

    p = sub.add_parser("wick", help="normal-ordered form of an operator")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--power", type=int)
    group.add_argument("--normal", help="operator expression to normal-order")
    add_json(p)
    p.set_defaults(func=cmd_wick)

    p = sub.add_parser("feynman", help="count diagrams for given valences and legs")
    p.add_argument("--valences", default="", help="comma-separated, e.g. 2,2")
    p.add_argument("--out", dest="out_legs", type=int, default=0)
    p.add_argument("--in", dest="in_legs", type=int, default=0)
    p.add_argument("--oracle", action="store_true", help="cross-check by enumeration")
    add_json(p)
    p.set_defaults(func=cmd_feynman)

    p = sub.add_parser("oracle", help="engine counts vs brute-force enumeration")
    p.add_argument("expr")
    p.add_argument("--nmax", type=int, default=6)
    add_json(p)
    p.set_defaults(func=cmd_oracle)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        sys.stderr.write("parse error: %s\n" % exc)
        return 2
    except BadCycle as exc:
        sys.stderr.write(
            "parse error: %s at %d..%d\n" % (exc, exc.span[0], exc.span[1])
        )
        return 2
    except DomainError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Weyl operators on counting sequences and Feynman diagram counting.

Operators are finite rational combinations of normal-ordered monomials
a*^j a^l: every product is rewritten so creation factors stand left of
annihilation factors, using the single commutation relation
a a* = a* a + 1.  Acting on an EGF, a differentiates and a* multiplies
by x; on counting sequences the monomial (j, l) sends f to
g_m = m!/(m-j)! * f_{m-j+l}.

matrix_element(o, m, n) is the inner product <x^m, O x^n> under
<f, g> = sum f_n g_n / n!.  For a product of Wick powers it counts the
perfect matchings of half-edges in which internal vertices have the
prescribed valences and the m + n external legs are labeled, with pairs
inside one vertex and pairs within the outgoing (or within the incoming)
leg set forbidden.  feynman_oracle enumerates those matchings directly,
independently of the operator algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import series
from .errors import TooLarge

#: Wick power cap
WICK_MAX = 12
#: kernel matrix truncation cap
KERNEL_MAX = 256
#: total half-edge cap for the matching enumerator
LEG_MAX = 16


class WeylOp:
    """Normal-ordered operator: a map (j, l) -> coefficient, no zeros.

    j counts creation factors, l annihilation factors.  Coefficients are
    general rationals so the operators form a ring; the operators that
    arise from counting all have nonnegative integer coefficients.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms):
        cleaned = {}
        for (j, l), c in dict(terms).items():
            c = Fraction(c)
            if j < 0 or l < 0:
                raise ValueError("monomial degrees must be natural numbers")
            if c != 0:
                cleaned[(int(j), int(l))] = c
        self._terms = cleaned

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def coefficient(self, j, l) -> Fraction:
        return self._terms.get((j, l), Fraction(0))

    def max_creation(self) -> int:
        return max((j for j, _ in self._terms), default=0)

    def max_annihilation(self) -> int:
        return max((l for _, l in self._terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        return weyl_add(self, other)

    def __mul__(self, other):
        return weyl_mul(self, other)

    def __repr__(self):
        return "WeylOp(%s)" % format_weyl(self)


A = WeylOp({(0, 1): 1})
ASTAR = WeylOp({(1, 0): 1})
PHI = WeylOp({(0, 1): 1, (1, 0): 1})
IDENTITY = WeylOp({(0, 0): 1})
ZERO_OP = WeylOp({})

_BASIC = {"A": A, "Astar": ASTAR, "Phi": PHI, "Identity": IDENTITY}


def weyl_basic(which: str) -> WeylOp:
    """One of the named generators A, Astar, Phi, Identity."""
    try:
        return _BASIC[which]
    except KeyError:
        raise ValueError(
            "unknown basic operator %r; expected one of %s"
            % (which, sorted(_BASIC))
        ) from None


def weyl_add(o1: WeylOp, o2: WeylOp) -> WeylOp:
    terms = o1.terms
    for key, c in o2._terms.items():
        terms[key] = terms.get(key, Fraction(0)) + c
    return WeylOp(terms)


def weyl_scale(c, o: WeylOp) -> WeylOp:
    c = Fraction(c)
    return WeylOp({key: c * v for key, v in o._terms.items()})


def weyl_mul(o1: WeylOp, o2: WeylOp) -> WeylOp:
    """Product, normal-ordered by construction.

    Monomials multiply by contracting i of the left factor's
    annihilators against i of the right factor's creators:

        (a*^j1 a^l1)(a*^j2 a^l2)
            = sum_i C(l1,i) C(j2,i) i! a*^(j1+j2-i) a^(l1+l2-i).
    """
    terms: dict = {}
    for (j1, l1), c1 in o1._terms.items():
        for (j2, l2), c2 in o2._terms.items():
            c = c1 * c2
            for i in range(min(l1, j2) + 1):
                weight = math.comb(l1, i) * math.comb(j2, i) * math.factorial(i)
                key = (j1 + j2 - i, l1 + l2 - i)
                terms[key] = terms.get(key, Fraction(0)) + c * weight
    return WeylOp(terms)


def weyl_adjoint(o: WeylOp) -> WeylOp:
    """Swap creation and annihilation degrees (coefficients are real)."""
    return WeylOp({(l, j): c for (j, l), c in o._terms.items()})


def wick_power(p: int) -> WeylOp:
    """:Phi^p:, the normal ordering of (A + A*)^p done by hand.

    Expanding with the order of factors ignored gives the binomial
    coefficients: the (j, p-j) monomial has coefficient C(p, j).
    """
    if p < 0:
        raise ValueError("power must be a natural number")
    if p > WICK_MAX:
        raise TooLarge("wick power capped at %d, got %d" % (WICK_MAX, p))
    return WeylOp({(j, p - j): math.comb(p, j) for j in range(p + 1)})


def format_weyl(o: WeylOp) -> str:
    """Render in the conventional form, e.g. 'A^2 + 2 A*A + A*^2'."""
    if not o._terms:
        return "0"
    parts = []
    for (j, l) in sorted(o._terms):
        c = o._terms[(j, l)]
        factors = []
        if j:
            factors.append("A*" if j == 1 else "A*^%d" % j)
        if l:
            factors.append("A" if l == 1 else "A^%d" % l)
        word = "".join(factors)
        if not word:
            parts.append(str(c))
        elif c == 1:
            parts.append(word)
        else:
            parts.append("%s %s" % (c, word))
    return " + ".join(parts)


def _falling(m, j):
    return math.perm(m, j)


def apply_weyl(o: WeylOp, f: series.CountSeq, *, signed=False) -> series.CountSeq:
    """Act on a counting sequence: (j, l) sends f to m!/(m-j)! f_{m-j+l}.

    The result of a nonnegative operator on a counting sequence is again
    one; an operator with negative coefficients may push a term below
    zero, in which case reading that term raises NegativeCoefficient.
    Use apply_weyl_signed to opt out of the check.
    """
    items = sorted(o._terms.items())

    def producer(m):
        total = Fraction(0)
        for (j, l), c in items:
            if m < j:
                continue
            v = f.term_opt(m - j + l)
            prod = series._pmul(c * _falling(m, j), v)
            if prod is None:
                return None
            total += prod
        return total

    integral = f.integral and all(c.denominator == 1 for c in o._terms.values())
    return series.CountSeq(producer, integral=integral and not signed, signed=signed)


def apply_weyl_signed(o: WeylOp, f: series.CountSeq) -> series.CountSeq:
    """Escape hatch: the raw action, negative terms allowed."""
    return apply_weyl(o, f, signed=True)


def inner_product(
    f: series.CountSeq,
    g: series.CountSeq,
    max_terms: int = 64,
    tol=Fraction(1, 10**9),
) -> series.EvalResult:
    """<f, g> = sum of f_n g_n / n!, with the seq_eval convergence protocol."""

    def summand(n):
        return f.term(n) * g.term(n) / Fraction(math.factorial(n))

    return series.sum_with_ratio_test(summand, max_terms, tol)


@dataclass(frozen=True)
class KernelMatrix:
    """Truncated matrix K with apply(o, f)_m = sum_n K(m, n) f_n."""

    size: int
    rows: tuple[tuple[Fraction, ...], ...]

    def entry(self, m, n) -> Fraction:
        return self.rows[m][n]

    def matmul(self, other: "KernelMatrix") -> "KernelMatrix":
        assert self.size == other.size
        n = self.size
        cols = list(zip(*other.rows))
        rows = tuple(
            tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
            for row in self.rows
        )
        return KernelMatrix(n, rows)

    def sub(self, other: "KernelMatrix") -> "KernelMatrix":
        assert self.size == other.size
        rows = tuple(
            tuple(a - b for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)
        )
        return KernelMatrix(self.size, rows)


def kernel_matrix(o: WeylOp, truncation: int) -> KernelMatrix:
    """Matrix of the action on sequences, rows and columns 0..N-1.

    K(m, n) is nonzero only when m - n is the creation excess j - l of
    some stored monomial.
    """
    if truncation > KERNEL_MAX:
        raise TooLarge(
            "kernel truncation capped at %d, got %d" % (KERNEL_MAX, truncation)
        )
    rows = []
    for m in range(truncation):
        row = [Fraction(0)] * truncation
        for (j, l), c in o._terms.items():
            n = m - j + l
            if m >= j and 0 <= n < truncation:
                row[n] += c * _falling(m, j)
        rows.append(tuple(row))
    return KernelMatrix(truncation, tuple(rows))


def identity_matrix(truncation: int) -> KernelMatrix:
    rows = tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(truncation))
        for i in range(truncation)
    )
    return KernelMatrix(truncation, rows)


def matrix_element(o: WeylOp, m: int, n: int) -> Fraction:
    """<x^m, O x^n> under the Fock inner product.

    For a monomial (j, l) this is m! n!/(n-l)! when m - j = n - l >= 0
    and 0 otherwise.
    """
    total = Fraction(0)
    for (j, l), c in o._terms.items():
        if n >= l and m - j == n - l:
            total += c * math.factorial(m) * _falling(n, l)
    return total


# ---------------------------------------------------------------------------
# Feynman diagrams


@dataclass(frozen=True)
class MatchingProblem:
    """Internal vertices with given valences plus labeled external legs.

    out_legs labels the outgoing set, in_legs the incoming set.  The
    total number of half-edges is capped so the enumeration stays
    feasible.
    """

    valences: tuple[int, ...]
    out_legs: int
    in_legs: int

    def __post_init__(self):
        object.__setattr__(self, "valences", tuple(int(p) for p in self.valences))
        if any(p < 0 for p in self.valences):
            raise ValueError("valences must be natural numbers")
        if self.out_legs < 0 or self.in_legs < 0:
            raise ValueError("leg counts must be natural numbers")
        total = sum(self.valences) + self.out_legs + self.in_legs
        if total > LEG_MAX:
            raise TooLarge(
                "matching enumeration capped at %d half-edges, got %d"
                % (LEG_MAX, total)
            )


def feynman_algebraic(problem: MatchingProblem) -> Fraction:
    """Diagram count as the matrix element of a product of Wick powers."""
    op = IDENTITY
    for p in problem.valences:
        op = weyl_mul(op, wick_power(p))
    return matrix_element(op, problem.out_legs, problem.in_legs)


def _half_edges(problem: MatchingProblem):
    edges = []
    for v, p in enumerate(problem.valences):
        for t in range(p):
            edges.append(("v", v, t))
    for s in range(problem.out_legs):
        edges.append(("s", s))
    for t in range(problem.in_legs):
        edges.append(("t", t))
    return edges


def _admissible(a, b):
    if a[0] == "v" and b[0] == "v":
        return a[1] != b[1]
    if a[0] == "s" and b[0] == "s":
        return False
    if a[0] == "t" and b[0] == "t":
        return False
    return True


def feynman_oracle(problem: MatchingProblem):
    """All admissible perfect matchings, found by direct enumeration.

    Half-edges of internal vertices are distinguishable and external legs
    labeled, so the count is raw matchings with no symmetry division;
    that is the convention under which the count reproduces
    matrix_element of the corresponding Wick-power product.  Returns
    (count, diagrams) where each diagram is a sorted tuple of pairs.
    An odd number of half-edges admits no matchings at all.
    """
    edges = _half_edges(problem)
    diagrams = []
    if len(edges) % 2 == 1:
        return 0, diagrams

    def match(remaining, chosen):
        if not remaining:
            diagrams.append(tuple(sorted(chosen)))
            return
        first = remaining[0]
        rest = remaining[1:]
        for idx, other in enumerate(rest):
            if _admissible(first, other):
                chosen.append((first, other))
                match(rest[:idx] + rest[idx + 1:], chosen)
                chosen.pop()

    match(edges, [])
    return len(diagrams), diagrams


def feynman_count(problem: MatchingProblem) -> int:
    """Matching count only, without materializing the diagrams."""
    edges = _half_edges(problem)
    if len(edges) % 2 == 1:
        return 0

    def count(remaining):
        if not remaining:
            return 1
        first = remaining[0]
        rest = remaining[1:]
        total = 0
        for idx, other in enumerate(rest):
            if _admissible(first, other):
                total += count(rest[:idx] + rest[idx + 1:])
        return total

    return count(edges)


# ---------------------------------------------------------------------------
# Operator expression trees (built by the parser, evaluated here)


class OperatorExpr:
    __slots__ = ()


@dataclass(frozen=True)
class OpA(OperatorExpr):
    pass


@dataclass(frozen=True)
class OpAstar(OperatorExpr):
    pass


@dataclass(frozen=True)
class OpPhi(OperatorExpr):
    pass


@dataclass(frozen=True)
class OpWick(OperatorExpr):
    power: int


@dataclass(frozen=True)
class OpScalar(OperatorExpr):
    value: int


@dataclass(frozen=True)
class OpSum(OperatorExpr):
    left: OperatorExpr
    right: OperatorExpr


@dataclass(frozen=True)
class OpProduct(OperatorExpr):
    left: OperatorExpr
    right: OperatorExpr


@dataclass(frozen=True)
class OpAdjoint(OperatorExpr):
    inner: OperatorExpr


def weyl_from_expr(expr: OperatorExpr) -> WeylOp:
    """Evaluate a parsed operator expression to normal-ordered form."""
    if isinstance(expr, OpA):
        return A
    if isinstance(expr, OpAstar):
        return ASTAR
    if isinstance(expr, OpPhi):
        return PHI
    if isinstance(expr, OpWick):
        return wick_power(expr.power)
    if isinstance(expr, OpScalar):
        return weyl_scale(expr.value, IDENTITY)
    if isinstance(expr, OpSum):
        return weyl_add(weyl_from_expr(expr.left), weyl_from_expr(expr.right))
    if isinstance(expr, OpProduct):
        return weyl_mul(weyl_from_expr(expr.left), weyl_from_expr(expr.right))
    if isinstance(expr, OpAdjoint):
        return weyl_adjoint(weyl_from_expr(expr.inner))
    raise TypeError("not an operator expression: %r" % (expr,))

"""Lazy exponential-generating-function engine over exact rationals.

A CountSeq holds the counting sequence of a combinatorial family: term(n)
is the exact number (or groupoid cardinality, hence rational) of
structures on an n-element labeled set.  The EGF coefficient term(n)/n!
is a derived view; we store counts because every structure-type formula
is stated in counts and stays in integers.

All arithmetic is arbitrary-precision Fraction.  Floats appear only in
catalan_closed_form, which continues the binary-tree series past its
radius of convergence.

Terms may be temporarily *undetermined* while a recursive equation is
being solved (see seq_fixpoint).  Internally an undetermined term is
None, and the combinators propagate None with one exception: a factor
that is exactly 0 annihilates an unknown one.  That rule is what makes
guarded recursions (those whose right-hand side lowers the degree, e.g.
through multiplication by X) solvable coefficient by coefficient, and
makes unguarded ones like F = F detectable: their terms never become
determined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    NegativeCoefficient,
    NonzeroConstantTerm,
    NotGuarded,
    UndeterminedTerm,
    ZeroArgument,
)

CONVERGED = "converged"
DIVERGED = "diverged"
UNDECIDED = "undecided"

#: width of the successive-summand ratio window used by seq_eval
RATIO_WINDOW = 5

_ZERO = Fraction(0)
_ONE = Fraction(1)


class CountSeq:
    """Lazy memoized sequence of exact nonnegative rationals.

    ``producer(n)`` must be pure and deterministic; it may return None
    while the term is still undetermined (only during fixpoint solving).
    A term, once computed, is cached and never recomputed, so repeated
    queries are cheap and identical.  The memo fill is idempotent, which
    makes concurrent readers safe without locks.

    integral marks sequences whose terms are guaranteed integers (whole
    labeled structures rather than fractional symmetry-weighted counts);
    signed disables the nonnegativity check and exists only as an escape
    hatch for operator actions with negative coefficients.
    """

    __slots__ = ("_producer", "_memo", "integral", "signed")

    def __init__(self, producer, *, integral=False, signed=False):
        self._producer = producer
        self._memo = {}
        self.integral = integral
        self.signed = signed

    def term_opt(self, n):
        """term(n), or None while undetermined."""
        if n < 0:
            raise IndexError("term index must be a natural number, got %r" % (n,))
        if n in self._memo:
            return self._memo[n]
        value = self._producer(n)
        if value is not None:
            value = Fraction(value)
            if value < 0 and not self.signed:
                raise NegativeCoefficient(
                    "term(%d) = %s is negative; counting sequences are nonnegative"
                    % (n, value)
                )
            if self.integral and value.denominator != 1:
                raise ValueError(
                    "term(%d) = %s is not an integer but the sequence is "
                    "flagged integral" % (n, value)
                )
        self._memo[n] = value
        return value

    def term(self, n) -> Fraction:
        """The exact count of structures on an n-element set."""
        value = self.term_opt(n)
        if value is None:
            raise UndeterminedTerm("term(%d) is not determined" % n)
        return value

    def terms(self, count) -> list[Fraction]:
        return [self.term(n) for n in range(count)]

    def egf(self, n) -> Fraction:
        """EGF coefficient term(n)/n!."""
        return self.term(n) / _fact(n)

    def __add__(self, other):
        return seq_add(self, other)

    def __mul__(self, other):
        return seq_mul(self, other)

    def __call__(self, inner):
        return seq_compose(self, inner)


def _fact(n):
    return Fraction(math.factorial(n))


def _padd(a, b):
    """Sum with None = undetermined."""
    if a is None or b is None:
        return None
    return a + b


def _pmul(a, b):
    """Product with None = undetermined and 0 * unknown = 0."""
    if a is not None and a == 0:
        return _ZERO
    if b is not None and b == 0:
        return _ZERO
    if a is None or b is None:
        return None
    return a * b


def from_terms(values, tail=0, *, integral=True) -> CountSeq:
    """Sequence with the given initial terms and a constant tail."""
    values = [Fraction(v) for v in values]
    tail = Fraction(tail)

    def producer(n):
        return values[n] if n < len(values) else tail

    return CountSeq(producer, integral=integral and tail.denominator == 1)


def from_fn(fn, *, integral=True) -> CountSeq:
    """Sequence computed by an arbitrary pure rule n -> term."""
    return CountSeq(lambda n: fn(n), integral=integral)


def seq_add(f: CountSeq, g: CountSeq) -> CountSeq:
    """Termwise sum: structures of either kind, counted disjointly."""
    return CountSeq(
        lambda n: _padd(f.term_opt(n), g.term_opt(n)),
        integral=f.integral and g.integral,
        signed=f.signed or g.signed,
    )


def seq_mul(f: CountSeq, g: CountSeq) -> CountSeq:
    """Binomial convolution: split the set, structure each part.

    term(n) = sum over m of C(n,m) * f.term(m) * g.term(n-m).
    """

    def producer(n):
        total = _ZERO
        for m in range(n + 1):
            prod = _pmul(f.term_opt(m), g.term_opt(n - m))
            if prod is None:
                return None
            total += math.comb(n, m) * prod
        return total

    return CountSeq(
        producer,
        integral=f.integral and g.integral,
        signed=f.signed or g.signed,
    )


def seq_compose(f: CountSeq, g: CountSeq) -> CountSeq:
    """Substitution F(G) for G with constant term 0.

    term(n) sums f.term(k) over set partitions with k blocks, each block
    carrying a G-structure; computed by truncated power-series
    substitution on EGF coefficients and scaled back to counts.
    """
    g0 = g.term_opt(0)
    if g0 is None:
        # inner constant term not yet determined: the whole composite is
        # undetermined (monotone bottom for the fixpoint solver)
        return CountSeq(lambda n: None, integral=f.integral and g.integral)
    if g0 != 0:
        raise NonzeroConstantTerm(
            "substitution requires inner constant term 0, got %s" % g0
        )

    # powers[k][i] = [x^i] of the k-th power of the EGF of g (None while
    # undetermined).  Grown on demand; g is immutable so entries are final.
    powers = [[_ONE]]

    def _gegf(m):
        v = g.term_opt(m)
        return None if v is None else v / _fact(m)

    def _ensure(n):
        while len(powers) <= n:
            powers.append([])
        for k in range(n + 1):
            row = powers[k]
            while len(row) <= n:
                i = len(row)
                if k == 0:
                    row.append(_ONE if i == 0 else _ZERO)
                    continue
                if i < k:
                    # g has valuation >= 1, so g^k has valuation >= k
                    row.append(_ZERO)
                    continue
                acc = _ZERO
                for j in range(1, i - k + 2):
                    acc = _padd(acc, _pmul(powers[k - 1][i - j], _gegf(j)))
                    if acc is None:
                        break
                row.append(acc)

    def producer(n):
        _ensure(n)
        acc = _ZERO
        for k in range(n + 1):
            pkn = powers[k][n]
            if pkn is not None and pkn == 0:
                continue
            fk = f.term_opt(k)
            acc = _padd(acc, _pmul(None if fk is None else fk / _fact(k), pkn))
            if acc is None:
                return None
        return acc * _fact(n)

    return CountSeq(producer, integral=f.integral and g.integral)


def seq_derive(f: CountSeq) -> CountSeq:
    """Shift: a derived structure on S is an f-structure on S plus one point."""
    return CountSeq(
        lambda n: f.term_opt(n + 1), integral=f.integral, signed=f.signed
    )


def seq_point(f: CountSeq) -> CountSeq:
    """Pointing: mark one of n elements, structure the rest.

    term(n) = n * f.term(n-1), and 0 at n = 0.
    """

    def producer(n):
        if n == 0:
            return _ZERO
        return _pmul(Fraction(n), f.term_opt(n - 1))

    return CountSeq(producer, integral=f.integral, signed=f.signed)


@dataclass(frozen=True)
class EvalPoint:
    """A nonnegative rational evaluation point for a counting series."""

    x: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        if self.x < 0:
            raise ValueError("evaluation point must be nonnegative, got %s" % self.x)


@dataclass(frozen=True)
class EvalResult:
    """Exact partial sum of a series together with a convergence verdict.

    value is exactly the sum of the first terms_used summands; nothing is
    rounded.  When status is "converged", tail_bound is a geometric bound
    on everything discarded.  The verdict comes from a heuristic ratio
    test, so "undecided" is a legal outcome.
    """

    value: Fraction
    terms_used: int
    status: str
    tail_bound: Fraction | None = None

    def __post_init__(self):
        if self.status == CONVERGED:
            assert self.tail_bound is not None and self.tail_bound >= 0


def sum_with_ratio_test(summand, max_terms, tol) -> EvalResult:
    """Sum nonnegative exact summands with a windowed ratio test.

    Successive-summand ratios over the last RATIO_WINDOW steps decide the
    status: all below 1 means converged with geometric tail bound
    last_summand * r/(1-r) for the largest ratio r seen in the window
    (summation stops early once the bound drops below tol); a
    nondecreasing window that has climbed above the first summand means
    diverged; anything else is undecided.  A ratio 0/0 counts as 0, so a
    series with finite support converges with tail bound exactly 0.
    """
    max_terms = int(max_terms)
    if max_terms < 8:
        raise ValueError("max_terms must be at least 8, got %d" % max_terms)
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive, got %s" % tol)

    summands: list[Fraction] = []
    total = _ZERO
    for n in range(max_terms):
        s = Fraction(summand(n))
        summands.append(s)
        total += s
        if n >= RATIO_WINDOW:
            ratios = _window_ratios(summands)
            if ratios is not None and max(ratios) < 1:
                bound = _geometric_tail(summands[-1], max(ratios))
                if bound < tol:
                    return EvalResult(total, n + 1, CONVERGED, bound)

    ratios = _window_ratios(summands)
    if ratios is not None and max(ratios) < 1:
        bound = _geometric_tail(summands[-1], max(ratios))
        return EvalResult(total, max_terms, CONVERGED, bound)
    window = summands[-(RATIO_WINDOW + 1):]
    nondecreasing = all(window[i + 1] >= window[i] for i in range(len(window) - 1))
    if nondecreasing and summands[-1] > summands[0] and summands[-1] > 0:
        return EvalResult(total, max_terms, DIVERGED)
    return EvalResult(total, max_terms, UNDECIDED)


def _window_ratios(summands):
    """Ratios of the last RATIO_WINDOW summand pairs, or None if undefined."""
    if len(summands) < RATIO_WINDOW + 1:
        return None
    window = summands[-(RATIO_WINDOW + 1):]
    ratios = []
    for a, b in zip(window, window[1:]):
        if a == 0:
            if b != 0:
                return None
            ratios.append(_ZERO)
        else:
            ratios.append(b / a)
    return ratios


def _geometric_tail(last, r):
    if r == 0:
        return _ZERO
    return last * r / (1 - r)


def seq_eval(
    f: CountSeq,
    at,
    max_terms: int = 64,
    tol=Fraction(1, 10**9),
) -> EvalResult:
    """Evaluate the EGF of f at a nonnegative rational point.

    The partial sum of term(n) * x^n / n! is exact; convergence status
    follows the sum_with_ratio_test protocol.  Divergence is a status,
    not an error.
    """
    point = at if isinstance(at, EvalPoint) else EvalPoint(Fraction(at))
    x = point.x

    def summand(n):
        return f.term(n) * x**n / _fact(n)

    return sum_with_ratio_test(summand, max_terms, tol)


#: iteration allowance beyond the coefficient index in seq_fixpoint
_FIXPOINT_SLACK = 2


def seq_fixpoint(body, max_order=None) -> CountSeq:
    """Least solution of F = body(F) by Kleene iteration.

    body maps a CountSeq to a CountSeq (the species compiler supplies the
    wrapped right-hand side of an equation such as F = 1 + X*F^2).
    Iteration starts from the wholly undetermined sequence; term(n) is
    frozen the first time an iterate determines it, and frozen prefixes
    seed later iterations so each new coefficient usually needs a single
    application.  If term(n) is still undetermined after n + 2
    applications the equation does not determine its coefficients
    recursively (e.g. F = F) and NotGuarded is raised.

    max_order, when given, caps the largest index that may be solved.
    """
    frozen: dict[int, Fraction] = {}

    def _snapshot():
        known = dict(frozen)
        return CountSeq(known.get, integral=True)

    probe = body(_snapshot())
    integral = probe.integral

    def _solve_one(m):
        budget = m + _FIXPOINT_SLACK
        current = _snapshot()
        for _ in range(budget):
            nxt = body(current)
            value = nxt.term_opt(m)
            if value is not None:
                for i in range(m + 1):
                    if i not in frozen:
                        vi = nxt.term_opt(i)
                        if vi is not None:
                            frozen[i] = vi
                return
            current = nxt
        raise NotGuarded(m, budget)

    def producer(n):
        if max_order is not None and n > max_order:
            raise IndexError(
                "fixpoint solved only up to order %d, asked for %d" % (max_order, n)
            )
        for m in range(n + 1):
            if m not in frozen:
                _solve_one(m)
        return frozen[n]

    return CountSeq(producer, integral=integral)


def catalan_closed_form(at) -> complex:
    """(1 - sqrt(1 - 4x)) / (2x), the closed form of the binary-tree EGF.

    Uses the principal square root, reading sqrt of a negative real as
    +i times the root of its absolute value.  This continues the series
    past its radius of convergence 1/4; at x = 1 the value is
    1/2 - (sqrt(3)/2) i.  The formula is singular at 0 (the series value
    there is 1), so x = 0 raises ZeroArgument.
    """
    x = Fraction(at)
    if x == 0:
        raise ZeroArgument("closed form undefined at 0; the series value is 1")
    disc = 1 - 4 * x
    if disc >= 0:
        root = complex(math.sqrt(disc), 0.0)
    else:
        root = complex(0.0, math.sqrt(-disc))
    return (1 - root) / complex(2 * x)

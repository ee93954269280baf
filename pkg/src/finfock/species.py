"""Species combinators, compilation to counting sequences, and brute-force
labeled-structure enumerators.

The enumerators are deliberately independent of the series engine: they
build every structure of a given kind on {1..n} explicitly, following
the defining recursions (choose a root and split for binary trees,
insert the largest element for partitions, and so on).  Comparing their
counts against compiled sequences is the package's stand-in for a
bijective proof, wired up in oracle_check.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import series
from .errors import MismatchReport, NotEnumerable, TooLarge

#: enumeration cap; linear orders at 9 (362880 structures) stay near a second
ENUM_MAX = 9


# ---------------------------------------------------------------------------
# Expression AST


class SpeciesExpr:
    """Base class for species expressions; nodes are frozen dataclasses."""

    __slots__ = ()

    def __add__(self, other):
        return Sum(self, other)

    def __mul__(self, other):
        return Product(self, other)

    def __pow__(self, k):
        return Power(self, k)

    def __call__(self, inner):
        return Compose(self, inner)


@dataclass(frozen=True)
class Zero(SpeciesExpr):
    """No structures on any set."""


@dataclass(frozen=True)
class One(SpeciesExpr):
    """Being the empty set."""


@dataclass(frozen=True)
class Singleton(SpeciesExpr):
    """Being a one-element set."""


@dataclass(frozen=True)
class Sets(SpeciesExpr):
    """Being a finite set: exactly one structure on every set."""


@dataclass(frozen=True)
class NonemptySets(SpeciesExpr):
    """Being a nonempty finite set."""


@dataclass(frozen=True)
class LinearOrders(SpeciesExpr):
    """Linear orders; n! structures on an n-set."""


@dataclass(frozen=True)
class Partitions(SpeciesExpr):
    """Partitions into disjoint nonempty blocks; Bell numbers."""


@dataclass(frozen=True)
class BinaryTrees(SpeciesExpr):
    """Binary rooted trees, the least solution of F = 1 + X*F^2."""


@dataclass(frozen=True)
class Var(SpeciesExpr):
    name: str


@dataclass(frozen=True)
class Sum(SpeciesExpr):
    left: SpeciesExpr
    right: SpeciesExpr


@dataclass(frozen=True)
class Product(SpeciesExpr):
    left: SpeciesExpr
    right: SpeciesExpr


@dataclass(frozen=True)
class Compose(SpeciesExpr):
    outer: SpeciesExpr
    inner: SpeciesExpr


@dataclass(frozen=True)
class Derivative(SpeciesExpr):
    inner: SpeciesExpr


@dataclass(frozen=True)
class Power(SpeciesExpr):
    base: SpeciesExpr
    exponent: int


@dataclass(frozen=True)
class Fix(SpeciesExpr):
    """Fix(var, body): the least F with F = body[F/var]."""

    var: str
    body: SpeciesExpr


ZERO = Zero()
ONE = One()
X = Singleton()
E = Sets()
E_PLUS = NonemptySets()
L = LinearOrders()
PAR = Partitions()
B = BinaryTrees()


# ---------------------------------------------------------------------------
# Compilation to counting sequences


def _seq_zero():
    return series.from_terms([])


def _seq_one():
    return series.from_terms([1])


def _seq_x():
    return series.from_terms([0, 1])


def _seq_sets():
    return series.from_fn(lambda n: 1)


def _seq_nonempty():
    return series.from_fn(lambda n: 0 if n == 0 else 1)


def _seq_linear():
    return series.from_fn(math.factorial)


_BASE_CACHE: dict[type, series.CountSeq] = {}


def _base_seq(node) -> series.CountSeq:
    kind = type(node)
    got = _BASE_CACHE.get(kind)
    if got is not None:
        return got
    if kind is Zero:
        seq = _seq_zero()
    elif kind is One:
        seq = _seq_one()
    elif kind is Singleton:
        seq = _seq_x()
    elif kind is Sets:
        seq = _seq_sets()
    elif kind is NonemptySets:
        seq = _seq_nonempty()
    elif kind is LinearOrders:
        seq = _seq_linear()
    elif kind is Partitions:
        seq = series.seq_compose(_seq_sets(), _seq_nonempty())
    elif kind is BinaryTrees:
        seq = series.seq_fixpoint(
            lambda f: series.seq_add(_seq_one(), series.seq_mul(_seq_x(), series.seq_mul(f, f)))
        )
    else:
        raise TypeError("not a base species: %r" % (node,))
    _BASE_CACHE[kind] = seq
    return seq


def compile(expr: SpeciesExpr, env=None) -> series.CountSeq:
    """Counting sequence of a species expression, by structural recursion.

    Propagates NonzeroConstantTerm from ill-posed substitutions and
    NotGuarded from recursive equations that do not determine their
    coefficients.
    """
    if env is None:
        env = {}
    if isinstance(expr, (Zero, One, Singleton, Sets, NonemptySets,
                         LinearOrders, Partitions, BinaryTrees)):
        return _base_seq(expr)
    if isinstance(expr, Var):
        try:
            return env[expr.name]
        except KeyError:
            raise ValueError("unbound species variable %r" % expr.name) from None
    if isinstance(expr, Sum):
        return series.seq_add(compile(expr.left, env), compile(expr.right, env))
    if isinstance(expr, Product):
        return series.seq_mul(compile(expr.left, env), compile(expr.right, env))
    if isinstance(expr, Compose):
        return series.seq_compose(compile(expr.outer, env), compile(expr.inner, env))
    if isinstance(expr, Derivative):
        return series.seq_derive(compile(expr.inner, env))
    if isinstance(expr, Power):
        k = expr.exponent
        if k < 0:
            raise ValueError("power exponent must be a natural number")
        seq = _seq_one()
        base = compile(expr.base, env)
        for _ in range(k):
            seq = series.seq_mul(seq, base)
        return seq
    if isinstance(expr, Fix):
        def body(f):
            inner_env = dict(env)
            inner_env[expr.var] = f
            return compile(expr.body, inner_env)

        return series.seq_fixpoint(body)
    raise TypeError("not a species expression: %r" % (expr,))


# ---------------------------------------------------------------------------
# Brute-force enumeration


@dataclass(frozen=True)
class LabeledStructure:
    """One explicit structure on the set {1..size}.

    Witness formats are fixed so golden tests stay deterministic:
    partitions are tuples of blocks sorted by minimum element, binary
    trees are nested (root, left, right) with None for the empty tree,
    linear orders are tuples, sums are (side, witness), products are
    ((left labels, left witness), (right labels, right witness)).
    """

    kind: str
    size: int
    witness: object


def _iter_trees(labels):
    """All binary rooted trees on the label tuple: pick a root, split the
    rest into left and right label sets, recurse.

    Proper sublists are materialized and shared; the top level streams.
    """
    labels = tuple(labels)
    n = len(labels)
    memo = {0: (None,)}

    def solve(mask):
        got = memo.get(mask)
        if got is not None:
            return got
        out = []
        bits = [i for i in range(n) if mask >> i & 1]
        for r in bits:
            rest = mask & ~(1 << r)
            sub = rest
            while True:
                for tl in solve(sub):
                    for tr in solve(rest & ~sub):
                        out.append((labels[r], tl, tr))
                if sub == 0:
                    break
                sub = (sub - 1) & rest
        out = tuple(out)
        memo[mask] = out
        return out

    full = (1 << n) - 1
    if n == 0:
        yield None
        return
    for r in range(n):
        rest = full & ~(1 << r)
        sub = rest
        while True:
            for tl in solve(sub):
                for tr in solve(rest & ~sub):
                    yield (labels[r], tl, tr)
            if sub == 0:
                break
            sub = (sub - 1) & rest


def _iter_partitions(labels):
    """All partitions into nonempty blocks, blocks sorted by minimum.

    Built by inserting each label into an existing block or opening a new
    last block, which preserves the sorted-by-minimum invariant.
    """
    labels = tuple(labels)
    if not labels:
        yield ()
        return

    def extend(partition, rest):
        if not rest:
            yield partition
            return
        x, tail = rest[0], rest[1:]
        for i in range(len(partition)):
            grown = partition[:i] + (partition[i] + (x,),) + partition[i + 1:]
            yield from extend(grown, tail)
        yield from extend(partition + ((x,),), tail)

    yield from extend(((labels[0],),), labels[1:])


def _subsets(labels):
    labels = tuple(labels)
    n = len(labels)
    for mask in range(1 << n):
        yield (
            tuple(labels[i] for i in range(n) if mask >> i & 1),
            tuple(labels[i] for i in range(n) if not mask >> i & 1),
        )


def _iter_structures(expr, labels):
    labels = tuple(labels)
    n = len(labels)
    if isinstance(expr, Zero):
        return
    if isinstance(expr, One):
        if n == 0:
            yield ()
        return
    if isinstance(expr, Singleton):
        if n == 1:
            yield labels[0]
        return
    if isinstance(expr, Sets):
        yield labels
        return
    if isinstance(expr, NonemptySets):
        if n > 0:
            yield labels
        return
    if isinstance(expr, LinearOrders):
        yield from itertools.permutations(labels)
        return
    if isinstance(expr, Partitions):
        yield from _iter_partitions(labels)
        return
    if isinstance(expr, BinaryTrees):
        yield from _iter_trees(labels)
        return
    if isinstance(expr, Sum):
        for w in _iter_structures(expr.left, labels):
            yield (0, w)
        for w in _iter_structures(expr.right, labels):
            yield (1, w)
        return
    if isinstance(expr, Product):
        for left, right in _subsets(labels):
            for wl in _iter_structures(expr.left, left):
                for wr in _iter_structures(expr.right, right):
                    yield ((left, wl), (right, wr))
        return
    if isinstance(expr, Power):
        yield from _iter_structures(_expand_power(expr), labels)
        return
    if isinstance(expr, Derivative):
        extra = (max(labels) if labels else 0) + 1
        yield from _iter_structures(expr.inner, labels + (extra,))
        return
    raise NotEnumerable("species %r is not enumerable" % (expr,))


def _expand_power(expr: Power) -> SpeciesExpr:
    if expr.exponent == 0:
        return ONE
    out = expr.base
    for _ in range(expr.exponent - 1):
        out = Product(out, expr.base)
    return out


def _kind_name(expr) -> str:
    return type(expr).__name__


def enumerate_structures(expr: SpeciesExpr, n: int) -> list[LabeledStructure]:
    """Exhaustive, duplicate-free list of structures on {1..n}.

    Caps at n <= 9; beyond that the factorial growth is not worth
    materializing and TooLarge is raised.
    """
    if n > ENUM_MAX:
        raise TooLarge("enumeration capped at n <= %d, got %d" % (ENUM_MAX, n))
    labels = tuple(range(1, n + 1))
    kind = _kind_name(expr)
    return [
        LabeledStructure(kind, n, w) for w in _iter_structures(expr, labels)
    ]


def count_structures(expr: SpeciesExpr, n: int) -> int:
    """len(enumerate_structures(expr, n)) without materializing the list."""
    if n > ENUM_MAX:
        raise TooLarge("enumeration capped at n <= %d, got %d" % (ENUM_MAX, n))
    labels = tuple(range(1, n + 1))
    return sum(1 for _ in _iter_structures(expr, labels))


def check_witness(expr: SpeciesExpr, n: int, witness) -> bool:
    """Validate one witness against its species on {1..n}."""
    labels = tuple(range(1, n + 1))
    return _check(expr, labels, witness)


def _check(expr, labels, w):
    labels = tuple(labels)
    lset = set(labels)
    if isinstance(expr, Zero):
        return False
    if isinstance(expr, One):
        return len(labels) == 0 and w == ()
    if isinstance(expr, Singleton):
        return len(labels) == 1 and w == labels[0]
    if isinstance(expr, Sets):
        return w == labels
    if isinstance(expr, NonemptySets):
        return len(labels) > 0 and w == labels
    if isinstance(expr, LinearOrders):
        return len(w) == len(labels) and set(w) == lset
    if isinstance(expr, Partitions):
        blocks = list(w)
        seen = []
        for block in blocks:
            if not block:
                return False
            seen.extend(block)
        if sorted(seen) != sorted(labels) or len(set(seen)) != len(seen):
            return False
        mins = [min(b) for b in blocks]
        return mins == sorted(mins)
    if isinstance(expr, BinaryTrees):
        used = []

        def walk(t):
            if t is None:
                return True
            root, left, right = t
            used.append(root)
            return walk(left) and walk(right)

        return walk(w) and sorted(used) == list(labels)
    if isinstance(expr, Sum):
        side, inner = w
        return _check(expr.left if side == 0 else expr.right, labels, inner)
    if isinstance(expr, Product):
        (left_labels, wl), (right_labels, wr) = w
        if set(left_labels) | set(right_labels) != lset:
            return False
        if set(left_labels) & set(right_labels):
            return False
        return _check(expr.left, left_labels, wl) and _check(
            expr.right, right_labels, wr
        )
    if isinstance(expr, Power):
        return _check(_expand_power(expr), labels, w)
    if isinstance(expr, Derivative):
        extra = (max(labels) if labels else 0) + 1
        return _check(expr.inner, labels + (extra,), w)
    raise NotEnumerable("species %r is not enumerable" % (expr,))


@dataclass(frozen=True)
class OracleRow:
    n: int
    engine_count: Fraction
    enumerated_count: int


def oracle_check(expr: SpeciesExpr, n_max: int) -> list[OracleRow]:
    """Assert engine counts equal enumeration counts for n = 0..n_max.

    Returns the per-n comparison table; raises MismatchReport carrying
    the first differing n, which would signal an engine bug.
    """
    if n_max > ENUM_MAX:
        raise TooLarge("oracle check capped at n <= %d, got %d" % (ENUM_MAX, n_max))
    seq = compile(expr)
    rows = []
    for n in range(n_max + 1):
        engine = seq.term(n)
        enumerated = count_structures(expr, n)
        if engine != enumerated:
            raise MismatchReport(n, engine, enumerated)
        rows.append(OracleRow(n, engine, enumerated))
    return rows

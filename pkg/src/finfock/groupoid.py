"""Finite group actions, weak quotients, and cardinality formulas.

A finite group acting on {1..n} yields the action groupoid (one object
per point, one morphism per (group element, point) pair).  Its
cardinality, the sum of 1/|stabilizer| over orbits, always equals
n/|group|, which is what lets a 5-element set divided by an order-2
action come out to 5/2: the lone fixed point is counted with weight 1/2.

Permutations are tuples p of length n with p[i-1] the image of point i.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadCycle, GroupTooLarge

#: closure cap on the generated group order
GROUP_CAP = 10**6


def _is_perm(p, n):
    return len(p) == n and sorted(p) == list(range(1, n + 1))


@dataclass(frozen=True)
class PermAction:
    """A finite group acting on {1..set_size}, given by generators."""

    set_size: int
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.set_size
        if n < 0:
            raise ValueError("set size must be a natural number")
        gens = tuple(tuple(g) for g in self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if not _is_perm(g, n):
                raise ValueError("%r is not a permutation of 1..%d" % (g, n))


def _compose(p, q):
    """(p after q): point i goes to p[q[i]]."""
    return tuple(p[qi - 1] for qi in q)


def group_closure(action: PermAction) -> list[tuple[int, ...]]:
    """The full generated group, closed under composition.

    Breadth-first closure; the result is sorted lexicographically so the
    order is deterministic.  Raises GroupTooLarge past the cap of 10^6
    elements.
    """
    n = action.set_size
    identity = tuple(range(1, n + 1))
    elements = {identity}
    frontier = [identity]
    while frontier:
        new = []
        for g in action.generators:
            for h in frontier:
                gh = _compose(g, h)
                if gh not in elements:
                    elements.add(gh)
                    new.append(gh)
                    if len(elements) > GROUP_CAP:
                        raise GroupTooLarge(
                            "generated group exceeds %d elements" % GROUP_CAP
                        )
        frontier = new
    return sorted(elements)


@dataclass(frozen=True)
class WeakQuotientResult:
    """Orbit decomposition of an action with its groupoid cardinality.

    orbits is a tuple of (orbit elements, stabilizer order); stabilizer
    order times orbit size equals the group order for every orbit, and
    cardinality is the sum of 1/stabilizer over orbits.
    """

    orbits: tuple[tuple[tuple[int, ...], int], ...]
    group_order: int
    cardinality: Fraction


def weak_quotient(action: PermAction) -> WeakQuotientResult:
    """Action groupoid of a permutation action, with its cardinality.

    Orbits come from union-find over generator images; stabilizer orders
    follow from orbit size and group order.
    """
    n = action.set_size
    group_order = len(group_closure(action))

    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for g in action.generators:
        for i in range(1, n + 1):
            union(i, g[i - 1])

    buckets: dict[int, list[int]] = {}
    for i in range(1, n + 1):
        buckets.setdefault(find(i), []).append(i)

    orbits = []
    cardinality = Fraction(0)
    for root in sorted(buckets):
        members = tuple(sorted(buckets[root]))
        stabilizer = group_order // len(members)
        assert stabilizer * len(members) == group_order
        orbits.append((members, stabilizer))
        cardinality += Fraction(1, stabilizer)
    return WeakQuotientResult(tuple(orbits), group_order, cardinality)


@dataclass(frozen=True)
class ExplicitGroupoid:
    """Isomorphism classes given directly as (label, |aut|, multiplicity)."""

    classes: tuple[tuple[object, int, int], ...]

    def __post_init__(self):
        for label, aut, mult in self.classes:
            if aut < 1:
                raise ValueError("automorphism count must be >= 1 for %r" % (label,))
            if mult < 0:
                raise ValueError("multiplicity must be >= 0 for %r" % (label,))


def groupoid_cardinality(g: ExplicitGroupoid) -> Fraction:
    """Sum of multiplicity/|aut| over isomorphism classes."""
    return sum(
        (Fraction(mult, aut) for _, aut, mult in g.classes), Fraction(0)
    )


@dataclass(frozen=True)
class HomotopyOrders:
    """Homotopy-group orders per component: [|pi_1|, |pi_2|, ...]."""

    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        comps = tuple(tuple(c) for c in self.components)
        object.__setattr__(self, "components", comps)
        for comp in comps:
            for order in comp:
                if order < 1:
                    raise ValueError("group orders must be positive, got %r" % order)


def homotopy_cardinality(h: HomotopyOrders) -> Fraction:
    """Alternating product per component, summed over components.

    |pi_k| enters with exponent -1 for odd k and +1 for even k, so a
    single component [o] (one nontrivial fundamental group of order o)
    contributes 1/o and an empty list (contractible component)
    contributes 1.
    """
    total = Fraction(0)
    for comp in h.components:
        value = Fraction(1)
        for k, order in enumerate(comp, start=1):
            if k % 2 == 1:
                value /= order
            else:
                value *= order
        total += value
    return total


def bg_cardinality(group_order: int) -> Fraction:
    """Cardinality 1/|G| of the one-component space with pi_1 = G."""
    if group_order < 1:
        raise ValueError("group order must be positive")
    return homotopy_cardinality(HomotopyOrders(((group_order,),)))


# ---------------------------------------------------------------------------
# Disjoint-cycle notation

_CYCLE_TOKEN = re.compile(r"\s*(\(|\)|\d+|;)")


def parse_cycles(text: str, n: int) -> tuple[int, ...]:
    """One permutation of {1..n} in disjoint-cycle notation.

    Cycles are parenthesized with whitespace-separated entries, e.g.
    "(1 4)(2 5)(3 6)"; fixed points may be omitted.  The empty string is
    the identity.  Raises BadCycle with the offending span.
    """
    images = {}
    pos = 0
    length = len(text)
    if not text.strip():
        return tuple(range(1, n + 1))
    while pos < length:
        m = _CYCLE_TOKEN.match(text, pos)
        if m is None or m.group(1) in (")", ";"):
            end = m.end() if m else pos + 1
            raise BadCycle("expected '(' to open a cycle", (pos, min(end, length)))
        if m.group(1) != "(":
            raise BadCycle("expected '(' to open a cycle", (m.start(1), m.end(1)))
        pos = m.end()
        cycle = []
        spans = []
        while True:
            m = _CYCLE_TOKEN.match(text, pos)
            if m is None:
                raise BadCycle("unclosed cycle", (length, length))
            tok = m.group(1)
            pos = m.end()
            if tok == ")":
                break
            if not tok.isdigit():
                raise BadCycle("expected a point or ')'", (m.start(1), m.end(1)))
            point = int(tok)
            if not 1 <= point <= n:
                raise BadCycle(
                    "point %d outside 1..%d" % (point, n), (m.start(1), m.end(1))
                )
            if point in images or point in cycle:
                raise BadCycle(
                    "point %d repeated; cycles must be disjoint" % point,
                    (m.start(1), m.end(1)),
                )
            cycle.append(point)
            spans.append((m.start(1), m.end(1)))
        if not cycle:
            raise BadCycle("empty cycle", (pos - 1, pos))
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            images[a] = b
        tail = text[pos:]
        if not tail.strip():
            break
    trailing = text[pos:].strip()
    if trailing:
        raise BadCycle("unexpected trailing input", (pos, length))
    return tuple(images.get(i, i) for i in range(1, n + 1))


def parse_generator_list(text: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Semicolon-separated permutations in cycle notation; '' means none."""
    if not text.strip():
        return ()
    gens = []
    offset = 0
    for chunk in text.split(";"):
        if chunk.strip():
            try:
                gens.append(parse_cycles(chunk, n))
            except BadCycle as exc:
                start, end = exc.span
                raise BadCycle(str(exc), (start + offset, end + offset)) from None
        offset += len(chunk) + 1
    return tuple(gens)

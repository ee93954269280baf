#!/usr/bin/env python3
# Ladder operators, normal ordering, and diagram counting.
#
# On the inner-product space with <f, g> = sum f_n g_n / n!, the
# operator A lowers the index (differentiation of the EGF) and A*
# raises it (multiplication by x).  Products normal-order themselves
# through a a* = a* a + 1, and matrix elements of products of Wick
# powers count perfect matchings of half-edges: Feynman diagrams.

from finfock import fock, species
from finfock.fock import (
    A,
    ASTAR,
    MatchingProblem,
    apply_weyl,
    feynman_algebraic,
    feynman_oracle,
    format_weyl,
    inner_product,
    matrix_element,
    weyl_mul,
    wick_power,
)

E = species.compile(species.E)

# The commutation relation, as exact coefficient maps.
print("A A*      =", format_weyl(weyl_mul(A, ASTAR)))
print("A* A      =", format_weyl(weyl_mul(ASTAR, A)))

# Wick powers of the field operator Phi = A + A*: binomial tables.
for p in range(4):
    print(":Phi^%d:   =" % p, format_weyl(wick_power(p)))

# Acting on sequences.  The all-ones sequence is fixed by A, and the
# commutator of the ladder actions adds back the sequence itself.
print("A acting on E:", apply_weyl(A, E).terms(6))
lhs = apply_weyl(weyl_mul(A, ASTAR), E)
rhs = apply_weyl(weyl_mul(ASTAR, A), E)
print("commutator on E:", [int(lhs.term(n) - rhs.term(n)) for n in range(6)])

# Inner products: <E, E> converges to e; two copies of the orders
# sequence blow up summand by summand.
L = species.compile(species.L)
print("<E, E> ->", inner_product(E, E).status, float(inner_product(E, E).value))
print("<L, L> ->", inner_product(L, L, 24).status)

# Matrix elements count diagrams.  Two 2-valent vertices with no
# external legs can be joined in exactly two ways:
problem = MatchingProblem((2, 2), 0, 0)
count, diagrams = feynman_oracle(problem)
print("vertices (2,2):", count, "diagrams, algebra says", feynman_algebraic(problem))
for d in diagrams:
    print("   ", d)

# Four-valent vertices pair leg by leg: 4! matchings.
problem = MatchingProblem((4, 4), 0, 0)
print("vertices (4,4):", feynman_algebraic(problem))

# One external line in, one out, nothing in between: the propagator.
print("bare line:", matrix_element(fock.IDENTITY, 1, 1))

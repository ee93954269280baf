#!/usr/bin/env python3
# Counting labeled structures with exact generating-function arithmetic.
#
# A species expression describes a kind of structure on finite labeled
# sets; compiling it yields the sequence term(n) = number of structures
# on {1..n}.  Everything below is exact (Fraction), nothing is floated.

from finfock import species
from finfock.species import B, E, E_PLUS, L, PAR, X, Product, Sum

# The classics, straight from the catalog.
orders = species.compile(L)
print("linear orders:   ", orders.terms(8))          # n!
partitions = species.compile(PAR)
print("set partitions:  ", partitions.terms(8))      # Bell numbers
trees = species.compile(B)
print("binary trees:    ", trees.terms(8))           # (2n)!/(n+1)!

# EGF coefficients are the counts divided by n!; for binary trees they
# are the Catalan numbers.
print("Catalan numbers: ", [trees.egf(n) for n in range(10)])

# The algebra mirrors how structures combine.  A pair of ways to split a
# set into two (each part just "being a set") is a 2-coloring: 2^n.
colorings = species.compile(Product(E, E))
print("2-colorings:     ", colorings.terms(8))

# Substitution: a set partitioned into nonempty blocks IS E(E+).
bell_again = species.compile(species.Compose(E, E_PLUS))
print("E(E+) == Par:    ", bell_again.terms(8) == partitions.terms(8))

# Recursive definitions solve themselves coefficient by coefficient:
# nonempty linear orders satisfy F = X + X*F.
from finfock.species import Fix, Var
nonempty_orders = species.compile(Fix("F", Sum(X, Product(X, Var("F")))))
print("fix F. X + X*F:  ", nonempty_orders.terms(8))

# And every engine count can be checked against brute-force enumeration.
rows = species.oracle_check(Product(E, E), 8)
print("oracle rows:     ", [(r.n, int(r.engine_count)) for r in rows])

# The enumeration itself is explicit: here are the two structures the
# species X*X puts on {1, 2} (an ordered split into two singletons).
for s in species.enumerate_structures(Product(X, X), 2):
    print("X*X witness:     ", s.witness)

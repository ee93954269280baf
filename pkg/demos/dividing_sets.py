#!/usr/bin/env python3
# Dividing a finite set by a group action, exactly.
#
# Collapsing orbits loses information when the action has fixed points;
# keeping the action groupoid instead gives a cardinality of
# sum(1/|stabilizer|) over orbits, and that always equals |S|/|G|.

from fractions import Fraction

from finfock.groupoid import (
    ExplicitGroupoid,
    HomotopyOrders,
    PermAction,
    bg_cardinality,
    groupoid_cardinality,
    homotopy_cardinality,
    parse_cycles,
    weak_quotient,
)

# A free swap folds six points onto three: 6/2 = 3.
action = PermAction(6, (parse_cycles("(1 4)(2 5)(3 6)", 6),))
result = weak_quotient(action)
print("orbits:", result.orbits)
print("6 points / order-2 group =", result.cardinality)

# With five points the middle one is fixed; its stabilizer has order 2,
# so it contributes 1/2 and the quotient has cardinality 5/2.
action = PermAction(5, (parse_cycles("(1 5)(2 4)", 5),))
result = weak_quotient(action)
print("orbits:", result.orbits)
print("5 points / order-2 group =", result.cardinality)

# Summing 1/|aut| over isomorphism classes extends counting to groupoids
# with symmetry.  Taking one class per finite set size, with the n!
# relabelings as automorphisms, the total tends to e = sum 1/n!.
import math
classes = tuple((n, math.factorial(n), 1) for n in range(12))
print("sum of 1/n! up to 11:", float(groupoid_cardinality(ExplicitGroupoid(classes))))

# Cardinality by homotopy-group orders: |pi_1| counts inverse,
# |pi_2| direct, and so on, multiplied per component and then summed.
print("one loop of order 2:  ", homotopy_cardinality(HomotopyOrders(((2,),))))
print("orders [6, 2]:        ", homotopy_cardinality(HomotopyOrders(((6, 2),))))
print("reciprocal of order 120:", bg_cardinality(120))

# The multiplicativity that makes this a good notion of size: termwise
# products of order lists multiply the cardinalities.
f, b = (2, 3), (4, 5)
x = tuple(u * v for u, v in zip(f, b))
H = HomotopyOrders
total = homotopy_cardinality(H((x,)))
split = homotopy_cardinality(H((f,))) * homotopy_cardinality(H((b,)))
print("twisted product %s splits as %s * %s:" % (x, f, b), total == split == Fraction(15, 8))

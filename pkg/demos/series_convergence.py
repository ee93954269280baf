#!/usr/bin/env python3
# Evaluating counting series at a point: exact partial sums with a
# convergence verdict, and one closed-form continuation.

from fractions import Fraction

from finfock import series, species

E = species.compile(species.E)
PAR = species.compile(species.PAR)
B = species.compile(species.B)

# sum of 1/n! converges to e; the result keeps the exact partial sum
# and a geometric bound on what was thrown away.
r = series.seq_eval(E, 1, 30, Fraction(1, 10**9))
print("E at 1:   ", r.status, "after", r.terms_used, "terms")
print("  exact   ", r.value)
print("  decimal ", float(r.value))
print("  tail <= ", float(r.tail_bound))

# Partitioned sets at 1 give e^(e-1).
r = series.seq_eval(PAR, 1, 40, Fraction(1, 10**9))
print("Par at 1: ", r.status, float(r.value))

# Binary trees grow too fast: at 1 the summands are the Catalan
# numbers themselves, so the verdict is divergence, not an error.
r = series.seq_eval(B, 1, 60, Fraction(1, 10**9))
print("B at 1:   ", r.status)

# The closed form (1 - sqrt(1-4x))/(2x) continues the series anyway,
# with the principal square root; at 1 the value leaves the real line.
print("continuation at 1:  ", series.catalan_closed_form(1))
print("continuation at 1/4:", series.catalan_closed_form(Fraction(1, 4)))

# Inside the radius of convergence the series and the closed form agree.
r = series.seq_eval(B, Fraction(1, 8), 64, Fraction(1, 10**12))
closed = series.catalan_closed_form(Fraction(1, 8))
print("at 1/8: series %.9f vs closed form %.9f" % (float(r.value), closed.real))

# Polynomials are the degenerate case: the verdict is convergence with
# tail bound exactly zero and the value is exact.
cube = species.compile(species.Power(species.X, 3))
r = series.seq_eval(cube, 2, 16, Fraction(1, 10**9))
print("X^3 at 2: ", r.status, "value", r.value, "tail", r.tail_bound)

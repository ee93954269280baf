"""Acceptance suite: one test per criterion, one PASS line each.

Run with `pytest tests/test_acceptance.py -s` to see the lines as they
print.  Exact checks use zero tolerance; decimal checks state theirs.
"""

import math
import random
import time
from fractions import Fraction

from finfock import fock, groupoid, series, species
from finfock.fock import (
    A,
    ASTAR,
    IDENTITY,
    PHI,
    MatchingProblem,
    apply_weyl,
    feynman_algebraic,
    feynman_oracle,
    kernel_matrix,
    weyl_add,
    weyl_adjoint,
    weyl_mul,
    wick_power,
)

E = species.compile(species.E)
X = species.compile(species.X)
ONE = species.compile(species.ONE)
PAR = species.compile(species.PAR)
B = species.compile(species.B)


def report(number, text):
    print("PASS criterion %d: %s" % (number, text))


def test_criterion_1_catalan_sequence():
    from finfock.exprlang import parse_species

    seq = species.compile(parse_species("B"))
    expected_egf = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786]
    assert [seq.egf(n) for n in range(12)] == expected_egf
    for n in range(12):
        assert seq.term(n) == Fraction(math.factorial(2 * n), math.factorial(n + 1))
    report(1, "binary tree EGF coefficients are Catalan, counts (2n)!/(n+1)!")


def test_criterion_2_bijective_cross_check():
    start = time.time()
    for n in range(8):
        assert B.term(n) == species.count_structures(species.B, n)
    orders = species.compile(species.L)
    for n in range(8):
        assert orders.term(n) == species.count_structures(species.L, n)
    for n in range(9):
        assert PAR.term(n) == species.count_structures(species.PAR, n)
    square = species.Product(species.E, species.E)
    square_seq = species.compile(square)
    for n in range(9):
        assert square_seq.term(n) == species.count_structures(square, n)
    elapsed = time.time() - start
    assert elapsed < 5.0, "cross-check took %.2fs" % elapsed
    report(2, "enumeration equals engine for trees<=7, orders<=7, "
              "partitions<=8, E*E<=8 in %.2fs" % elapsed)


def test_criterion_3_evaluation():
    from finfock.exprlang import parse_species

    tol = Fraction(1, 10**9)
    r = series.seq_eval(species.compile(parse_species("E")), 1, 30, tol)
    assert r.status == series.CONVERGED and r.terms_used <= 30
    assert abs(float(r.value) - math.e) < 1e-9

    bell = species.compile(parse_species("E(E+)"))
    r = series.seq_eval(bell, 1, 40, tol)
    assert r.status == series.CONVERGED and r.terms_used <= 40
    assert abs(float(r.value) - math.exp(math.e - 1)) < 1e-9

    r = series.seq_eval(B, 1, 60, tol)
    assert r.status == series.DIVERGED

    z = series.catalan_closed_form(1)
    assert abs(z.real - 0.5) < 1e-9
    assert abs(z.imag - (-math.sqrt(3) / 2)) < 1e-9
    report(3, "eval E->e, E(E+)->e^(e-1) within 1e-9; B diverges; "
              "closed form at 1 is 0.5 - 0.8660254038i")


def test_criterion_4_weak_quotients():
    act = groupoid.PermAction(6, (groupoid.parse_cycles("(1 4)(2 5)(3 6)", 6),))
    assert groupoid.weak_quotient(act).cardinality == 3

    act = groupoid.PermAction(5, (groupoid.parse_cycles("(1 5)(2 4)", 5),))
    assert groupoid.weak_quotient(act).cardinality == Fraction(5, 2)

    rng = random.Random(8261)
    for _ in range(100):
        n = rng.randint(1, 12)
        if rng.random() < 0.6:
            gens = (tuple(rng.sample(range(1, n + 1), n)),)
        else:
            def involution():
                pts = rng.sample(range(1, n + 1), n)
                img = {i: i for i in range(1, n + 1)}
                for k in range(0, 2 * rng.randint(0, n // 2), 2):
                    img[pts[k]], img[pts[k + 1]] = pts[k + 1], pts[k]
                return tuple(img[i] for i in range(1, n + 1))

            gens = (involution(), involution())
        action = groupoid.PermAction(n, gens)
        result = groupoid.weak_quotient(action)
        assert result.group_order <= 120
        assert result.cardinality == Fraction(n, result.group_order)
    report(4, "6//Z2 = 3, 5//Z2 = 5/2, and |S//G| = |S|/|G| on 100 random actions")


def test_criterion_5_homotopy_cardinality():
    assert groupoid.homotopy_cardinality(groupoid.HomotopyOrders(((2,),))) == (
        Fraction(1, 2)
    )
    for order in range(1, 61):
        assert groupoid.bg_cardinality(order) == Fraction(1, order)
    rng = random.Random(55)
    for _ in range(50):
        k = rng.randint(0, 5)
        f = tuple(rng.randint(1, 12) for _ in range(k))
        b = tuple(rng.randint(1, 12) for _ in range(k))
        x = tuple(u * v for u, v in zip(f, b))
        H = groupoid.HomotopyOrders
        lhs = groupoid.homotopy_cardinality(H((x,)))
        rhs = groupoid.homotopy_cardinality(H((f,))) * groupoid.homotopy_cardinality(
            H((b,))
        )
        assert lhs == rhs
    report(5, "BG reciprocals for |G| <= 60 and 50 exact fibration products")


def test_criterion_6_wick_tables():
    assert wick_power(0) == IDENTITY
    assert wick_power(1) == weyl_add(A, ASTAR)
    assert wick_power(2) == fock.WeylOp({(0, 2): 1, (1, 1): 2, (2, 0): 1})
    assert wick_power(3) == fock.WeylOp(
        {(0, 3): 1, (1, 2): 3, (2, 1): 3, (3, 0): 1}
    )
    for p in range(9):
        got = wick_power(p)
        assert got.terms == {
            (j, p - j): Fraction(math.comb(p, j)) for j in range(p + 1)
        }
    report(6, "Wick powers match the displayed tables for p<=3 and C(p,j) for p<=8")


def test_criterion_7_commutation():
    assert weyl_mul(A, ASTAR) == weyl_add(weyl_mul(ASTAR, A), IDENTITY)
    n = 32
    lhs = kernel_matrix(weyl_mul(A, ASTAR), n)
    rhs = kernel_matrix(weyl_mul(ASTAR, A), n)
    assert lhs.sub(rhs).rows == fock.identity_matrix(n).rows
    report(7, "A A* = A*A + 1 exactly, kernel commutator is the 32x32 identity")


def _truncate(f, keep):
    return series.CountSeq(
        lambda n: f.term(n) if n < keep else Fraction(0), integral=f.integral
    )


def _exact_inner(f, g, upto):
    return sum(
        f.term(n) * g.term(n) / Fraction(math.factorial(n)) for n in range(upto)
    )


def test_criterion_8_adjointness():
    ops = [
        A,
        ASTAR,
        PHI,
        wick_power(2),
        wick_power(3),
        weyl_mul(wick_power(2), wick_power(3)),
    ]
    states = [ONE, X, E, PAR]
    for keep in range(1, 25):
        for op in ops:
            adj = weyl_adjoint(op)
            reach = keep + op.max_creation() + op.max_annihilation() + 1
            for f in states:
                for g in states:
                    ft, gt = _truncate(f, keep), _truncate(g, keep)
                    lhs = _exact_inner(ft, apply_weyl(op, gt), reach)
                    rhs = _exact_inner(apply_weyl(adj, ft), gt, reach)
                    assert lhs - rhs == 0
    report(8, "<f, Og> = <O*f, g> exactly at every truncation N <= 24")


def _valence_multisets(total):
    def parts(remaining, smallest):
        if remaining == 0:
            yield ()
            return
        for p in range(smallest, remaining + 1):
            for rest in parts(remaining - p, p):
                yield (p,) + rest

    for s in range(total + 1):
        yield from parts(s, 1)


def test_criterion_9_feynman_sweep():
    start = time.time()
    cases = 0
    for valences in _valence_multisets(12):
        body = sum(valences)
        for m in range(13 - body):
            for n in range(13 - body - m):
                problem = MatchingProblem(valences, m, n)
                count, _ = feynman_oracle(problem)
                assert Fraction(count) == feynman_algebraic(problem)
                cases += 1
    elapsed = time.time() - start
    assert elapsed < 30.0, "sweep took %.2fs" % elapsed
    spot = MatchingProblem((2, 2), 0, 0)
    assert feynman_oracle(spot)[0] == feynman_algebraic(spot) == 2
    spot = MatchingProblem((4, 4), 0, 0)
    assert feynman_oracle(spot)[0] == feynman_algebraic(spot) == 24
    report(9, "oracle equals algebra on %d matching problems (<=12 legs) in %.2fs"
           % (cases, elapsed))


def test_criterion_10_rig_laws():
    atoms = [
        species.ZERO,
        species.ONE,
        species.X,
        species.E,
        species.E_PLUS,
        species.L,
        species.PAR,
        species.B,
        species.Product(species.X, species.E),
        species.Sum(species.ONE, species.L),
        species.Derivative(species.PAR),
        species.Power(species.X, 2),
    ]
    compiled = [species.compile(a) for a in atoms]
    zero, one = compiled[0], compiled[1]
    rng = random.Random(1010)
    for _ in range(500):
        f, g, h = (rng.choice(compiled) for _ in range(3))
        fg_comm_add = (series.seq_add(f, g), series.seq_add(g, f))
        add_assoc = (
            series.seq_add(series.seq_add(f, g), h),
            series.seq_add(f, series.seq_add(g, h)),
        )
        add_unit = (series.seq_add(zero, f), f)
        mul_comm = (series.seq_mul(f, g), series.seq_mul(g, f))
        mul_assoc = (
            series.seq_mul(series.seq_mul(f, g), h),
            series.seq_mul(f, series.seq_mul(g, h)),
        )
        mul_unit = (series.seq_mul(one, f), f)
        distrib = (
            series.seq_mul(f, series.seq_add(g, h)),
            series.seq_add(series.seq_mul(f, g), series.seq_mul(f, h)),
        )
        annihil = (series.seq_mul(zero, f), zero)
        for lhs, rhs in (
            fg_comm_add,
            add_assoc,
            add_unit,
            mul_comm,
            mul_assoc,
            mul_unit,
            distrib,
            annihil,
        ):
            for n in range(16):
                assert lhs.term(n) == rhs.term(n)
    report(10, "eight rig identities hold termwise at truncation 16 "
               "on 500 random triples")

"""Independent reference implementations used only by the tests.

Nothing here imports the code under test.
"""
import itertools
import math
from fractions import Fraction


def all_sequences(P, Q, start, end):
    """Every +-1 sequence with P ones and Q minus-ones, filtered by first/last entry."""
    for seq in itertools.product((1, -1), repeat=P + Q):
        if seq.count(1) == P and seq[0] == start and seq[-1] == end:
            yield seq


def bend_count(seq):
    return sum(1 for a, b in zip(seq, seq[1:]) if a != b)


def counts_by_bends(P, Q, start, end):
    out = {}
    for seq in all_sequences(P, Q, start, end):
        r = bend_count(seq)
        out[r] = out.get(r, 0) + 1
    return out


def bessel_rational(order, z, terms=60):
    """Fixed-length partial sum of the J_order power series with explicit factorials."""
    z = Fraction(z)
    half = z / 2
    total = Fraction(0)
    for k in range(terms):
        total += Fraction((-1) ** k) * half ** (2 * k + order) / (math.factorial(k) * math.factorial(k + order))
    return total


def j0_oracle(z):
    return float(bessel_rational(0, z))


def j1_oracle(z):
    return float(bessel_rational(1, z))


def bisect_root(f, lo, hi, tol=1e-15):
    flo = f(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)

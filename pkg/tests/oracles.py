"""Brute-force reference implementations used to cross-check the library."""

from fractions import Fraction
from itertools import product
from math import isqrt

from biquad.core import is_totally_positive


def quad_tp_integers(k, trace_bound):
    """Totally positive integers (s + t√k)/2 of Q(√k) with trace s <= trace_bound, as (s, t)."""
    out = []
    for s in range(1, int(trace_bound) + 1):
        tmax = isqrt(s * s // k) + 1
        for t in range(-tmax, tmax + 1):
            if s * s <= k * t * t:
                continue
            if k % 4 == 1:
                if (s - t) % 2:
                    continue
            elif s % 2 or t % 2:
                continue
            out.append((s, t))
    return out


def quad_indecomposables_brute(k, trace_bound):
    """(s, t) pairs of indecomposables: no totally positive beta with alpha - beta totally positive."""
    tp = quad_tp_integers(k, trace_bound)
    tpset = set(tp)
    return {a for a in tp if not any((a[0] - b[0], a[1] - b[1]) in tpset for b in tp if b[0] < a[0])}


def as_pair(x):
    """QuadElement -> (s, t) with x = (s + t√k)/2."""
    a, b = x.coeffs()
    s, t = 2 * a, 2 * b
    assert s.denominator == 1 and t.denominator == 1
    return int(s), int(t)


def smallest_unit(k):
    """(s, t) of the smallest unit (s + t√k)/2 > 1 found by scanning t upwards."""
    t = 1
    while True:
        for sign in (-4, 4):
            s2 = k * t * t + sign
            if s2 <= 0:
                continue
            s = isqrt(s2)
            if s * s == s2:
                if k % 4 == 1 and (s - t) % 2 == 0:
                    return s, t
                if k % 4 != 1 and s % 2 == 0 and t % 2 == 0:
                    return s, t
        t += 1


def biquad_decomposable(alpha):
    """Some beta with 0 < beta < alpha, or None.

    Independent of the lattice kernels: walks a 1/4-step coordinate box with
    Fraction arithmetic and filters with is_integral and exact signs.
    """
    K = alpha.field
    q4 = Fraction(1, 4)
    A = int(4 * alpha.a)
    for a4 in range(1, A):
        a = a4 * q4
        lims = [isqrt(int(16 * a * a / n)) + 1 for n in (K.p, K.q, K.r)]
        for b4, c4, d4 in product(*(range(-m, m + 1) for m in lims)):
            beta = K(a, b4 * q4, c4 * q4, d4 * q4)
            if not beta.is_integral():
                continue
            if is_totally_positive(beta) and is_totally_positive(alpha - beta):
                return beta
    return None


def float_eigs_ok(Q):
    """Numeric Sylvester check per embedding, for a second opinion only."""
    import math

    K = Q.field
    for k in (1, 2, 3, 4):
        M = [[float(_dec(x.embed(k))) for x in row] for row in Q.entries]
        # Cholesky
        n = len(M)
        L = [[0.0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1):
                s = M[i][j] - sum(L[i][m] * L[j][m] for m in range(j))
                if i == j:
                    if s <= 1e-12:
                        return False
                    L[i][i] = math.sqrt(s)
                else:
                    L[i][j] = s / L[j][j]
    return True


def _dec(x):
    from decimal import Decimal, getcontext

    getcontext().prec = 50
    K = x.field
    return sum(
        Decimal(c.numerator) / Decimal(c.denominator) * Decimal(n).sqrt()
        for c, n in zip(x.coords, (1, K.p, K.q, K.r))
    )

"""Square roots in O_K, square quotients and totally positive units."""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction
from itertools import product
from math import isqrt

from .core import EMBEDDING_SIGNS, BiquadElement, BiquadField, from_scaled, is_totally_positive
from .quadcf import fundamental_unit


def quad_sqrt(a: Fraction, b: Fraction, k: int) -> tuple[Fraction, Fraction] | None:
    """(s, t) with (s + t√k)^2 = a + b√k and s + t√k integral in Q(√k), else None."""
    # 4a = (2s)^2 + k (2t)^2 with 2s, 2t integers
    four_a = 4 * a
    if four_a.denominator != 1 or four_a < 0:
        return None
    n = int(four_a)
    for T in range(isqrt(n // k) + 1):
        S2 = n - k * T * T
        S = isqrt(S2)
        if S * S != S2:
            continue
        for s, t in ((S, T), (S, -T)):
            s, t = Fraction(s, 2), Fraction(t, 2)
            if s * s + k * t * t != a or 2 * s * t != b:
                continue
            # integrality in Q(√k): both integers, or both half-odd when k = 1 mod 4
            if (s.denominator == 1 and t.denominator == 1) or (
                k % 4 == 1 and s.denominator == 2 and t.denominator == 2
            ):
                return (s, t)
    return None


def _dec_sqrt_conjugates(alpha: BiquadElement) -> list[Decimal]:
    K = alpha.field
    roots = [Decimal(n).sqrt() for n in (K.p, K.q, K.r)]
    out = []
    for k in (1, 2, 3, 4):
        y = alpha.embed(k)
        v = Decimal(y.a.numerator) / y.a.denominator
        for c, rt in zip((y.b, y.c, y.d), roots):
            v += Decimal(c.numerator) / c.denominator * rt
        out.append(v.sqrt())
    return out


def sqrt_in_OK(alpha: BiquadElement) -> BiquadElement | None:
    """Integer beta with beta^2 = alpha (the root with positive sigma_1), or None.

    The conjugates of a root are +-sqrt(sigma_k(alpha)); each of the eight
    sign choices (sigma_1 positive) is inverted to coordinates at a precision
    well beyond the size of alpha, rounded to the 1/4 lattice and confirmed
    by exact squaring.
    """
    if not alpha.is_integral():
        raise ValueError(f"{alpha} is not an algebraic integer")
    K = alpha.field
    if not alpha:
        return K.zero
    if not is_totally_positive(alpha):
        return None
    size = max(abs(c) for c in alpha.coords) * (1 + K.r)
    with localcontext() as ctx:
        ctx.prec = 40 + 2 * len(str(int(size) + 1))
        r = _dec_sqrt_conjugates(alpha)
        rad = [Decimal(n).sqrt() for n in (1, K.p, K.q, K.r)]
        for s2, s3, s4 in product((1, -1), repeat=3):
            vals = [r[0], s2 * r[1], s3 * r[2], s4 * r[3]]
            coords = []
            for j in range(4):
                # 4 * coordinate j = sum_k e_kj sigma_k(beta) / sqrt(n_j)
                tot = sum(EMBEDDING_SIGNS[k + 1][j] * vals[k] for k in range(4)) / rad[j]
                n = int(tot.to_integral_value())
                if abs(tot - n) > Decimal("0.01"):
                    break
                coords.append(n)
            else:
                beta = from_scaled(K, coords, 4)
                if beta.is_integral() and beta * beta == alpha:
                    return beta
    return None


def is_square(alpha: BiquadElement) -> bool:
    return sqrt_in_OK(alpha) is not None


def is_square_quotient(beta: BiquadElement, alpha: BiquadElement) -> bool:
    """beta / alpha is a square of an integer of K."""
    if not alpha:
        raise ZeroDivisionError("alpha = 0")
    quot = beta / alpha
    return quot.is_integral() and sqrt_in_OK(quot) is not None


def is_unit(u: BiquadElement) -> bool:
    return bool(u) and u.is_integral() and abs(u.norm()) == 1 and u.inverse().is_integral()


def totally_positive_units(
    K: BiquadField, gens: list[BiquadElement], exponent_bound: int = 3
) -> list[BiquadElement]:
    """Totally positive elements among ±prod g_i^{e_i}, |e_i| <= exponent_bound."""
    for g in gens:
        if not is_unit(g):
            raise ValueError(f"{g} is not a unit of O_K")
    pows = []
    for g in gens:
        inv = g.inverse()
        pows.append({e: (g ** e if e >= 0 else inv ** (-e)) for e in range(-exponent_bound, exponent_bound + 1)})
    found = set()
    for exps in product(range(-exponent_bound, exponent_bound + 1), repeat=len(gens)):
        u = K.one
        for table, e in zip(pows, exps):
            if e:
                u = u * table[e]
        for cand in (u, -u):
            if is_totally_positive(cand):
                found.add(cand)
    return sorted(found, key=lambda x: (x.trace(), x.coords))


def _rref_f2(vectors: list[tuple[int, ...]]) -> list[tuple[tuple[int, ...], int]]:
    """Reduced row echelon basis over F2, as (row, pivot column) pairs."""
    rows = [list(v) for v in vectors]
    basis = []
    col = 0
    n = len(rows[0]) if rows else 0
    while rows and col < n:
        piv = next((r for r in rows if r[col]), None)
        if piv is not None:
            rows.remove(piv)
            rows = [[(x + y) % 2 for x, y in zip(r, piv)] if r[col] else r for r in rows]
            basis = [([(x + y) % 2 for x, y in zip(b, piv)] if b[col] else b, c) for b, c in basis]
            basis.append((piv, col))
        col += 1
    return [(tuple(b), c) for b, c in basis]


def unit_generators(K: BiquadField) -> list[BiquadElement]:
    """Generators of O_K^* modulo ±1, from the three subfield fundamental units.

    Every unit squares into <-1, e_p, e_q, e_r>, so it suffices to adjoin the
    square roots of ±e_p^i e_q^j e_r^k (i, j, k in {0, 1}) that lie in K.
    """
    eps = [fundamental_unit(k).to_biquad(K) for k in K.radicands]
    roots = {}
    for vec in product((0, 1), repeat=3):
        if not any(vec):
            continue
        prod_ = K.one
        for e, v in zip(eps, vec):
            if v:
                prod_ = prod_ * e
        for cand in (prod_, -prod_):
            rt = sqrt_in_OK(cand)
            if rt is not None:
                roots[vec] = rt
                break
    basis = _rref_f2(list(roots))
    by_pivot = {col: row for row, col in basis}
    gens = []
    for j in range(3):
        # a root of the reduced row with pivot j replaces e_j
        gens.append(roots[by_pivot[j]] if j in by_pivot else eps[j])
    return gens


# Unit group generators of Q(√2, √3), as listed for that field.
def q23_unit_generators(K: BiquadField) -> list[BiquadElement]:
    if (K.p, K.q) != (2, 3):
        raise ValueError("preset generators are for Q(√2, √3)")
    h = Fraction(1, 2)
    return [K(1, 1), K(0, h, 0, h), K(0, 1, 1)]

"""Pure-Python lattice kernels (reference twin of ``_kernels.pyx``).

Elements are passed as integer 4-tuples (A, B, C, D) standing for
(A + B sqrt p + C sqrt q + D sqrt r) / s, where the scale s is chosen by the
caller (4 for integers of K, 16 for products of two of them).  Signs are
decided with integer arithmetic only.

``mask`` is ``BiquadField.residue_mask``: the residues mod 4 of 4 * O_K.
"""

from math import isqrt


def sign2(x, y, m):
    """Sign of x + y sqrt(m) for integers x, y and non-square m > 1."""
    if y == 0:
        return (x > 0) - (x < 0)
    if x == 0:
        return (y > 0) - (y < 0)
    if x > 0 and y > 0:
        return 1
    if x < 0 and y < 0:
        return -1
    s = x * x - m * y * y
    return ((x > 0) - (x < 0)) * ((s > 0) - (s < 0))


def sign(A, B, C, D, p, q, g):
    """Sign of A + B sqrt p + C sqrt q + D sqrt r.

    g * value = (gA + gB sqrt p) + sqrt q (gC + D sqrt p), because
    g sqrt r = sqrt p sqrt q.
    """
    u0, u1, v0, v1 = g * A, g * B, g * C, D
    su = sign2(u0, u1, p)
    sv = sign2(v0, v1, p)
    if sv == 0:
        return su
    if su == 0 or su == sv:
        return sv
    w0 = u0 * u0 + p * u1 * u1 - q * (v0 * v0 + p * v1 * v1)
    w1 = 2 * (u0 * u1 - q * v0 * v1)
    return su * sign2(w0, w1, p)


def is_tp(A, B, C, D, p, q, g):
    return (
        sign(A, B, C, D, p, q, g) > 0
        and sign(A, -B, C, -D, p, q, g) > 0
        and sign(A, B, -C, -D, p, q, g) > 0
        and sign(A, -B, -C, D, p, q, g) > 0
    )


def mul(x, y, p, q, g):
    r = p * q // (g * g)
    a1, b1, c1, d1 = x
    a2, b2, c2, d2 = y
    return (
        a1 * a2 + p * b1 * b2 + q * c1 * c2 + r * d1 * d2,
        a1 * b2 + b1 * a2 + (q // g) * (c1 * d2 + d1 * c2),
        a1 * c2 + c1 * a2 + (p // g) * (b1 * d2 + d1 * b2),
        a1 * d2 + d1 * a2 + g * (b1 * c2 + c1 * b2),
    )


def _prefix_masks(mask):
    m2 = [any(mask[a * 16 + b * 4 + c] for c in range(4)) for a in range(4) for b in range(4)]
    m1 = [any(m2[a * 4 + b] for b in range(4)) for a in range(4)]
    return m1, m2


def decompose_witness(alpha, p, q, g, mask, a_lo=1, a_hi=None):
    """Lexicographically smallest beta with 0 < beta < alpha, or None.

    ``alpha`` and the result are scaled by 4.  Only first coordinates in
    [a_lo, a_hi] are scanned, so callers can split the work.
    """
    r = p * q // (g * g)
    m1, m2 = _prefix_masks(mask)
    Aa, Ba, Ca, Da = alpha
    hi = Aa - 1 if a_hi is None else min(a_hi, Aa - 1)
    for A in range(max(a_lo, 1), hi + 1):
        ra = A & 3
        if not m1[ra]:
            continue
        A2 = Aa - A
        bb1 = isqrt((A * A - 1) // p)
        bb2 = isqrt((A2 * A2 - 1) // p)
        cc1 = isqrt((A * A - 1) // q)
        cc2 = isqrt((A2 * A2 - 1) // q)
        dd1 = isqrt((A * A - 1) // r)
        dd2 = isqrt((A2 * A2 - 1) // r)
        for B in range(max(-bb1, Ba - bb2), min(bb1, Ba + bb2) + 1):
            rb = ra * 4 + (B & 3)
            if not m2[rb]:
                continue
            for C in range(max(-cc1, Ca - cc2), min(cc1, Ca + cc2) + 1):
                dm = mask[rb * 4 + (C & 3)]
                if not dm:
                    continue
                for D in range(max(-dd1, Da - dd2), min(dd1, Da + dd2) + 1):
                    if not (dm >> (D & 3)) & 1:
                        continue
                    if is_tp(A, B, C, D, p, q, g) and is_tp(A2, Ba - B, Ca - C, Da - D, p, q, g):
                        return (A, B, C, D)
    return None


def ellipsoid_points(bound, p, q, g, mask, exact=False):
    """All 4-scaled integers x of K with A^2 + pB^2 + qC^2 + rD^2 <= bound.

    The left side is 4 Tr(x^2) in scaled units.  With ``exact`` only points
    on the boundary (equality) are returned.
    """
    r = p * q // (g * g)
    m1, m2 = _prefix_masks(mask)
    out = []
    if bound < 0:
        return out
    amax = isqrt(bound)
    for A in range(-amax, amax + 1):
        ra = A & 3
        if not m1[ra]:
            continue
        rem1 = bound - A * A
        bmax = isqrt(rem1 // p)
        for B in range(-bmax, bmax + 1):
            rb = ra * 4 + (B & 3)
            if not m2[rb]:
                continue
            rem2 = rem1 - p * B * B
            cmax = isqrt(rem2 // q)
            for C in range(-cmax, cmax + 1):
                dm = mask[rb * 4 + (C & 3)]
                if not dm:
                    continue
                rem3 = rem2 - q * C * C
                if exact:
                    if rem3 % r:
                        continue
                    d = isqrt(rem3 // r)
                    if d * d * r != rem3:
                        continue
                    for D in sorted({-d, d}):
                        if (dm >> (D & 3)) & 1:
                            out.append((A, B, C, D))
                    continue
                dmax = isqrt(rem3 // r)
                for D in range(-dmax, dmax + 1):
                    if (dm >> (D & 3)) & 1:
                        out.append((A, B, C, D))
    return out


def offdiag_points(t16, p, q, g, mask, strict):
    """All 4-scaled integers gamma with gamma^2 < t (strict) or gamma^2 <= t.

    ``t16`` is 16 * t.  Candidates come from the trace ellipsoid
    Tr(gamma^2) <= Tr(t) and are then filtered exactly.
    """
    out = []
    for x in ellipsoid_points(t16[0], p, q, g, mask):
        sq = mul(x, x, p, q, g)
        diff = (t16[0] - sq[0], t16[1] - sq[1], t16[2] - sq[2], t16[3] - sq[3])
        if diff == (0, 0, 0, 0):
            if not strict:
                out.append(x)
        elif is_tp(*diff, p, q, g):
            out.append(x)
    return out


def tp_points(tmax, p, q, g, mask):
    """All totally positive 4-scaled integers with trace (= A) at most tmax."""
    r = p * q // (g * g)
    m1, m2 = _prefix_masks(mask)
    out = []
    for A in range(1, tmax + 1):
        ra = A & 3
        if not m1[ra]:
            continue
        bb = isqrt((A * A - 1) // p)
        cc = isqrt((A * A - 1) // q)
        dd = isqrt((A * A - 1) // r)
        for B in range(-bb, bb + 1):
            rb = ra * 4 + (B & 3)
            if not m2[rb]:
                continue
            for C in range(-cc, cc + 1):
                dm = mask[rb * 4 + (C & 3)]
                if not dm:
                    continue
                for D in range(-dd, dd + 1):
                    if (dm >> (D & 3)) & 1 and is_tp(A, B, C, D, p, q, g):
                        out.append((A, B, C, D))
    return out

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lattice kernels; same signatures and results as ``_kernels_py``.

Signs are computed in 64-bit integers.  Before each sign test the operand
size is compared against a per-field limit that keeps every intermediate
below 2^63; larger operands are handed to the Python-integer twin.
"""

from libc.math cimport sqrt

from biquad import _kernels_py as _py


cdef inline long long _isqrt(long long n):
    if n <= 0:
        return 0
    cdef long long x = <long long>sqrt(<double>n)
    while x * x > n:
        x -= 1
    while (x + 1) * (x + 1) <= n:
        x += 1
    return x


cdef inline int _sgn(long long x):
    return (x > 0) - (x < 0)


cdef inline int _sign2(long long x, long long y, long long m):
    if y == 0:
        return _sgn(x)
    if x == 0:
        return _sgn(y)
    if x > 0 and y > 0:
        return 1
    if x < 0 and y < 0:
        return -1
    return _sgn(x) * _sgn(x * x - m * y * y)


cdef inline long long _absll(long long x):
    return -x if x < 0 else x


cdef struct Field:
    long long p, q, r, g, limit


cdef int _sign(long long A, long long B, long long C, long long D, Field* f) except -2:
    cdef long long u0 = f.g * A, u1 = f.g * B, v0 = f.g * C, v1 = D
    cdef long long m = _absll(u0)
    if _absll(u1) > m:
        m = _absll(u1)
    if _absll(v0) > m:
        m = _absll(v0)
    if _absll(v1) > m:
        m = _absll(v1)
    if m > f.limit:
        return _py.sign(A, B, C, D, f.p, f.q, f.g)
    cdef int su = _sign2(u0, u1, f.p)
    cdef int sv = _sign2(v0, v1, f.p)
    if sv == 0:
        return su
    if su == 0 or su == sv:
        return sv
    cdef long long w0 = u0 * u0 + f.p * u1 * u1 - f.q * (v0 * v0 + f.p * v1 * v1)
    cdef long long w1 = 2 * (u0 * u1 - f.q * v0 * v1)
    return su * _sign2(w0, w1, f.p)


cdef int _is_tp(long long A, long long B, long long C, long long D, Field* f) except -2:
    return (
        _sign(A, B, C, D, f) > 0
        and _sign(A, -B, C, -D, f) > 0
        and _sign(A, B, -C, -D, f) > 0
        and _sign(A, -B, -C, D, f) > 0
    )


cdef Field _make_field(p, q, g):
    cdef Field f
    f.p = p
    f.q = q
    f.g = g
    f.r = p * q // (g * g)
    # largest M with 8 M^4 (1+p)^2 (1+q)^2 < 2^63
    cap = (1 << 63) // (8 * (1 + p) ** 2 * (1 + q) ** 2)
    lo, hi = 0, 1
    while hi ** 4 <= cap:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** 4 <= cap:
            lo = mid
        else:
            hi = mid
    f.limit = lo
    return f


cdef void _prefix(mask, int* m3, int* m2, int* m1):
    cdef int i, a, b, c
    for i in range(64):
        m3[i] = mask[i]
    for a in range(4):
        m1[a] = 0
        for b in range(4):
            m2[a * 4 + b] = 0
            for c in range(4):
                if m3[a * 16 + b * 4 + c]:
                    m2[a * 4 + b] = 1
            if m2[a * 4 + b]:
                m1[a] = 1


def sign(A, B, C, D, p, q, g):
    cdef Field f = _make_field(p, q, g)
    return _sign(A, B, C, D, &f)


def is_tp(A, B, C, D, p, q, g):
    cdef Field f = _make_field(p, q, g)
    return bool(_is_tp(A, B, C, D, &f))


def mul(x, y, p, q, g):
    return _py.mul(x, y, p, q, g)


def decompose_witness(alpha, p, q, g, mask, a_lo=1, a_hi=None):
    cdef Field f = _make_field(p, q, g)
    cdef int m3[64]
    cdef int m2[16]
    cdef int m1[4]
    _prefix(mask, m3, m2, m1)
    cdef long long Aa = alpha[0], Ba = alpha[1], Ca = alpha[2], Da = alpha[3]
    cdef long long hi = Aa - 1 if a_hi is None else min(a_hi, Aa - 1)
    cdef long long A, B, C, D, A2, bb1, bb2, cc1, cc2, dd1, dd2
    cdef int ra, rb, dm
    A = max(a_lo, 1)
    while A <= hi:
        ra = A & 3
        if not m1[ra]:
            A += 1
            continue
        A2 = Aa - A
        bb1 = _isqrt((A * A - 1) // f.p)
        bb2 = _isqrt((A2 * A2 - 1) // f.p)
        cc1 = _isqrt((A * A - 1) // f.q)
        cc2 = _isqrt((A2 * A2 - 1) // f.q)
        dd1 = _isqrt((A * A - 1) // f.r)
        dd2 = _isqrt((A2 * A2 - 1) // f.r)
        B = max(-bb1, Ba - bb2)
        while B <= min(bb1, Ba + bb2):
            rb = ra * 4 + (B & 3)
            if m2[rb]:
                C = max(-cc1, Ca - cc2)
                while C <= min(cc1, Ca + cc2):
                    dm = m3[rb * 4 + (C & 3)]
                    if dm:
                        D = max(-dd1, Da - dd2)
                        while D <= min(dd1, Da + dd2):
                            if (dm >> (D & 3)) & 1:
                                if _is_tp(A, B, C, D, &f) and _is_tp(A2, Ba - B, Ca - C, Da - D, &f):
                                    return (A, B, C, D)
                            D += 1
                    C += 1
            B += 1
        A += 1
    return None


def ellipsoid_points(bound, p, q, g, mask, exact=False):
    cdef Field f = _make_field(p, q, g)
    cdef int m3[64]
    cdef int m2[16]
    cdef int m1[4]
    _prefix(mask, m3, m2, m1)
    out = []
    if bound < 0:
        return out
    cdef long long bnd = bound
    cdef bint ex = exact
    cdef long long amax = _isqrt(bnd)
    cdef long long A, B, C, D, rem1, rem2, rem3, bmax, cmax, dmax, d
    cdef int ra, rb, dm
    for A in range(-amax, amax + 1):
        ra = A & 3
        if not m1[ra]:
            continue
        rem1 = bnd - A * A
        bmax = _isqrt(rem1 // f.p)
        for B in range(-bmax, bmax + 1):
            rb = ra * 4 + (B & 3)
            if not m2[rb]:
                continue
            rem2 = rem1 - f.p * B * B
            cmax = _isqrt(rem2 // f.q)
            for C in range(-cmax, cmax + 1):
                dm = m3[rb * 4 + (C & 3)]
                if not dm:
                    continue
                rem3 = rem2 - f.q * C * C
                if ex:
                    if rem3 % f.r:
                        continue
                    d = _isqrt(rem3 // f.r)
                    if d * d * f.r != rem3:
                        continue
                    if d == 0:
                        if dm & 1:
                            out.append((A, B, C, 0))
                    else:
                        if (dm >> ((-d) & 3)) & 1:
                            out.append((A, B, C, -d))
                        if (dm >> (d & 3)) & 1:
                            out.append((A, B, C, d))
                    continue
                dmax = _isqrt(rem3 // f.r)
                for D in range(-dmax, dmax + 1):
                    if (dm >> (D & 3)) & 1:
                        out.append((A, B, C, D))
    return out


def offdiag_points(t16, p, q, g, mask, strict):
    cdef Field f = _make_field(p, q, g)
    cdef long long t0 = t16[0], t1 = t16[1], t2 = t16[2], t3 = t16[3]
    cdef long long A, B, C, D, s0, s1, s2, s3
    cdef long long qg = f.q // f.g, pg = f.p // f.g
    cdef bint st = strict
    out = []
    for x in ellipsoid_points(t0, p, q, g, mask):
        A, B, C, D = x
        s0 = A * A + f.p * B * B + f.q * C * C + f.r * D * D
        s1 = 2 * (A * B + qg * C * D)
        s2 = 2 * (A * C + pg * B * D)
        s3 = 2 * (A * D + f.g * B * C)
        if t0 == s0 and t1 == s1 and t2 == s2 and t3 == s3:
            if not st:
                out.append(x)
        elif _is_tp(t0 - s0, t1 - s1, t2 - s2, t3 - s3, &f):
            out.append(x)
    return out


def tp_points(tmax, p, q, g, mask):
    cdef Field f = _make_field(p, q, g)
    cdef int m3[64]
    cdef int m2[16]
    cdef int m1[4]
    _prefix(mask, m3, m2, m1)
    out = []
    cdef long long tm = tmax
    cdef long long A, B, C, D, bb, cc, dd
    cdef int ra, rb, dm
    for A in range(1, tm + 1):
        ra = A & 3
        if not m1[ra]:
            continue
        bb = _isqrt((A * A - 1) // f.p)
        cc = _isqrt((A * A - 1) // f.q)
        dd = _isqrt((A * A - 1) // f.r)
        for B in range(-bb, bb + 1):
            rb = ra * 4 + (B & 3)
            if not m2[rb]:
                continue
            for C in range(-cc, cc + 1):
                dm = m3[rb * 4 + (C & 3)]
                if not dm:
                    continue
                for D in range(-dd, dd + 1):
                    if (dm >> (D & 3)) & 1 and _is_tp(A, B, C, D, &f):
                        out.append((A, B, C, D))
    return out

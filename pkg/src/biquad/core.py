"""Exact arithmetic in real biquadratic fields K = Q(sqrt p, sqrt q).

Elements are stored by their rational coordinates (a, b, c, d) over the
basis (1, sqrt p, sqrt q, sqrt r) with r = pq / gcd(p, q)^2.  Nothing in
this module touches floating point; every sign decision is certified.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, reduce
from itertools import permutations
from math import gcd, isqrt
from typing import Union

Rational = Fraction
Number = Union[int, Fraction]


class Case(enum.Enum):
    C1 = "1"
    C2 = "2"
    C3 = "3"
    C4A = "4a"
    C4B = "4b"


_CASE_RANK = {Case.C1: 0, Case.C2: 1, Case.C3: 2, Case.C4A: 3, Case.C4B: 4}

_H = Fraction(1, 2)
_Q = Fraction(1, 4)
_BASES = {
    Case.C1: ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, _H, 0, _H)),
    Case.C2: ((1, 0, 0, 0), (0, 1, 0, 0), (_H, 0, _H, 0), (0, _H, 0, _H)),
    Case.C3: ((1, 0, 0, 0), (0, 1, 0, 0), (_H, 0, _H, 0), (0, _H, 0, _H)),
    Case.C4A: ((1, 0, 0, 0), (_H, _H, 0, 0), (_H, 0, _H, 0), (_Q, _Q, _Q, _Q)),
    Case.C4B: ((1, 0, 0, 0), (_H, _H, 0, 0), (_H, 0, _H, 0), (_Q, -_Q, _Q, _Q)),
}

# coordinate sign patterns of sigma_1 .. sigma_4
EMBEDDING_SIGNS = {
    1: (1, 1, 1, 1),
    2: (1, -1, 1, -1),
    3: (1, 1, -1, -1),
    4: (1, -1, -1, 1),
}


def is_squarefree(n: int) -> bool:
    if n < 1:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


def classify(p: int, q: int) -> Case | None:
    """Case label of the ordered pair (p, q), or None if it matches no case."""
    pm, qm = p % 4, q % 4
    if pm == 2 and qm == 3:
        return Case.C1
    if pm == 2 and qm == 1:
        return Case.C2
    if pm == 3 and qm == 1:
        return Case.C3
    if pm == 1 and qm == 1:
        g = gcd(p, q)
        pg, qg = (p // g) % 4, (q // g) % 4
        if pg == qg == 1:
            return Case.C4A
        if pg == qg == 3:
            return Case.C4B
    return None


def _solve_rational(m: list[list[Fraction]]) -> list[list[Fraction]]:
    """Inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(m)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(i for i in range(col, n) if aug[i][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [v - f * w for v, w in zip(aug[i], aug[col])]
    return [row[n:] for row in aug]


@dataclass(frozen=True, eq=False)
class BiquadField:
    """Canonical description of Q(sqrt p, sqrt q).

    ``permutation`` names, for each canonical radicand (p, q, r), which of
    the caller's labels it came from; ``input_pair`` is what was passed in.
    """

    p: int
    q: int
    r: int
    g: int
    case: Case
    basis: tuple
    permutation: tuple[str, str, str]
    input_pair: tuple[int, int]

    def __eq__(self, other):
        return isinstance(other, BiquadField) and (self.p, self.q) == (other.p, other.q)

    def __hash__(self):
        return hash((self.p, self.q))

    def __repr__(self):
        return f"BiquadField(p={self.p}, q={self.q}, r={self.r}, case={self.case.value})"

    def __reduce__(self):
        return (make_field, self.input_pair)

    @property
    def radicands(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def __call__(self, a: Number = 0, b: Number = 0, c: Number = 0, d: Number = 0) -> "BiquadElement":
        return BiquadElement(self, a, b, c, d)

    @property
    def zero(self) -> "BiquadElement":
        return BiquadElement(self)

    @property
    def one(self) -> "BiquadElement":
        return BiquadElement(self, 1)

    def basis_elements(self) -> tuple["BiquadElement", ...]:
        return tuple(BiquadElement(self, *coords) for coords in self.basis)

    @cached_property
    def _basis_inverse(self) -> list[list[Fraction]]:
        return _solve_rational([[Fraction(v) for v in row] for row in self.basis])

    @cached_property
    def residue_mask(self) -> tuple[int, ...]:
        """Residues mod 4 of 4*O_K, as a 64-entry table of allowed d-residue bitmasks.

        Entry ``(a % 4) * 16 + (b % 4) * 4 + (c % 4)`` has bit ``d % 4`` set
        iff (a, b, c, d) is congruent mod 4 to four times an integer of K.
        """
        gens = [tuple(int(4 * v) % 4 for v in row) for row in self.basis]
        group = {(0, 0, 0, 0)}
        frontier = list(group)
        while frontier:
            nxt = []
            for x in frontier:
                for gvec in gens:
                    y = tuple((u + v) % 4 for u, v in zip(x, gvec))
                    if y not in group:
                        group.add(y)
                        nxt.append(y)
            frontier = nxt
        mask = [0] * 64
        for a, b, c, d in group:
            mask[a * 16 + b * 4 + c] |= 1 << d
        return tuple(mask)

    @property
    def denominator(self) -> int:
        """Largest denominator of a coordinate of an integer of K."""
        return 4 if self.case in (Case.C4A, Case.C4B) else 2


def make_field(p: int, q: int) -> BiquadField:
    """Canonical field descriptor for Q(sqrt p, sqrt q).

    Among all orderings of {p, q, r} the one with the smallest case label is
    chosen, ties broken by the smallest (p, q).
    """
    for n in (p, q):
        if not isinstance(n, int) or n <= 1 or not is_squarefree(n):
            raise ValueError(f"{n} is not a squarefree integer > 1")
    if p == q:
        raise ValueError("p and q must be distinct")
    g0 = gcd(p, q)
    r0 = p * q // (g0 * g0)
    labelled = {"p": p, "q": q, "r": r0}
    best = None
    for (lx, x), (ly, y), (lz, z) in permutations(labelled.items(), 3):
        case = classify(x, y)
        if case is None:
            continue
        key = (_CASE_RANK[case], x, y)
        if best is None or key < best[0]:
            best = (key, case, (x, y, z), (lx, ly, lz))
    if best is None:  # pragma: no cover - every biquadratic triple matches a case
        raise ValueError(f"no case matches ({p}, {q})")
    _, case, (cp, cq, cr), perm = best
    g = gcd(cp, cq)
    assert cr * g * g == cp * cq
    return BiquadField(cp, cq, cr, g, case, _BASES[case], perm, (p, q))


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class BiquadElement:
    """a + b sqrt(p) + c sqrt(q) + d sqrt(r) with rational coordinates."""

    __slots__ = ("field", "a", "b", "c", "d")

    def __init__(self, field: BiquadField, a: Number = 0, b: Number = 0, c: Number = 0, d: Number = 0):
        self.field = field
        self.a = _frac(a)
        self.b = _frac(b)
        self.c = _frac(c)
        self.d = _frac(d)

    def __reduce__(self):
        return (BiquadElement, (self.field, self.a, self.b, self.c, self.d))

    @property
    def coords(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return (self.a, self.b, self.c, self.d)

    def _coerce(self, other) -> "BiquadElement":
        if isinstance(other, BiquadElement):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, (int, Fraction)):
            return BiquadElement(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return BiquadElement(self.field, self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return BiquadElement(self.field, -self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return BiquadElement(self.field, self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.field
        p, q, r, g = K.p, K.q, K.r, K.g
        qg, pg = q // g, p // g
        a1, b1, c1, d1 = self.coords
        a2, b2, c2, d2 = o.coords
        return BiquadElement(
            K,
            a1 * a2 + p * b1 * b2 + q * c1 * c2 + r * d1 * d2,
            a1 * b2 + b1 * a2 + qg * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + pg * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + g * (b1 * c2 + c1 * b2),
        )

    __rmul__ = __mul__

    def inverse(self) -> "BiquadElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        rest = self.embed(2) * self.embed(3) * self.embed(4)
        n = (self * rest).a
        return BiquadElement(self.field, *(v / n for v in rest.coords))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == self.c == self.d == 0 and self.a == other
        if isinstance(other, BiquadElement):
            return self.field == other.field and self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.q, self.coords))

    def __bool__(self):
        return any(self.coords)

    def __lt__(self, other):
        # canonical lexicographic order on (a, b, c, d); not the field order
        return self.coords < other.coords

    def __repr__(self):
        return f"BiquadElement({self})"

    def __str__(self):
        terms = []
        for coef, rad in zip(self.coords, (None,) + self.field.radicands):
            if coef == 0:
                continue
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            if rad is None:
                body = str(mag)
            elif mag == 1:
                body = f"√{rad}"
            else:
                body = f"{mag}√{rad}"
            terms.append((sign, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def embed(self, k: int) -> "BiquadElement":
        s = EMBEDDING_SIGNS[k]
        return BiquadElement(self.field, self.a, s[1] * self.b, s[2] * self.c, s[3] * self.d)

    def conjugates(self) -> tuple["BiquadElement", ...]:
        return tuple(self.embed(k) for k in (1, 2, 3, 4))

    def trace(self) -> Fraction:
        return 4 * self.a

    def norm(self) -> Fraction:
        x = (self * self.embed(2)) * (self.embed(3) * self.embed(4))
        assert x.b == x.c == x.d == 0
        return x.a

    def basis_coordinates(self) -> tuple[Fraction, ...]:
        """Coordinates with respect to the integral basis of the field."""
        inv = self.field._basis_inverse
        v = self.coords
        return tuple(sum(v[i] * inv[i][j] for i in range(4)) for j in range(4))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.basis_coordinates())

    def scaled(self, n: int) -> tuple[int, int, int, int]:
        """Integer coordinates of n * self; raises if they are not integers."""
        out = []
        for v in self.coords:
            w = v * n
            if w.denominator != 1:
                raise ValueError(f"{self} has coordinates not in (1/{n})Z")
            out.append(w.numerator)
        return tuple(out)

    def in_subfield(self) -> int | None:
        """Radicand k if self lies in Q(sqrt k) for k in (p, q, r); 1 if rational."""
        a, b, c, d = self.coords
        if b == c == d == 0:
            return 1
        if c == d == 0:
            return self.field.p
        if b == d == 0:
            return self.field.q
        if b == c == 0:
            return self.field.r
        return None


def element(field: BiquadField, a: Number = 0, b: Number = 0, c: Number = 0, d: Number = 0) -> BiquadElement:
    return BiquadElement(field, a, b, c, d)


def from_scaled(field: BiquadField, coords, n: int) -> BiquadElement:
    return BiquadElement(field, *(Fraction(v, n) for v in coords))


# --- signs ------------------------------------------------------------------


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


@dataclass(frozen=True)
class SignCertificate:
    value_sign: Sign
    interval_precision_bits: int


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def exact_sign(x: BiquadElement, embedding: int = 1, start_bits: int = 64) -> SignCertificate:
    """Certified sign of sigma_k(x) by adaptive rational interval arithmetic.

    sqrt(n) is enclosed in (s / 2^k, (s + 1) / 2^k) with s = isqrt(n 4^k);
    the precision doubles until the enclosure of the value excludes zero.
    """
    y = x.embed(embedding) if embedding != 1 else x
    if not y:
        return SignCertificate(Sign.ZERO, 0)
    den = reduce(_lcm, (v.denominator for v in y.coords))
    A, B, C, D = (int(v * den) for v in y.coords)
    K = y.field
    bits = start_bits
    while True:
        lo = hi = A << bits
        for coef, n in ((B, K.p), (C, K.q), (D, K.r)):
            if coef == 0:
                continue
            s = isqrt(n << (2 * bits))
            if coef > 0:
                lo += coef * s
                hi += coef * (s + 1)
            else:
                lo += coef * (s + 1)
                hi += coef * s
        if lo > 0:
            return SignCertificate(Sign.POSITIVE, bits)
        if hi < 0:
            return SignCertificate(Sign.NEGATIVE, bits)
        bits *= 2


def is_totally_positive(x: BiquadElement) -> bool:
    return all(exact_sign(x, k).value_sign is Sign.POSITIVE for k in (1, 2, 3, 4))


def is_totally_nonnegative(x: BiquadElement) -> bool:
    """x is totally positive or zero (the relation x >= 0 in the field order)."""
    return not x or is_totally_positive(x)


class Order(enum.Enum):
    LESS = "<"
    EQUAL = "="
    GREATER = ">"
    INCOMPARABLE = "incomparable"


def cmp_total(x: BiquadElement, y: BiquadElement) -> Order:
    diff = x - y
    if not diff:
        return Order.EQUAL
    if is_totally_positive(diff):
        return Order.GREATER
    if is_totally_positive(-diff):
        return Order.LESS
    return Order.INCOMPARABLE


# module-level aliases for the arithmetic surface
def embed(x: BiquadElement, k: int) -> BiquadElement:
    return x.embed(k)


def trace(x: BiquadElement) -> Fraction:
    return x.trace()


def norm(x: BiquadElement) -> Fraction:
    return x.norm()


def is_integral(x: BiquadElement) -> bool:
    return x.is_integral()

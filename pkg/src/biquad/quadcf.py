"""Real quadratic fields Q(sqrt k): continued fractions of -conj(omega_k),
convergents, semiconvergents, indecomposables and fundamental units.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from . import _kernels_py
from .core import BiquadElement, BiquadField, Number, is_squarefree


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k <= 1 or not is_squarefree(k):
        raise ValueError(f"{k} is not a squarefree integer > 1")


class QuadElement:
    """x + y * omega_k, where omega_k = sqrt k or (1 + sqrt k) / 2."""

    __slots__ = ("x", "y", "k")

    def __init__(self, x: Number, y: Number, k: int):
        self.x = Fraction(x)
        self.y = Fraction(y)
        self.k = k

    @property
    def half(self) -> bool:
        """True when omega_k = (1 + sqrt k) / 2."""
        return self.k % 4 == 1

    def coeffs(self) -> tuple[Fraction, Fraction]:
        """(a, b) with self = a + b sqrt k."""
        if self.half:
            return (self.x + self.y / 2, self.y / 2)
        return (self.x, self.y)

    @classmethod
    def from_coeffs(cls, a: Number, b: Number, k: int) -> "QuadElement":
        a, b = Fraction(a), Fraction(b)
        if k % 4 == 1:
            return cls(a - b, 2 * b, k)
        return cls(a, b, k)

    def __eq__(self, other):
        if not isinstance(other, QuadElement):
            return NotImplemented
        return (self.x, self.y, self.k) == (other.x, other.y, other.k)

    def __hash__(self):
        return hash((self.x, self.y, self.k))

    def __add__(self, other: "QuadElement") -> "QuadElement":
        return QuadElement(self.x + other.x, self.y + other.y, self.k)

    def __sub__(self, other: "QuadElement") -> "QuadElement":
        return QuadElement(self.x - other.x, self.y - other.y, self.k)

    def __mul__(self, other: "QuadElement") -> "QuadElement":
        a1, b1 = self.coeffs()
        a2, b2 = other.coeffs()
        return QuadElement.from_coeffs(a1 * a2 + self.k * b1 * b2, a1 * b2 + b1 * a2, self.k)

    def scale(self, n: Number) -> "QuadElement":
        return QuadElement(self.x * n, self.y * n, self.k)

    def __repr__(self):
        return f"QuadElement({self})"

    def __str__(self):
        a, b = self.coeffs()
        if b == 0:
            return str(a)
        tail = f"√{self.k}" if abs(b) == 1 else f"{abs(b)}√{self.k}"
        if a == 0:
            return ("-" if b < 0 else "") + tail
        return f"{a} {'-' if b < 0 else '+'} {tail}"

    def conj(self) -> "QuadElement":
        a, b = self.coeffs()
        return QuadElement.from_coeffs(a, -b, self.k)

    def trace(self) -> Fraction:
        return 2 * self.coeffs()[0]

    def norm(self) -> Fraction:
        a, b = self.coeffs()
        return a * a - self.k * b * b

    def is_integral(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def _sign(self, conj: bool = False) -> int:
        a, b = self.coeffs()
        den = a.denominator * b.denominator
        A, B = int(a * den), int(b * den)
        return _kernels_py.sign2(A, -B if conj else B, self.k)

    def is_totally_positive(self) -> bool:
        return self._sign() > 0 and self._sign(conj=True) > 0

    def to_biquad(self, K: BiquadField) -> BiquadElement:
        a, b = self.coeffs()
        if self.k == K.p:
            return K(a, b, 0, 0)
        if self.k == K.q:
            return K(a, 0, b, 0)
        if self.k == K.r:
            return K(a, 0, 0, b)
        raise ValueError(f"Q(√{self.k}) is not a subfield of {K!r}")

    @classmethod
    def from_biquad(cls, x: BiquadElement) -> "QuadElement":
        k = x.in_subfield()
        K = x.field
        if k is None:
            raise ValueError(f"{x} does not lie in a quadratic subfield")
        if k == 1:
            k = K.p
        b = {K.p: x.b, K.q: x.c, K.r: x.d}[k]
        return cls.from_coeffs(x.a, b, k)


def omega(k: int) -> QuadElement:
    _check_k(k)
    return QuadElement(0, 1, k)


@dataclass(frozen=True)
class CFExpansion:
    """[u0; preperiod, overline(period)] for -conj(omega_k).

    ``convergents`` holds (x_i, y_i) for i = 0 .. 2s, where s = len(period).
    """

    k: int
    u0: int
    period: tuple[int, ...]
    preperiod: tuple[int, ...] = ()
    convergents: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def partial_quotient(self, i: int) -> int:
        if i == 0:
            return self.u0
        j = i - 1
        if j < len(self.preperiod):
            return self.preperiod[j]
        j -= len(self.preperiod)
        return self.period[j % len(self.period)]

    def convergent(self, i: int) -> tuple[int, int]:
        """(x_i, y_i), with the conventions (x_-1, y_-1) = (1, 0), (x_-2, y_-2) = (0, 1)."""
        x0, y0, x1, y1 = 0, 1, 1, 0
        for j in range(i + 1):
            u = self.partial_quotient(j)
            x0, y0, x1, y1 = x1, y1, u * x1 + x0, u * y1 + y0
        return (x1, y1) if i >= -1 else (0, 1)


def cf_expand(k: int) -> CFExpansion:
    """Periodic continued fraction of -conj(omega_k) via exact surd states (P, Q).

    The number (P + sqrt k) / Q is expanded with Q | k - P^2; the period is
    detected when a state repeats.
    """
    _check_k(k)
    s = isqrt(k)
    P, Q = (-1, 2) if k % 4 == 1 else (0, 1)
    quotients = []
    seen: dict[tuple[int, int], int] = {}
    while (P, Q) not in seen:
        seen[(P, Q)] = len(quotients)
        u = (P + s) // Q
        quotients.append(u)
        P = u * Q - P
        Q = (k - P * P) // Q
    start = seen[(P, Q)]
    # index 0 is u0; the repeating block begins at `start`
    u0 = quotients[0]
    if start == 0:  # pragma: no cover - -conj(omega) is never reduced itself
        raise AssertionError("unexpected purely periodic expansion")
    pre = tuple(quotients[1:start])
    period = tuple(quotients[start:])
    exp = CFExpansion(k, u0, period, pre)
    convs = tuple(exp.convergent(i) for i in range(2 * len(period) + 1))
    return CFExpansion(k, u0, period, pre, convs)


def _cf_cached():
    cache: dict[int, CFExpansion] = {}

    def get(k: int) -> CFExpansion:
        if k not in cache:
            cache[k] = cf_expand(k)
        return cache[k]

    return get


_cf = _cf_cached()


def convergent_element(k: int, i: int) -> QuadElement:
    x, y = _cf(k).convergent(i)
    return QuadElement(x, y, k)


def convergents(k: int, count: int | None = None) -> list[QuadElement]:
    """alpha_i = x_i + y_i omega_k for i = -1 .. count - 2 (two periods by default)."""
    exp = _cf(k)
    if count is None:
        count = 2 * len(exp.period) + 2
    return [convergent_element(k, i) for i in range(-1, count - 1)]


@dataclass(frozen=True)
class Semiconvergent:
    element: QuadElement
    i: int
    l: int


def semiconvergents(k: int, bound: Number, odd_only: bool = False) -> list[Semiconvergent]:
    """alpha_{i,l} = alpha_i + l alpha_{i+1}, 0 <= l <= u_{i+2}, with trace <= bound.

    Starts at i = -1.  Duplicates (alpha_{i,u_{i+2}} = alpha_{i+2,0}) are
    emitted once, under the larger index.
    """
    exp = _cf(k)
    out = []
    i = -1
    above = 0
    while above < 2:
        ai = convergent_element(k, i)
        an = convergent_element(k, i + 1)
        above = above + 1 if ai.trace() > bound else 0
        if not odd_only or i % 2 != 0:
            for l in range(exp.partial_quotient(i + 2)):
                el = ai + an.scale(l)
                if el.trace() <= bound:
                    out.append(Semiconvergent(el, i, l))
        i += 1
    return out


def _canon_key(x: QuadElement):
    return (x.trace(), x.coeffs()[1])


def quad_indecomposables(k: int, trace_bound: Number) -> list[QuadElement]:
    """Indecomposables of Q(sqrt k) with trace <= trace_bound, conjugates included.

    These are the semiconvergents alpha_{i,l} with i odd and their conjugates.
    """
    found = set()
    for sc in semiconvergents(k, trace_bound, odd_only=True):
        if sc.element.is_totally_positive():
            found.add(sc.element)
            found.add(sc.element.conj())
    return sorted(found, key=_canon_key)


def fundamental_unit(k: int) -> QuadElement:
    """Fundamental unit (> 1) read off the end of the first period: alpha_{s-1}."""
    exp = _cf(k)
    s = len(exp.preperiod) + len(exp.period)
    u = convergent_element(k, s - 1)
    assert abs(u.norm()) == 1
    return u


def totally_positive_fundamental_unit(k: int) -> QuadElement:
    u = fundamental_unit(k)
    return u if u.norm() == 1 else u * u


def indecomposables_mod_units(k: int) -> list[QuadElement]:
    """One block of indecomposables, 1 through the totally positive unit, inclusive.

    Every indecomposable of Q(sqrt k) is a totally positive unit times an
    element of this block or of its conjugate.
    """
    eps = totally_positive_fundamental_unit(k)
    exp = _cf(k)
    out = []
    i = -1
    while True:
        ai = convergent_element(k, i)
        an = convergent_element(k, i + 1)
        for l in range(exp.partial_quotient(i + 2) + 1):
            el = ai + an.scale(l)
            if el not in out:
                out.append(el)
            if el == eps:
                return out
        i += 2


def m_value(k: int) -> int:
    """max u_i over odd i, scanning two full periods of the expansion."""
    exp = _cf(k)
    n = len(exp.preperiod) + 2 * len(exp.period)
    return max(exp.partial_quotient(i) for i in range(1, n + 1, 2))


def is_convergent(alpha: QuadElement) -> bool:
    """True if alpha is some alpha_i (i >= -1)."""
    i = -1
    while True:
        c = convergent_element(alpha.k, i)
        if c == alpha:
            return True
        if i >= 1 and c.trace() > alpha.trace():
            return False
        i += 1

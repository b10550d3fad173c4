from decimal import Decimal, getcontext
from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, strategies as st

from biquad.core import is_squarefree, make_field
from biquad.quadcf import (
    QuadElement,
    cf_expand,
    convergents,
    fundamental_unit,
    indecomposables_mod_units,
    is_convergent,
    m_value,
    omega,
    quad_indecomposables,
    semiconvergents,
    totally_positive_fundamental_unit,
)

from .oracles import as_pair, quad_indecomposables_brute, smallest_unit

SQUAREFREE = [k for k in range(2, 80) if is_squarefree(k)]


def q(a, b, k):
    return QuadElement.from_coeffs(a, b, k)


def test_omega():
    assert omega(2) == q(0, 1, 2)
    assert omega(5).coeffs() == (Fraction(1, 2), Fraction(1, 2))
    assert omega(6) == q(0, 1, 6)


@pytest.mark.parametrize(
    "k,u0,period",
    [(2, 1, (2,)), (3, 1, (1, 2)), (6, 2, (2, 4)), (19, 4, (2, 1, 3, 1, 2, 8)), (5, 0, (1,)), (13, 1, (3,))],
)
def test_cf_examples(k, u0, period):
    exp = cf_expand(k)
    assert (exp.u0, exp.period) == (u0, period)


def _target(k):
    """-conj(omega_k) as (numerator offset, scale): (c + √k)/s."""
    return (-1, 2) if k % 4 == 1 else (0, 1)


@pytest.mark.parametrize("k", SQUAREFREE)
def test_cf_roundtrip_exact(k):
    """The periodic expansion evaluates exactly to -conj(omega_k).

    The tail y = [period] satisfies y = M(y) for the Moebius map M of the
    period; x = N(y) for the map N of u0 and the preperiod.  Substituting x
    into the minimal polynomial must give a multiple of y's equation.
    """
    exp = cf_expand(k)

    def mat(quots):
        P, Q_, R, S = 1, 0, 0, 1
        for u in quots:
            P, Q_, R, S = P * u + Q_, P, R * u + S, R
        return P, Q_, R, S

    A, B, C, D = mat(exp.period)
    tail = (C, D - A, -B)  # C y^2 + (D - A) y - B = 0
    P, Q_, R, S = mat((exp.u0,) + exp.preperiod)
    # x = (P y + Q)/(R y + S); minimal polynomial of -conj(omega)
    if k % 4 == 1:
        # x^2 + x - (k - 1)/4 = 0, times 4
        f = lambda u, v: 4 * u * u + 4 * u * v - (k - 1) * v * v  # noqa: E731
    else:
        f = lambda u, v: u * u - k * v * v  # noqa: E731
    # expand f(P y + Q, R y + S) as a polynomial in y
    c2 = f(P, R)
    c0 = f(Q_, S)
    c1 = f(P + Q_, R + S) - c2 - c0
    got = (c2, c1, c0)
    assert got[0] * tail[1] == got[1] * tail[0]
    assert got[0] * tail[2] == got[2] * tail[0]
    assert got[1] * tail[2] == got[2] * tail[1]
    # and the numeric value picks the right root
    getcontext().prec = 50
    y = Decimal(1)
    for _ in range(200):
        y = (A * y + B) / (C * y + D)
    x = (P * y + Q_) / (R * y + S)
    c, s = _target(k)
    assert abs(x - (c + Decimal(k).sqrt()) / s) < Decimal("1e-30")


def test_convergent_examples():
    assert q(1, 1, 2) in convergents(2)
    assert q(5, 2, 6) in convergents(6)
    for sc in semiconvergents(6, 60):
        if sc.l == 0:
            assert sc.element == convergents(6, sc.i + 2)[sc.i + 1]


@pytest.mark.parametrize("k", [2, 3, 5, 6, 7, 13, 19, 21, 46])
def test_best_approximation(k):
    getcontext().prec = 50
    w = omega(k).conj().scale(-1)
    a, b = w.coeffs()
    wv = Decimal(a.numerator) / a.denominator + Decimal(b.numerator) / b.denominator * Decimal(k).sqrt()
    # |x + y conj(omega)| = |x - y w|
    for el in convergents(k, 10)[2:]:
        x, y = int(el.x), int(el.y)
        best = abs(x - y * wv)
        for v in range(1, int(y) + 1):
            base = int(v * wv)
            for u in range(base - 2, base + 3):
                if Fraction(u, v) == Fraction(x, y):
                    continue
                assert best < abs(u - v * wv)


@pytest.mark.parametrize("k", SQUAREFREE)
def test_fundamental_unit_minimal(k):
    u = fundamental_unit(k)
    assert abs(u.norm()) == 1
    assert as_pair(u) == smallest_unit(k)


@pytest.mark.parametrize(
    "k,unit", [(2, (1, 1)), (3, (2, 1)), (6, (5, 2)), (5, (Fraction(1, 2), Fraction(1, 2)))]
)
def test_fundamental_unit_examples(k, unit):
    assert fundamental_unit(k).coeffs() == unit


def test_totally_positive_unit():
    assert totally_positive_fundamental_unit(2) == q(3, 2, 2)
    assert totally_positive_fundamental_unit(3) == q(2, 1, 3)


@pytest.mark.parametrize("k", [2, 3, 5, 6, 7, 19, 10, 13, 29, 46, 58, 61, 94])
def test_indecomposables_match_brute_force(k):
    got = {as_pair(x) for x in quad_indecomposables(k, 40)}
    assert got == quad_indecomposables_brute(k, 40)


def test_indecomposables_up_to_units():
    pretty = lambda k: [x.coeffs() for x in indecomposables_mod_units(k)]  # noqa: E731
    assert pretty(2) == [(1, 0), (2, 1), (3, 2)]
    assert pretty(3) == [(1, 0), (2, 1)]
    assert pretty(6) == [(1, 0), (3, 1), (5, 2)]


@pytest.mark.parametrize("k", [2, 3, 6, 7, 19, 22, 31])
def test_block_covers_indecomposables(k):
    """Every indecomposable is eps^n times a block element or its conjugate."""
    eps = totally_positive_fundamental_unit(k)
    block = indecomposables_mod_units(k)
    orbit = set()
    for y in block + [x.conj() for x in block]:
        for u in (eps, eps.conj()):
            z = y
            for _ in range(6):
                orbit.add(z)
                z = z * u
    found = quad_indecomposables(k, 300)
    assert found
    assert set(found) <= orbit


@pytest.mark.parametrize("k,m", [(2, 2), (3, 1), (6, 2), (19, 3), (7, 1), (5, 1)])
def test_m_value(k, m):
    assert m_value(k) == m


def test_m_value_odd_indices():
    for k in SQUAREFREE:
        exp = cf_expand(k)
        odd = [exp.partial_quotient(i) for i in range(1, 2 * len(exp.period) + len(exp.preperiod) + 1, 2)]
        assert m_value(k) == max(odd)


@given(st.sampled_from([2, 3, 6, 7, 19]), st.integers(-1, 12))
def test_is_convergent(k, i):
    c = convergents(k, i + 2)[-1]
    assert is_convergent(c)


def test_not_convergent():
    assert not is_convergent(q(2, 1, 2))
    assert is_convergent(q(1, 0, 2))


def test_to_biquad_roundtrip():
    K = make_field(2, 3)
    for k in K.radicands:
        for x in quad_indecomposables(k, 20):
            y = x.to_biquad(K)
            assert y.in_subfield() in (k, 1)
            assert QuadElement.from_biquad(y).coeffs() == x.coeffs()
            assert y.trace() == 2 * x.trace()

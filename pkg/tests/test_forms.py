from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from biquad.core import is_totally_nonnegative, is_totally_positive, make_field
from biquad.forms import (
    NotPositiveDefiniteError,
    QuadraticForm,
    SearchBudgetExceeded,
    _det,
    gamma_count_table,
    is_totally_positive_definite,
    offdiag_candidates,
    representation_bound,
    representation_search,
    representations,
    represents_diag,
    span_solutions,
)
from biquad.indecomp import totally_positive_up_to_trace

from .oracles import float_eigs_ok

H = Fraction(1, 2)
SMALL_FIELDS = [make_field(2, 3), make_field(2, 5), make_field(5, 13), make_field(3, 7)]


def diag(*xs):
    return QuadraticForm.diagonal_form(xs)


def full(rows):
    return QuadraticForm(tuple(tuple(r) for r in rows))


@st.composite
def tpd_forms(draw, max_n=3, max_trace=16):
    """Random classical totally positive definite forms, grown one variable at a time."""
    K = draw(st.sampled_from(SMALL_FIELDS))
    tps = totally_positive_up_to_trace(K, max_trace)
    n = draw(st.integers(1, max_n))
    Q = diag(draw(st.sampled_from(tps)))
    while Q.n < n:
        e = draw(st.sampled_from(tps))
        col = [draw(st.sampled_from(offdiag_candidates(a, e))) for a in Q.diagonal()]
        child = Q.extend(e, col)
        if is_totally_positive_definite(child):
            Q = child
        else:
            Q = Q.extend(e, [K.zero] * Q.n)
    return Q


@st.composite
def integral_forms(draw, K=None):
    """Random symmetric integral matrices of size 2 or 3, definite or not."""
    K = K or draw(st.sampled_from(SMALL_FIELDS))
    n = draw(st.integers(2, 3))
    B = K.basis_elements()

    def el(lo, hi):
        return sum((b * draw(st.integers(lo, hi)) for b in B), K.zero)

    rows = [[None] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = K(draw(st.integers(1, 12))) + el(-2, 2)
        for j in range(i):
            rows[i][j] = rows[j][i] = el(-2, 2)
    return full(rows)


def test_definiteness_examples(K23, named23):
    mu = named23["mu"]
    assert is_totally_positive_definite(diag(K23.one, mu))
    assert not is_totally_positive_definite(full([[K23.one, K23.one], [K23.one, mu]]))
    assert is_totally_positive_definite(diag(K23.one))
    assert not is_totally_positive_definite(diag(K23.one, K23(1, 1)))


@settings(max_examples=150, suppress_health_check=[HealthCheck.too_slow])
@given(integral_forms())
def test_minor_test_matches_numeric_cholesky(Q):
    minors = Q.leading_minors()
    exact = is_totally_positive_definite(Q)
    assert exact == all(is_totally_positive(m) for m in minors)
    if all(m for m in minors):
        assert exact == float_eigs_ok(Q)


@settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
@given(integral_forms())
def test_definite_forms_take_positive_values(Q):
    if not is_totally_positive_definite(Q):
        return
    K = Q.field
    small = [K.zero, K.one, -K.one] + list(K.basis_elements()[1:])
    for x in product(small, repeat=Q.n):
        v = Q.value(x)
        if any(x):
            assert is_totally_positive(v)


@settings(max_examples=80, suppress_health_check=[HealthCheck.too_slow])
@given(integral_forms())
def test_leading_minors_are_determinants(Q):
    K = Q.field
    minors = Q.leading_minors()
    for k, m in enumerate(minors, start=1):
        sub = [list(r[:k]) for r in Q.entries[:k]]
        assert m == _det(sub, K.zero, K.one)


@settings(max_examples=60, suppress_health_check=[HealthCheck.too_slow])
@given(tpd_forms())
def test_ldl_and_inverse(Q):
    K = Q.field
    d, U = Q.ldl()
    B = K.basis_elements()
    for x in [tuple(B[(i + j) % 4] for i in range(Q.n)) for j in range(4)]:
        ux = [sum((U[i][j] * x[j] for j in range(Q.n)), K.zero) for i in range(Q.n)]
        assert Q.value(x) == sum((di * y * y for di, y in zip(d, ux)), K.zero)
    inv = Q.inverse()
    for i in range(Q.n):
        for j in range(Q.n):
            s = sum((Q.entries[i][k] * inv[k][j] for k in range(Q.n)), K.zero)
            assert s == (K.one if i == j else K.zero)
    assert Q.trace_inverse() == sum((inv[i][i] for i in range(Q.n)), K.zero)


def test_offdiag_examples(K23, named23):
    s, sm, z, mu = named23["sigma"], named23["sigma/mu"], named23["zeta"], named23["mu"]
    g = K23(-1, H, 0, -H)
    assert offdiag_candidates(s, z, strict=True) == sorted([K23.zero, g, -g], key=lambda x: x.coords)
    d = offdiag_candidates(sm, z, strict=True)
    assert len(d) == 9
    for x in (K23(-2, H, 1, -H), K23(0, -H, 0, H)):
        assert x in d and -x in d
    assert offdiag_candidates(K23.one, mu, strict=False) == [K23.zero]
    with pytest.raises(ValueError):
        offdiag_candidates(K23(1, 1), mu)


def _brute_square_bounded(t, strict):
    """Integers gamma with gamma^2 <= t found by a Fraction coordinate walk."""
    K = t.field
    tr = t.trace()
    q4 = Fraction(1, 4)
    out = []
    lim = [int((tr / (4 * n)) ** 0.5 * 4) + 2 for n in (1, K.p, K.q, K.r)]
    for c in product(*(range(-m, m + 1) for m in lim)):
        # Tr(x^2) <= Tr(t) in 4-scaled coordinates
        if c[0] ** 2 + K.p * c[1] ** 2 + K.q * c[2] ** 2 + K.r * c[3] ** 2 > 4 * tr:
            continue
        x = K(*(v * q4 for v in c))
        if not x.is_integral():
            continue
        diff = t - x * x
        if is_totally_positive(diff) or (not strict and not diff):
            out.append(x)
    return sorted(out, key=lambda x: x.coords)


@pytest.mark.parametrize("names", [("sigma", "zeta"), ("sigma/mu", "zeta"), ("mu", "sigma")])
@pytest.mark.parametrize("strict", [True, False])
def test_offdiag_matches_brute_force(named23, names, strict):
    a, b = (named23[n] for n in names)
    assert offdiag_candidates(a, b, strict) == _brute_square_bounded(a * b, strict)


@settings(max_examples=60)
@given(st.sampled_from(SMALL_FIELDS), st.data())
def test_offdiag_symmetric_and_contains_zero(K, data):
    tps = totally_positive_up_to_trace(K, 16)
    a, b = data.draw(st.sampled_from(tps)), data.draw(st.sampled_from(tps))
    for strict in (True, False):
        c = offdiag_candidates(a, b, strict)
        assert K.zero in c
        assert set(c) == {-x for x in c}
        assert c == sorted(c, key=lambda x: x.coords)
        for x in c:
            assert is_totally_nonnegative(a * b - x * x)


def test_table_invariant_under_reordering(named23):
    names = ["1", "mu", "sigma", "zeta"]
    els = [named23[n] for n in names]
    base = gamma_count_table(els)

    def lookup(t, i, j):
        i, j = max(i, j), min(i, j)
        return t[i - 1][j]

    for perm in permutations(range(4)):
        t = gamma_count_table([els[i] for i in perm])
        for i in range(4):
            for j in range(i):
                assert lookup(t, i, j) == lookup(base, perm[i], perm[j])


def test_table_edge_cases(named23):
    assert gamma_count_table([named23["mu"]]) == []
    assert gamma_count_table([]) == []


def test_represents_diag_examples(named23):
    one, mu, s, sm, z = (named23[n] for n in ("1", "mu", "sigma", "sigma/mu", "zeta"))
    assert not represents_diag(diag(one, mu), s)
    assert not represents_diag(diag(one, mu, s), sm)
    assert not represents_diag(diag(one, mu, s, sm), z)
    assert represents_diag(diag(one, mu), mu.field(2, 1))
    with pytest.raises(ValueError):
        represents_diag(full([[one, one], [one, mu]]), s)


def test_representation_search_examples(K23, named23):
    one, mu, s, sm, z = (named23[n] for n in ("1", "mu", "sigma", "sigma/mu", "zeta"))
    assert representation_search(diag(one), K23(4)) == (K23(2),)
    eta = representation_search(diag(one, mu), K23(2, 1))
    assert eta is not None and diag(one, mu).value(eta) == K23(2, 1)
    assert eta[0] == 0 and eta[1] in (K23(1, H, 0, -H), K23(-1, -H, 0, H))
    Q4 = diag(one, mu, s, sm)
    assert representation_search(Q4, z) is None
    assert representation_bound(Q4, z) == 48


def test_search_rejects_indefinite(K23, named23):
    with pytest.raises(NotPositiveDefiniteError):
        representation_search(full([[K23.one, K23.one], [K23.one, named23["mu"]]]), K23(4))


def test_search_budget(K23, named23):
    Q = diag(K23.one, named23["mu"], named23["sigma"])
    with pytest.raises(SearchBudgetExceeded):
        list(representations(Q, K23(20), budget=5))


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(tpd_forms(max_n=3, max_trace=12), st.data())
def test_bound_box_is_sound(Q, data):
    K = Q.field
    gamma = data.draw(st.sampled_from(totally_positive_up_to_trace(K, 12)))
    T = representation_bound(Q, gamma)
    found = list(representations(Q, gamma, trace_bound=T + 12, budget=2_000_000))
    for eta in found:
        assert Q.value(eta) == gamma
        for x in eta:
            assert (x * x).trace() <= T
    assert set(found) == set(representations(Q, gamma))


@settings(max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(tpd_forms(max_n=3, max_trace=12), st.data())
def test_span_solutions_match_representation_search(Q, data):
    K = Q.field
    e = data.draw(st.sampled_from(totally_positive_up_to_trace(K, 12)))
    rep = representation_search(Q, e)
    sols = span_solutions(Q, e)
    assert (rep is not None) == any(s.integral for s in sols)
    for s in sols:
        assert sum((b * x for b, x in zip(s.column, s.coordinates)), K.zero) == e
        if s.integral:
            assert Q.value(s.coordinates) == e

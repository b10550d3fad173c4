"""Classical totally positive definite quadratic forms over O_K."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor, gcd
from typing import Iterator, Sequence

from . import kernels
from .core import BiquadElement, from_scaled, is_totally_positive
from .squares import is_square_quotient


class NotPositiveDefiniteError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    """Raised when a representation search visits more nodes than allowed."""

    def __init__(self, budget: int):
        super().__init__(f"representation search exceeded budget of {budget} nodes")
        self.budget = budget


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """Form sum_ij m_ij x_i x_j given by its symmetric Gram matrix.

    Off-diagonal matrix entries are half the cross coefficients, so the form
    is classical when every entry is an integer of K.
    """

    entries: tuple[tuple[BiquadElement, ...], ...]
    lineage: tuple[BiquadElement, ...] = ()

    def __post_init__(self):
        n = len(self.entries)
        if any(len(row) != n for row in self.entries):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @classmethod
    def diagonal_form(cls, coeffs: Sequence[BiquadElement]) -> "QuadraticForm":
        coeffs = list(coeffs)
        if not coeffs:
            raise ValueError("empty form")
        zero = coeffs[0].field.zero
        rows = tuple(tuple(c if i == j else zero for j in range(len(coeffs))) for i, c in enumerate(coeffs))
        return cls(rows, tuple(coeffs))

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def field(self):
        return self.entries[0][0].field

    def __eq__(self, other):
        if not isinstance(other, QuadraticForm):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        rows = "; ".join(", ".join(str(x) for x in row) for row in self.entries)
        return f"QuadraticForm([{rows}])"

    def diagonal(self) -> tuple[BiquadElement, ...]:
        return tuple(self.entries[i][i] for i in range(self.n))

    def is_diagonal(self) -> bool:
        return all(not self.entries[i][j] for i in range(self.n) for j in range(self.n) if i != j)

    def is_classical(self) -> bool:
        return all(x.is_integral() for row in self.entries for x in row)

    def value(self, x: Sequence[BiquadElement]) -> BiquadElement:
        if len(x) != self.n:
            raise ValueError("vector length does not match the form")
        total = self.field.zero
        for i in range(self.n):
            if not x[i]:
                continue
            total = total + self.entries[i][i] * x[i] * x[i]
            for j in range(i + 1, self.n):
                if x[j] and self.entries[i][j]:
                    total = total + 2 * self.entries[i][j] * x[i] * x[j]
        return total

    def extend(self, coeff: BiquadElement, column: Sequence[BiquadElement]) -> "QuadraticForm":
        """Form with a new variable: diagonal entry coeff, off-diagonal column."""
        if len(column) != self.n:
            raise ValueError("column length does not match the form")
        rows = [tuple(row) + (column[i],) for i, row in enumerate(self.entries)]
        rows.append(tuple(column) + (coeff,))
        return QuadraticForm(tuple(rows), self.lineage + (coeff,))

    def ldl(self) -> tuple[list[BiquadElement], list[list[BiquadElement]]]:
        """Pivots d and unit upper triangular U with Q(x) = sum_i d_i (Ux)_i^2.

        Raises NotPositiveDefiniteError on a zero pivot.
        """
        n = self.n
        m = [list(row) for row in self.entries]
        zero, one = self.field.zero, self.field.one
        d = []
        u = [[one if i == j else zero for j in range(n)] for i in range(n)]
        for k in range(n):
            piv = m[k][k]
            if not piv:
                raise NotPositiveDefiniteError(f"zero pivot at position {k}")
            d.append(piv)
            inv = piv.inverse()
            for j in range(k + 1, n):
                u[k][j] = m[k][j] * inv
            for i in range(k + 1, n):
                if not m[k][i]:
                    continue
                for j in range(k + 1, n):
                    m[i][j] = m[i][j] - m[k][i] * u[k][j]
        return d, u

    def leading_minors(self) -> list[BiquadElement]:
        try:
            pivots, _ = self.ldl()
        except NotPositiveDefiniteError:
            # cofactor expansion when elimination hits a zero pivot
            return [self._minor(k) for k in range(1, self.n + 1)]
        out, acc = [], self.field.one
        for piv in pivots:
            acc = acc * piv
            out.append(acc)
        return out

    def _minor(self, k: int) -> BiquadElement:
        rows = [list(r[:k]) for r in self.entries[:k]]
        return _det(rows, self.field.zero, self.field.one)

    def inverse(self) -> list[list[BiquadElement]]:
        """Inverse Gram matrix over K (Gauss-Jordan)."""
        n = self.n
        zero, one = self.field.zero, self.field.one
        m = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(self.entries)]
        for k in range(n):
            piv_row = next((i for i in range(k, n) if m[i][k]), None)
            if piv_row is None:
                raise NotPositiveDefiniteError("singular Gram matrix")
            m[k], m[piv_row] = m[piv_row], m[k]
            inv = m[k][k].inverse()
            m[k] = [x * inv for x in m[k]]
            for i in range(n):
                if i != k and m[i][k]:
                    f = m[i][k]
                    m[i] = [x - f * y for x, y in zip(m[i], m[k])]
        return [row[n:] for row in m]

    def trace_inverse(self) -> BiquadElement:
        inv = self.inverse()
        total = self.field.zero
        for i in range(self.n):
            total = total + inv[i][i]
        return total


def _det(rows, zero, one):
    n = len(rows)
    if n == 0:
        return one
    if n == 1:
        return rows[0][0]
    total = zero
    for j in range(n):
        if not rows[0][j]:
            continue
        sub = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = rows[0][j] * _det(sub, zero, one)
        total = total + term if j % 2 == 0 else total - term
    return total


def is_totally_positive_definite(Q: QuadraticForm) -> bool:
    """Every leading principal minor is totally positive."""
    try:
        pivots, _ = Q.ldl()
    except NotPositiveDefiniteError:
        return False
    # all minors are totally positive iff all pivots are
    return all(is_totally_positive(d) for d in pivots)


def _check_tp_integer(x: BiquadElement) -> None:
    if not x.is_integral():
        raise ValueError(f"{x} is not an algebraic integer")
    if not is_totally_positive(x):
        raise ValueError(f"{x} is not totally positive")


def _square_bounded_points(t: BiquadElement, strict: bool) -> list[tuple[int, int, int, int]]:
    """4-scaled integers x with x^2 < t (strict) or x^2 <= t, sorted.

    ``t`` may be any element of K; the trace ellipsoid Tr(x^2) <= Tr(t)
    bounds the search and the order relation is then checked exactly.
    """
    K = t.field
    tr = t.trace()
    if tr < 0:
        return []
    den = _common_den([t * 16])
    T = _num(t * 16, den)
    p, q, g = K.p, K.q, K.g
    if den == 1:
        return sorted(kernels.offdiag_points(T, p, q, g, K.residue_mask, strict))
    out = []
    for x in kernels.ellipsoid_points(floor(4 * tr), p, q, g, K.residue_mask):
        sq = kernels.mul(x, x, p, q, g)
        diff = tuple(a - den * b for a, b in zip(T, sq))
        if diff == (0, 0, 0, 0):
            if not strict:
                out.append(x)
        elif (kernels.is_tp(*diff, p, q, g) if strict else _nonneg(diff, p, q, g, kernels.sign)):
            out.append(x)
    return sorted(out)


def square_bounded(t: BiquadElement, strict: bool) -> list[BiquadElement]:
    """Integers x with x^2 < t (strict) or x^2 <= t, sorted lexicographically."""
    return [from_scaled(t.field, x, 4) for x in _square_bounded_points(t, strict)]


def offdiag_candidates(alpha: BiquadElement, beta: BiquadElement, strict: bool = True) -> list[BiquadElement]:
    """All integers gamma with gamma^2 < alpha beta (strict) or gamma^2 <= alpha beta."""
    _check_tp_integer(alpha)
    _check_tp_integer(beta)
    return square_bounded(alpha * beta, strict)


def _pair_count(args) -> int:
    a, b = args
    return len(offdiag_candidates(a, b, strict=False))


def gamma_count_table(elements: Sequence[BiquadElement], jobs: int = 1) -> list[list[int]]:
    """Lower triangle of counts #{gamma : alpha_i alpha_j >= gamma^2}.

    Row i (for i >= 1) lists the counts against elements 0 .. i-1.
    """
    elements = list(elements)
    for x in elements:
        _check_tp_integer(x)
    pairs = [(elements[i], elements[j]) for i in range(1, len(elements)) for j in range(i)]
    if jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            counts = list(pool.map(_pair_count, pairs))
    else:
        counts = [_pair_count(pr) for pr in pairs]
    rows, pos = [], 0
    for i in range(1, len(elements)):
        rows.append(counts[pos : pos + i])
        pos += i
    return rows


def represents_diag(Q: QuadraticForm, beta: BiquadElement) -> bool:
    """Whether a diagonal form represents an indecomposable beta.

    Valid only for indecomposable beta: then beta = alpha_i eta^2 for a
    single i, so beta / alpha_i must be a square.
    """
    if not Q.is_diagonal():
        raise ValueError("form is not diagonal")
    return any(is_square_quotient(beta, a) for a in Q.diagonal())


def representation_bound(Q: QuadraticForm, gamma: BiquadElement) -> Fraction:
    """T with Tr(eta_i^2) <= T for every representation Q(eta) = gamma.

    Sum over embeddings of sigma_k(gamma) / lambda_j^(k) equals
    Tr(gamma * trace(Q^-1)), so no eigenvalues are needed.
    """
    return (gamma * Q.trace_inverse()).trace()


def _coordinate_candidates(Q: QuadraticForm, gamma: BiquadElement, trace_bound: Fraction | None):
    K = Q.field
    if trace_bound is None and Q.is_diagonal():
        # eta_i^2 <= gamma / alpha_i, totally
        return [_square_bounded_points(gamma / a, strict=False) for a in Q.diagonal()]
    T = representation_bound(Q, gamma) if trace_bound is None else Fraction(trace_bound)
    if T < 0:
        return [[] for _ in range(Q.n)]
    pts = sorted(kernels.ellipsoid_points(floor(4 * T), K.p, K.q, K.g, K.residue_mask))
    return [pts] * Q.n


def representations(
    Q: QuadraticForm,
    gamma: BiquadElement,
    budget: int | None = None,
    trace_bound: Fraction | None = None,
) -> Iterator[tuple[BiquadElement, ...]]:
    """All integral vectors eta with Q(eta) = gamma.

    Coordinates come from the representability box (or from the box
    Tr(eta_i^2) <= trace_bound when given).  Branches are cut with the exact
    test sum_{i >= k} d_i y_i^2 <= gamma, which holds for every representation.
    """
    if not is_totally_positive_definite(Q):
        raise NotPositiveDefiniteError(f"{Q!r} is not totally positive definite")
    if not gamma.is_integral() or not is_totally_positive(gamma):
        raise ValueError(f"{gamma} is not a totally positive integer")
    d, u = Q.ldl()
    n = Q.n
    K = Q.field
    X = _coordinate_candidates(Q, gamma, trace_bound)
    # integer numerators over common denominators: u = U / du, d = Dn / dd,
    # candidates = X / 4; partial sums live over N = dd * 16 * du^2
    du = _common_den(u[i][j] for i in range(n) for j in range(i + 1, n))
    dd = _common_den(d)
    U = [[_num(u[i][j], du) for j in range(n)] for i in range(n)]
    Dn = [_num(x, dd) for x in d]
    N = dd * 16 * du * du
    G = _num(gamma, N)
    p, q, g = K.p, K.q, K.g
    mul, sign = kernels.mul, kernels.sign
    visited = 0
    chosen: list = [None] * n

    def rec(k: int, partial):
        nonlocal visited
        for idx, c in enumerate(X[k]):
            visited += 1
            if budget is not None and visited > budget:
                raise SearchBudgetExceeded(budget)
            y = tuple(du * t for t in c)
            for j in range(k + 1, n):
                if U[k][j] != (0, 0, 0, 0) and chosen[j] is not None:
                    t = mul(U[k][j], X[j][chosen[j]], p, q, g)
                    y = (y[0] + t[0], y[1] + t[1], y[2] + t[2], y[3] + t[3])
            t = mul(Dn[k], mul(y, y, p, q, g), p, q, g)
            s = (partial[0] + t[0], partial[1] + t[1], partial[2] + t[2], partial[3] + t[3])
            rest = (G[0] - s[0], G[1] - s[1], G[2] - s[2], G[3] - s[3])
            if k == 0:
                if rest == (0, 0, 0, 0):
                    chosen[0] = idx
                    yield tuple(from_scaled(K, X[i][chosen[i]], 4) for i in range(n))
            elif _nonneg(rest, p, q, g, sign):
                chosen[k] = idx
                yield from rec(k - 1, s)
        chosen[k] = None

    yield from rec(n - 1, (0, 0, 0, 0))


def _common_den(xs) -> int:
    den = 1
    for x in xs:
        for c in x.coords:
            den = den * c.denominator // gcd(den, c.denominator)
    return den


def _num(x: BiquadElement, den: int) -> tuple[int, int, int, int]:
    return tuple(int(c * den) for c in x.coords)


def _nonneg(v, p, q, g, sign) -> bool:
    A, B, C, D = v
    return (
        sign(A, B, C, D, p, q, g) >= 0
        and sign(A, -B, C, -D, p, q, g) >= 0
        and sign(A, B, -C, -D, p, q, g) >= 0
        and sign(A, -B, -C, D, p, q, g) >= 0
    )


def representation_search(
    Q: QuadraticForm, gamma: BiquadElement, budget: int | None = None
) -> tuple[BiquadElement, ...] | None:
    """A representing vector from the exact box, or None.

    Q(-eta) = Q(eta), so the lexicographically larger of the pair is returned.
    """
    eta = next(representations(Q, gamma, budget), None)
    return None if eta is None else canonical_sign(eta)


def canonical_sign(eta: Sequence[BiquadElement]) -> tuple[BiquadElement, ...]:
    """The lexicographically larger of eta and -eta."""
    neg = tuple(-x for x in eta)
    return max(tuple(eta), neg, key=lambda v: [x.coords for x in v])


@dataclass(frozen=True)
class SpanSolution:
    """Column b = (B(v_i, w)) of a vector w in the K-span of the form's basis."""

    column: tuple[BiquadElement, ...]
    coordinates: tuple[BiquadElement, ...]

    @property
    def integral(self) -> bool:
        return all(x.is_integral() for x in self.coordinates)


def span_solutions(Q: QuadraticForm, e: BiquadElement, budget: int | None = None) -> list[SpanSolution]:
    """All ways a vector w of value e can lie in the K-span of the basis v_i.

    For a classical lattice containing the v_i, b_i = B(v_i, w) is an integer
    with b_i^2 <= Q_ii e, and w = sum x_i v_i with x = Q^-1 b, so
    b^T Q^-1 b = e.  An empty result means any such w is independent of
    the v_i; a solution with integral x is a representation of e by Q.
    """
    if not is_totally_positive_definite(Q):
        raise NotPositiveDefiniteError(f"{Q!r} is not totally positive definite")
    lists = [square_bounded(a * e, strict=False) for a in Q.diagonal()]
    inv = Q.inverse()
    n = Q.n
    out = []
    visited = 0
    for col in product(*lists):
        visited += 1
        if budget is not None and visited > budget:
            raise SearchBudgetExceeded(budget)
        x = [sum((inv[i][j] * col[j] for j in range(n) if col[j]), Q.field.zero) for i in range(n)]
        val = sum((col[i] * x[i] for i in range(n) if col[i]), Q.field.zero)
        if val == e:
            out.append(SpanSolution(tuple(col), tuple(x)))
    return out

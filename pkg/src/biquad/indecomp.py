"""Indecomposability of totally positive integers of a biquadratic field."""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from . import kernels
from .core import BiquadElement, BiquadField, Case, from_scaled, is_totally_positive
from .quadcf import QuadElement, is_convergent, m_value


class Status(enum.Enum):
    INDECOMPOSABLE_BY_ORACLE = "IndecomposableByOracle"
    INDECOMPOSABLE_BY_SMALL_NORM = "IndecomposableBySmallNorm"
    INDECOMPOSABLE_BY_THEOREM1 = "IndecomposableByTheorem1"
    DECOMPOSABLE = "Decomposable"
    UNKNOWN = "Unknown"

    @property
    def indecomposable(self) -> bool:
        return self.name.startswith("INDECOMPOSABLE")


@dataclass(frozen=True)
class IndecompVerdict:
    status: Status
    witness: BiquadElement | None = None
    certificate_detail: str = ""


def _require_tp_integer(alpha: BiquadElement) -> None:
    if not alpha.is_integral():
        raise ValueError(f"{alpha} is not an algebraic integer")
    if not is_totally_positive(alpha):
        raise ValueError(f"{alpha} is not totally positive")


def _witness_chunk(args):
    alpha4, p, q, g, mask, lo, hi = args
    return kernels.decompose_witness(alpha4, p, q, g, mask, lo, hi)


def decompose_search(alpha: BiquadElement, jobs: int = 1) -> IndecompVerdict:
    """Exhaustive search for beta with 0 < beta < alpha in the trace box.

    Returns the lexicographically smallest summand when one exists.
    """
    _require_tp_integer(alpha)
    K = alpha.field
    alpha4 = alpha.scaled(4)
    args = (alpha4, K.p, K.q, K.g, K.residue_mask)
    if jobs <= 1 or alpha4[0] < 8:
        found = kernels.decompose_witness(*args)
    else:
        top = alpha4[0] - 1
        step = -(-top // jobs)
        chunks = [args + (lo, min(lo + step - 1, top)) for lo in range(1, top + 1, step)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            hits = [h for h in pool.map(_witness_chunk, chunks) if h is not None]
        found = min(hits) if hits else None
    if found is None:
        return IndecompVerdict(
            Status.INDECOMPOSABLE_BY_ORACLE,
            None,
            "no integer beta with 0 < beta < alpha in the box |a| <= Tr/4, |b| <= Tr/(4√p), ...",
        )
    beta = from_scaled(K, found, 4)
    return IndecompVerdict(Status.DECOMPOSABLE, beta, f"alpha = ({beta}) + ({alpha - beta})")


def is_indecomposable(alpha: BiquadElement) -> bool:
    return decompose_search(alpha).status.indecomposable


def content(alpha: BiquadElement) -> int:
    """Largest rational integer n dividing alpha in O_K."""
    coords = alpha.basis_coordinates()
    if any(c.denominator != 1 for c in coords):
        raise ValueError(f"{alpha} is not an algebraic integer")
    return reduce(gcd, (int(c) for c in coords))


def small_norm_criterion(alpha: BiquadElement) -> bool:
    """N(alpha) < 2 min(√p, √q, √r) and no integer n > 1 divides alpha.

    A true result certifies indecomposability.
    """
    _require_tp_integer(alpha)
    K = alpha.field
    n = alpha.norm()
    return n * n < 4 * min(K.radicands) and content(alpha) == 1


def _convergent_like(alpha: QuadElement) -> bool:
    # conjugation in Q(√k) extends to an automorphism of K, so conjugates of
    # convergents inherit the convergent clause
    return is_convergent(alpha) or is_convergent(alpha.conj())


def theorem1_certify(alpha: QuadElement, K: BiquadField) -> IndecompVerdict:
    """Certify that an indecomposable of a quadratic subfield stays indecomposable in K.

    Applies the convergent and partial-quotient clauses for the three
    subfields; radical comparisons are done on squares.  Never guesses:
    returns UNKNOWN when no clause applies.
    """
    k = alpha.k
    if k not in K.radicands:
        raise ValueError(f"Q(√{k}) is not a subfield of {K!r}")
    if not alpha.is_integral() or not alpha.is_totally_positive():
        raise ValueError(f"{alpha} is not a totally positive integer of Q(√{k})")
    case4 = K.case in (Case.C4A, Case.C4B)
    conv = _convergent_like(alpha)
    p, q, r = K.radicands
    detail = _clause(k, p, q, r, case4, conv, K.case.value)
    if detail:
        return IndecompVerdict(Status.INDECOMPOSABLE_BY_THEOREM1, None, detail)
    return IndecompVerdict(Status.UNKNOWN, None, "no clause applies")


def _clause(k: int, p: int, q: int, r: int, case4: bool, conv: bool, case: str) -> str | None:
    if k == p:
        if conv and r > p:
            return f"clause (a) with p = {p}: convergent and √{r} > √{p}"
        M = m_value(p)
        if r > M * M * p:
            return f"clause (a) with p = {p}: √{r} > M √{p}, M = {M}"
    elif k == q:
        if not case4:
            return f"clause (b): case {case}"
        if conv and r > q:
            return "clause (b): case 4, convergent and √r > √q"
        M = m_value(q)
        if r > M * M * q:
            return f"clause (b): case 4, √r > M √q, M = {M}"
    else:
        if conv and p > r:
            return f"clause (c) with r = {r}: convergent and √{p} > √{r}"
        M = m_value(r)
        if p > M * M * r:
            return f"clause (c) with r = {r}: √{p} > M √{r}, M = {M}"
    return None


def persistence_bound(alpha: QuadElement) -> int:
    """B such that alpha stays indecomposable in every Q(√p, √q) with min(q, r) >= B.

    B = 16 a^2 for alpha = a + b√p; 4 a^2 when p = 2, 3 mod 4 (coordinates
    of integers of K are then half-integers).
    """
    a, _ = alpha.coeffs()
    factor = 16 if alpha.k % 4 == 1 else 4
    bound = factor * a * a
    assert bound.denominator == 1
    return int(bound)


def certify(alpha: BiquadElement, jobs: int = 1) -> IndecompVerdict:
    """Cheapest applicable certificate, falling back to the exhaustive search."""
    _require_tp_integer(alpha)
    if small_norm_criterion(alpha):
        return IndecompVerdict(Status.INDECOMPOSABLE_BY_SMALL_NORM, None, f"N = {alpha.norm()}, content 1")
    if alpha.in_subfield() not in (None, 1):
        v = theorem1_certify(QuadElement.from_biquad(alpha), alpha.field)
        if v.status is Status.INDECOMPOSABLE_BY_THEOREM1:
            return v
    return decompose_search(alpha, jobs=jobs)


def totally_positive_up_to_trace(K: BiquadField, trace_bound: int) -> list[BiquadElement]:
    """All totally positive integers of K with trace <= trace_bound."""
    pts = kernels.tp_points(int(Fraction(trace_bound)), K.p, K.q, K.g, K.residue_mask)
    return [from_scaled(K, x, 4) for x in pts]


def indecomposables_up_to_trace(K: BiquadField, trace_bound: int) -> list[BiquadElement]:
    """Indecomposables of K with trace <= trace_bound, by sieving out pairwise sums."""
    pts = kernels.tp_points(int(Fraction(trace_bound)), K.p, K.q, K.g, K.residue_mask)
    pts.sort()
    tmax = int(Fraction(trace_bound))
    sums = set()
    for i, x in enumerate(pts):
        for y in pts[i:]:
            if x[0] + y[0] > tmax:
                break
            sums.add((x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3]))
    return [from_scaled(K, x, 4) for x in pts if x not in sums]

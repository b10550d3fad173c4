"""Escalation of classical totally positive definite forms and rank lower bounds."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Sequence

from .core import BiquadElement, BiquadField, is_totally_positive
from .forms import (
    QuadraticForm,
    SearchBudgetExceeded,
    canonical_sign,
    gamma_count_table,
    is_totally_positive_definite,
    offdiag_candidates,
    span_solutions,
)

DEFAULT_BUDGET = 200_000


@dataclass
class EscalationNode:
    form: QuadraticForm
    column: tuple[BiquadElement, ...] = ()
    unrepresented: BiquadElement | None = None
    check: str = ""
    candidates: int = 0
    children: list["EscalationNode"] = field(default_factory=list)

    def leaves(self) -> list["EscalationNode"]:
        if not self.children:
            return [self]
        return [leaf for c in self.children for leaf in c.leaves()]


@dataclass
class EscalationResult:
    root: EscalationNode
    levels: list[list[EscalationNode]]
    stop_reason: str

    @property
    def bound(self) -> int:
        """Proven lower bound on the rank of a universal classical form."""
        return len(self.levels)

    def is_diagonal_path(self, upto: int | None = None) -> bool:
        """Levels 1 .. upto each hold a single diagonal form."""
        levels = self.levels if upto is None else self.levels[:upto]
        return all(len(lv) == 1 and lv[0].form.is_diagonal() for lv in levels)


class EscalatorRepresentedError(ValueError):
    """An escalator is already represented by a form it should extend."""

    def __init__(self, escalator: BiquadElement, form: QuadraticForm, witness, result: EscalationResult):
        super().__init__(f"{escalator} is represented by a form at level {result.bound}")
        self.escalator = escalator
        self.form = form
        self.witness = witness
        self.result = result

    @property
    def bound(self) -> int:
        return self.result.bound


def _examine(form: QuadraticForm, e: BiquadElement, budget: int):
    """Classify how e relates to the span of the form's basis vectors.

    Returns (verdict, witness, provenance) with verdict one of
    "independent", "represented", "dependent" or "undecided".
    """
    try:
        sols = span_solutions(form, e, budget=budget)
    except SearchBudgetExceeded:
        return "undecided", None, f"column search exceeded budget {budget}"
    rep = next((s for s in sols if s.integral), None)
    if rep is not None:
        return "represented", canonical_sign(rep.coordinates), "Q(x) = e for an integral x"
    if sols:
        return "dependent", sols[0].column, "a vector of value e may lie in the K-span"
    return "independent", None, "no integral column b with b_i^2 <= Q_ii e and b^T Q^-1 b = e"


def _children(form: QuadraticForm, e: BiquadElement, branch_cap: int | None):
    """(number of candidate columns, admissible columns with their forms).

    Candidates satisfy b_i^2 < Q_ii e entrywise; admissible ones also keep
    the extended form totally positive definite.  None when the branch cap
    is hit.
    """
    lists = [offdiag_candidates(a, e, strict=True) for a in form.diagonal()]
    total = 1
    for lst in lists:
        total *= len(lst)
    if branch_cap is not None and total > branch_cap:
        return None
    out = []
    for col in product(*lists):
        child = form.extend(e, col)
        if is_totally_positive_definite(child):
            out.append((col, child))
    return total, out


def _process(args):
    form, e, budget, branch_cap = args
    verdict, witness, prov = _examine(form, e, budget)
    if verdict != "independent":
        return verdict, witness, prov, None
    return verdict, witness, prov, _children(form, e, branch_cap)


def _validate(escalators: Sequence[BiquadElement]) -> None:
    if not escalators:
        raise ValueError("no escalators given")
    if escalators[0] != 1:
        raise ValueError("the first escalator must be 1")
    if len(set(escalators)) != len(escalators):
        raise ValueError("escalators must be pairwise distinct")
    for x in escalators:
        if not x.is_integral() or not is_totally_positive(x):
            raise ValueError(f"{x} is not a totally positive integer")


def escalate(
    K: BiquadField,
    escalators: Sequence[BiquadElement],
    depth: int,
    branch_cap: int | None = 10_000,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> EscalationResult:
    """Breadth-first escalation by the given escalators, up to ``depth`` variables.

    Level n + 1 is built only after checking, at every level-n form, that a
    vector of value escalators[n] cannot lie in the K-span of the basis.  The
    Gram matrices of n + 1 independent vectors are then exactly the totally
    positive definite children, so the number of levels built is a proven
    lower bound on the rank of any universal classical form.
    """
    escalators = list(escalators)
    _validate(escalators)
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if any(x.field != K for x in escalators):
        raise ValueError("escalators must lie in K")
    root = EscalationNode(QuadraticForm.diagonal_form([K.one]))
    levels = [[root]]
    result = EscalationResult(root, levels, "depth reached")
    pool = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        while True:
            n = len(levels)
            if n >= len(escalators):
                result.stop_reason = "escalators exhausted"
                break
            if n >= depth:
                result.stop_reason = "depth reached"
                break
            e = escalators[n]
            tasks = [(node.form, e, budget, branch_cap) for node in levels[-1]]
            outs = list(pool.map(_process, tasks)) if pool else [_process(t) for t in tasks]
            for node, (verdict, witness, _, _) in zip(levels[-1], outs):
                if verdict == "represented":
                    raise EscalatorRepresentedError(e, node.form, witness, result)
            blocked = [prov for verdict, _, prov, _ in outs if verdict != "independent"]
            if blocked:
                result.stop_reason = blocked[0]
                break
            if any(kids is None for *_, kids in outs):
                result.stop_reason = f"branch cap {branch_cap} exceeded"
                break
            new_level = []
            for node, (_, _, prov, kids) in zip(levels[-1], outs):
                node.unrepresented = e
                node.check = prov
                node.candidates = kids[0]
                node.children = [EscalationNode(child, col) for col, child in kids[1]]
                new_level.extend(node.children)
            levels.append(new_level)
    finally:
        if pool:
            pool.shutdown()
    return result


def rank_lower_bound(
    K: BiquadField,
    elements: Sequence[BiquadElement],
    branch_cap: int | None = 10_000,
    budget: int = DEFAULT_BUDGET,
    jobs: int = 1,
) -> int:
    """Lower bound on the number of variables of a universal classical form.

    If alpha_i alpha_j >= gamma^2 forces gamma = 0 for every pair, the bound
    is the number of elements.  Otherwise escalation by the elements (1 moved
    to the front) decides it.
    """
    elements = list(elements)
    if not elements:
        return 0
    table = gamma_count_table(elements, jobs=jobs)
    if all(c == 1 for row in table for c in row):
        return len(elements)
    order = [K.one] + [x for x in elements if x != 1]
    try:
        return escalate(K, order, len(order), branch_cap, budget, jobs).bound
    except EscalatorRepresentedError as err:
        return err.bound


@dataclass(frozen=True)
class OrderReport:
    order: tuple[int, ...]
    bound: int
    leaves: int
    diagonal: bool
    stop_reason: str


def escalation_orders(
    K: BiquadField,
    elements: Sequence[BiquadElement],
    branch_cap: int | None = 10_000,
    budget: int = DEFAULT_BUDGET,
) -> list[OrderReport]:
    """Escalate by every ordering of elements[1:] (elements[0] = 1 stays first).

    ``order`` lists indices into ``elements``.
    """
    elements = list(elements)
    _validate(elements)
    out = []
    for perm in permutations(range(1, len(elements))):
        idx = (0,) + perm
        seq = [elements[i] for i in idx]
        try:
            res = escalate(K, seq, len(seq), branch_cap, budget)
        except EscalatorRepresentedError as err:
            res = err.result
            res.stop_reason = f"{err.escalator} already represented"
        out.append(OrderReport(idx, res.bound, len(res.levels[-1]), res.is_diagonal_path(), res.stop_reason))
    return out

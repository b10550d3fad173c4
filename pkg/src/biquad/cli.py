"""Command line front end: ``biquad <command> ...``.

Exit codes: 0 success, 1 golden or check failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import kernels
from .core import BiquadElement, BiquadField, make_field
from .escalation import DEFAULT_BUDGET, EscalationNode, EscalatorRepresentedError, escalate
from .forms import gamma_count_table
from .indecomp import certify, indecomposables_up_to_trace
from .quadcf import cf_expand, fundamental_unit, m_value, quad_indecomposables
from .serialize import PRESETS, ParseError, data_text, element_to_json, preset_elements, read_elements
from .squares import is_unit, sqrt_in_OK, totally_positive_units, unit_generators

SCHEMA = 1


class UsageError(Exception):
    pass


def _field(args) -> BiquadField:
    try:
        return make_field(args.p, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _elements(K: BiquadField, path: str | None):
    try:
        items = read_elements(K, path) if path else preset_elements(K)
    except KeyError:
        raise UsageError(f"no preset for Q(√{K.p}, √{K.q}); pass an element file") from None
    except (OSError, ParseError) as exc:
        raise UsageError(str(exc)) from None
    for x, label in items:
        if not x.is_integral():
            raise UsageError(f"{label}: not an algebraic integer")
    return items


def _el(x: BiquadElement) -> dict:
    return {"coords": element_to_json(x), "text": str(x)}


def _field_json(K: BiquadField) -> dict:
    return {
        "p": K.p,
        "q": K.q,
        "r": K.r,
        "case": K.case.value,
        "input": list(K.input_pair),
        "permutation": list(K.permutation),
    }


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        doc = {"schema": SCHEMA, "command": args.command}
        doc.update(payload)
        sys.stdout.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text)


# --- field -----------------------------------------------------------------


def cmd_field(args) -> int:
    K = _field(args)
    subs = []
    lines = [f"Q(√{K.p}, √{K.q}), r = {K.r}, case {K.case.value}"]
    if K.input_pair != (K.p, K.q):
        lines.append(f"input ({K.input_pair[0]}, {K.input_pair[1]}); canonical radicands taken from {' '.join(K.permutation)}")
    basis = [str(x) for x in K.basis_elements()]
    lines.append("integral basis: " + ", ".join(basis))
    for k in K.radicands:
        exp = cf_expand(k)
        eps = fundamental_unit(k)
        omega = f"(1 + √{k})/2" if k % 4 == 1 else f"√{k}"
        pre = "".join(f"{u}, " for u in exp.preperiod)
        cf = f"[{exp.u0}; {pre}({', '.join(map(str, exp.period))})]"
        subs.append(
            {
                "k": k,
                "omega": omega,
                "u0": exp.u0,
                "preperiod": list(exp.preperiod),
                "period": list(exp.period),
                "M": m_value(k),
                "fundamental_unit": [str(c) for c in eps.coeffs()],
                "provenance": "continued fraction of -conj(omega_k)",
            }
        )
        lines.append(f"Q(√{k}): omega = {omega}, -conj(omega) = {cf}, M = {m_value(k)}, unit {eps}")
    payload = {"field": _field_json(K), "basis": [element_to_json(x) for x in K.basis_elements()], "subfields": subs}
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


# --- indec -----------------------------------------------------------------


def cmd_indec(args) -> int:
    K = _field(args)
    T = args.trace
    if T < 0:
        raise UsageError("trace bound must be non-negative")
    seen = {}
    for k in K.radicands:
        for a in quad_indecomposables(k, Fraction(T, 2)):
            x = a.to_biquad(K)
            seen.setdefault(x, f"Q(√{k})" if x != 1 else "Q")
    rows = []
    for x in sorted(seen, key=lambda y: (y.trace(), y.coords)):
        v = certify(x, jobs=args.jobs)
        rows.append(
            {
                "element": _el(x),
                "origin": seen[x],
                "status": v.status.value,
                "witness": _el(v.witness) if v.witness is not None else None,
                "provenance": v.certificate_detail,
            }
        )
    biq = [x for x in indecomposables_up_to_trace(K, T) if x.in_subfield() is None]
    for x in sorted(biq, key=lambda y: (y.trace(), y.coords)):
        rows.append(
            {
                "element": _el(x),
                "origin": "K",
                "status": "IndecomposableByOracle",
                "witness": None,
                "provenance": f"not a sum of two totally positive integers of trace <= {T}",
            }
        )
    lines = [f"indecomposables of Q(√{K.p}, √{K.q}) with trace <= {T}"]
    for r in rows:
        w = f" = ({r['witness']['text']}) + ..." if r["witness"] else ""
        lines.append(f"{r['element']['text']:<34} {r['origin']:<10} {r['status']}{w}")
    _emit(args, {"field": _field_json(K), "trace_bound": T, "elements": rows}, "\n".join(lines) + "\n")
    return 0


# --- table -----------------------------------------------------------------

GOLDEN_TABLES = {"q2_3": "gamma_q2_3.csv", "q6_19": "gamma_q6_19.csv"}


def _table_csv(labels, table) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["element"] + labels[:-1])
    for i, row in enumerate(table, start=1):
        w.writerow([labels[i]] + [str(c) for c in row] + [""] * (len(labels) - 1 - len(row)))
    return buf.getvalue()


def _golden_table(K: BiquadField, elements) -> list[list[int]] | None:
    name = PRESETS.get((K.p, K.q))
    if name is None or [x for x, _ in preset_elements(K)] != elements:
        return None
    rows = list(csv.reader(io.StringIO(data_text(GOLDEN_TABLES[name]))))[1:]
    return [[int(c) for c in row[1:] if c] for row in rows]


def cmd_table(args) -> int:
    K = _field(args)
    items = _elements(K, args.elements)
    elements = [x for x, _ in items]
    labels = [label for _, label in items]
    try:
        table = gamma_count_table(elements, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    status = 0
    golden = None
    if args.golden:
        golden = _golden_table(K, elements)
        if golden is None:
            raise UsageError("no golden table for this field and element list")
        status = 0 if golden == table else 1
    payload = {
        "field": _field_json(K),
        "elements": [dict(_el(x), label=lab) for x, lab in items],
        "counts": table,
        "provenance": "#{gamma in O_K : alpha beta - gamma^2 totally nonnegative}, exhaustive trace-box search",
    }
    if golden is not None:
        payload["golden"] = "match" if status == 0 else "mismatch"
    text = _table_csv(labels, table)
    if golden is not None:
        text += f"# golden: {payload['golden']}\n"
    _emit(args, payload, text)
    return status


# --- escalate --------------------------------------------------------------


def _node_json(node: EscalationNode) -> dict:
    return {
        "form": [[element_to_json(x) for x in row] for row in node.form.entries],
        "diagonal": node.form.is_diagonal(),
        "column": [element_to_json(x) for x in node.column],
        "next": element_to_json(node.unrepresented) if node.unrepresented is not None else None,
        "check": node.check,
        "candidate_columns": node.candidates,
        "children": [_node_json(c) for c in node.children],
    }


def _golden_escalation(K: BiquadField, elements, depth):
    name = PRESETS.get((K.p, K.q))
    if name is None or [x for x, _ in preset_elements(K)][: len(elements)] != elements:
        return None
    gold = json.loads(data_text("escalation.json")).get(name, {}).get(str(depth))
    return gold


def cmd_escalate(args) -> int:
    K = _field(args)
    items = _elements(K, args.elements)
    elements = [x for x, _ in items]
    depth = args.depth if args.depth is not None else len(elements)
    status = 0
    try:
        result = escalate(K, elements, depth, args.branch_cap, args.budget, args.jobs)
        failure = None
    except EscalatorRepresentedError as exc:
        result = exc.result
        failure = exc
        status = 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sizes = [len(lv) for lv in result.levels]
    summary = {
        "bound": result.bound,
        "levels": sizes,
        "stop_reason": result.stop_reason if failure is None else str(failure),
        "provenance": "rank >= number of escalation levels built",
    }
    golden = None
    if args.golden:
        golden = _golden_escalation(K, elements, depth)
        if golden is None:
            raise UsageError("no golden escalation for this field, element list and depth")
        ok = golden == {"bound": result.bound, "levels": sizes}
        summary["golden"] = "match" if ok else "mismatch"
        status = status or (0 if ok else 1)
    lines = [f"escalation over Q(√{K.p}, √{K.q}), depth {depth}"]
    for n, lv in enumerate(result.levels, start=1):
        cand = sum(node.candidates for node in result.levels[n - 2]) if n > 1 else 1
        lines.append(f"level {n}: {len(lv)} form(s) from {cand} candidate column(s)")
        for node in lv:
            if node.column and any(node.column):
                lines.append("    column: " + ", ".join(str(x) for x in node.column))
    lines.append(f"stopped: {summary['stop_reason']}")
    lines.append(f"proven lower bound on rank: {result.bound}")
    if golden is not None:
        lines.append(f"golden: {summary['golden']}")
    payload = {"field": _field_json(K), "escalators": [dict(_el(x), label=lab) for x, lab in items]}
    payload.update(summary)
    payload["tree"] = _node_json(result.root)
    if failure is not None:
        payload["represented"] = {"escalator": _el(failure.escalator), "vector": [element_to_json(x) for x in failure.witness]}
    _emit(args, payload, "\n".join(lines) + "\n")
    return status


# --- units, sqrt -----------------------------------------------------------


def cmd_units(args) -> int:
    K = _field(args)
    if args.bound < 0:
        raise UsageError("exponent bound must be non-negative")
    gens = unit_generators(K)
    tp = totally_positive_units(K, gens, args.bound)
    lines = ["unit group generators (modulo ±1):"]
    lines += [f"  {g}  (norm {g.norm()})" for g in gens]
    lines.append(f"totally positive units with exponents in [-{args.bound}, {args.bound}]:")
    lines += [f"  {u}  (trace {u.trace()})" for u in tp]
    payload = {
        "field": _field_json(K),
        "generators": [_el(g) for g in gens],
        "totally_positive": [_el(u) for u in tp],
        "exponent_bound": args.bound,
        "provenance": "square roots in O_K of products of subfield fundamental units",
    }
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0 if all(is_unit(g) for g in gens) else 1


def cmd_sqrt(args) -> int:
    K = _field(args)
    try:
        x = K(*(Fraction(c) for c in args.coords))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad coordinate: {exc}") from None
    if not x.is_integral():
        raise UsageError(f"{x} is not an algebraic integer")
    root = sqrt_in_OK(x)
    payload = {"field": _field_json(K), "element": _el(x), "sqrt": _el(root) if root is not None else None}
    text = f"sqrt({x}) = {root}\n" if root is not None else f"{x} is not a square in O_K\n"
    _emit(args, payload, text)
    return 0 if root is not None else 1


# --- parser ----------------------------------------------------------------


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--json", action="store_true", help="machine-readable output", **d)
    parser.add_argument("--jobs", type=int, metavar="N", help="worker processes", **(d or {"default": 1}))
    parser.add_argument("--golden", action="store_true", help="compare with bundled fixtures", **d)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="biquad", description="Indecomposables and universal forms over biquadratic fields.")
    _globals(ap, suppress=False)
    sub = ap.add_subparsers(dest="command", required=True)

    def command(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        _globals(sp, suppress=True)
        sp.add_argument("p", type=int)
        sp.add_argument("q", type=int)
        sp.set_defaults(func=fn)
        return sp

    command("field", cmd_field, "case, integral basis and subfield data")
    sp = command("indec", cmd_indec, "indecomposables up to a trace bound")
    sp.add_argument("--trace", type=int, default=20)
    sp = command("table", cmd_table, "gamma-count table for an element list")
    sp.add_argument("elements", nargs="?", help="element file (default: bundled preset)")
    sp = command("escalate", cmd_escalate, "escalation tree and rank lower bound")
    sp.add_argument("elements", nargs="?", help="escalator file (default: bundled preset)")
    sp.add_argument("--depth", type=int, default=None)
    sp.add_argument("--branch-cap", type=int, default=10_000)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp = command("units", cmd_units, "unit generators and totally positive units")
    sp.add_argument("--bound", type=int, default=1, help="exponent bound")
    sp = command("sqrt", cmd_sqrt, "square root in O_K")
    sp.add_argument("coords", nargs=4, metavar="X", help="a b c d")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.jobs < 1:
        ap.error("--jobs must be at least 1")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"biquad: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

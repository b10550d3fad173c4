"""Compare the compiled and pure-Python lattice kernels.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit
from fractions import Fraction

from biquad import kernels
from biquad.core import make_field
from biquad.indecomp import _require_tp_integer


def workloads():
    K23, K619 = make_field(2, 3), make_field(6, 19)
    h = Fraction(1, 2)
    zeta = K23(3, -h, -1, h)
    a5 = K619(11, 0, 0, 1)  # 11 + √114
    big = K23(40, 7, 3, 5)
    for x in (zeta, a5, big):
        _require_tp_integer(x)
    t = K23(3, 0, 0, 1) * zeta * 4
    m23 = (K23.p, K23.q, K23.g, K23.residue_mask)
    m619 = (K619.p, K619.q, K619.g, K619.residue_mask)
    return {
        "tp_points (2,3) trace 40": lambda b: b.tp_points(40, *m23),
        "tp_points (6,19) trace 120": lambda b: b.tp_points(120, *m619),
        "decompose_witness zeta": lambda b: b.decompose_witness(zeta.scaled(4), *m23),
        "decompose_witness 11+√114": lambda b: b.decompose_witness(a5.scaled(4), *m619),
        "decompose_witness 40+7√2+3√3+5√6 (decomposable)": lambda b: b.decompose_witness(big.scaled(4), *m23),
        "offdiag_points (2,3) 4*sigma*zeta": lambda b: b.offdiag_points(t.scaled(16), *m23, True),
        "ellipsoid_points (2,3) bound 400": lambda b: b.ellipsoid_points(400, *m23),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    names = [n for n in ("cython", "python") if n in kernels.BACKENDS]
    print(f"{'workload':48s}" + "".join(f"{n:>12s}" for n in names) + "     speedup")
    for label, fn in workloads().items():
        times = {}
        results = {}
        for n in names:
            b = kernels.get_backend(n)
            results[n] = fn(b)
            times[n] = min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat))
        if len(names) == 2:
            r = results["cython"]
            same = sorted(r) == sorted(results["python"]) if isinstance(r, list) else r == results["python"]
            assert same, f"backends disagree on {label}"
        row = f"{label:48s}" + "".join(f"{times[n]:11.4f}s" for n in names)
        if len(names) == 2:
            row += f"  {times['python'] / times['cython']:9.1f}x"
        print(row)


if __name__ == "__main__":
    main()

"""Compare the compiled and pure-Python kernels on the workloads that dominate runtime.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--quick]

Prints one line per workload with the best wall time of each backend and
the speedup.  Both backends must return identical results; a mismatch
aborts the run.
"""
import argparse
import sys
import time
from fractions import Fraction

from tpkit import kernels
from tpkit.rational import integerize
from tpkit.seqcore import PartialTheta, materialize
from tpkit.theta import _theta_int_coeffs


def _best(fn, repeat):
    best = None
    out = None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        dt = time.perf_counter() - t
        best = dt if best is None else min(best, dt)
    return best, out


def workloads(quick):
    theta = integerize(materialize(PartialTheta(Fraction(4)), 12).coeffs)[0]
    order, window = (4, 12) if quick else (5, 14)
    yield f"scan ones order {order} window {window}", lambda k: k.scan_toeplitz(
        [1] * (window + 1), order, window, False
    )
    yield f"scan partial theta a^2=4 order 4 window 12", lambda k: k.scan_toeplitz(theta, 4, 12, False)
    mats = [[[(i * 7 + j * 3) % 11 - 5 for j in range(8)] for i in range(8)] for _ in range(2000)]
    yield "bareiss 8x8 x2000", lambda k: [k.bareiss_det(m) for m in mats]
    deg = 24 if quick else 40
    coeffs = _theta_int_coeffs(Fraction(13, 4), deg)
    yield f"sturm chain theta degree {deg}", lambda k: k.sturm_chain(coeffs)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="smaller problem sizes")
    args = ap.parse_args(argv)
    try:
        fast = kernels.backend("cython")
    except ImportError:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 1
    slow = kernels.backend("python")
    print(f"{'workload':48s} {'cython s':>10s} {'python s':>10s} {'speedup':>8s}")
    for name, fn in workloads(args.quick):
        tc, rc = _best(lambda: fn(fast), args.repeat)
        tp, rp = _best(lambda: fn(slow), args.repeat)
        if rc != rp:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 2
        print(f"{name:48s} {tc:10.4f} {tp:10.4f} {tp / tc:8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())

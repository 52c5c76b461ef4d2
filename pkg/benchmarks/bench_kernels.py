"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 20]

Both backends are imported directly so one process can compare them.  The
n=8 rows are where numpy wins; qloops.kernels routes those sizes to numpy.
"""

import argparse
import timeit

import numpy as np

from qloops import _pykernels, kernels
from qloops.config import DEFAULT_MODULUS
from qloops.invariant import classify
from qloops.series import twisted_conjugate
from qloops.testkit import (GeneratorSpec, Rng, derive_seed, random_aligned_loop,
                            random_polynomial_loop)

try:
    from qloops import _ckernels
except ImportError:
    _ckernels = None


def cases(rng):
    def cmat(*shape):
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    for n, L in [(2, 32), (4, 32), (4, 64), (8, 64)]:
        A, B = cmat(L, n, n), cmat(L, n, n)
        f = cmat(L)
        N = 0.1 * cmat(L, n, n)
        N[0] = 0
        yield f"convolve n={n} L={L}", "convolve", (A, B, L)
        yield f"scale_rows n={n} L={L}", "scale_rows_by_power", (A, f)
        yield f"unit_inverse n={n} L={L}", "unit_series_inverse", (N, L)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    print(f"{'kernel':28s} {'python ms':>10s} {'cython ms':>10s} {'speedup':>8s}")
    for label, fn, argv in cases(rng):
        tp = min(timeit.repeat(lambda: getattr(_pykernels, fn)(*argv), number=1, repeat=args.repeat))
        if _ckernels is None:
            print(f"{label:28s} {tp * 1e3:10.3f} {'n/a':>10s}")
            continue
        tc = min(timeit.repeat(lambda: getattr(_ckernels, fn)(*argv), number=1, repeat=args.repeat))
        same = np.allclose(getattr(_pykernels, fn)(*argv), getattr(_ckernels, fn)(*argv))
        print(f"{label:28s} {tp * 1e3:10.3f} {tc * 1e3:10.3f} {tp / tc:7.1f}x"
              + ("" if same else "  MISMATCH"))
    e2e = end_to_end()
    if len(e2e) == 2:
        print(f"{'classify x100 (end to end)':28s} {e2e['python'] * 1e3:10.1f} "
              f"{e2e['cython'] * 1e3:10.1f} {e2e['python'] / e2e['cython']:7.1f}x")


def end_to_end(trials=100):
    """Classify conjugated random aligned loops (n <= 4) with each backend."""
    cfg = DEFAULT_MODULUS
    loops = []
    for t in range(trials):
        s = derive_seed(7, t)
        n = Rng(s).randint(1, 4)
        a = random_aligned_loop(GeneratorSpec(seed=s, n=n, deg=3), cfg)
        g = random_polynomial_loop(GeneratorSpec(seed=derive_seed(s, 1), n=n, deg=3))
        loops.append(twisted_conjugate(g, a, cfg))
    out = {}
    for name, impl in (("python", _pykernels), ("cython", _ckernels)):
        if impl is None:
            continue
        kernels._impl = impl
        out[name] = min(timeit.repeat(lambda: [classify(b, cfg) for b in loops],
                                      number=1, repeat=3))
    return out


if __name__ == "__main__":
    main()

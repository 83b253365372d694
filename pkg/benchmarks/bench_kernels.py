"""Time the compiled Bessel kernels against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py [--points N] [--repeat K]``.
Each row reports the best of K wall-clock runs for both backends and the
speedup of the compiled one.  The last row times a full Dirac residual
evaluation with the kernels swapped underneath the closed-form sampler.
"""
import argparse
import contextlib
import time

import numpy as np

from chessboard import _kernels_py, kernels
from chessboard.closedform import spinor_field
from chessboard.dirac import GridSpec, dirac_residual


@contextlib.contextmanager
def use_backend(impl):
    saved = (kernels.j0_sq, kernels.j1oz_sq, kernels.bessel_pair_sq)
    kernels.j0_sq, kernels.j1oz_sq, kernels.bessel_pair_sq = impl.j0_sq, impl.j1oz_sq, impl.bessel_pair_sq
    try:
        yield
    finally:
        kernels.j0_sq, kernels.j1oz_sq, kernels.bessel_pair_sq = saved


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--points", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--h", type=float, default=2e-3, help="grid spacing for the residual case")
    args = ap.parse_args(argv)

    compiled = kernels.compiled_backend
    if compiled is None:
        print("compiled kernels are not available; only the fallback timings are shown")

    s = np.random.default_rng(0).uniform(0.0, 25.0, args.points)
    grid = GridSpec(h=args.h)
    field = spinor_field(1.0, 2)
    cases = [
        (f"j0_sq ({args.points} pts)", lambda impl: impl.j0_sq(s), False),
        (f"j1oz_sq ({args.points} pts)", lambda impl: impl.j1oz_sq(s), False),
        (f"bessel_pair_sq ({args.points} pts)", lambda impl: impl.bessel_pair_sq(s), False),
        (f"dirac_residual (h={args.h:g})", lambda impl: dirac_residual(field, 1.0, grid), True),
    ]

    print(f"{'case':<38}{'python [s]':>12}{'compiled [s]':>14}{'speedup':>10}")
    for label, run, swap in cases:
        timings = []
        for impl in (_kernels_py, compiled):
            if impl is None:
                timings.append(None)
                continue
            ctx = use_backend(impl) if swap else contextlib.nullcontext()
            with ctx:
                timings.append(best_of(lambda: run(impl), args.repeat))
        py, cc = timings
        cc_txt = f"{cc:14.4f}" if cc is not None else f"{'-':>14}"
        ratio = f"{py / cc:9.1f}x" if cc else f"{'-':>10}"
        print(f"{label:<38}{py:12.4f}{cc_txt}{ratio}")


if __name__ == "__main__":
    main()

"""Benchmark the compiled rate-curve kernels against the numpy fallback.

The compiled backend matters most for short inputs: the power-split
optimizer makes one full-grid call and then ~60 length-1 calls during
golden-section refinement, where numpy per-call overhead dominates.

Run after building the extension:

    python benchmarks/bench_kernels.py [--reps 2000]
"""

import argparse
import time

import numpy as np

from cograte.analysis import optimize_t
from cograte.kernels import purepy

try:
    from cograte.kernels import _native
except ImportError:
    _native = None

SIZES = (1, 8, 64, 501, 2001)


def _time(fn, reps):
    fn()  # warm up
    start = time.perf_counter()
    for _ in range(reps):
        fn()
    return (time.perf_counter() - start) / reps


def _cases(ts, budgets, lam_sq):
    return [
        ("siso_total_rate_curve", lambda m: m.siso_total_rate_curve(ts, 0.1, 1e4, 1.0, 0.59, 0.63, 0.55)),
        ("two_state_log_curve", lambda m: m.two_state_log_curve(ts, 0.1, 1e5, 0.6, 2e4)),
        ("waterfill_rate_curve", lambda m: m.waterfill_rate_curve(lam_sq, budgets)),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--reps", type=int, default=2000, help="calls per measurement")
    args = parser.parse_args()

    if _native is None:
        print("compiled backend not built; nothing to compare (numpy fallback active)")
        return

    lam_sq = np.array([4.0, 1.5, 0.6, 0.1])
    print(f"{'kernel':<24}{'n':>6}{'numpy':>12}{'native':>12}{'speedup':>9}")
    for n in SIZES:
        ts = np.linspace(0.0, 1.0, n) if n > 1 else np.array([0.5])
        budgets = 1e4 * ts
        reps = args.reps * (10 if n <= 64 else 1)
        for name, call in _cases(ts, budgets, lam_sq):
            t_py = _time(lambda: call(purepy), reps)
            t_c = _time(lambda: call(_native), reps)
            diff = float(np.abs(call(purepy) - call(_native)).max())
            assert diff < 1e-12, f"{name}: backends disagree by {diff}"
            print(f"{name:<24}{n:>6}{t_py * 1e6:>10.2f}us{t_c * 1e6:>10.2f}us{t_py / t_c:>8.1f}x")

    # end to end: one power-split optimization (grid scan + refinement)
    print()
    for name, mod in (("numpy", purepy), ("native", _native)):
        curve = lambda ts: mod.siso_total_rate_curve(ts, 0.1, 1e4, 1.0, 0.59, 0.63, 0.55)
        t = _time(lambda: optimize_t(curve, 2001, vectorized=True), max(args.reps // 10, 10))
        print(f"optimize_t[{name:<6}]      {t * 1e3:8.3f} ms per call")


if __name__ == "__main__":
    main()

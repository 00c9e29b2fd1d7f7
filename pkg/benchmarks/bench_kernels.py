"""Time the compiled kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [n]
"""

import sys
import timeit

import numpy as np

from hearthledger import _kernels_py

try:
    from hearthledger import _kernels as compiled
except ImportError:
    compiled = None


def main(n: int = 1_000_000, repeat: int = 5) -> None:
    rng = np.random.default_rng(0)
    y = np.sort(rng.lognormal(10.0, 1.0, n))
    f = rng.uniform(0.0, 1.0, n)
    f /= f.sum()
    ref = float(y[0])
    cases = {
        "weighted_sum": (y, f),
        "power_sum": (y, f, -1.0, ref),
        "log_sum": (y, f, ref),
        "gini_sorted": (y, f),
    }
    backends = [("numpy", _kernels_py)]
    if compiled is not None:
        backends.append(("cython", compiled))
    else:
        print("compiled extension not built; timing numpy only")

    print(f"n = {n:,}, best of {repeat}")
    print(f"{'kernel':<14}" + "".join(f"{name:>12}" for name, _ in backends) + "     ratio")
    for kernel, args in cases.items():
        times = []
        for _, mod in backends:
            fn = getattr(mod, kernel)
            times.append(min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat)))
        cells = "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        ratio = f"{times[0] / times[1]:>9.2f}x" if len(times) == 2 else ""
        print(f"{kernel:<14}{cells}{ratio}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1_000_000)

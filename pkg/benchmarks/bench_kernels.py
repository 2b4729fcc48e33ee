"""Compare the compiled and numpy shell kernels.

    python3 benchmarks/bench_kernels.py [--rows 20000] [--repeat 5]

Reports the best wall time per backend for ``shell_extrema`` on a batch of
normals, for several sequence lengths, and checks the backends agree.
"""

import argparse
import math
import time

import numpy as np

from gm_envelope import kernels


def best_of(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        start = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - start)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--rows", type=int, default=20_000)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--lengths", type=int, nargs="+", default=[3, 10, 50, 500])
    args = ap.parse_args()

    backends = [("python", kernels.python_backend)]
    if kernels.compiled_backend is not None:
        backends.append(("cython", kernels.compiled_backend))
    else:
        print("compiled kernel not built; timing the numpy fallback only")

    print(f"{'n':>6} {'backend':>8} {'seconds':>10} {'Melem/s':>9} {'speedup':>8}")
    for n in args.lengths:
        rows = max(1, args.rows * 10 // n)
        z = np.random.default_rng(n).standard_normal((rows, n))
        radius = 0.3 * math.sqrt(n)
        results = {}
        for name, mod in backends:
            secs, out = best_of(lambda: mod.shell_extrema(z, 1.0, radius, -math.inf, math.inf), args.repeat)
            results[name] = (secs, out)
        base = results["python"][0]
        for name, (secs, _) in results.items():
            print(f"{n:>6} {name:>8} {secs:>10.4f} {z.size / secs / 1e6:>9.1f} {base / secs:>7.2f}x")
        if "cython" in results:
            a, b = results["python"][1], results["cython"][1]
            assert a[0] == b[0] and a[3] == b[3], (a, b)
            if a[0]:
                assert abs(a[1] - b[1]) < 1e-9 and abs(a[2] - b[2]) < 1e-9, (a, b)


if __name__ == "__main__":
    main()

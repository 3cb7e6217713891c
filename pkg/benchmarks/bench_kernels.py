"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import math
import timeit

from gammae.kernels import available_backends, get_backend


def cases(mod):
    return {
        "log_rising_sum n=1e6": lambda: mod.log_rising_sum(1.0, 2.0, 10**6),
        "log_rising_sum n=1e4": lambda: mod.log_rising_sum(0.5, 3.0, 10**4),
        "gk21_power_exp x1000": lambda: [
            mod.gk21_power_exp(0.0, 1.0 + k * 1e-3, 2.5, 1.0, 0.0, 1.0) for k in range(1000)
        ],
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the Python backend is timed")
    timings = {}
    for name in backends:
        for label, fn in cases(get_backend(name)).items():
            timings[label, name] = min(timeit.repeat(fn, number=1, repeat=args.repeat))

    py = get_backend("python")
    for name in backends:
        mod = get_backend(name)
        drift = abs(mod.log_rising_sum(1.0, 2.0, 10**6) - py.log_rising_sum(1.0, 2.0, 10**6))
        print(f"{name:>7} backend: |sum - python sum| at n=1e6 = {drift:.3e}")

    print(f"{'case':<24} {'python s':>12} {'cython s':>12} {'speedup':>9}")
    for label in cases(py):
        t_py = timings[label, "python"]
        t_c = timings.get((label, "cython"), math.nan)
        print(f"{label:<24} {t_py:>12.5f} {t_c:>12.5f} {t_py / t_c:>8.1f}x")


if __name__ == "__main__":
    main()

"""Time the compiled and NumPy kernels on a full-size error scan.

    python benchmarks/bench_kernels.py [--points 100001] [--tau-m 24] [--repeat 5]
"""

import argparse
import timeit

import numpy as np

from gauss_periodize import SeriesParams, order_cap, poisson_coefficients
from gauss_periodize._kernels import available_backends, load_backend
from gauss_periodize.evaluation import symmetric_grid


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--points", type=int, default=100001)
    parser.add_argument("--tau-m", type=float, default=24.0)
    parser.add_argument("--n-max", type=int, default=None, help="default: order cap")
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    n_max = order_cap(args.tau_m) if args.n_max is None else args.n_max
    coeffs = poisson_coefficients(SeriesParams(args.tau_m, n_max)).coeffs
    t = symmetric_grid(args.tau_m, args.points)
    theta = np.pi * t / args.tau_m
    jobs = {
        "clenshaw_cosine": lambda k: k.clenshaw_cosine(coeffs, theta),
        "compensated_cosine": lambda k: k.compensated_cosine(coeffs, theta),
        "periodized_gaussian": lambda k: k.periodized_gaussian(t, args.tau_m, 3),
    }
    backends = available_backends()
    print(f"tau_m={args.tau_m} n_max={n_max} points={args.points} best of {args.repeat}")
    print(f"{'kernel':<22}" + "".join(f"{b:>12}" for b in backends) + f"{'speedup':>10}")
    for name, job in jobs.items():
        times = []
        for b in backends:
            mod = load_backend(b)
            times.append(min(timeit.repeat(lambda: job(mod), number=1, repeat=args.repeat)))
        speed = f"{times[-1] / times[0]:>9.1f}x" if len(times) == 2 else ""
        print(f"{name:<22}" + "".join(f"{x * 1e3:>10.1f}ms" for x in times) + speed)


if __name__ == "__main__":
    main()

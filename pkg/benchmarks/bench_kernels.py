"""Time the compiled and numpy kernel backends on the same batches.

    python benchmarks/bench_kernels.py --trials 200000 --repeat 5
"""
import argparse
import json
import time

import numpy as np

from wmem import kernels

CASES = {
    "proposed-binomial": lambda k, n: k.proposed_batch(0.0025, 20.0, 0.128, -0.064 / 6400, 64, False, 1, 0, n),
    "proposed-bitwise": lambda k, n: k.proposed_batch(0.0025, 20.0, 0.128, -0.064 / 6400, 64, True, 1, 0, n),
    "baseline": lambda k, n: k.baseline_batch(0.0025, 0.064, 1, 0, n),
    "retention": lambda k, n: k.retention_batch(781, -1e-4, 64, 1, 0, n),
}


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--trials", type=int, default=200_000)
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--json", action="store_true", help="print results as JSON")
    args = parser.parse_args(argv)

    results = []
    for name, case in CASES.items():
        row = {"case": name, "trials": args.trials}
        outputs = {}
        for backend, module in sorted(kernels.BACKENDS.items()):
            outputs[backend] = case(module, args.trials)
            row[backend] = best_time(lambda: case(module, args.trials), args.repeat)
        if len(outputs) == 2:
            a, b = outputs["cython"], outputs["python"]
            a, b = (a,) if isinstance(a, np.ndarray) else a, (b,) if isinstance(b, np.ndarray) else b
            # integer columns must agree exactly
            row["identical_counts"] = all(np.array_equal(x, y) for x, y in zip(a, b) if x.dtype.kind in "iub")
            row["speedup"] = row["python"] / row["cython"]
        results.append(row)

    if args.json:
        print(json.dumps(results, indent=2))
        return
    print(f"{'case':<20}{'python s':>12}{'cython s':>12}{'speedup':>10}  counts")
    for r in results:
        cy = r.get("cython", float("nan"))
        sp = r.get("speedup", float("nan"))
        same = {True: "equal", False: "DIFFER"}.get(r.get("identical_counts"), "n/a")
        print(f"{r['case']:<20}{r['python']:>12.4f}{cy:>12.4f}{sp:>10.2f}  {same}")


if __name__ == "__main__":
    main()

"""Compare the compiled numerical core against the pure-numpy fallback.

Two views: raw kernel throughput (both implementations imported side by
side) and an end-to-end geodesic solve (the fallback forced in a child
process via GEOPATHS_PURE_PYTHON, since the backend is picked at import).

Run as ``python3 benchmarks/bench_backends.py [--repeats R]``.
"""

import argparse
import json
import subprocess
import sys
import textwrap
import time

import numpy as np

from geopaths._core import _kernels_py

try:
    from geopaths._core import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeats):
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(repeats):
    rng = np.random.default_rng(7)
    rows = []
    for n_data, n_probe, dim in ((200, 64, 2), (500, 256, 5), (1000, 512, 10)):
        data = rng.normal(size=(n_data, dim))
        probes = rng.normal(size=(n_probe, dim))
        vel = rng.normal(size=(n_probe, dim))
        label = f"metric+rhs {n_data}x{n_probe} d={dim}"

        def run(mod):
            mdiag, jac = mod.local_diag_metric_batch(
                data, probes, 0.04, 0.01, True
            )
            mod.diag_geodesic_rhs_batch(mdiag, jac, vel)

        t_py = best_of(lambda: run(_kernels_py), repeats)
        t_cy = best_of(lambda: run(_kernels), repeats) if _kernels else None
        rows.append((label, t_cy, t_py))
    return rows


SOLVE_SNIPPET = textwrap.dedent("""
    import json, time
    import numpy as np
    import geopaths as gp
    from geopaths import datasets

    ds = datasets.gen_semicircle(200, 0.01, seed=1)
    metric = gp.LocalDiagMetric(ds.points, bandwidth=0.15)
    x, y = ds.points[28], ds.points[102]
    cfg = gp.SolverConfig(mesh_size=25)
    gp.solve_bvp(metric, x, y, cfg)  # warm up
    best = float("inf")
    for _ in range({repeats}):
        t0 = time.perf_counter()
        model, report = gp.solve_bvp(metric, x, y, cfg)
        best = min(best, time.perf_counter() - t0)
    assert report.converged
    print(json.dumps({{"backend": gp.BACKEND, "seconds": best}}))
""")


def bench_solve(repeats):
    import os

    rows = []
    for name, extra in (("compiled", {}), ("pure", {"GEOPATHS_PURE_PYTHON": "1"})):
        env = dict(os.environ)
        env.pop("GEOPATHS_PURE_PYTHON", None)
        env.update(extra)
        proc = subprocess.run(
            [sys.executable, "-c", SOLVE_SNIPPET.format(repeats=repeats)],
            capture_output=True, text=True, env=env,
        )
        if proc.returncode != 0:
            raise RuntimeError(proc.stderr)
        rows.append(json.loads(proc.stdout))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="best-of-R timing (default 5)")
    args = parser.parse_args()

    print(f"{'case':36s} {'compiled':>12s} {'pure':>12s} {'speedup':>9s}")
    for label, t_cy, t_py in bench_kernels(args.repeats):
        cy = f"{1e3 * t_cy:9.3f} ms" if t_cy is not None else "   missing"
        ratio = f"x{t_py / t_cy:7.1f}" if t_cy else "      -"
        print(f"{label:36s} {cy:>12s} {1e3 * t_py:9.3f} ms {ratio:>9s}")

    solves = bench_solve(args.repeats)
    by_backend = {row["backend"]: row["seconds"] for row in solves}
    if "cython" in by_backend:
        cy, py = by_backend["cython"], by_backend["python"]
        print(f"{'full solve (mesh 25, 18 iters)':36s} {1e3 * cy:9.3f} ms "
              f"{1e3 * py:9.3f} ms x{py / cy:7.1f}")
    else:
        py = by_backend["python"]
        print(f"{'full solve (mesh 25, 18 iters)':36s} {'missing':>12s} "
              f"{1e3 * py:9.3f} ms {'-':>9s}")


if __name__ == "__main__":
    main()

"""Experiment configurations and runners behind the command line.

A single JSON document describes an experiment: which dataset, which
metric, solver settings, experiment-specific parameters, and where results
go.  Parsing is strict: unknown fields are rejected with their full path so
typos fail loudly instead of silently running defaults.

Each run writes a JSON summary (per-solve records plus aggregates) and,
for curve-producing experiments, a CSV of curve samples for external
plotting.  All numeric outputs are reproducible bit-for-bit from the seeds
in the config; wall-time fields are the one exception.
"""

from __future__ import annotations

import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from ._core import BACKEND
from .datasets import (
    GENERATORS,
    Dataset,
    embed_orthogonal,
    load_dataset_csv,
    save_dataset_csv,
)
from .maps import curve_length, expmap, speed_profile
from .metrics import ConstantMetric, LocalDiagMetric, PullbackMetric, QuadraticGenerator
from .oracle import (
    DisconnectedGraphError,
    GraphSpec,
    oracle_energy_minimize,
    oracle_graph_distance,
)
from .solver import SolverConfig, solve_bvp

logger = logging.getLogger("geopaths")

EXPERIMENTS = (
    "geodesic",
    "pairwise",
    "expmap",
    "logmap",
    "constant_speed",
    "mesh_scaling",
    "dim_scaling",
    "verify",
    "dataset",
)


class ConfigError(ValueError):
    """Malformed experiment configuration; message carries the field path."""


def _take(doc, path, required=(), optional=()):
    """Pull known fields out of a config dict, rejecting everything else."""
    if not isinstance(doc, dict):
        raise ConfigError(f"'{path}' must be a JSON object")
    out = {}
    doc = dict(doc)
    for key in required:
        if key not in doc:
            raise ConfigError(f"missing field '{path}.{key}'")
        out[key] = doc.pop(key)
    for key in optional:
        if key in doc:
            out[key] = doc.pop(key)
    if doc:
        stray = ", ".join(f"'{path}.{k}'" for k in sorted(doc))
        raise ConfigError(f"unknown field(s): {stray}")
    return out


@dataclass
class ExperimentConfig:
    """Parsed experiment description (see FORMATS.md for the schema)."""

    experiment: str
    dataset: dict | None
    metric: dict
    solver: SolverConfig
    params: dict
    output: dict
    raw: dict

    @classmethod
    def from_file(cls, path, expected=None):
        try:
            with open(path) as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as err:
            raise ConfigError(
                f"{path} is not valid JSON: {err.msg} at line {err.lineno} "
                f"column {err.colno}"
            ) from err
        except OSError as err:
            raise ConfigError(f"cannot read config {path}: {err}") from err
        return cls.from_dict(doc, expected=expected)

    @classmethod
    def from_dict(cls, doc, expected=None):
        raw = json.loads(json.dumps(doc))  # defensive copy, JSON-typed
        top = _take(
            doc, "config",
            required=(),
            optional=("experiment", "dataset", "metric", "solver", "params", "output"),
        )
        experiment = top.get("experiment", expected)
        if experiment is None:
            raise ConfigError("missing field 'config.experiment'")
        if experiment not in EXPERIMENTS:
            raise ConfigError(
                f"unknown experiment '{experiment}'; expected one of "
                + ", ".join(EXPERIMENTS)
            )
        if expected is not None and experiment != expected:
            raise ConfigError(
                f"config declares experiment '{experiment}' but the "
                f"'{expected}' subcommand was invoked"
            )

        dataset = top.get("dataset")
        if dataset is not None:
            dataset = _take(
                dataset, "dataset",
                required=("kind",),
                optional=(
                    "n", "noise_var", "seed", "path", "header",
                    "embed_dim", "embed_noise_var", "embed_seed", "upper_only",
                ),
            )
            if dataset["kind"] not in (*GENERATORS, "file"):
                raise ConfigError(
                    f"unknown dataset kind '{dataset['kind']}'; expected one of "
                    + ", ".join((*GENERATORS, "file"))
                )
            if dataset["kind"] == "file" and "path" not in dataset:
                raise ConfigError("dataset kind 'file' requires 'dataset.path'")

        metric = top.get("metric", {"kind": "local_diag"})
        metric = _take(
            metric, "metric",
            required=("kind",),
            optional=(
                "bandwidth", "variance_floor", "matrix", "dim",
                "generator_path", "fd_step", "jitter",
            ),
        )
        if metric["kind"] not in ("local_diag", "constant", "quadratic", "generator"):
            raise ConfigError(
                f"unknown metric kind '{metric['kind']}'; expected one of "
                "local_diag, constant, quadratic, generator"
            )

        solver_doc = _take(
            top.get("solver", {}), "solver",
            optional=(
                "mesh_size", "epsilon", "tolerance", "max_iterations",
                "length_scale_sq", "mann_schedule", "stagnation_limit",
            ),
        )
        try:
            solver = SolverConfig(**solver_doc)
        except (TypeError, ValueError) as err:
            raise ConfigError(f"bad solver config: {err}") from err

        params = top.get("params", {})
        if not isinstance(params, dict):
            raise ConfigError("'config.params' must be a JSON object")

        output = _take(
            top.get("output", {}), "output", optional=("summary", "curves")
        )
        return cls(
            experiment=experiment, dataset=dataset, metric=metric,
            solver=solver, params=params, output=output, raw=raw,
        )


def build_dataset(spec):
    """Materialize a dataset from its config block (None passes through)."""
    if spec is None:
        return None
    kind = spec["kind"]
    if kind == "file":
        data = load_dataset_csv(spec["path"], header=spec.get("header", False))
    else:
        kwargs = {
            "n": spec.get("n", 200),
            "noise_var": spec.get("noise_var", 0.01),
            "seed": spec.get("seed", 0),
        }
        if kind == "sphere" and "upper_only" in spec:
            kwargs["upper_only"] = spec["upper_only"]
        data = GENERATORS[kind](**kwargs)
    if spec.get("embed_dim"):
        data = embed_orthogonal(
            data,
            target_dim=spec["embed_dim"],
            noise_var=spec.get("embed_noise_var", 0.0),
            seed=spec.get("embed_seed", 0),
        )
    return data


def build_metric(spec, dataset=None):
    """Materialize a metric field from its config block."""
    kind = spec["kind"]
    if kind == "local_diag":
        if dataset is None:
            raise ConfigError("metric kind 'local_diag' requires a dataset")
        return LocalDiagMetric(
            dataset.points,
            bandwidth=spec.get("bandwidth", 0.15),
            variance_floor=spec.get("variance_floor", 0.01),
        )
    if kind == "constant":
        if spec.get("matrix") is not None:
            return ConstantMetric(np.asarray(spec["matrix"], dtype=float))
        dim = spec.get("dim") or (dataset.dim if dataset is not None else None)
        if dim is None:
            raise ConfigError("metric kind 'constant' needs 'matrix' or 'dim'")
        return ConstantMetric.identity(int(dim))
    if kind == "quadratic":
        return PullbackMetric(
            QuadraticGenerator(),
            fd_step=spec.get("fd_step", 1e-4),
            jitter=spec.get("jitter", 1e-10),
        )
    if spec.get("generator_path") is None:
        raise ConfigError("metric kind 'generator' requires 'metric.generator_path'")
    return PullbackMetric.from_json(
        spec["generator_path"],
        fd_step=spec.get("fd_step", 1e-4),
        jitter=spec.get("jitter", 1e-10),
    )


def sample_index_pairs(n_points, num_pairs, seed):
    """Deterministic distinct index pairs for batch experiments."""
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < num_pairs:
        i, j = (int(v) for v in rng.integers(0, n_points, 2))
        if i != j:
            pairs.append((i, j))
    return pairs


def _solve_task(task):
    """One boundary-value solve with optional extras; runs in workers."""
    metric = task["metric"]
    x, y = task["x"], task["y"]
    t0 = time.perf_counter()
    model, report = solve_bvp(metric, x, y, task["config"])
    wall = time.perf_counter() - t0
    record = {
        "start": x.tolist(),
        "end": y.tolist(),
        "length": curve_length(metric, model),
        "iterations": report.iterations,
        "converged": bool(report.converged),
        "max_residual": report.max_residual,
        "failure_reason": report.failure_reason,
        "wall_time": wall,
    }
    out = {"record": record, "curve": None}
    if task.get("curve_samples"):
        ts = np.linspace(0.0, 1.0, task["curve_samples"])
        out["curve"] = np.column_stack([ts, model.eval(ts, 0)])
    if task.get("speed_samples"):
        prof = speed_profile(metric, model, task["speed_samples"])
        record["speed_mean"] = prof.mean
        record["speed_std"] = prof.std
        record["speed_cv"] = prof.coefficient_of_variation
    if task.get("logmap_roundtrip"):
        v = model.eval(0.0, order=1)
        record["initial_velocity"] = v.tolist()
        try:
            traj = expmap(metric, x, v)
            record["roundtrip_error"] = float(
                np.linalg.norm(traj.endpoint - y)
            )
        except Exception as err:  # honest failure beats a crashed batch
            record["roundtrip_error"] = None
            record["roundtrip_failure"] = str(err)
    return out


def _run_tasks(tasks, jobs):
    if jobs <= 1:
        return [_solve_task(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_solve_task, tasks))


# params fields consumed by _resolve_pairs
_PAIR_FIELDS = ("endpoints", "pairs", "num_pairs", "seed")


def _take_params(config, *extra):
    """Strictly validate the free-form params block of an experiment."""
    return _take(dict(config.params), "params", optional=_PAIR_FIELDS + extra)


def _resolve_pairs(params, dataset, seed_override, default_pairs=5):
    """Endpoint pairs from explicit coordinates, indices, or sampling."""
    if "endpoints" in params:
        return [
            (np.asarray(p["start"], dtype=float), np.asarray(p["end"], dtype=float))
            for p in params["endpoints"]
        ]
    if dataset is None:
        raise ConfigError("index-based pairs need a dataset")
    if "pairs" in params:
        idx = [(int(i), int(j)) for i, j in params["pairs"]]
    else:
        seed = seed_override if seed_override is not None else params.get("seed", 0)
        idx = sample_index_pairs(
            len(dataset), params.get("num_pairs", default_pairs), seed
        )
    return [(dataset.points[i].copy(), dataset.points[j].copy()) for i, j in idx]


def pairwise_distances(points, indices, metric, config, jobs=1):
    """Distance matrix over selected rows of a point set.

    Solves the upper triangle only and mirrors it; the diagonal is zero.
    Entries for failed solves still carry their lengths; the companion
    boolean matrix says which entries to trust.

    Returns
    -------
    (distances, converged, records)
        m x m float matrix, m x m boolean matrix, and the flat per-pair
        records in upper-triangle order.
    """
    indices = [int(i) for i in indices]
    m = len(indices)
    tasks = []
    for a in range(m):
        for b in range(a + 1, m):
            tasks.append({
                "metric": metric,
                "x": np.asarray(points[indices[a]], dtype=float),
                "y": np.asarray(points[indices[b]], dtype=float),
                "config": config,
            })
    results = _run_tasks(tasks, jobs)
    dist = np.zeros((m, m))
    conv = np.ones((m, m), dtype=bool)
    records = []
    k = 0
    for a in range(m):
        for b in range(a + 1, m):
            rec = results[k]["record"]
            rec["i"], rec["j"] = indices[a], indices[b]
            dist[a, b] = dist[b, a] = rec["length"]
            conv[a, b] = conv[b, a] = rec["converged"]
            records.append(rec)
            k += 1
    return dist, conv, records


def _write_summary(path, doc):
    if not path:
        return
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, default=_jsonable)
    logger.info("wrote summary %s", path)


def _jsonable(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _write_curves(path, curves, dim):
    """Curve-sample CSV: one row per sample, tagged by solve index."""
    if not path or not curves:
        return
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    header = "solve,t," + ",".join(f"c{d}" for d in range(dim))
    rows = []
    for k, curve in enumerate(curves):
        if curve is None:
            continue
        for row in curve:
            rows.append(f"{k}," + ",".join(repr(float(v)) for v in row))
    with open(path, "w") as fh:
        fh.write(header + "\n")
        fh.write("\n".join(rows) + "\n")
    logger.info("wrote curves %s", path)


def run_experiment(config, jobs=1, allow_failures=False, seed=None):
    """Execute a parsed config; returns the CLI exit code (0 = success)."""
    t_start = time.perf_counter()
    dataset = build_dataset(config.dataset)
    runner = _RUNNERS[config.experiment]
    summary, curves, ok = runner(config, dataset, jobs, seed)
    summary["experiment"] = config.experiment
    summary["backend"] = BACKEND
    summary["config"] = config.raw
    summary["wall_time_total"] = time.perf_counter() - t_start
    _write_summary(config.output.get("summary"), summary)
    if curves is not None:
        dim = curves[0].shape[1] - 1 if curves else 0
        _write_curves(config.output.get("curves"), curves, dim)
    if ok or allow_failures:
        return 0
    return 1


def _records_ok(records):
    return all(r.get("converged", True) for r in records)


def _run_geodesic(config, dataset, jobs, seed):
    metric = build_metric(config.metric, dataset)
    params = _take_params(config, "curve_samples")
    pairs = _resolve_pairs(params, dataset, seed)
    samples = params.get("curve_samples", 101)
    tasks = [
        {"metric": metric, "x": x, "y": y, "config": config.solver,
         "curve_samples": samples}
        for x, y in pairs
    ]
    results = _run_tasks(tasks, jobs)
    records = [r["record"] for r in results]
    for k, rec in enumerate(records):
        logger.info(
            "geodesic %d: length=%.6g iterations=%d converged=%s",
            k, rec["length"], rec["iterations"], rec["converged"],
        )
    summary = {
        "results": records,
        "aggregate": {
            "num_solves": len(records),
            "num_converged": sum(r["converged"] for r in records),
            "mean_length": float(np.mean([r["length"] for r in records])),
        },
    }
    return summary, [r["curve"] for r in results], _records_ok(records)


def _run_pairwise(config, dataset, jobs, seed):
    if dataset is None:
        raise ConfigError("pairwise experiment requires a dataset")
    metric = build_metric(config.metric, dataset)
    params = _take(
        dict(config.params), "params",
        optional=("indices", "num_points", "seed"),
    )
    if "indices" in params:
        indices = [int(i) for i in params["indices"]]
    else:
        rng = np.random.default_rng(
            seed if seed is not None else params.get("seed", 0)
        )
        num = params.get("num_points", 10)
        indices = [int(i) for i in rng.choice(len(dataset), size=num, replace=False)]
    dist, conv, records = pairwise_distances(
        dataset.points, indices, metric, config.solver, jobs
    )
    summary = {
        "indices": indices,
        "distances": dist.tolist(),
        "converged": conv.tolist(),
        "results": records,
        "aggregate": {
            "num_solves": len(records),
            "num_converged": int(sum(r["converged"] for r in records)),
        },
    }
    return summary, None, _records_ok(records)


def _run_expmap(config, dataset, jobs, seed):
    metric = build_metric(config.metric, dataset)
    params = _take(
        dict(config.params), "params",
        required=("start", "velocity"),
        optional=("tol", "curve_samples"),
    )
    x = np.asarray(params["start"], dtype=float)
    v = np.asarray(params["velocity"], dtype=float)
    tol = params.get("tol", 1e-8)
    samples = params.get("curve_samples", 101)
    t0 = time.perf_counter()
    try:
        traj = expmap(metric, x, v, tol)
    except Exception as err:
        summary = {"results": [{"converged": False, "failure_reason": str(err)}]}
        return summary, None, False
    wall = time.perf_counter() - t0
    ts = np.linspace(0.0, 1.0, samples)
    prof = speed_profile(metric, traj, samples)
    record = {
        "start": x.tolist(),
        "velocity": v.tolist(),
        "endpoint": traj.endpoint.tolist(),
        "endpoint_velocity": traj.endpoint_velocity.tolist(),
        "steps": traj.steps,
        "max_error_estimate": traj.max_error_estimate,
        "speed_mean": prof.mean,
        "speed_cv": prof.coefficient_of_variation,
        "converged": True,
        "wall_time": wall,
    }
    curve = np.column_stack([ts, traj.eval(ts, 0)])
    return {"results": [record]}, [curve], True


def _run_logmap(config, dataset, jobs, seed):
    metric = build_metric(config.metric, dataset)
    params = _take_params(config, "curve_samples")
    pairs = _resolve_pairs(params, dataset, seed)
    samples = params.get("curve_samples", 101)
    tasks = [
        {"metric": metric, "x": x, "y": y, "config": config.solver,
         "curve_samples": samples, "logmap_roundtrip": True}
        for x, y in pairs
    ]
    results = _run_tasks(tasks, jobs)
    records = [r["record"] for r in results]
    summary = {
        "results": records,
        "aggregate": {
            "num_solves": len(records),
            "num_converged": sum(r["converged"] for r in records),
        },
    }
    return summary, [r["curve"] for r in results], _records_ok(records)


def _run_constant_speed(config, dataset, jobs, seed):
    metric = build_metric(config.metric, dataset)
    params = _take_params(config, "mesh_sizes", "speed_samples")
    mesh_sizes = params.get("mesh_sizes", [5, 10, 25, 50, 100])
    pairs = _resolve_pairs(params, dataset, seed, default_pairs=10)
    speed_samples = params.get("speed_samples", 101)
    records, table = [], []
    for n in mesh_sizes:
        cfg = replace(config.solver, mesh_size=int(n))
        tasks = [
            {"metric": metric, "x": x, "y": y, "config": cfg,
             "speed_samples": speed_samples}
            for x, y in pairs
        ]
        results = _run_tasks(tasks, jobs)
        for r in results:
            r["record"]["mesh_size"] = int(n)
            records.append(r["record"])
        good = [r["record"] for r in results if r["record"]["converged"]]
        table.append({
            "mesh_size": int(n),
            "num_converged": len(good),
            "mean_speed": float(np.mean([g["speed_mean"] for g in good])) if good else None,
            "mean_std": float(np.mean([g["speed_std"] for g in good])) if good else None,
            "mean_cv": float(np.mean([g["speed_cv"] for g in good])) if good else None,
        })
        logger.info("constant_speed mesh=%d: %s", n, table[-1])
    summary = {"results": records, "table": table}
    return summary, None, _records_ok(records)


def _run_mesh_scaling(config, dataset, jobs, seed):
    metric = build_metric(config.metric, dataset)
    params = _take_params(config, "mesh_sizes")
    mesh_sizes = params.get("mesh_sizes", [10, 20, 40, 80])
    pairs = _resolve_pairs(params, dataset, seed, default_pairs=5)
    records, table = [], []
    for n in mesh_sizes:
        cfg = replace(config.solver, mesh_size=int(n))
        tasks = [
            {"metric": metric, "x": x, "y": y, "config": cfg} for x, y in pairs
        ]
        results = _run_tasks(tasks, jobs)
        for r in results:
            r["record"]["mesh_size"] = int(n)
            records.append(r["record"])
        rows = [r["record"] for r in results]
        table.append({
            "mesh_size": int(n),
            "success_rate": float(np.mean([r["converged"] for r in rows])),
            "mean_iterations": float(np.mean([r["iterations"] for r in rows])),
            "mean_wall_time": float(np.mean([r["wall_time"] for r in rows])),
        })
        logger.info("mesh_scaling mesh=%d: %s", n, table[-1])
    summary = {"results": records, "table": table}
    return summary, None, _records_ok(records)


def _run_dim_scaling(config, dataset, jobs, seed):
    if dataset is None:
        raise ConfigError("dim_scaling experiment requires a dataset")
    params = _take(
        dict(config.params), "params",
        optional=("dims", "num_pairs", "seed", "embed_noise_var",
                  "embed_seed", "embed_restandardize"),
    )
    dims = params.get("dims", [2, 5, 10])
    num_pairs = params.get("num_pairs", 10)
    pair_seed = seed if seed is not None else params.get("seed", 0)
    idx = sample_index_pairs(len(dataset), num_pairs, pair_seed)
    embed_noise = params.get("embed_noise_var", 0.0)
    restandardize = params.get("embed_restandardize", False)
    records, table = [], []
    for d in dims:
        embedded = embed_orthogonal(
            dataset, target_dim=int(d), noise_var=embed_noise,
            seed=params.get("embed_seed", 0), restandardize=restandardize,
        )
        metric = build_metric(config.metric, embedded)
        tasks = [
            {"metric": metric, "x": embedded.points[i].copy(),
             "y": embedded.points[j].copy(), "config": config.solver}
            for i, j in idx
        ]
        results = _run_tasks(tasks, jobs)
        for r in results:
            r["record"]["dim"] = int(d)
            records.append(r["record"])
        rows = [r["record"] for r in results]
        table.append({
            "dim": int(d),
            "success_rate": float(np.mean([r["converged"] for r in rows])),
            "mean_iterations": float(np.mean([r["iterations"] for r in rows])),
            "mean_wall_time": float(np.mean([r["wall_time"] for r in rows])),
        })
        logger.info("dim_scaling dim=%d: %s", d, table[-1])
    summary = {"results": records, "table": table}
    return summary, None, _records_ok(records)


def _run_verify(config, dataset, jobs, seed):
    if dataset is None:
        raise ConfigError("verify experiment requires a dataset")
    metric = build_metric(config.metric, dataset)
    params = _take_params(
        config, "waypoints", "oracle_iters", "length_tol", "graph_slack",
        "grid_margin", "grid_resolution",
    )
    pairs = _resolve_pairs(params, dataset, seed, default_pairs=6)
    waypoints = params.get("waypoints", 64)
    oracle_iters = params.get("oracle_iters", 400)
    length_tol = params.get("length_tol", 0.05)
    graph_slack = params.get("graph_slack", 0.02)
    grid = GraphSpec.around(
        dataset.points,
        margin=params.get("grid_margin", 0.3),
        resolution=params.get("grid_resolution", 31),
    )
    records = []
    all_ok = True
    for k, (x, y) in enumerate(pairs):
        t0 = time.perf_counter()
        model, report = solve_bvp(metric, x, y, config.solver)
        length = curve_length(metric, model)
        _, energy_len = oracle_energy_minimize(
            metric, x, y, waypoints=waypoints, iters=oracle_iters
        )
        try:
            graph_len = oracle_graph_distance(metric, x, y, grid)
            graph_ok = graph_len >= length * (1.0 - graph_slack)
        except DisconnectedGraphError as err:
            graph_len, graph_ok = None, False
            logger.warning("verify pair %d: graph oracle failed: %s", k, err)
        energy_ok = abs(length - energy_len) <= length_tol * energy_len
        ok = bool(report.converged and energy_ok and graph_ok)
        all_ok = all_ok and ok
        records.append({
            "start": x.tolist(),
            "end": y.tolist(),
            "converged": bool(report.converged),
            "iterations": report.iterations,
            "solver_length": length,
            "energy_oracle_length": energy_len,
            "graph_oracle_length": graph_len,
            "energy_ok": bool(energy_ok),
            "graph_ok": bool(graph_ok),
            "pass": ok,
            "wall_time": time.perf_counter() - t0,
        })
        logger.info("verify pair %d: %s", k, records[-1])
    summary = {
        "results": records,
        "aggregate": {
            "num_pairs": len(records),
            "num_pass": sum(r["pass"] for r in records),
        },
    }
    return summary, None, all_ok


def _run_dataset(config, dataset, jobs, seed):
    if dataset is None:
        raise ConfigError("dataset experiment requires a 'dataset' block")
    params = _take(
        dict(config.params), "params", required=("out",), optional=("header",)
    )
    out = params["out"]
    os.makedirs(os.path.dirname(os.path.abspath(out)), exist_ok=True)
    save_dataset_csv(dataset, out, header=params.get("header", False))
    logger.info("wrote dataset %s", out)
    summary = {
        "results": [],
        "dataset_file": out,
        "n": len(dataset),
        "dim": dataset.dim,
    }
    return summary, None, True


_RUNNERS = {
    "geodesic": _run_geodesic,
    "pairwise": _run_pairwise,
    "expmap": _run_expmap,
    "logmap": _run_logmap,
    "constant_speed": _run_constant_speed,
    "mesh_scaling": _run_mesh_scaling,
    "dim_scaling": _run_dim_scaling,
    "verify": _run_verify,
    "dataset": _run_dataset,
}


__all__ = [
    "ExperimentConfig",
    "ConfigError",
    "run_experiment",
    "pairwise_distances",
    "build_dataset",
    "build_metric",
    "sample_index_pairs",
    "EXPERIMENTS",
]

"""Fixed-point solver for the geodesic boundary-value problem.

The curve model pins positions at both endpoints; the free parameters are
the acceleration values at the mesh knots.  The solver repeatedly replaces
those parameters by the geodesic-equation right-hand side evaluated on the
current curve (a Mann-style relaxation), damped by backtracking: candidate
steps are tried at ratios 1, 1/3, 1/9, 1/27 and the first one that does not
increase the summed squared residual is taken.  When every candidate
increases it, the smallest step is taken anyway and a stagnation counter
runs; too many consecutive such steps abort the solve.

Convergence means every per-knot squared residual is at or below the
tolerance.  No derivatives of the residual map are ever formed, which is
the point: each iteration costs a handful of metric evaluations and two
cached matrix products per curve quantity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geodesic_ode import MetricError, rhs_at_points
from .kernel_gp import GeodesicModel, KernelParams, Mesh, build_gram

BACKTRACK_RATIOS = (1.0, 1.0 / 3.0, 1.0 / 9.0, 1.0 / 27.0)
DEFAULT_STAGNATION_LIMIT = 25


@dataclass(frozen=True)
class SolverConfig:
    """Knobs of the boundary-value solve.

    ``mesh_size`` counts the uniform knots (endpoints included) where
    accelerations are parameterized; ``tolerance`` applies to each knot's
    squared residual norm.  ``length_scale_sq=None`` derives the kernel
    length-scale from the mesh (half the knot spacing).  ``mann_schedule``
    swaps backtracking for the classical decaying relaxation
    ``alpha_i = 1/(i+1)``; it exists for experimentation and is not the
    default for a reason.
    """

    mesh_size: int = 10
    epsilon: float = 1e-7
    tolerance: float = 0.1
    max_iterations: int = 1000
    backtrack_ratios: tuple = BACKTRACK_RATIOS
    stagnation_limit: int = DEFAULT_STAGNATION_LIMIT
    length_scale_sq: float | None = None
    mann_schedule: bool = False

    def __post_init__(self):
        if self.mesh_size < 3:
            raise ValueError("mesh_size must be at least 3")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")
        if self.stagnation_limit < 1:
            raise ValueError("stagnation_limit must be at least 1")


@dataclass
class SolveReport:
    """Outcome of one boundary-value solve.

    ``iterations`` counts residual evaluations of accepted states, so a
    problem whose initial straight line already satisfies the tolerance
    reports 1.  ``alpha_history`` records the step ratio chosen at each
    iteration past the first.  ``failure_reason`` is one of
    "max_iterations", "stagnation", or "metric_failure(t=...)" when
    ``converged`` is False.
    """

    converged: bool
    iterations: int
    final_residuals: np.ndarray
    alpha_history: list = field(default_factory=list)
    failure_reason: str | None = None

    @property
    def max_residual(self):
        return float(np.max(self.final_residuals))

    @property
    def total_residual(self):
        return float(np.sum(self.final_residuals))


def _knot_state(model, metric, accelerations):
    """Residual-map evaluation at every knot for a parameter matrix.

    Returns (rhs values f, per-knot squared residuals e).  Metric failures
    are re-raised tagged with the knot index.
    """
    pos = model.eval_at_knots(0, accelerations)
    vel = model.eval_at_knots(1, accelerations)
    f = rhs_at_points(metric, pos, vel)
    e = np.sum((accelerations - f) ** 2, axis=1)
    return f, e


def fixed_point_step(model, metric):
    """Target accelerations: the geodesic RHS along the current curve.

    Evaluates position and velocity at all knots through the cached weight
    tables and applies the geodesic equation at each.  A model is a fixed
    point exactly when this returns its own parameters.
    """
    f, _ = _knot_state(model, metric, model.knot_accelerations)
    return f


def residuals(model, metric):
    """Per-knot squared defect between parameters and the geodesic RHS."""
    _, e = _knot_state(model, metric, model.knot_accelerations)
    return e


def accelerations_from_polyline(polyline, mesh):
    """Second-difference accelerations of a polyline, resampled at knots.

    The polyline rows are positions at uniformly spaced curve times.  Used
    to warm start a solve from a previous or heuristic curve.
    """
    poly = np.atleast_2d(np.asarray(polyline, dtype=float))
    if poly.shape[0] < 3:
        raise ValueError("polyline needs at least 3 rows")
    ts = np.linspace(0.0, 1.0, poly.shape[0])
    resampled = np.column_stack(
        [np.interp(mesh.knots, ts, poly[:, d]) for d in range(poly.shape[1])]
    )
    h = mesh.spacing
    acc = np.zeros_like(resampled)
    acc[1:-1] = (resampled[:-2] - 2.0 * resampled[1:-1] + resampled[2:]) / h**2
    acc[0] = acc[1]
    acc[-1] = acc[-2]
    return acc


def solve_bvp(metric, x, y, config=None, initial_curve=None):
    """Fit knot accelerations so the curve model solves the geodesic BVP.

    Parameters
    ----------
    metric : MetricField
        Metric defining the geodesic equation.
    x, y : ndarray
        Boundary points in R^D.
    config : SolverConfig, optional
    initial_curve : ndarray, optional
        Polyline (rows = positions at uniform times) to warm start from;
        default starts from zero accelerations (the straight line).

    Returns
    -------
    (GeodesicModel, SolveReport)
        The model carries the final accelerations whether or not the solve
        converged; check ``report.converged``.
    """
    config = config or SolverConfig()
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("boundary points must be 1-D arrays of equal shape")
    if metric.dim is not None and metric.dim != x.size:
        raise ValueError(
            f"metric dimension {metric.dim} does not match points in R^{x.size}"
        )

    mesh = Mesh.uniform(config.mesh_size)
    kernel = KernelParams.defaults(
        mesh, x.size, data=metric.training_data, boundary=(x, y)
    )
    if config.length_scale_sq is not None:
        kernel = KernelParams(config.length_scale_sq, kernel.amplitude)
    gram = build_gram(mesh, kernel, config.epsilon)

    if initial_curve is None:
        acc = np.zeros((mesh.size, x.size))
    else:
        acc = accelerations_from_polyline(initial_curve, mesh)
    model = GeodesicModel(
        mesh=mesh, kernel=kernel, gram=gram, start=x, end=y,
        knot_accelerations=acc,
    )

    def fail_metric(err, last_acc):
        knot = err.point_index
        where = f"t={mesh.knots[knot]:.6g}" if knot is not None else "unknown t"
        final = model.with_accelerations(last_acc)
        try:
            _, e = _knot_state(final, metric, last_acc)
        except MetricError:
            e = np.full(mesh.size, np.inf)
        return final, SolveReport(
            converged=False, iterations=iterations, final_residuals=e,
            alpha_history=alpha_history,
            failure_reason=f"metric_failure({where})",
        )

    iterations = 0
    alpha_history = []
    try:
        f, e = _knot_state(model, metric, acc)
    except MetricError as err:
        return fail_metric(err, acc)
    iterations = 1
    total = float(e.sum())
    stagnation = 0
    converged = False
    reason = None

    while True:
        if e.max() <= config.tolerance:
            converged = True
            break
        if iterations >= config.max_iterations:
            reason = "max_iterations"
            break
        if stagnation >= config.stagnation_limit:
            reason = "stagnation"
            break

        if config.mann_schedule:
            ratios = (1.0 / (len(alpha_history) + 1.0),)
        else:
            ratios = config.backtrack_ratios
        accepted = False
        for alpha in ratios:
            cand = (1.0 - alpha) * acc + alpha * f
            try:
                f_cand, e_cand = _knot_state(model, metric, cand)
            except MetricError as err:
                return fail_metric(err, acc)
            if e_cand.sum() <= total:
                accepted = True
                break
        # every candidate increased the error: take the smallest step anyway
        stagnation = 0 if accepted else stagnation + 1
        acc, f, e = cand, f_cand, e_cand
        total = float(e.sum())
        alpha_history.append(alpha)
        iterations += 1

    model = model.with_accelerations(acc)
    return model, SolveReport(
        converged=converged,
        iterations=iterations,
        final_residuals=e,
        alpha_history=alpha_history,
        failure_reason=reason,
    )


__all__ = [
    "SolverConfig",
    "SolveReport",
    "solve_bvp",
    "residuals",
    "fixed_point_step",
    "accelerations_from_polyline",
    "BACKTRACK_RATIOS",
]

"""Lengths, speeds, and the exponential / logarithm maps.

A "curve" here is any object with ``eval(t, order)`` returning position
(order 0) or velocity (order 1) at ``t`` in [0, 1], vectorized over arrays
of ``t``.  The solved curve model satisfies this, as do the adapters below
and the trajectories produced by :func:`expmap`.

The exponential map integrates the geodesic equation as a first-order
system in (position, velocity) with an embedded Dormand-Prince 4(5) pair
and proportional step control.  The logarithm map solves the boundary-value
problem and reads off the initial velocity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geodesic_ode import MetricError, geodesic_rhs, geodesic_rhs_diagonal
from .solver import SolverConfig, solve_bvp

DEFAULT_QUAD_SUBINTERVALS = 32
DEFAULT_IVP_TOL = 1e-8

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(5)


class IntegrationError(RuntimeError):
    """Raised when the initial-value integration cannot continue.

    ``reached_t`` is how far along [0, 1] the integrator got.
    """

    def __init__(self, message, reached_t):
        self.reached_t = float(reached_t)
        super().__init__(f"{message} (reached t={self.reached_t:.6g})")


class StraightLine:
    """The segment x + t (y - x); the flat-space geodesic."""

    def __init__(self, x, y):
        self.x = np.asarray(x, dtype=float)
        self.y = np.asarray(y, dtype=float)

    def eval(self, t, order=0):
        t = np.asarray(t, dtype=float)
        span = self.y - self.x
        if order == 0:
            return self.x + np.multiply.outer(t, span)
        if order == 1:
            return np.broadcast_to(span, t.shape + span.shape).copy()
        return np.zeros(t.shape + span.shape)

    def __call__(self, t, order=0):
        return self.eval(t, order)


class ParametricCurve:
    """Adapter wrapping position/velocity callables of a scalar ``t``."""

    def __init__(self, position, velocity):
        self.position = position
        self.velocity = velocity

    def eval(self, t, order=0):
        fn = self.position if order == 0 else self.velocity
        if np.ndim(t) == 0:
            return np.asarray(fn(float(t)), dtype=float)
        return np.stack([np.asarray(fn(float(tt)), dtype=float) for tt in np.asarray(t)])

    def __call__(self, t, order=0):
        return self.eval(t, order)


def _squared_speeds(metric, pos, vel, times):
    """c-dot' M(c) c-dot at each sample, with the offending t on failure."""
    if metric.is_diagonal:
        mdiag = metric.diag_batch(pos)
        sq = np.sum(mdiag * vel * vel, axis=1)
    else:
        sq = np.array([v @ metric.metric_at(x) @ v for x, v in zip(pos, vel)])
    if np.any(sq < 0) or not np.all(np.isfinite(sq)):
        bad = int(np.argmin(np.where(np.isfinite(sq), sq, -np.inf)))
        raise MetricError(
            f"metric produced an invalid squared speed {sq[bad]:.3e} "
            f"at t={times[bad]:.6g}"
        )
    return sq


def curve_length(metric, curve, quad_points=DEFAULT_QUAD_SUBINTERVALS):
    """Length of a curve under the metric.

    Composite Gauss-Legendre quadrature: ``quad_points`` equal subintervals
    of [0, 1], order-5 rule on each, applied to the speed integrand
    sqrt(c-dot' M(c) c-dot).
    """
    if quad_points < 2:
        raise ValueError("quad_points must be at least 2")
    edges = np.linspace(0.0, 1.0, quad_points + 1)
    half = 0.5 * (edges[1] - edges[0])
    mids = 0.5 * (edges[:-1] + edges[1:])
    times = (mids[:, None] + half * _GL_NODES[None, :]).ravel()
    weights = np.tile(half * _GL_WEIGHTS, quad_points)
    pos = curve.eval(times, 0)
    vel = curve.eval(times, 1)
    sq = _squared_speeds(metric, pos, vel, times)
    return float(weights @ np.sqrt(sq))


@dataclass
class SpeedProfile:
    """Speeds at uniform curve times, with their mean and spread."""

    t: np.ndarray
    speeds: np.ndarray
    mean: float
    std: float

    @property
    def coefficient_of_variation(self):
        return self.std / self.mean if self.mean > 0 else np.inf


def speed_profile(metric, curve, samples=101):
    """Speed sqrt(c-dot' M(c) c-dot) at ``samples`` uniform times.

    A true geodesic has constant speed, so ``std`` (equivalently the
    coefficient of variation) measures how far a fitted curve is from
    geodesic parameterization.
    """
    if samples < 2:
        raise ValueError("samples must be at least 2")
    t = np.linspace(0.0, 1.0, samples)
    pos = curve.eval(t, 0)
    vel = curve.eval(t, 1)
    speeds = np.sqrt(_squared_speeds(metric, pos, vel, t))
    return SpeedProfile(
        t=t, speeds=speeds, mean=float(speeds.mean()), std=float(speeds.std())
    )


# Dormand-Prince 4(5) tableau; row 7 doubles as the 5th-order weights (FSAL).
_DP_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_DP_A = [
    np.array([]),
    np.array([1 / 5]),
    np.array([3 / 40, 9 / 40]),
    np.array([44 / 45, -56 / 15, 32 / 9]),
    np.array([19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729]),
    np.array([9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656]),
    np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84]),
]
_DP_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_DP_B4 = np.array(
    [5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40]
)
_DP_ERR = _DP_B5 - _DP_B4

_MAX_STEP = 0.25
_MIN_STEP = 1e-13
_MAX_STEPS = 100_000


@dataclass
class IvpTrajectory:
    """Solution samples of an initial-value geodesic integration.

    Samples sit at the integrator's accepted steps; evaluation between them
    uses cubic Hermite interpolation on positions (velocities are its exact
    derivative).  The first sample is the initial condition, untouched.
    """

    ts: np.ndarray
    positions: np.ndarray
    velocities: np.ndarray
    steps: int
    max_error_estimate: float

    @property
    def endpoint(self):
        return self.positions[-1]

    @property
    def endpoint_velocity(self):
        return self.velocities[-1]

    def eval(self, t, order=0):
        scalar = np.ndim(t) == 0
        t = np.atleast_1d(np.asarray(t, dtype=float))
        idx = np.clip(np.searchsorted(self.ts, t, side="right") - 1, 0, len(self.ts) - 2)
        t0 = self.ts[idx]
        dt = self.ts[idx + 1] - t0
        s = np.clip((t - t0) / dt, 0.0, 1.0)[:, None]
        p0, p1 = self.positions[idx], self.positions[idx + 1]
        v0, v1 = self.velocities[idx], self.velocities[idx + 1]
        dt = dt[:, None]
        if order == 0:
            out = (
                (2 * s**3 - 3 * s**2 + 1) * p0
                + (s**3 - 2 * s**2 + s) * dt * v0
                + (-2 * s**3 + 3 * s**2) * p1
                + (s**3 - s**2) * dt * v1
            )
        elif order == 1:
            out = (
                (6 * s**2 - 6 * s) * p0 / dt
                + (3 * s**2 - 4 * s + 1) * v0
                + (-6 * s**2 + 6 * s) * p1 / dt
                + (3 * s**2 - 2 * s) * v1
            )
        else:
            raise ValueError("IvpTrajectory supports orders 0 and 1")
        return out[0] if scalar else out

    def __call__(self, t, order=0):
        return self.eval(t, order)


def expmap(metric, x, v, tol=DEFAULT_IVP_TOL):
    """Follow the geodesic from ``x`` with initial velocity ``v`` to t=1.

    Integrates the second-order geodesic equation as a first-order system
    of dimension 2D with the embedded 4(5) pair above; each step's local
    error estimate is kept at or below ``tol`` (used as both absolute and
    relative tolerance).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    x = np.asarray(x, dtype=float)
    v = np.asarray(v, dtype=float)
    rhs_fn = geodesic_rhs_diagonal if metric.is_diagonal else geodesic_rhs

    def system(state):
        pos, vel = state[: x.size], state[x.size:]
        return np.concatenate([vel, rhs_fn(metric, pos, vel)])

    t = 0.0
    u = np.concatenate([x, v])
    ts = [0.0]
    positions = [x.copy()]
    velocities = [v.copy()]
    try:
        k1 = system(u)
    except MetricError as err:
        raise IntegrationError(f"metric failed at the start: {err}", 0.0) from err

    h = min(_MAX_STEP, 0.1)
    steps = 0
    max_err = 0.0
    k = np.empty((7, u.size))
    while t < 1.0:
        h = min(h, 1.0 - t)
        if h < _MIN_STEP:
            raise IntegrationError("step size underflow (metric blow-up?)", t)
        if steps >= _MAX_STEPS:
            raise IntegrationError("step budget exhausted", t)
        k[0] = k1
        try:
            for i in range(1, 7):
                k[i] = system(u + h * (_DP_A[i] @ k[:i]))
        except MetricError:
            h *= 0.5
            continue
        u_new = u + h * (_DP_B5 @ k)
        err_vec = h * (_DP_ERR @ k)
        scale = tol + tol * np.maximum(np.abs(u), np.abs(u_new))
        err_norm = float(np.sqrt(np.mean((err_vec / scale) ** 2)))
        if err_norm <= 1.0:
            t += h
            u = u_new
            k1 = k[6]  # FSAL: last stage is the first stage of the next step
            ts.append(t)
            positions.append(u[: x.size].copy())
            velocities.append(u[x.size:].copy())
            steps += 1
            max_err = max(max_err, err_norm * tol)
        factor = 0.9 * err_norm ** -0.2 if err_norm > 0 else 5.0
        h = min(_MAX_STEP, h * min(5.0, max(0.2, factor)))

    return IvpTrajectory(
        ts=np.asarray(ts),
        positions=np.asarray(positions),
        velocities=np.asarray(velocities),
        steps=steps,
        max_error_estimate=max_err,
    )


def logmap(metric, x, y, config=None):
    """Tangent vector at ``x`` pointing along the shortest curve to ``y``.

    Solves the boundary-value problem and evaluates the curve velocity at
    t=0.  Non-convergence is not raised; inspect ``report.converged``.

    Returns
    -------
    (v, model, report)
    """
    model, report = solve_bvp(metric, x, y, config or SolverConfig())
    v = model.eval(0.0, order=1)
    return v, model, report


def distance(metric, x, y, config=None, quad_points=DEFAULT_QUAD_SUBINTERVALS):
    """Geodesic distance between two points.

    Length of the solved boundary-value curve.  The length is reported even
    when the solve did not converge, flagged through the report, so batch
    jobs can finish and count failures.

    Returns
    -------
    (length, report)
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    model, report = solve_bvp(metric, x, y, config or SolverConfig())
    return curve_length(metric, model, quad_points), report


__all__ = [
    "curve_length",
    "speed_profile",
    "SpeedProfile",
    "expmap",
    "logmap",
    "distance",
    "IvpTrajectory",
    "IntegrationError",
    "StraightLine",
    "ParametricCurve",
    "DEFAULT_QUAD_SUBINTERVALS",
    "DEFAULT_IVP_TOL",
]

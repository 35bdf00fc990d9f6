"""Geodesic equation right-hand side for position-dependent metrics.

A geodesic of a Riemannian metric M(x) satisfies the second-order ODE

    c''(t) = -0.5 * M(c)^{-1} [ 2 (I kron c'^T) dvecM/dc c'
                                - (dvecM/dc)^T (c' kron c') ]

where vec stacks matrix columns.  The Kronecker products are never
materialized: the first bracket term contracts to ``Mdot @ c'`` with
``Mdot`` the directional derivative of M along c', and the second to the
vector of quadratic forms ``c'^T (dM/dx_e) c'``.  A specialized O(D^2)
path handles diagonal metrics.
"""

from __future__ import annotations

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from ._core import diag_geodesic_rhs_batch


class MetricError(RuntimeError):
    """Raised when a metric cannot be evaluated or inverted at a point.

    ``point_index`` identifies the offending row when the failure happened
    inside a batched evaluation, else stays None.
    """

    point_index = None


class MetricField:
    """Position-dependent inner product on R^D.

    Subclasses implement ``metric_at`` and ``dvec_metric_at``; diagonal
    metrics should derive from :class:`DiagonalMetricField` instead to get
    the fast evaluation path.  ``training_data`` optionally exposes the
    point cloud a learned metric was fitted to (used for amplitude
    defaults in the solver).
    """

    dim = None
    is_diagonal = False
    training_data = None

    def metric_at(self, x):
        """D x D symmetric positive-definite metric at ``x``."""
        raise NotImplementedError

    def dvec_metric_at(self, x):
        """D^2 x D derivative of vec(M) at ``x``; column e is d vec(M)/dx_e."""
        raise NotImplementedError

    def metric_batch(self, xs):
        xs = np.atleast_2d(xs)
        return np.stack([self.metric_at(x) for x in xs])

    def dvec_metric_batch(self, xs):
        xs = np.atleast_2d(xs)
        return np.stack([self.dvec_metric_at(x) for x in xs])


class DiagonalMetricField(MetricField):
    """Metric field whose matrix is diagonal at every point.

    Subclasses implement ``diag_at`` (D positive entries) and
    ``diag_jacobian_at`` (D x D, row d holds the gradient of entry d); the
    dense interface is derived from those.
    """

    is_diagonal = True

    def diag_at(self, x):
        raise NotImplementedError

    def diag_jacobian_at(self, x):
        raise NotImplementedError

    def diag_batch(self, xs):
        xs = np.atleast_2d(xs)
        return np.stack([self.diag_at(x) for x in xs])

    def diag_and_jacobian_batch(self, xs):
        xs = np.atleast_2d(xs)
        return (
            np.stack([self.diag_at(x) for x in xs]),
            np.stack([self.diag_jacobian_at(x) for x in xs]),
        )

    def metric_at(self, x):
        return np.diag(self.diag_at(x))

    def dvec_metric_at(self, x):
        d = self.dim
        jac = self.diag_jacobian_at(x)
        out = np.zeros((d * d, d))
        out[np.arange(d) * (d + 1), :] = jac
        return out


def geodesic_rhs(metric, c, c_dot):
    """Acceleration of the geodesic ODE at state ``(c, c_dot)``.

    Works for any :class:`MetricField`.  The derivative tensor is contracted
    slice-wise so no D^2 x D^2 intermediates are formed.

    Raises
    ------
    MetricError
        If M(c) is not positive definite; the message reports the smallest
        eigenvalue.
    """
    c = np.asarray(c, dtype=float)
    c_dot = np.asarray(c_dot, dtype=float)
    m = metric.metric_at(c)
    d = c.size
    # deriv[j, i, e] = dM_ij/dx_e  (vec index j*D+i in column-stacking order)
    deriv = metric.dvec_metric_at(c).reshape(d, d, d)

    m_dot = deriv @ c_dot                       # directional derivative of M
    lin = m_dot @ c_dot                         # (I kron c'^T) dvecM c'
    quad = np.einsum("jie,i,j->e", deriv, c_dot, c_dot)
    return -0.5 * _solve_spd(m, 2.0 * lin - quad, c)


def geodesic_rhs_diagonal(metric, c, c_dot):
    """Diagonal-metric specialization of :func:`geodesic_rhs`.

    O(D^2) using only the diagonal entries and their gradients; agrees with
    the general path to rounding error.
    """
    if not metric.is_diagonal:
        raise ValueError("geodesic_rhs_diagonal requires a diagonal metric")
    c = np.asarray(c, dtype=float)
    c_dot = np.asarray(c_dot, dtype=float)
    mdiag = metric.diag_at(c)
    if mdiag.min() <= 0:
        raise MetricError(
            f"metric not positive definite at {c}: smallest diagonal entry "
            f"{mdiag.min():.3e}"
        )
    jac = metric.diag_jacobian_at(c)
    lin = (jac @ c_dot) * c_dot
    quad = (c_dot * c_dot) @ jac
    return -0.5 * (2.0 * lin - quad) / mdiag


def rhs_at_points(metric, positions, velocities):
    """Geodesic accelerations at a batch of states, shape (P, D).

    Diagonal metrics go through the fused batched path (compiled when the
    extension is available); everything else falls back to the per-point
    general formula.
    """
    positions = np.atleast_2d(np.asarray(positions, dtype=float))
    velocities = np.atleast_2d(np.asarray(velocities, dtype=float))
    if metric.is_diagonal:
        mdiag, jac = metric.diag_and_jacobian_batch(positions)
        if mdiag.min() <= 0:
            p = int(np.argmin(mdiag.min(axis=1)))
            err = MetricError(
                f"metric not positive definite at {positions[p]}: smallest "
                f"diagonal entry {mdiag.min():.3e}"
            )
            err.point_index = p
            raise err
        return diag_geodesic_rhs_batch(mdiag, jac, velocities)
    out = np.empty_like(positions)
    for p, (x, v) in enumerate(zip(positions, velocities)):
        try:
            out[p] = geodesic_rhs(metric, x, v)
        except MetricError as err:
            err.point_index = p
            raise
    return out


def _solve_spd(m, rhs, point):
    try:
        factor = cho_factor(m, lower=True)
    except np.linalg.LinAlgError:
        smallest = float(np.linalg.eigvalsh(m).min())
        raise MetricError(
            f"metric not positive definite at {point}: smallest eigenvalue "
            f"{smallest:.3e}"
        ) from None
    return cho_solve(factor, rhs)

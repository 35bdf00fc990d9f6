"""Gaussian-process curve model used by the boundary-value solver.

A curve ``c: [0, 1] -> R^D`` is represented by the posterior mean of a GP
with squared-exponential kernel, conditioned on the two boundary positions
and on second-derivative (acceleration) values at a mesh of interior knots.
The acceleration values at the knots are the free parameters of the curve;
everything else (boundary interpolation, smoothness between knots) comes
from the kernel.

The multi-output structure is a Kronecker product of an inter-dimensional
amplitude matrix with a scalar kernel matrix in curve time.  Because the
amplitude appears on both sides of the posterior-mean solve it cancels
exactly, so only the (N+2) x (N+2) time-domain Gram matrix is ever
factorized.  The amplitude is still carried in :class:`KernelParams` since
it defines the model (and the posterior covariance, which we do not need).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cho_solve, get_lapack_funcs


class GramFactorizationError(np.linalg.LinAlgError):
    """Raised when the time-domain Gram matrix is not positive definite.

    Carries the 1-based index of the offending leading minor as reported
    by the Cholesky routine.
    """

    def __init__(self, minor, size):
        self.minor = int(minor)
        self.size = int(size)
        super().__init__(
            f"Gram factorization failed: leading minor {self.minor} of the "
            f"{self.size}x{self.size} time Gram is not positive definite "
            "(degenerate mesh or extreme length-scale)"
        )


def se_kernel_deriv(t, s, length_scale_sq, m=0, n=0):
    """Squared-exponential kernel and its derivatives up to order (2, 2).

    The kernel is ``k(t, s) = exp(-(t - s)^2 / (2 l^2))`` with squared
    length-scale ``l^2 = length_scale_sq``.  Returns the mixed partial
    ``d^(m+n) k / dt^m ds^n`` from the closed-form polynomial-times-Gaussian
    expressions.

    Parameters
    ----------
    t, s : float or ndarray
        Evaluation points; broadcast against each other.
    length_scale_sq : float
        Squared length-scale, > 0.
    m, n : int
        Derivative order in ``t`` and ``s`` respectively, each in 0..2.

    Returns
    -------
    float or ndarray
        The derivative value, with the broadcast shape of ``t`` and ``s``.
    """
    if length_scale_sq <= 0:
        raise ValueError(f"length_scale_sq must be positive, got {length_scale_sq}")
    if m not in (0, 1, 2) or n not in (0, 1, 2):
        raise ValueError(f"derivative orders must be in 0..2, got ({m}, {n})")

    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    a = 1.0 / length_scale_sq
    r = t - s
    k = np.exp(-0.5 * a * r * r)

    p = m + n
    if p == 0:
        poly = 1.0
    elif p == 1:
        poly = -a * r
    elif p == 2:
        poly = a * a * r * r - a
    elif p == 3:
        poly = 3.0 * a * a * r - a**3 * r**3
    else:  # p == 4
        poly = 3.0 * a * a - 6.0 * a**3 * r * r + a**4 * r**4

    out = poly * k if (n % 2 == 0) else -poly * k
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class Mesh:
    """Evaluation knots for the curve model.

    ``knots`` must be strictly increasing over exactly [0, 1] with at least
    three entries; the boundary pair {0, 1} is where positions are pinned,
    the knots are where accelerations are parameterized.
    """

    knots: np.ndarray

    def __post_init__(self):
        knots = np.asarray(self.knots, dtype=float)
        object.__setattr__(self, "knots", knots)
        if knots.ndim != 1 or knots.size < 3:
            raise ValueError("mesh needs at least 3 knots")
        if knots[0] != 0.0 or knots[-1] != 1.0:
            raise ValueError("mesh must span exactly [0, 1]")
        if np.any(np.diff(knots) <= 0):
            raise ValueError("mesh knots must be strictly increasing")

    @classmethod
    def uniform(cls, n):
        """Uniform mesh of ``n`` knots including both endpoints."""
        return cls(np.linspace(0.0, 1.0, n))

    @property
    def size(self):
        return self.knots.size

    @property
    def boundary(self):
        return (0.0, 1.0)

    @property
    def spacing(self):
        """Median knot spacing (exact spacing for uniform meshes)."""
        return float(np.median(np.diff(self.knots)))


@dataclass(frozen=True)
class KernelParams:
    """SE kernel hyper-parameters of the curve model.

    ``amplitude`` is the D x D symmetric positive-definite inter-dimensional
    covariance.  It cancels in the posterior mean, so it has no effect on
    solved curves; it is validated and carried for completeness.
    """

    length_scale_sq: float
    amplitude: np.ndarray

    def __post_init__(self):
        if self.length_scale_sq <= 0:
            raise ValueError("length_scale_sq must be positive")
        amp = np.asarray(self.amplitude, dtype=float)
        object.__setattr__(self, "amplitude", amp)
        if amp.ndim != 2 or amp.shape[0] != amp.shape[1]:
            raise ValueError("amplitude must be a square matrix")
        if not np.allclose(amp, amp.T, atol=1e-12):
            raise ValueError("amplitude must be symmetric")
        if np.linalg.eigvalsh(amp).min() <= 0:
            raise ValueError("amplitude must be positive definite")

    @classmethod
    def defaults(cls, mesh, dim, data=None, boundary=None):
        """Default hyper-parameters for a mesh and problem dimension.

        The squared length-scale is half the knot spacing.  The amplitude
        follows the scaled-sample-covariance rule when training ``data`` and
        a ``boundary`` pair are supplied and the sample covariance is
        positive definite; otherwise it falls back to the identity.
        """
        ls_sq = 0.5 * mesh.spacing
        amp = np.eye(dim)
        if data is not None and boundary is not None and len(data) > dim:
            cov = np.cov(np.asarray(data, dtype=float), rowvar=False)
            cov = np.atleast_2d(cov)
            if cov.shape == (dim, dim) and np.linalg.eigvalsh(cov).min() > 1e-12:
                a, b = boundary
                scale = float((a - b) @ cov @ (a - b))
                if scale > 0:
                    amp = scale * cov
        return cls(length_scale_sq=ls_sq, amplitude=amp)


def _cross_cov(tvals, mesh, kernel, order):
    """Cross-covariance rows between curve derivatives at ``tvals`` and the
    conditioning set [boundary values, knot accelerations].

    Returns an array of shape (len(tvals), N+2).
    """
    tvals = np.atleast_1d(np.asarray(tvals, dtype=float))
    ls = kernel.length_scale_sq
    cols = np.empty((tvals.size, mesh.size + 2))
    for j, b in enumerate(mesh.boundary):
        cols[:, j] = se_kernel_deriv(tvals, b, ls, m=order, n=0)
    cols[:, 2:] = se_kernel_deriv(tvals[:, None], mesh.knots[None, :], ls, m=order, n=2)
    return cols


@dataclass(frozen=True)
class GramFactorization:
    """Factorized time-domain Gram matrix of the conditioning set.

    Row/column order is [boundary t=0, boundary t=1, knots t_0..t_{N-1}].
    The jitter ``epsilon`` sits only on the N acceleration-block diagonal
    entries; the boundary rows are exact.  ``factor`` is the lower Cholesky
    factor of ``time_gram``; ``amplitude_factor`` the one of the kernel
    amplitude.
    """

    time_gram: np.ndarray
    factor: np.ndarray
    amplitude_factor: np.ndarray
    epsilon: float

    def solve(self, rhs):
        """Solve ``time_gram @ x = rhs`` using the cached factor."""
        return cho_solve((self.factor, True), rhs)


def build_gram(mesh, kernel, epsilon):
    """Assemble and factorize the time-domain Gram matrix.

    Blocks pair derivative orders (0,0) between boundary points, (0,2) and
    (2,0) between boundary points and knots, and (2,2) between knots, with
    ``epsilon`` added to the (2,2)-block diagonal.

    Raises
    ------
    GramFactorizationError
        If the Cholesky factorization fails; carries the index of the
        offending leading minor.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    ls = kernel.length_scale_sq
    bnd = np.asarray(mesh.boundary)
    knots = mesh.knots
    n = mesh.size

    gram = np.empty((n + 2, n + 2))
    gram[:2, :2] = se_kernel_deriv(bnd[:, None], bnd[None, :], ls, m=0, n=0)
    gram[:2, 2:] = se_kernel_deriv(bnd[:, None], knots[None, :], ls, m=0, n=2)
    gram[2:, :2] = se_kernel_deriv(knots[:, None], bnd[None, :], ls, m=2, n=0)
    gram[2:, 2:] = se_kernel_deriv(knots[:, None], knots[None, :], ls, m=2, n=2)
    gram[2:, 2:] += epsilon * np.eye(n)

    factor = _cholesky_lower(gram)
    amp_factor = _cholesky_lower(kernel.amplitude)
    return GramFactorization(
        time_gram=gram, factor=factor, amplitude_factor=amp_factor, epsilon=epsilon
    )


def _cholesky_lower(a):
    """Lower Cholesky factor; failure reports the offending leading minor."""
    (potrf,) = get_lapack_funcs(("potrf",), (a,))
    c, info = potrf(a, lower=True, overwrite_a=False, clean=True)
    if info > 0:
        raise GramFactorizationError(minor=info, size=a.shape[0])
    if info < 0:
        raise ValueError(f"invalid argument {-info} passed to potrf")
    return c


def posterior_weights(t, mesh, kernel, gram, order=0):
    """Time-domain posterior weight vector(s) for a curve derivative order.

    The returned row ``w(t)`` evaluates posterior-mean quantities as
    ``m^(order)(t) + sum_j w_j(t) * residual_row_j`` where the residual rows
    are [x - m(0), y - m(1), accelerations - m''(knots)].  The amplitude
    matrix cancels against the Gram inverse, which is why a single
    (N+2)-dimensional solve suffices for all D output dimensions.

    Parameters
    ----------
    t : float or ndarray
        Evaluation time(s).
    order : int
        0 for position, 1 for velocity, 2 for acceleration.

    Returns
    -------
    ndarray
        Shape (N+2,) for scalar ``t``, else (len(t), N+2).
    """
    if order not in (0, 1, 2):
        raise ValueError(f"order must be in 0..2, got {order}")
    cols = _cross_cov(t, mesh, kernel, order)
    w = gram.solve(cols.T).T
    return w[0] if np.isscalar(t) or np.ndim(t) == 0 else w


@dataclass
class GeodesicModel:
    """GP posterior-mean curve pinned at two boundary points.

    The curve is parameterized by ``knot_accelerations`` (N x D); the prior
    mean is the straight line between the boundary points, so the residual
    stack has exactly-zero boundary rows and the knot rows equal the
    acceleration parameters.

    Instances are evaluable: ``model(t, order)`` returns position, velocity
    or acceleration at ``t`` (vectorized over arrays of ``t``).  The cached
    knot weight tables make repeated evaluation at the mesh knots two
    matrix products per quantity.
    """

    mesh: Mesh
    kernel: KernelParams
    gram: GramFactorization
    start: np.ndarray
    end: np.ndarray
    knot_accelerations: np.ndarray
    knot_weights: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.start = np.asarray(self.start, dtype=float)
        self.end = np.asarray(self.end, dtype=float)
        self.knot_accelerations = np.asarray(self.knot_accelerations, dtype=float)
        if self.knot_accelerations.shape != (self.mesh.size, self.dim):
            raise ValueError(
                f"knot_accelerations must be ({self.mesh.size}, {self.dim}), "
                f"got {self.knot_accelerations.shape}"
            )
        if not self.knot_weights:
            for order in (0, 1, 2):
                self.knot_weights[order] = posterior_weights(
                    self.mesh.knots, self.mesh, self.kernel, self.gram, order
                )

    @property
    def dim(self):
        return self.start.size

    def prior_mean(self, t, order=0):
        """Straight-line prior mean and its derivatives."""
        t = np.asarray(t, dtype=float)
        span = self.end - self.start
        if order == 0:
            return self.start + np.multiply.outer(t, span)
        if order == 1:
            return np.broadcast_to(span, t.shape + span.shape).copy()
        return np.zeros(t.shape + span.shape)

    @property
    def residual_stack(self):
        """Conditioning residuals: two boundary rows (identically zero for
        the straight-line mean) stacked over the knot accelerations."""
        out = np.zeros((self.mesh.size + 2, self.dim))
        out[2:] = self.knot_accelerations
        return out

    def eval(self, t, order=0):
        """Posterior-mean position (order 0), velocity (1) or acceleration (2)."""
        scalar = np.isscalar(t) or np.ndim(t) == 0
        w = posterior_weights(np.atleast_1d(t), self.mesh, self.kernel, self.gram, order)
        out = self.prior_mean(np.atleast_1d(t), order) + w @ self.residual_stack
        return out[0] if scalar else out

    def __call__(self, t, order=0):
        return self.eval(t, order)

    def eval_at_knots(self, order, accelerations=None):
        """Evaluate at every mesh knot using the cached weight tables.

        ``accelerations`` overrides the stored parameters, which lets the
        solver score tentative parameter values without mutating the model.
        """
        acc = self.knot_accelerations if accelerations is None else accelerations
        w = self.knot_weights[order]
        return self.prior_mean(self.mesh.knots, order) + w[:, 2:] @ acc

    def with_accelerations(self, accelerations):
        """Copy of the model with new parameters, sharing all cached tables."""
        return GeodesicModel(
            mesh=self.mesh,
            kernel=self.kernel,
            gram=self.gram,
            start=self.start,
            end=self.end,
            knot_accelerations=np.asarray(accelerations, dtype=float),
            knot_weights=self.knot_weights,
        )


def eval_curve(model, t, order=0):
    """Functional form of :meth:`GeodesicModel.eval`."""
    return model.eval(t, order)

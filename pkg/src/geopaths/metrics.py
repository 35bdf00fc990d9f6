"""Concrete metric fields.

Three families:

* :class:`LocalDiagMetric` -- nonparametric metric learned from a point
  cloud; the diagonal entries are inverse local second moments, so the
  metric is small near data and saturates at ``1/variance_floor`` far away.
* :class:`PullbackMetric` -- metric induced on the latent space of a
  generator map ``g: R^d -> R^D`` as ``J^T J`` (plus the same term for an
  optional spread network of a stochastic generator).
* :class:`ConstantMetric` -- fixed matrix, flat space as the special case.

Generator weights load from a JSON document: ``{"mu": [layer, ...],
"sigma": [...] (optional), "input_dim": d, "output_dim": D}`` with each
layer ``{"w": [[...]], "b": [...], "act": "softplus"|"tanh"|"identity"}``.
"""

from __future__ import annotations

import json
import os

import numpy as np
from scipy.special import expit

from ._core import local_diag_metric_batch
from .geodesic_ode import DiagonalMetricField, MetricField

DEFAULT_BANDWIDTH = 0.15
DEFAULT_VARIANCE_FLOOR = 0.01


class LocalDiagMetric(DiagonalMetricField):
    """Inverse local diagonal covariance of a dataset.

    Entry d at probe x is ``1 / (sum_n w_n(x) (data_nd - x_d)^2 + floor)``
    with unnormalized Gaussian weights ``w_n(x) =
    exp(-||data_n - x||^2 / (2 bandwidth^2))``.  ``bandwidth`` controls how
    fast the metric changes (smaller is curvier), ``variance_floor`` keeps
    every entry finite and caps the metric at ``1/variance_floor``.
    """

    def __init__(self, data, bandwidth=DEFAULT_BANDWIDTH,
                 variance_floor=DEFAULT_VARIANCE_FLOOR):
        data = np.atleast_2d(np.asarray(data, dtype=float))
        if data.size == 0:
            raise ValueError("data must be nonempty")
        if bandwidth <= 0 or variance_floor <= 0:
            raise ValueError("bandwidth and variance_floor must be positive")
        self.data = data
        self.bandwidth = float(bandwidth)
        self.variance_floor = float(variance_floor)
        self.dim = data.shape[1]

    @property
    def training_data(self):
        return self.data

    def diag_at(self, x):
        mdiag, _ = local_diag_metric_batch(
            self.data, np.asarray(x, dtype=float)[None, :],
            self.bandwidth**2, self.variance_floor, False,
        )
        return mdiag[0]

    def diag_jacobian_at(self, x):
        _, jac = local_diag_metric_batch(
            self.data, np.asarray(x, dtype=float)[None, :],
            self.bandwidth**2, self.variance_floor, True,
        )
        return jac[0]

    def diag_batch(self, xs):
        mdiag, _ = local_diag_metric_batch(
            self.data, np.atleast_2d(xs), self.bandwidth**2,
            self.variance_floor, False,
        )
        return mdiag

    def diag_and_jacobian_batch(self, xs):
        return local_diag_metric_batch(
            self.data, np.atleast_2d(xs), self.bandwidth**2,
            self.variance_floor, True,
        )


class ConstantMetric(MetricField):
    """Position-independent metric; geodesics are straight lines."""

    def __init__(self, matrix):
        matrix = np.asarray(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ValueError("matrix must be square")
        if not np.allclose(matrix, matrix.T):
            raise ValueError("matrix must be symmetric")
        if np.linalg.eigvalsh(matrix).min() <= 0:
            raise ValueError("matrix must be positive definite")
        self.matrix = matrix
        self.dim = matrix.shape[0]

    @classmethod
    def identity(cls, dim):
        return cls(np.eye(dim))

    def metric_at(self, x):
        return self.matrix

    def dvec_metric_at(self, x):
        return np.zeros((self.dim * self.dim, self.dim))


_ACTIVATIONS = {
    "softplus": (lambda z: np.logaddexp(0.0, z), expit),
    "tanh": (np.tanh, lambda z: 1.0 - np.tanh(z) ** 2),
    "identity": (lambda z: z, lambda z: np.ones_like(z)),
}


class MLPGenerator:
    """Feed-forward generator map with analytic forward-mode Jacobian.

    ``layers`` is a list of ``(weight, bias, activation_tag)`` triples; the
    map applies them in order.  Activation tags: softplus, tanh, identity.
    """

    kind = "mlp"

    def __init__(self, layers):
        if not layers:
            raise ValueError("at least one layer required")
        self.layers = []
        prev = None
        for w, b, act in layers:
            w = np.asarray(w, dtype=float)
            b = np.asarray(b, dtype=float)
            if w.ndim != 2 or b.shape != (w.shape[0],):
                raise ValueError(f"bad layer shapes: w {w.shape}, b {b.shape}")
            if prev is not None and w.shape[1] != prev:
                raise ValueError(
                    f"layer input dim {w.shape[1]} does not chain from {prev}"
                )
            if act not in _ACTIVATIONS:
                raise ValueError(f"unknown activation {act!r}")
            self.layers.append((w, b, act))
            prev = w.shape[0]
        self.input_dim = self.layers[0][0].shape[1]
        self.output_dim = prev

    def __call__(self, x):
        h = np.asarray(x, dtype=float)
        for w, b, act in self.layers:
            h = _ACTIVATIONS[act][0](w @ h + b)
        return h

    def jacobian(self, x):
        """Output-by-input Jacobian via layer-wise chain rule."""
        h = np.asarray(x, dtype=float)
        jac = np.eye(self.input_dim)
        for w, b, act in self.layers:
            z = w @ h + b
            fun, dfun = _ACTIVATIONS[act]
            jac = dfun(z)[:, None] * (w @ jac)
            h = fun(z)
        return jac

    def to_dict(self):
        return [
            {"w": w.tolist(), "b": b.tolist(), "act": act}
            for w, b, act in self.layers
        ]


class QuadraticGenerator:
    """Paraboloid embedding of the plane: (x, y) -> (x, y, x^2 + y^2)."""

    kind = "quadratic"
    input_dim = 2
    output_dim = 3

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.array([x[0], x[1], x[0] ** 2 + x[1] ** 2])

    def jacobian(self, x):
        x = np.asarray(x, dtype=float)
        return np.array([[1.0, 0.0], [0.0, 1.0], [2.0 * x[0], 2.0 * x[1]]])

    def metric_derivative(self, x):
        """Exact derivative of the pullback metric J^T J.

        Returns (d^2, d): column e is vec(dM/dx_e) in column-stacking order.
        """
        x = np.asarray(x, dtype=float)
        d_dx = np.array([[8.0 * x[0], 4.0 * x[1]], [4.0 * x[1], 0.0]])
        d_dy = np.array([[0.0, 4.0 * x[0]], [4.0 * x[0], 8.0 * x[1]]])
        return np.stack([d_dx.T.ravel(), d_dy.T.ravel()], axis=1)


class PullbackMetric(MetricField):
    """Latent-space metric induced by a generator map.

    ``M(x) = J_mu(x)^T J_mu(x) + J_sigma(x)^T J_sigma(x)`` (the second term
    only for stochastic generators with a spread network).  A small
    ``jitter`` is added to the diagonal so degenerate Jacobians stay
    invertible inside the geodesic equation.

    The metric derivative needed by the geodesic ODE uses per-coordinate
    central finite differences with step ``fd_step * (1 + |x_e|)``; the
    quadratic generator carries an exact derivative which is preferred
    unless ``use_analytic=False``.
    """

    def __init__(self, generator, sigma_generator=None, fd_step=1e-4,
                 jitter=1e-10, use_analytic=True):
        if sigma_generator is not None:
            if sigma_generator.input_dim != generator.input_dim:
                raise ValueError("sigma network must share the input dim")
        if fd_step <= 0:
            raise ValueError("fd_step must be positive")
        self.generator = generator
        self.sigma_generator = sigma_generator
        self.fd_step = float(fd_step)
        self.jitter = float(jitter)
        self.use_analytic = bool(use_analytic)
        self.dim = generator.input_dim

    @classmethod
    def from_json(cls, path_or_dict, **kwargs):
        """Build from the generator JSON schema (path or parsed dict)."""
        if isinstance(path_or_dict, (str, bytes, os.PathLike)):
            with open(path_or_dict) as fh:
                doc = json.load(fh)
        else:
            doc = path_or_dict
        mu = MLPGenerator([(lay["w"], lay["b"], lay["act"]) for lay in doc["mu"]])
        sigma = None
        if doc.get("sigma"):
            sigma = MLPGenerator(
                [(lay["w"], lay["b"], lay["act"]) for lay in doc["sigma"]]
            )
        if mu.input_dim != doc["input_dim"] or mu.output_dim != doc["output_dim"]:
            raise ValueError(
                "generator JSON dims do not match declared input/output dims"
            )
        return cls(mu, sigma_generator=sigma, **kwargs)

    def _raw_metric(self, x):
        jac = self.generator.jacobian(x)
        m = jac.T @ jac
        if self.sigma_generator is not None:
            sjac = self.sigma_generator.jacobian(x)
            m = m + sjac.T @ sjac
        return m

    def metric_at(self, x):
        return self._raw_metric(x) + self.jitter * np.eye(self.dim)

    def dvec_metric_at(self, x):
        if (
            self.use_analytic
            and self.sigma_generator is None
            and hasattr(self.generator, "metric_derivative")
        ):
            return self.generator.metric_derivative(x)
        x = np.asarray(x, dtype=float)
        d = self.dim
        out = np.empty((d * d, d))
        for e in range(d):
            h = self.fd_step * (1.0 + abs(x[e]))
            xp = x.copy()
            xm = x.copy()
            xp[e] += h
            xm[e] -= h
            dm = (self._raw_metric(xp) - self._raw_metric(xm)) / (2.0 * h)
            out[:, e] = dm.T.ravel()
        return out


def generator_jacobian(generator, x):
    """Functional form of ``generator.jacobian``."""
    return generator.jacobian(x)


def save_generator_json(path, mu, sigma=None):
    """Write a generator (and optional spread network) to the JSON schema."""
    doc = {
        "mu": mu.to_dict(),
        "input_dim": mu.input_dim,
        "output_dim": mu.output_dim,
    }
    if sigma is not None:
        doc["sigma"] = sigma.to_dict()
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)


__all__ = [
    "LocalDiagMetric",
    "ConstantMetric",
    "MLPGenerator",
    "QuadraticGenerator",
    "PullbackMetric",
    "generator_jacobian",
    "save_generator_json",
    "DEFAULT_BANDWIDTH",
    "DEFAULT_VARIANCE_FLOOR",
]

"""Pure-numpy implementations of the hot kernels.

Same signatures and semantics as the compiled module ``_kernels``; used as
the fallback when the extension is unavailable or when
``GEOPATHS_PURE_PYTHON`` is set.
"""

import numpy as np


def local_diag_metric_batch(data, probes, sigma_sq, variance_floor, want_jacobian):
    """Inverse local diagonal covariance metric at a batch of probe points.

    For each probe x the diagonal entries are
    ``1 / (sum_n w_n(x) (data_nd - x_d)^2 + variance_floor)`` with Gaussian
    weights ``w_n(x) = exp(-||data_n - x||^2 / (2 sigma_sq))``.

    Returns ``(mdiag, jac)`` with shapes (P, D) and (P, D, D); ``jac`` is
    None unless ``want_jacobian``.  ``jac[p, d, e]`` is the partial of
    diagonal entry d w.r.t. probe coordinate e.
    """
    data = np.asarray(data, dtype=float)
    probes = np.atleast_2d(np.asarray(probes, dtype=float))
    diffs = data[None, :, :] - probes[:, None, :]
    sqdist = np.einsum("pnd,pnd->pn", diffs, diffs)
    weights = np.exp(-0.5 * sqdist / sigma_sq)

    second_moment = np.einsum("pn,pnd->pd", weights, diffs * diffs)
    mdiag = 1.0 / (second_moment + variance_floor)
    if not want_jacobian:
        return mdiag, None

    moment_grad = (
        np.einsum("pnd,pne->pde", weights[:, :, None] * diffs * diffs, diffs)
        / sigma_sq
    )
    first_moment = np.einsum("pn,pnd->pd", weights, diffs)
    idx = np.arange(probes.shape[1])
    moment_grad[:, idx, idx] -= 2.0 * first_moment
    jac = -(mdiag * mdiag)[:, :, None] * moment_grad
    return mdiag, jac


def diag_geodesic_rhs_batch(mdiag, jac, velocities):
    """Geodesic accelerations for a diagonal metric at a batch of states.

    ``mdiag`` (P, D) holds the diagonal entries, ``jac`` (P, D, D) their
    gradients, ``velocities`` (P, D) the curve velocities.
    """
    mdiag = np.asarray(mdiag, dtype=float)
    jac = np.asarray(jac, dtype=float)
    velocities = np.asarray(velocities, dtype=float)
    lin = np.einsum("pde,pe->pd", jac, velocities) * velocities
    quad = np.einsum("pd,pde->pe", velocities * velocities, jac)
    return -0.5 * (2.0 * lin - quad) / mdiag

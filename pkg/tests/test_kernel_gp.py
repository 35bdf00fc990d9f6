import numpy as np
import pytest

import geopaths as gp
from geopaths.kernel_gp import (
    GeodesicModel,
    GramFactorizationError,
    KernelParams,
    Mesh,
    build_gram,
    posterior_weights,
    se_kernel_deriv,
)

EPS = np.finfo(float).eps


def fd_ladder(t, s, ls, m, n):
    # central difference of the next-lower derivative order
    h = (3 * EPS) ** (1 / 3) * np.sqrt(ls)
    if m >= 1:
        hi = se_kernel_deriv(t + h, s, ls, m - 1, n)
        lo = se_kernel_deriv(t - h, s, ls, m - 1, n)
    else:
        hi = se_kernel_deriv(t, s + h, ls, m, n - 1)
        lo = se_kernel_deriv(t, s - h, ls, m, n - 1)
    return (hi - lo) / (2 * h)


def test_kernel_value_and_symmetry():
    assert se_kernel_deriv(0.3, 0.3, 0.5) == 1.0
    assert se_kernel_deriv(0.0, 1.0, 0.25) == pytest.approx(np.exp(-2.0), rel=1e-15)
    # swapping arguments flips the sign once per odd total order
    v1 = se_kernel_deriv(0.2, 0.7, 0.1, m=1, n=0)
    v2 = se_kernel_deriv(0.7, 0.2, 0.1, m=0, n=1)
    assert v1 == pytest.approx(v2, rel=1e-14)


def test_kernel_single_derivative_instance():
    ls = 0.05
    h = 1e-4
    fd = (se_kernel_deriv(0.0 + h, 0.5, ls, 1, 0)
          - se_kernel_deriv(0.0 - h, 0.5, ls, 1, 0)) / (2 * h)
    an = se_kernel_deriv(0.0, 0.5, ls, 2, 0)
    assert abs(fd - an) / abs(an) < 1e-6


def test_kernel_all_orders_match_fd():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        t, s = rng.uniform(0.0, 1.0, 2)
        ls = rng.uniform(0.02, 1.0)
        for m in range(3):
            for n in range(3):
                if m + n == 0:
                    continue
                an = se_kernel_deriv(t, s, ls, m, n)
                fd = fd_ladder(t, s, ls, m, n)
                # floor the denominator at a fraction of the natural
                # magnitude of this order so polynomial zeros don't blow
                # up the relative error
                scale = ls ** (-(m + n) / 2)
                assert abs(fd - an) / max(abs(an), 1e-6 * scale) < 1e-6


def test_kernel_rejects_unsupported_orders():
    with pytest.raises(ValueError):
        se_kernel_deriv(0.1, 0.2, 0.5, m=3, n=0)
    with pytest.raises(ValueError):
        se_kernel_deriv(0.1, 0.2, 0.5, m=0, n=-1)


def test_mesh_validation():
    with pytest.raises(ValueError):
        Mesh(np.array([0.0, 1.0]))
    with pytest.raises(ValueError):
        Mesh(np.array([0.0, 0.4, 0.9]))
    with pytest.raises(ValueError):
        Mesh(np.array([0.0, 0.6, 0.4, 1.0]))
    m = Mesh.uniform(5)
    assert m.size == 5
    assert m.spacing == pytest.approx(0.25)


def test_gram_matrix_layout():
    mesh = Mesh.uniform(3)
    kern = KernelParams(0.25, np.eye(1))
    gram = build_gram(mesh, kern, 1e-7)
    K = gram.time_gram
    assert K.shape == (5, 5)
    assert np.allclose(K, K.T, atol=1e-12)
    # rows are [boundary 0, boundary 1, knots]; the boundary block is the
    # plain kernel, jitter sits only on the acceleration-block diagonal
    assert K[0, 0] == 1.0
    assert K[0, 1] == pytest.approx(np.exp(-2.0), abs=1e-15)
    assert K[2, 2] == pytest.approx(3.0 / 0.25**2 + 1e-7, abs=1e-12)
    assert K[3, 3] == pytest.approx(3.0 / 0.25**2 + 1e-7, abs=1e-12)


def test_gram_degenerate_mesh_raises():
    mesh = Mesh(np.array([0.0, 0.5, 0.5 + 1e-15, 1.0]))
    kern = KernelParams(0.25, np.eye(1))
    with pytest.raises(GramFactorizationError) as exc:
        build_gram(mesh, kern, 1e-15)
    assert "leading minor" in str(exc.value)


def test_kernel_params_validation():
    with pytest.raises(ValueError):
        KernelParams(-0.1, np.eye(2))
    with pytest.raises(ValueError):
        KernelParams(0.5, np.array([[1.0, 2.0], [0.0, 1.0]]))
    with pytest.raises(ValueError):
        KernelParams(0.5, np.diag([1.0, -1.0]))


def test_boundary_weights_are_basis_vectors():
    mesh = Mesh.uniform(5)
    kern = KernelParams(0.25, np.eye(1))
    gram = build_gram(mesh, kern, 1e-7)
    w0 = posterior_weights(0.0, mesh, kern, gram, order=0)
    w1 = posterior_weights(1.0, mesh, kern, gram, order=0)
    e0 = np.zeros(7); e0[0] = 1.0
    e1 = np.zeros(7); e1[1] = 1.0
    assert np.max(np.abs(w0 - e0)) < 1e-8
    assert np.max(np.abs(w1 - e1)) < 1e-8


def test_weight_derivative_matches_fd():
    mesh = Mesh.uniform(5)
    kern = KernelParams(0.25, np.eye(1))
    gram = build_gram(mesh, kern, 1e-7)
    h = 1e-5
    for t in np.linspace(0.0, 1.0, 21):
        w1 = posterior_weights(t, mesh, kern, gram, order=1)
        fd = (posterior_weights(t + h, mesh, kern, gram, order=0)
              - posterior_weights(t - h, mesh, kern, gram, order=0)) / (2 * h)
        assert np.max(np.abs(w1 - fd)) < 1e-5


def test_model_matches_full_kronecker_system():
    # oracle: materialize the D(N+2) system with the explicit Kronecker
    # covariance and straight-line prior mean, then compare every quantity
    rng = np.random.default_rng(12)
    mesh = Mesh.uniform(5)
    amp = np.array([[2.0, 0.3], [0.3, 1.0]])
    kern = KernelParams(0.5 * mesh.spacing, amp)
    gram = build_gram(mesh, kern, 1e-7)
    x, y = rng.normal(size=2), rng.normal(size=2)
    acc = rng.normal(size=(5, 2))
    model = GeodesicModel(mesh, kern, gram, x, y, acc)

    k_big = np.kron(amp, gram.time_gram)
    resid = np.vstack([np.zeros((2, 2)), acc])
    w_big = np.linalg.solve(k_big, resid.T.ravel())
    ls = kern.length_scale_sq
    for t in np.linspace(0.0, 1.0, 13):
        line = {0: (1 - t) * x + t * y, 1: y - x, 2: np.zeros(2)}
        for order in (0, 1, 2):
            kvec = np.empty(7)
            kvec[0] = se_kernel_deriv(t, 0.0, ls, m=order, n=0)
            kvec[1] = se_kernel_deriv(t, 1.0, ls, m=order, n=0)
            kvec[2:] = se_kernel_deriv(np.full(5, t), mesh.knots, ls, m=order, n=2)
            oracle = line[order] + np.kron(amp, kvec) @ w_big
            got = gp.eval_curve(model, t, order)
            assert np.max(np.abs(oracle - got)) < 1e-10


def test_model_pins_boundary_and_interpolates_accelerations():
    rng = np.random.default_rng(5)
    mesh = Mesh.uniform(7)
    kern = KernelParams.defaults(mesh, 3)
    gram = build_gram(mesh, kern, 1e-7)
    x, y = rng.normal(size=3), rng.normal(size=3)
    acc = rng.normal(size=(7, 3))
    model = GeodesicModel(mesh, kern, gram, x, y, acc)
    assert np.max(np.abs(model.eval(0.0, 0) - x)) < 1e-10
    assert np.max(np.abs(model.eval(1.0, 0) - y)) < 1e-10
    # the nugget makes acceleration interpolation approximate, not exact
    assert np.max(np.abs(model.eval(mesh.knots, 2) - acc)) < 1e-6


def test_amplitude_does_not_change_the_curve():
    # the inter-dimensional covariance cancels in the posterior mean
    rng = np.random.default_rng(9)
    mesh = Mesh.uniform(6)
    gram_args = dict(mesh=mesh, epsilon=1e-7)
    x, y = rng.normal(size=2), rng.normal(size=2)
    acc = rng.normal(size=(6, 2))
    evals = []
    for amp in (np.eye(2), np.array([[4.0, 1.0], [1.0, 2.0]])):
        kern = KernelParams(0.5 * mesh.spacing, amp)
        gram = build_gram(kernel=kern, **gram_args)
        model = GeodesicModel(mesh, kern, gram, x, y, acc)
        evals.append(model.eval(np.linspace(0, 1, 17), 0))
    assert np.max(np.abs(evals[0] - evals[1])) < 1e-12


def test_default_length_scale_tracks_mesh_spacing():
    k5 = KernelParams.defaults(Mesh.uniform(5), 2)
    k9 = KernelParams.defaults(Mesh.uniform(9), 2)
    assert k5.length_scale_sq == pytest.approx(0.5 * 0.25)
    assert k9.length_scale_sq == pytest.approx(0.5 * 0.125)


def test_eval_curve_vectorizes():
    mesh = Mesh.uniform(4)
    kern = KernelParams.defaults(mesh, 2)
    gram = build_gram(mesh, kern, 1e-7)
    model = GeodesicModel(mesh, kern, gram, np.zeros(2), np.ones(2),
                          np.zeros((4, 2)))
    ts = np.linspace(0, 1, 9)
    batch = model.eval(ts, 0)
    assert batch.shape == (9, 2)
    for i, t in enumerate(ts):
        assert np.allclose(batch[i], model.eval(float(t), 0), atol=1e-14)

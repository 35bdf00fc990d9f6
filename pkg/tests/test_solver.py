import numpy as np
import pytest

import geopaths as gp
from geopaths.kernel_gp import GeodesicModel, KernelParams, Mesh, build_gram
from geopaths.solver import (
    BACKTRACK_RATIOS,
    accelerations_from_polyline,
    fixed_point_step,
    residuals,
    solve_bvp,
)

from conftest import Exp1DMetric, ThresholdMetric


def test_flat_metric_one_iteration():
    for dim in (2, 5):
        rng = np.random.default_rng(dim)
        x, y = rng.normal(size=dim), rng.normal(size=dim)
        model, report = solve_bvp(gp.ConstantMetric.identity(dim), x, y)
        assert report.converged
        assert report.iterations == 1
        assert report.max_residual == 0.0
        for t in np.linspace(0.0, 1.0, 17):
            line = (1 - t) * x + t * y
            assert np.max(np.abs(model.eval(t, 0) - line)) < 1e-8


def test_coincident_endpoints_trivially_converged(semicircle_metric, semicircle):
    x = semicircle.points[50]
    model, report = solve_bvp(semicircle_metric, x, x.copy())
    assert report.converged
    assert report.iterations == 1
    assert np.max(np.abs(model.eval(0.5, 0) - x)) < 1e-10


def test_fixed_point_step_hand_value():
    # M = e^{2x} gives f(c, c') = -c'^2 regardless of position; with zero
    # accelerations the posterior mean is exactly the straight line, so
    # every knot sees the state (., 1) and the step returns -1 exactly
    metric = Exp1DMetric()
    x, y = np.array([-0.5]), np.array([0.5])
    mesh = Mesh.uniform(3)
    kern = KernelParams.defaults(mesh, 1, boundary=(x, y))
    gram = build_gram(mesh, kern, 1e-7)
    model = GeodesicModel(mesh, kern, gram, x, y, np.zeros((3, 1)))
    assert np.max(np.abs(model.eval(0.5, 0))) < 1e-12
    assert model.eval(0.5, 1)[0] == pytest.approx(1.0, abs=1e-12)
    step = fixed_point_step(model, metric)
    assert np.max(np.abs(step + 1.0)) < 1e-12


def test_residuals_zero_for_flat_zero_accelerations():
    flat = gp.ConstantMetric.identity(2)
    mesh = Mesh.uniform(5)
    kern = KernelParams.defaults(mesh, 2)
    gram = build_gram(mesh, kern, 1e-7)
    model = GeodesicModel(mesh, kern, gram, np.zeros(2), np.ones(2),
                          np.zeros((5, 2)))
    assert np.all(fixed_point_step(model, flat) == 0.0)
    assert np.all(residuals(model, flat) == 0.0)


def test_converged_report_is_consistent(semicircle, semicircle_metric):
    x, y = semicircle.points[28], semicircle.points[102]
    model, report = solve_bvp(semicircle_metric, x, y)
    assert report.converged
    assert report.max_residual <= 0.1
    assert report.iterations == 1 + len(report.alpha_history)
    assert set(report.alpha_history) <= set(BACKTRACK_RATIOS)
    # recomputing the defect from the returned model reproduces the report
    again = residuals(model, semicircle_metric)
    assert np.max(np.abs(again - report.final_residuals)) < 1e-12


def test_endpoints_stay_pinned(semicircle, semicircle_metric):
    x, y = semicircle.points[28], semicircle.points[102]
    model, report = solve_bvp(semicircle_metric, x, y)
    assert np.max(np.abs(model.eval(0.0, 0) - x)) < 1e-10
    assert np.max(np.abs(model.eval(1.0, 0) - y)) < 1e-10


def test_solve_is_deterministic(semicircle, semicircle_metric):
    x, y = semicircle.points[28], semicircle.points[102]
    m1, r1 = solve_bvp(semicircle_metric, x, y)
    m2, r2 = solve_bvp(semicircle_metric, x, y)
    assert np.array_equal(m1.knot_accelerations, m2.knot_accelerations)
    assert r1.iterations == r2.iterations
    assert r1.alpha_history == r2.alpha_history


def test_max_iterations_reports_honest_failure(semicircle):
    hard = gp.LocalDiagMetric(semicircle.points, bandwidth=0.1)
    x, y = semicircle.points[68], semicircle.points[55]
    model, report = solve_bvp(hard, x, y, gp.SolverConfig(max_iterations=1))
    assert not report.converged
    assert report.failure_reason == "max_iterations"
    assert report.iterations == 1
    assert report.max_residual > 0.1


def test_stagnation_reports_honest_failure(semicircle):
    hard = gp.LocalDiagMetric(semicircle.points, bandwidth=0.1)
    x, y = semicircle.points[68], semicircle.points[55]
    model, report = solve_bvp(
        hard, x, y, gp.SolverConfig(mesh_size=5, stagnation_limit=2)
    )
    assert not report.converged
    assert report.failure_reason == "stagnation"


def test_metric_failure_names_the_knot():
    model, report = solve_bvp(
        ThresholdMetric(), np.array([0.0, 0.0]), np.array([2.0, 0.0])
    )
    assert not report.converged
    assert report.failure_reason == "metric_failure(t=1)"
    assert np.all(np.isinf(report.final_residuals))


def test_accelerations_from_polyline_quadratic_exact():
    # a quadratic polyline has constant second difference 2a
    a = np.array([0.7, -1.3])
    ts = np.linspace(0.0, 1.0, 41)[:, None]
    poly = ts**2 * a + ts * np.array([0.1, 0.2])
    mesh = Mesh.uniform(9)
    acc = accelerations_from_polyline(poly, mesh)
    assert np.max(np.abs(acc - 2.0 * a)) < 1e-9
    with pytest.raises(ValueError):
        accelerations_from_polyline(poly[:2], mesh)


def test_warm_start_changes_the_path_taken(semicircle, semicircle_metric):
    x, y = semicircle.points[28], semicircle.points[102]
    cold_model, cold = solve_bvp(semicircle_metric, x, y)
    poly = np.linspace(0.0, 1.0, 33)[:, None] * (y - x) + x
    warm_model, warm = solve_bvp(semicircle_metric, x, y,
                                 initial_curve=cold_model.eval(np.linspace(0, 1, 33), 0))
    assert warm.converged
    # starting at the converged curve needs far fewer iterations
    assert warm.iterations < cold.iterations
    straight_model, straight = solve_bvp(semicircle_metric, x, y,
                                         initial_curve=poly)
    # an explicit straight polyline is the same start as the default
    assert straight.iterations == cold.iterations


def test_mann_schedule_converges_on_easy_instance(semicircle, semicircle_metric):
    x, y = semicircle.points[28], semicircle.points[60]
    model, report = solve_bvp(semicircle_metric, x, y,
                              gp.SolverConfig(mann_schedule=True))
    assert report.converged
    assert report.max_residual <= 0.1


def test_config_validation():
    with pytest.raises(ValueError):
        gp.SolverConfig(mesh_size=2)
    with pytest.raises(ValueError):
        gp.SolverConfig(tolerance=0.0)
    with pytest.raises(ValueError):
        gp.SolverConfig(max_iterations=0)
    with pytest.raises(ValueError):
        gp.SolverConfig(stagnation_limit=0)
    with pytest.raises(ValueError):
        solve_bvp(gp.ConstantMetric.identity(2), np.zeros(3), np.ones(3))
    with pytest.raises(ValueError):
        solve_bvp(gp.ConstantMetric.identity(2), np.zeros((2, 2)), np.ones((2, 2)))


def test_length_scale_override():
    flat = gp.ConstantMetric.identity(2)
    model, _ = solve_bvp(flat, np.zeros(2), np.ones(2),
                         gp.SolverConfig(length_scale_sq=0.3))
    assert model.kernel.length_scale_sq == 0.3


def test_tolerance_controls_residual_quality(semicircle, semicircle_metric):
    x, y = semicircle.points[28], semicircle.points[102]
    loose_model, loose = solve_bvp(semicircle_metric, x, y)
    tight_model, tight = solve_bvp(
        semicircle_metric, x, y, gp.SolverConfig(tolerance=1e-4)
    )
    assert loose.converged and tight.converged
    assert tight.max_residual <= 1e-4
    assert tight.iterations >= loose.iterations

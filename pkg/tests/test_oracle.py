import numpy as np
import pytest

import geopaths as gp
from geopaths import datasets
from geopaths.maps import curve_length
from geopaths.oracle import (
    DisconnectedGraphError,
    GraphSpec,
    oracle_energy_minimize,
    oracle_graph_distance,
)

from conftest import Exp1DMetric


def test_energy_minimizer_flat_is_straight(flat2):
    x, y = np.array([-1.0, 0.5]), np.array([2.0, -0.5])
    curve, length = oracle_energy_minimize(flat2, x, y)
    assert length == pytest.approx(np.linalg.norm(y - x), abs=1e-4)
    ts = np.linspace(0.0, 1.0, len(curve.waypoints))
    line = x + ts[:, None] * (y - x)
    assert np.max(np.abs(curve.waypoints - line)) < 1e-3


def test_energy_minimizer_exponential_closed_form():
    # under M = e^{2x} the geodesic from 0 to 1 is log((1-t) + t e)
    # with length e - 1
    metric = Exp1DMetric()
    x, y = np.array([0.0]), np.array([1.0])
    curve, length = oracle_energy_minimize(metric, x, y, waypoints=64, iters=400)
    exact_length = np.e - 1.0
    assert abs(length - exact_length) / exact_length <= 1e-3
    ts = np.linspace(0.0, 1.0, len(curve.waypoints))
    exact = np.log((1 - ts) + ts * np.e)
    assert np.max(np.abs(curve.waypoints[:, 0] - exact)) <= 1e-3


def test_energy_history_non_increasing(semicircle, semicircle_metric):
    x, y = semicircle.points[28], semicircle.points[102]
    curve, length = oracle_energy_minimize(
        semicircle_metric, x, y, waypoints=32, iters=120
    )
    assert curve.energy_history
    for level in curve.energy_history:
        diffs = np.diff(np.asarray(level))
        assert np.all(diffs <= 1e-12)


def test_graph_flat_excess_within_bound(flat2):
    spacing = 2.0 / 30.0
    grid = GraphSpec(lo=(-1.0, -1.0), hi=(1.0, 1.0), resolution=31,
                     radius=2.4 * spacing)
    x, y = np.array([-0.8, -0.2]), np.array([0.7, 0.5])
    length = oracle_graph_distance(flat2, x, y, grid)
    straight = np.linalg.norm(y - x)
    assert length >= straight - 1e-9
    assert (length - straight) / straight <= 0.03
    # worst direction over a fan of targets stays under the same bound
    start = np.array([-0.85, -0.85])
    for k in range(10):
        th = np.pi / 2 * (k + 0.5) / 10
        end = start + 1.6 * np.array([np.cos(th), np.sin(th)])
        l = oracle_graph_distance(flat2, start, end, grid)
        d = np.linalg.norm(end - start)
        assert (l - d) / d <= 0.03


def test_graph_refinement_never_lengthens(semicircle, semicircle_metric):
    # doubling the resolution with a fixed radius can only add edges, so the
    # shortest path can only get shorter
    x, y = semicircle.points[28], semicircle.points[102]
    radius = 1.5 * (3.0 / 30.0)
    lo, hi = (-1.5, -1.5), (1.5, 1.5)
    coarse = GraphSpec(lo=lo, hi=hi, resolution=31, radius=radius)
    fine = GraphSpec(lo=lo, hi=hi, resolution=61, radius=radius)
    l_coarse = oracle_graph_distance(semicircle_metric, x, y, coarse)
    l_fine = oracle_graph_distance(semicircle_metric, x, y, fine)
    assert l_fine <= l_coarse + 1e-9


def test_graph_disconnected_raises(flat2):
    # radius below the grid spacing: no edges form at all
    bare = GraphSpec(lo=(-1.0, -1.0), hi=(1.0, 1.0), resolution=31, radius=0.01)
    with pytest.raises(DisconnectedGraphError, match="no edges"):
        oracle_graph_distance(flat2, np.array([-0.5, 0.0]),
                              np.array([0.5, 0.0]), bare)
    # a tall box whose rows connect but never bridge isolates an off-row
    # endpoint and splits on-row endpoints into separate components
    tall = GraphSpec(lo=(0.0, 0.0), hi=(1.0, 10.0), resolution=11, radius=0.15)
    with pytest.raises(DisconnectedGraphError, match="isolated"):
        oracle_graph_distance(flat2, np.array([0.05, 0.55]),
                              np.array([0.5, 10.0]), tall)
    with pytest.raises(DisconnectedGraphError, match="no path"):
        oracle_graph_distance(flat2, np.array([0.5, 0.0]),
                              np.array([0.5, 10.0]), tall)
    with pytest.raises(ValueError, match="does not contain"):
        oracle_graph_distance(flat2, np.array([-5.0, 0.0]),
                              np.array([0.5, 0.0]), bare)


def test_graph_knn_connectivity(flat2):
    grid = GraphSpec(lo=(-1.0, -1.0), hi=(1.0, 1.0), resolution=31,
                     connectivity="knn", k=12)
    x, y = np.array([-0.8, -0.2]), np.array([0.7, 0.5])
    length = oracle_graph_distance(flat2, x, y, grid)
    straight = np.linalg.norm(y - x)
    assert (length - straight) / straight <= 0.12


def test_solver_sandwiched_by_oracles():
    # the solver length should match the energy oracle and stay below the
    # graph upper bound
    ds = datasets.gen_semicircle(120, 0.01, seed=1)
    metric = gp.LocalDiagMetric(ds.points, bandwidth=0.15)
    x, y = ds.points[3], ds.points[40]
    model, report = gp.solve_bvp(metric, x, y)
    assert report.converged
    solver_len = curve_length(metric, model)
    _, energy_len = oracle_energy_minimize(metric, x, y, waypoints=64, iters=400)
    grid = GraphSpec.around(ds.points, margin=0.3, resolution=31)
    graph_len = oracle_graph_distance(metric, x, y, grid)
    assert abs(solver_len - energy_len) / energy_len <= 0.05
    assert solver_len <= graph_len * 1.02


def test_graph_spec_validation():
    with pytest.raises(ValueError):
        GraphSpec(lo=(0.0,), hi=(1.0, 1.0), resolution=11)
    with pytest.raises(ValueError):
        GraphSpec(lo=(0.0, 0.0), hi=(1.0, 1.0), resolution=1)
    with pytest.raises(ValueError):
        GraphSpec(lo=(1.0, 0.0), hi=(1.0, 1.0), resolution=11)
    with pytest.raises(ValueError):
        GraphSpec(lo=(0.0, 0.0), hi=(1.0, 1.0), resolution=11,
                  connectivity="mesh")
    spec = GraphSpec(lo=(0.0, 0.0), hi=(1.0, 1.0), resolution=11)
    assert spec.effective_radius() == pytest.approx(1.5 * 0.1)
    assert spec.nodes().shape == (121, 2)
    boxed = GraphSpec.around(np.array([[0.0, 0.0], [1.0, 2.0]]), margin=0.5)
    assert boxed.lo == (-0.5, -0.5) and boxed.hi == (1.5, 2.5)
